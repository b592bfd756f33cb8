#pragma once

#include "mpidyn/forward.hpp"

#include <string>
#include <utility>
#include <vector>

namespace mpidyn {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Binary container (see docs/formats.md for the byte-exact layout). All
// writers go through a temp file + rename, so a failed write never leaves a
// partial output behind.

void save_system(const SystemMatrixPair& pair, const std::string& path, bool with_time = true,
                 bool with_frequency = false);
SystemMatrixPair load_system(const std::string& path);

void save_signal(const Signal& signal, const std::string& path);
Signal load_signal(const std::string& path);

void save_spline(const SplineConcentration& sc, const Grid& grid, const std::string& path);
/// Returns the concentration and the grid it was defined on.
std::pair<SplineConcentration, Grid> load_spline(const std::string& path);

// CSV / text exports; every number is printed with 17 significant digits.

void export_concentration_csv(const std::string& path, const std::vector<double>& times,
                              const Eigen::MatrixXd& values, const Eigen::MatrixXd* rates);
void export_signal_csv(const std::string& path, const Signal& signal);
void export_spectrum_csv(const std::string& path, const Eigen::VectorXd& magnitude,
                         const Eigen::VectorXd& hull, double bin_width_hz);
void export_split_csv(const std::string& path, const SplitTerms& split, double bin_width_hz);
void export_frames_csv(const std::string& path, const Eigen::MatrixXd& frames);
void export_residuals_csv(const std::string& path,
                          const std::vector<std::vector<double>>& per_channel,
                          const std::vector<Channel>& channels);
void write_summary(const std::string& path,
                   const std::vector<std::pair<std::string, std::string>>& entries);

/// Atomically writes `content` to `path` (temp file + rename).
void write_text_atomic(const std::string& path, const std::string& content);

std::string format_full(double v);

}  // namespace mpidyn
