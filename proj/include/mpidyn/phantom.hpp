#pragma once

#include "mpidyn/grid.hpp"
#include "mpidyn/spline.hpp"

#include <cstdint>

namespace mpidyn {

/// Per-voxel cubic B-spline concentration curves over the full record
/// [0, F*T_c]: c(r_i, t) = sum_m coefficients(m, i) * B_m(t).
struct SplineConcentration {
  CubicBsplineBasis basis;
  Eigen::MatrixXd coefficients;  // M x R
  std::uint64_t grid_hash = 0;

  double value(int voxel, double t) const {
    return spline_value(basis, coefficients.col(voxel), t);
  }
  double rate(int voxel, double t) const {
    return spline_derivative(basis, coefficients.col(voxel), t);
  }
};

/// Concentration and its analytic time derivative sampled on the record grid.
struct SampledConcentration {
  Eigen::MatrixXd values;  // (F*n_T) x R
  Eigen::MatrixXd rates;   // (F*n_T) x R
};

inline constexpr int default_spans_per_frame = 8;

/// Samples a spline concentration at the record times tau_j. Derivatives come
/// from the exact B-spline derivative, never from differencing.
SampledConcentration eval_spline(const SplineConcentration& sc, const Grid& grid);

enum class OnePeakVariant { one_frame, two_frame, four_frame };

/// One-peak phantom on a 3x3x1 grid with F = 4: a single bump of height 2.667
/// in the central voxel r_5; the variant sets how many frames the bump spans.
SplineConcentration one_peak_phantom(OnePeakVariant variant, const Grid& grid,
                                     int spans_per_frame = default_spans_per_frame);

/// Three-peak phantom on a 3x3x1 grid with F = 10: bumps of height 6.67 in
/// voxels r_4, r_5, r_6 peaking in frames 3, 4, 5, each about four frames wide.
SplineConcentration three_peak_phantom(const Grid& grid,
                                       int spans_per_frame = default_spans_per_frame);

/// All-zero spline concentration for an arbitrary grid.
SplineConcentration zero_phantom(const Grid& grid,
                                 int spans_per_frame = default_spans_per_frame);

/// A single-voxel concentration curve over one cycle together with its
/// analytic derivative and the spectra of both.
struct ExampleConcentration {
  Eigen::VectorXd values;         // n_T
  Eigen::VectorXd rates;          // n_T
  Eigen::VectorXcd spectrum;      // DFT of values
  Eigen::VectorXcd rate_spectrum; // DFT of rates
};

/// The four example dynamics: 1 = short pulse near the start, 2 = fast rise /
/// plateau / fall, 3 = slow rise and fall, 4 = two short pulses.
ExampleConcentration example_concentration(int kind, int samples_per_cycle, double cycle_time);

}  // namespace mpidyn
