#pragma once

#include "mpidyn/forward.hpp"

namespace mpidyn {

struct ReconConfig {
  int cg_iterations = 200;           // parametric reconstruction
  int gd_iterations = 100;           // frame-by-frame reconstruction
  int kaczmarz_sweeps = 50;
  double tikhonov = 0.0;             // >= 0; 0 disables the penalty
  int spans_per_frame = default_spans_per_frame;  // spline basis resolution
  double frame_dt = 0.0;             // divided-difference step; 0 picks T_c
  bool joint_channels = false;       // stack channels instead of averaging reconstructions

  void validate() const {
    if (cg_iterations < 1 || gd_iterations < 1 || kaczmarz_sweeps < 1)
      throw ConfigError("recon: iteration counts must be >= 1");
    if (tikhonov < 0.0) throw ConfigError("recon: tikhonov weight must be >= 0");
    if (spans_per_frame < 1) throw ConfigError("recon: spans_per_frame must be >= 1");
  }
};

/// Cyclic-order Kaczmarz for A c = u from zero init; `sweeps` full passes.
/// Zero rows are skipped. A positive Tikhonov weight switches to the
/// augmented-variable form (min ||c||^2 + ||v||^2 s.t. A c + sqrt(l) v = u),
/// whose min-norm limit is the Tikhonov solution.
Eigen::VectorXd kaczmarz_static(const Eigen::MatrixXd& a, const Eigen::VectorXd& u, int sweeps,
                                double tikhonov = 0.0);

/// 0.5*||residual||^2 of the parametric dynamic model and its exact gradient
/// with respect to the spline coefficient matrix (M x R), for one channel.
struct ParametricObjective {
  double value = 0.0;
  Eigen::MatrixXd gradient;  // M x R
};
ParametricObjective objective_parametric(const Eigen::MatrixXd& coefficients,
                                         const SystemMatrixPair& pair, const Signal& signal,
                                         bool use_s2, const CubicBsplineBasis& basis,
                                         Channel channel);

struct ParametricResult {
  SplineConcentration average;
  std::vector<SplineConcentration> per_channel;
  std::vector<std::vector<double>> residuals;  // per channel, ||A x - u|| by iteration
};

/// Linear CG on the normal equations of the (linear-in-coefficients) residual
/// map, zero init, fixed iteration count, per channel + channel average.
ParametricResult reconstruct_parametric(const SystemMatrixPair& pair, const Signal& signal,
                                        const ReconConfig& cfg, bool use_s2);

struct FrameResult {
  Eigen::MatrixXd average;                     // F x R
  std::vector<Eigen::MatrixXd> per_channel;    // F x R each
  std::vector<std::vector<double>> residuals;  // per channel, frames concatenated
};

/// Frame-by-frame reconstruction: frame f minimizes
///   || eta (S1 c + S2 (c - c_prev)/dt) - u_f ||^2
/// by gradient descent with a backtracking-selected fixed step, zero init,
/// c_prev from the same method's previous frame (c_0 = 0). use_s2 = false
/// drops the divided-difference term entirely.
FrameResult reconstruct_frames(const SystemMatrixPair& pair, const Signal& signal,
                               const ReconConfig& cfg, bool use_s2);

/// Per-frame static Kaczmarz reconstruction (the classical scheme).
FrameResult reconstruct_frames_kaczmarz(const SystemMatrixPair& pair, const Signal& signal,
                                        const ReconConfig& cfg);

}  // namespace mpidyn
