#pragma once

#include <Eigen/Dense>

#include <utility>
#include <vector>

namespace mpidyn {

/// Per-bin maximum over voxels of |S_hat(k, i)| on the one-sided bins
/// k = 0..n/2 (the inputs are spectra of real sequences, so the upper half
/// mirrors the lower one).
Eigen::VectorXd max_spectrum(const Eigen::MatrixXcd& s_hat);

/// The "convex hull approximation" of a spectrum: the running maximum over a
/// centered window of `window` bins to each side, so every peak within reach
/// is connected through. A lone spectral line becomes a plateau of
/// 2*window+1 bins, which is what makes the reported hull widths come out
/// near twice the window size.
Eigen::VectorXd hull_approximation(const Eigen::VectorXd& m, int window = 15);

struct PeakMetrics {
  bool spacing_defined = false;
  double spacing_bins = 0.0;  // median gap between local maxima above the threshold
  double fwhm_bins = 0.0;     // half-max width around the global maximum; 0 if undefined
  double global_max = 0.0;
  int peak_count = 0;
};

/// Peak statistics of a spectrum curve (raw max-spectrum or hull). Local
/// maxima below `threshold_fraction` of the global maximum are ignored.
PeakMetrics peak_metrics(const Eigen::VectorXd& curve, double threshold_fraction = 0.10);

struct BolusVelocity {
  double average = 0.0;  // [m/s]
  double peak = 0.0;     // [m/s]
};

/// Reference bolus velocities: average rate = traversal of one voxel length in
/// half the peak duration, peak rate = voxel_len * cdot_max / c_max.
BolusVelocity bolus_velocity(double voxel_len, double peak_duration, double c_max,
                             double cdot_max);

}  // namespace mpidyn
