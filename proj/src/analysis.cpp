#include "mpidyn/analysis.hpp"

#include "mpidyn/types.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace mpidyn {

Eigen::VectorXd max_spectrum(const Eigen::MatrixXcd& s_hat) {
  const Eigen::Index half = s_hat.rows() / 2 + 1;
  Eigen::VectorXd m = Eigen::VectorXd::Zero(half);
  for (Eigen::Index k = 0; k < half; ++k)
    for (Eigen::Index i = 0; i < s_hat.cols(); ++i)
      m[k] = std::max(m[k], std::abs(s_hat(k, i)));
  return m;
}

Eigen::VectorXd hull_approximation(const Eigen::VectorXd& m, int window) {
  if (window < 1) throw ConfigError("hull_approximation: window must be >= 1");
  const int n = static_cast<int>(m.size());
  Eigen::VectorXd hull(n);
  for (int k = 0; k < n; ++k) {
    const int lo = std::max(0, k - window);
    const int hi = std::min(n - 1, k + window);
    double best = m[lo];
    for (int j = lo + 1; j <= hi; ++j) best = std::max(best, m[j]);
    hull[k] = best;
  }
  return hull;
}

PeakMetrics peak_metrics(const Eigen::VectorXd& curve, double threshold_fraction) {
  PeakMetrics out;
  const int n = static_cast<int>(curve.size());
  if (n == 0) return out;
  int arg_max = 0;
  for (int k = 1; k < n; ++k)
    if (curve[k] > curve[arg_max]) arg_max = k;
  out.global_max = curve[arg_max];
  if (out.global_max <= 0.0) return out;

  const double threshold = threshold_fraction * out.global_max;
  std::vector<int> peaks;
  for (int k = 1; k + 1 < n; ++k) {
    if (curve[k] < threshold) continue;
    if (curve[k] > curve[k - 1] && curve[k] >= curve[k + 1]) peaks.push_back(k);
  }
  out.peak_count = static_cast<int>(peaks.size());
  if (peaks.size() >= 2) {
    std::vector<double> gaps;
    gaps.reserve(peaks.size() - 1);
    for (size_t j = 1; j < peaks.size(); ++j)
      gaps.push_back(static_cast<double>(peaks[j] - peaks[j - 1]));
    std::sort(gaps.begin(), gaps.end());
    const size_t mid = gaps.size() / 2;
    out.spacing_bins = gaps.size() % 2 == 1 ? gaps[mid] : 0.5 * (gaps[mid - 1] + gaps[mid]);
    out.spacing_defined = true;
  }

  // FWHM around the global maximum with linearly interpolated crossings.
  const double half = 0.5 * out.global_max;
  double left = 0.0;
  {
    int k = arg_max;
    while (k > 0 && curve[k - 1] >= half) --k;
    if (k == 0) {
      left = 0.0;
    } else {
      left = (k - 1) + (half - curve[k - 1]) / (curve[k] - curve[k - 1]);
    }
  }
  double right = static_cast<double>(n - 1);
  {
    int k = arg_max;
    while (k + 1 < n && curve[k + 1] >= half) ++k;
    if (k + 1 < n) {
      right = k + (curve[k] - half) / (curve[k] - curve[k + 1]);
    }
  }
  out.fwhm_bins = right - left;
  return out;
}

BolusVelocity bolus_velocity(double voxel_len, double peak_duration, double c_max,
                             double cdot_max) {
  if (!(voxel_len > 0.0) || !(peak_duration > 0.0))
    throw ConfigError("bolus_velocity: lengths and durations must be positive");
  if (c_max == 0.0) throw ConfigError("bolus_velocity: zero peak concentration");
  BolusVelocity v;
  v.average = 2.0 * voxel_len / peak_duration;
  v.peak = voxel_len * cdot_max / c_max;
  return v;
}

}  // namespace mpidyn
