#pragma once

#include <Eigen/Dense>

#include <array>
#include <vector>

namespace mpidyn {

/// Cubic B-spline basis on a clamped knot vector with uniform interior knots
/// over [0, duration]. With `segments` spans there are segments + 3 basis
/// functions; they form a partition of unity and every basis function is
/// supported on at most four consecutive spans.
class CubicBsplineBasis {
 public:
  CubicBsplineBasis(double duration, int segments);

  int size() const { return segments_ + 3; }  // number of coefficients M
  int segments() const { return segments_; }
  double duration() const { return duration_; }
  double span_width() const { return width_; }
  double knot(int i) const;  // full clamped knot vector, i in [0, size()+4)

  /// Values of the four (at most) non-vanishing basis functions at t together
  /// with their first derivatives; `first` is the index of the first one.
  void evaluate(double t, int& first, std::array<double, 4>& values,
                std::array<double, 4>& derivs) const;

  /// Dense collocation rows (size M).
  Eigen::VectorXd row(double t) const;
  Eigen::VectorXd derivative_row(double t) const;

  /// N x M design matrices for a set of sample times.
  Eigen::MatrixXd design(const std::vector<double>& ts) const;
  Eigen::MatrixXd derivative_design(const std::vector<double>& ts) const;

  /// Least-squares fit of samples (ts, ys). When free_count >= 0 only the
  /// leading free_count coefficients are solved for and the rest are pinned to
  /// zero (used for phantoms that must vanish exactly beyond a frame).
  Eigen::VectorXd fit_least_squares(const std::vector<double>& ts, const Eigen::VectorXd& ys,
                                    int free_count = -1) const;

  /// Index of the first basis function whose support reaches beyond `t`; all
  /// coefficients from this index on can be nonzero without affecting [0, t].
  int first_basis_beyond(double t) const;

 private:
  double duration_;
  int segments_;
  double width_;
};

/// Evaluates sum_m coeffs[m] * B_m(t) (and optionally the derivative).
double spline_value(const CubicBsplineBasis& basis, const Eigen::VectorXd& coeffs, double t);
double spline_derivative(const CubicBsplineBasis& basis, const Eigen::VectorXd& coeffs, double t);

}  // namespace mpidyn
