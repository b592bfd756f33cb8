#include "mpidyn/spline.hpp"

#include "mpidyn/types.hpp"

#include <cmath>

namespace mpidyn {

CubicBsplineBasis::CubicBsplineBasis(double duration, int segments)
    : duration_(duration), segments_(segments), width_(duration / segments) {
  if (!(duration > 0.0)) throw ConfigError("spline: duration must be positive");
  if (segments < 1) throw ConfigError("spline: need at least one knot span");
}

double CubicBsplineBasis::knot(int i) const {
  // clamped: [0,0,0,0, h, 2h, ..., (S-1)h, d, d, d, d]
  if (i <= 3) return 0.0;
  if (i >= segments_ + 3) return duration_;
  return width_ * static_cast<double>(i - 3);
}

void CubicBsplineBasis::evaluate(double t, int& first, std::array<double, 4>& values,
                                 std::array<double, 4>& derivs) const {
  if (t < 0.0 || t > duration_ * (1.0 + 1e-12))
    throw ConfigError("spline: evaluation point outside the knot span");
  int cell = static_cast<int>(std::floor(t / width_));
  if (cell >= segments_) cell = segments_ - 1;  // t == duration lands in the last span
  const int s = cell + 3;                       // knot span index with U[s] <= t < U[s+1]
  first = s - 3;

  // Cox-de Boor (NURBS book A2.2) up to degree 3, keeping the degree-2 row
  // for the derivative formula.
  double n[4] = {1.0, 0.0, 0.0, 0.0};
  double n2[3] = {0.0, 0.0, 0.0};
  double left[4], right[4];
  for (int j = 1; j <= 3; ++j) {
    left[j] = t - knot(s + 1 - j);
    right[j] = knot(s + j) - t;
    double saved = 0.0;
    for (int r = 0; r < j; ++r) {
      const double temp = n[r] / (right[r + 1] + left[j - r]);
      n[r] = saved + right[r + 1] * temp;
      saved = left[j - r] * temp;
    }
    n[j] = saved;
    if (j == 2) {
      n2[0] = n[0];
      n2[1] = n[1];
      n2[2] = n[2];
    }
  }
  for (int r = 0; r < 4; ++r) values[static_cast<size_t>(r)] = n[r];

  // B'_{m,3} = 3 [ B_{m,2}/(U_{m+3}-U_m) - B_{m+1,2}/(U_{m+4}-U_{m+1}) ];
  // at span s only B_{s-2..s,2} are nonzero.
  auto ratio = [this](double num, int lo, int hi) {
    const double den = knot(hi) - knot(lo);
    return den > 0.0 ? num / den : 0.0;
  };
  derivs[0] = 3.0 * (0.0 - ratio(n2[0], s - 2, s + 1));
  derivs[1] = 3.0 * (ratio(n2[0], s - 2, s + 1) - ratio(n2[1], s - 1, s + 2));
  derivs[2] = 3.0 * (ratio(n2[1], s - 1, s + 2) - ratio(n2[2], s, s + 3));
  derivs[3] = 3.0 * (ratio(n2[2], s, s + 3) - 0.0);
}

Eigen::VectorXd CubicBsplineBasis::row(double t) const {
  Eigen::VectorXd r = Eigen::VectorXd::Zero(size());
  int first;
  std::array<double, 4> v, d;
  evaluate(t, first, v, d);
  for (int k = 0; k < 4; ++k)
    if (first + k < size()) r[first + k] = v[static_cast<size_t>(k)];
  return r;
}

Eigen::VectorXd CubicBsplineBasis::derivative_row(double t) const {
  Eigen::VectorXd r = Eigen::VectorXd::Zero(size());
  int first;
  std::array<double, 4> v, d;
  evaluate(t, first, v, d);
  for (int k = 0; k < 4; ++k)
    if (first + k < size()) r[first + k] = d[static_cast<size_t>(k)];
  return r;
}

Eigen::MatrixXd CubicBsplineBasis::design(const std::vector<double>& ts) const {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(ts.size()), size());
  for (size_t i = 0; i < ts.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = row(ts[i]).transpose();
  return m;
}

Eigen::MatrixXd CubicBsplineBasis::derivative_design(const std::vector<double>& ts) const {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(ts.size()), size());
  for (size_t i = 0; i < ts.size(); ++i)
    m.row(static_cast<Eigen::Index>(i)) = derivative_row(ts[i]).transpose();
  return m;
}

Eigen::VectorXd CubicBsplineBasis::fit_least_squares(const std::vector<double>& ts,
                                                     const Eigen::VectorXd& ys,
                                                     int free_count) const {
  if (static_cast<Eigen::Index>(ts.size()) != ys.size())
    throw ConfigError("spline fit: sample count mismatch");
  if (free_count < 0 || free_count > size()) free_count = size();
  if (free_count == 0) return Eigen::VectorXd::Zero(size());
  const Eigen::MatrixXd full = design(ts);
  const Eigen::MatrixXd a = full.leftCols(free_count);
  const Eigen::VectorXd sol = a.colPivHouseholderQr().solve(ys);
  Eigen::VectorXd coeffs = Eigen::VectorXd::Zero(size());
  coeffs.head(free_count) = sol;
  return coeffs;
}

int CubicBsplineBasis::first_basis_beyond(double t) const {
  const double tol = 1e-9 * duration_;
  int m = 0;
  while (m < size() && knot(m + 4) <= t + tol) ++m;
  return m;
}

double spline_value(const CubicBsplineBasis& basis, const Eigen::VectorXd& coeffs, double t) {
  int first;
  std::array<double, 4> v, d;
  basis.evaluate(t, first, v, d);
  double acc = 0.0;
  for (int k = 0; k < 4; ++k) acc += coeffs[first + k] * v[static_cast<size_t>(k)];
  return acc;
}

double spline_derivative(const CubicBsplineBasis& basis, const Eigen::VectorXd& coeffs, double t) {
  int first;
  std::array<double, 4> v, d;
  basis.evaluate(t, first, v, d);
  double acc = 0.0;
  for (int k = 0; k < 4; ++k) acc += coeffs[first + k] * d[static_cast<size_t>(k)];
  return acc;
}

}  // namespace mpidyn
