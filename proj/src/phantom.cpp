#include "mpidyn/phantom.hpp"

#include "mpidyn/fft.hpp"

#include <cmath>

namespace mpidyn {

namespace {

double raised_cosine(double t, double center, double width, double height) {
  const double u = 2.0 * (t - center) / width;
  if (std::abs(u) >= 1.0) return 0.0;
  return 0.5 * height * (1.0 + std::cos(constants::pi * u));
}

// C2 bump: cos^4 profile, value/slope/curvature all vanish at the support edge.
double smooth_bump(double t, double center, double width, double height) {
  const double u = 2.0 * (t - center) / width;
  if (std::abs(u) >= 1.0) return 0.0;
  const double c = std::cos(0.5 * constants::pi * u);
  return height * c * c * c * c;
}

double smooth_bump_rate(double t, double center, double width, double height) {
  const double u = 2.0 * (t - center) / width;
  if (std::abs(u) >= 1.0) return 0.0;
  const double a = 0.5 * constants::pi * u;
  const double c = std::cos(a);
  return -height * 4.0 * c * c * c * std::sin(a) * constants::pi / width;
}

// smootherstep: zero first and second derivatives at both ends.
double smootherstep(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  return x * x * x * (x * (x * 6.0 - 15.0) + 10.0);
}

double smootherstep_rate(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return 30.0 * x * x * (x - 1.0) * (x - 1.0);
}

void require_recon_grid(const Grid& grid, int frames, const char* what) {
  if (grid.nx() != 3 || grid.ny() != 3 || grid.nz() != 1)
    throw ConfigError(std::string(what) + ": requires a 3x3x1 grid");
  if (grid.frame_count() != frames)
    throw ConfigError(std::string(what) + ": wrong frame count for this phantom");
}

// Least-squares fit of a raised-cosine target with coefficients restricted to
// the leading `free_count` basis functions, clamped to keep the curve
// nonnegative (B-splines with nonnegative coefficients are nonnegative).
// Boundary-constrained fits skew the peak, so the target is recentered once
// against the measured argmax and the result rescaled so the fitted curve
// peaks at exactly `height` where it should.
Eigen::VectorXd fit_bump(const CubicBsplineBasis& basis, double center, double width,
                         double height, int free_count) {
  const auto fit_once = [&](double c0) {
    const int per_span = 20;
    const int n = basis.segments() * per_span + 1;
    std::vector<double> ts(static_cast<size_t>(n));
    Eigen::VectorXd ys(n);
    for (int i = 0; i < n; ++i) {
      const double t = basis.duration() * static_cast<double>(i) / (n - 1);
      ts[static_cast<size_t>(i)] = t;
      ys[i] = raised_cosine(t, c0, width, height);
    }
    return Eigen::VectorXd(basis.fit_least_squares(ts, ys, free_count).cwiseMax(0.0));
  };
  const auto peak_of = [&](const Eigen::VectorXd& coeffs) {
    const int dense = basis.segments() * 64;
    double best = 0.0, arg = 0.0;
    for (int i = 0; i <= dense; ++i) {
      const double t = basis.duration() * static_cast<double>(i) / dense;
      const double v = spline_value(basis, coeffs, t);
      if (v > best) {
        best = v;
        arg = t;
      }
    }
    return std::pair{best, arg};
  };

  Eigen::VectorXd coeffs = fit_once(center);
  auto [peak, arg] = peak_of(coeffs);
  if (std::abs(arg - center) > 1e-12 * basis.duration()) {
    coeffs = fit_once(center - (arg - center));
    peak = peak_of(coeffs).first;
  }
  if (peak > 0.0) coeffs *= height / peak;
  return coeffs;
}

}  // namespace

SampledConcentration eval_spline(const SplineConcentration& sc, const Grid& grid) {
  if (sc.coefficients.rows() != sc.basis.size())
    throw ConfigError("eval_spline: coefficient/basis size mismatch");
  if (sc.coefficients.cols() != grid.voxel_count())
    throw ConfigError("eval_spline: coefficient/grid voxel mismatch");
  const double record = grid.frame_count() * grid.cycle_time();
  if (sc.basis.duration() < record * (1.0 - 1e-12))
    throw ConfigError("eval_spline: knot span does not cover the record");

  const int n = grid.record_length();
  const int r = grid.voxel_count();
  SampledConcentration out;
  out.values.resize(n, r);
  out.rates.resize(n, r);
  int first;
  std::array<double, 4> v, d;
  for (int j = 0; j < n; ++j) {
    sc.basis.evaluate(grid.record_time_sample(j), first, v, d);
    for (int i = 0; i < r; ++i) {
      double cv = 0.0, cr = 0.0;
      for (int k = 0; k < 4; ++k) {
        const double b = sc.coefficients(first + k, i);
        cv += b * v[static_cast<size_t>(k)];
        cr += b * d[static_cast<size_t>(k)];
      }
      out.values(j, i) = cv;
      out.rates(j, i) = cr;
    }
  }
  return out;
}

SplineConcentration one_peak_phantom(OnePeakVariant variant, const Grid& grid,
                                     int spans_per_frame) {
  require_recon_grid(grid, 4, "one_peak_phantom");
  const double tc = grid.cycle_time();
  const double height = 2.667;

  double center, width, support_end;
  switch (variant) {
    case OnePeakVariant::one_frame:
      // peak pinned at 0.4128 ms; the widest bump at that center that stays
      // confined to frame 1
      center = 0.4128e-3;
      width = 2.0 * (tc - center);
      support_end = tc;
      break;
    case OnePeakVariant::two_frame:
      center = tc;
      width = 2.0 * tc;
      support_end = 2.0 * tc;
      break;
    case OnePeakVariant::four_frame:
      center = 2.0 * tc;
      width = 4.0 * tc;
      support_end = 4.0 * tc;
      break;
    default:
      throw ConfigError("one_peak_phantom: unknown variant");
  }

  SplineConcentration sc{CubicBsplineBasis(grid.frame_count() * tc,
                                           spans_per_frame * grid.frame_count()),
                         Eigen::MatrixXd(), grid.hash()};
  sc.coefficients = Eigen::MatrixXd::Zero(sc.basis.size(), grid.voxel_count());
  const int free_count = sc.basis.first_basis_beyond(support_end);
  sc.coefficients.col(4) = fit_bump(sc.basis, center, width, height, free_count);  // r_5
  return sc;
}

SplineConcentration three_peak_phantom(const Grid& grid, int spans_per_frame) {
  require_recon_grid(grid, 10, "three_peak_phantom");
  const double tc = grid.cycle_time();
  const double height = 6.67;
  const double width = 4.0 * tc;

  SplineConcentration sc{CubicBsplineBasis(grid.frame_count() * tc,
                                           spans_per_frame * grid.frame_count()),
                         Eigen::MatrixXd(), grid.hash()};
  sc.coefficients = Eigen::MatrixXd::Zero(sc.basis.size(), grid.voxel_count());
  // bumps peak mid-frame in frames 3, 4, 5 for voxels r_4, r_5, r_6
  for (int k = 0; k < 3; ++k) {
    const double center = (2.5 + k) * tc;
    sc.coefficients.col(3 + k) = fit_bump(sc.basis, center, width, height, -1);
  }
  return sc;
}

SplineConcentration zero_phantom(const Grid& grid, int spans_per_frame) {
  SplineConcentration sc{CubicBsplineBasis(grid.frame_count() * grid.cycle_time(),
                                           spans_per_frame * grid.frame_count()),
                         Eigen::MatrixXd(), grid.hash()};
  sc.coefficients = Eigen::MatrixXd::Zero(sc.basis.size(), grid.voxel_count());
  return sc;
}

ExampleConcentration example_concentration(int kind, int samples_per_cycle, double cycle_time) {
  if (samples_per_cycle < 2) throw ConfigError("example_concentration: too few samples");
  const double tc = cycle_time;
  ExampleConcentration out;
  out.values.resize(samples_per_cycle);
  out.rates.resize(samples_per_cycle);

  auto fill = [&](auto&& value, auto&& rate) {
    for (int j = 0; j < samples_per_cycle; ++j) {
      const double t = static_cast<double>(j) * tc / (samples_per_cycle - 1);
      out.values[j] = value(t);
      out.rates[j] = rate(t);
    }
  };

  // Pulse widths sit where both reference observations hold: the spectral
  // ratio max|c_hat|/max|dc_hat| stays near 1e-4 and the two split terms of
  // the dynamic model keep comparable magnitude (kind 3).
  switch (kind) {
    case 1: {  // short pulse near the start of the cycle
      const double c = 0.18 * tc, w = 0.14 * tc;
      fill([=](double t) { return smooth_bump(t, c, w, 1.0); },
           [=](double t) { return smooth_bump_rate(t, c, w, 1.0); });
      break;
    }
    case 2: {  // fast rise, plateau, fast fall
      const double ramp = 0.10 * tc, up = 0.15 * tc, plateau = tc / 3.0;
      const double down = up + ramp + plateau;
      fill(
          [=](double t) {
            return smootherstep((t - up) / ramp) - smootherstep((t - down) / ramp);
          },
          [=](double t) {
            return (smootherstep_rate((t - up) / ramp) - smootherstep_rate((t - down) / ramp)) /
                   ramp;
          });
      break;
    }
    case 3: {  // the slowest single bump, centered in the cycle
      const double c = 0.5 * tc, w = 0.18 * tc;
      fill([=](double t) { return smooth_bump(t, c, w, 1.0); },
           [=](double t) { return smooth_bump_rate(t, c, w, 1.0); });
      break;
    }
    case 4: {  // two short pulses, equal height
      const double c1 = 0.25 * tc, c2 = 0.75 * tc, w = 0.14 * tc;
      fill(
          [=](double t) {
            return smooth_bump(t, c1, w, 1.0) + smooth_bump(t, c2, w, 1.0);
          },
          [=](double t) {
            return smooth_bump_rate(t, c1, w, 1.0) + smooth_bump_rate(t, c2, w, 1.0);
          });
      break;
    }
    default:
      throw ConfigError("example_concentration: kind must be 1..4");
  }

  out.spectrum = dft_forward(out.values);
  out.rate_spectrum = dft_forward(out.rates);
  return out;
}

}  // namespace mpidyn
