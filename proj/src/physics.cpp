#include "mpidyn/physics.hpp"

#include <cmath>

namespace mpidyn {

namespace {
constexpr double series_threshold = 1e-4;  // switch point on x = alpha*beta*|z|
constexpr double expm1_threshold = 1.0;    // below: cancellation-safe expm1 form
constexpr double sinh_guard = 350.0;       // 1/sinh^2 underflows long before this
}  // namespace

Eigen::Vector3d selection_field(const Eigen::Vector3d& r, const ScannerConfig& cfg) {
  return cfg.gradient.cwiseProduct(r);
}

FieldSample drive_field(double t, const ScannerConfig& cfg) {
  FieldSample s;
  for (int l = 0; l < 3; ++l) {
    const double omega = 2.0 * constants::pi * cfg.frequency[l];
    const double arg = omega * t + cfg.phase[l];
    s.field[l] = cfg.amplitude[l] * std::sin(arg);
    s.rate[l] = cfg.amplitude[l] * omega * std::cos(arg);
  }
  return s;
}

Eigen::Vector3d ffp_position(double t, const ScannerConfig& cfg) {
  const FieldSample d = drive_field(t, cfg);
  Eigen::Vector3d r = Eigen::Vector3d::Zero();
  for (int l = 0; l < 3; ++l) {
    if (cfg.gradient[l] == 0.0) {
      if (cfg.amplitude[l] != 0.0)
        throw ConfigError("ffp_position: zero gradient on a driven axis");
      continue;  // undriven, unencoded axis: field-free everywhere, pick 0
    }
    r[l] = -d.field[l] / cfg.gradient[l];
  }
  return r;
}

namespace detail {

double langevin_reduced_series(double x) {
  const double x2 = x * x;
  return x / 3.0 - x * x2 / 45.0;
}

double langevin_reduced_closed(double x) {
  if (x < expm1_threshold) {
    // coth(x) - 1/x = (2x - u + u x) / (x u), u = e^{2x} - 1.
    const double u = std::expm1(2.0 * x);
    return (2.0 * x - u + u * x) / (x * u);
  }
  return 1.0 / std::tanh(x) - 1.0 / x;
}

double langevin_reduced(double x) {
  return x < series_threshold ? langevin_reduced_series(x) : langevin_reduced_closed(x);
}

double langevin_slope(double x) {
  if (x < 1e-2) {
    const double x2 = x * x;
    return 1.0 / 3.0 - x2 / 45.0 + 2.0 * x2 * x2 / 945.0;
  }
  return langevin_reduced(x) / x;
}

double langevin_curvature(double x) {
  if (x < 1e-2) {
    const double x2 = x * x;
    return -2.0 / 45.0 + 8.0 * x2 / 945.0;
  }
  double deriv;  // g'(x) = 1/x^2 - 1/sinh^2(x)
  if (x > sinh_guard) {
    deriv = 1.0 / (x * x);
  } else {
    const double s = std::sinh(x);
    deriv = 1.0 / (x * x) - 1.0 / (s * s);
  }
  return (deriv - langevin_reduced(x) / x) / (x * x);
}

}  // namespace detail

double langevin(double z, const ParticleConfig& p) {
  const double alpha = p.magnetic_moment();
  const double x = alpha * p.beta() * std::abs(z);
  const double value = alpha * detail::langevin_reduced(x);
  return z < 0.0 ? -value : value;
}

void mean_moment_pair(const Eigen::Vector3d& selection, const FieldSample& drive,
                      const ParticleConfig& p, Eigen::Vector3d& moment,
                      Eigen::Vector3d& moment_dt) {
  const double alpha = p.magnetic_moment();
  const double beta = p.beta();
  const double ab = alpha * beta;

  const Eigen::Vector3d h = selection + drive.field;
  const double hn = h.norm();
  const double x = ab * hn;

  // m = q(|H|) H with q = alpha*beta*... expressed through the reduced Langevin:
  //   q(h) = alpha^2 beta * g(x)/x
  // dm/dt = q(h) dH/dt + alpha (alpha beta)^3 w(x) (H . dH/dt) H,
  //   w(x) = (g'(x) - g(x)/x)/x^2; both q and w are finite at x = 0.
  const double q = alpha * ab * detail::langevin_slope(x);
  const double w = alpha * ab * ab * ab * detail::langevin_curvature(x);

  moment = q * h;
  moment_dt = q * drive.rate + w * h.dot(drive.rate) * h;
}

Eigen::Vector3d mean_moment(const Eigen::Vector3d& r, double t, const ScannerConfig& cfg,
                            const ParticleConfig& p) {
  Eigen::Vector3d m, mdot;
  mean_moment_pair(selection_field(r, cfg), drive_field(t, cfg), p, m, mdot);
  return m;
}

Eigen::Vector3d mean_moment_dt(const Eigen::Vector3d& r, double t, const ScannerConfig& cfg,
                               const ParticleConfig& p) {
  Eigen::Vector3d m, mdot;
  mean_moment_pair(selection_field(r, cfg), drive_field(t, cfg), p, m, mdot);
  return mdot;
}

}  // namespace mpidyn
