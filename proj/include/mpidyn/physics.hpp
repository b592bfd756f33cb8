#pragma once

#include "mpidyn/types.hpp"

namespace mpidyn {

/// Drive field value and its analytic time derivative.
struct FieldSample {
  Eigen::Vector3d field;  // H_D(t) [T]
  Eigen::Vector3d rate;   // dH_D/dt [T/s]
};

/// Static selection field diag(g) * r; zero at the origin.
Eigen::Vector3d selection_field(const Eigen::Vector3d& r, const ScannerConfig& cfg);

/// Sinusoidal drive field a_l sin(2 pi f_l t + phi_l) with analytic derivative.
FieldSample drive_field(double t, const ScannerConfig& cfg);

/// Field-free point at time t: r_l = -H_D,l(t) / g_l.
/// Throws ConfigError when a driven axis has zero gradient.
Eigen::Vector3d ffp_position(double t, const ScannerConfig& cfg);

/// Langevin function L(z) = alpha*coth(alpha*beta*z) - 1/(beta*z), odd, L(0)=0.
/// Switches to the Taylor branch for |alpha*beta*z| < 1e-4.
double langevin(double z, const ParticleConfig& p);

/// Equilibrium mean magnetic moment m = L(|H|) H/|H| at (r, t).
Eigen::Vector3d mean_moment(const Eigen::Vector3d& r, double t, const ScannerConfig& cfg,
                            const ParticleConfig& p);

/// Analytic time derivative of mean_moment (chain rule through the drive field).
Eigen::Vector3d mean_moment_dt(const Eigen::Vector3d& r, double t, const ScannerConfig& cfg,
                               const ParticleConfig& p);

/// Evaluates moment and its time derivative together for a precomputed drive
/// sample; this is the kernel the system-matrix assembly loops over.
void mean_moment_pair(const Eigen::Vector3d& selection, const FieldSample& drive,
                      const ParticleConfig& p, Eigen::Vector3d& moment,
                      Eigen::Vector3d& moment_dt);

namespace detail {
// Reduced Langevin g(x) = coth(x) - 1/x evaluated on x = alpha*beta*z >= 0.
// The three branches are exposed so the threshold-continuity tests can compare
// them at the switch points.
double langevin_reduced(double x);
double langevin_reduced_series(double x);
double langevin_reduced_closed(double x);
// g(x)/x and (g'(x) - g(x)/x)/x^2, both finite at x = 0.
double langevin_slope(double x);
double langevin_curvature(double x);
}  // namespace detail

}  // namespace mpidyn
