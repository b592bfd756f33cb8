#pragma once

#include <Eigen/Dense>

#include <stdexcept>

namespace mpidyn {

namespace constants {
inline constexpr double pi = 3.14159265358979323846;
inline constexpr double mu0 = 4.0 * pi * 1e-7;          // vacuum permeability [N/A^2]
inline constexpr double k_boltzmann = 1.38064852e-23;    // [J/K]
}  // namespace constants

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Drive/selection field parameters of an FFP scanner. Field quantities are
/// kept in Tesla throughout (gradients in T/m); mu0 is folded into the signal
/// scale eta, never into the fields.
struct ScannerConfig {
  Eigen::Vector3d amplitude{0.012, 0.012, 0.0};  // drive amplitudes a_l [T]
  Eigen::Vector3d frequency{2.5e6 / 102.0, 2.5e6 / 96.0, 2.5e6 / 99.0};  // f_l [Hz]
  Eigen::Vector3d phase{constants::pi / 2.0, constants::pi / 2.0, constants::pi / 2.0};
  Eigen::Vector3d gradient{-1.0, -1.0, 2.0};     // selection gradients g_l [T/m]
  double cycle_time = 652.8e-6;                  // T_c [s]

  void validate() const {
    if (!(cycle_time > 0.0)) throw ConfigError("scanner: cycle_time must be positive");
    for (int l = 0; l < 3; ++l) {
      if (amplitude[l] != 0.0 && gradient[l] == 0.0)
        throw ConfigError("scanner: zero gradient on a driven axis");
    }
  }
};

/// Langevin particle model parameters. alpha and beta are always derived from
/// the stored primaries.
struct ParticleConfig {
  double temperature = 310.0;                               // T [K]
  double saturation_magnetization = 0.6 / constants::mu0;   // M_C [A/m]
  double core_diameter = 20e-9;                             // D [m]

  double core_volume() const {
    return constants::pi * core_diameter * core_diameter * core_diameter / 6.0;
  }
  double magnetic_moment() const { return saturation_magnetization * core_volume(); }  // alpha [A m^2]
  double beta() const { return 1.0 / (constants::k_boltzmann * temperature); }         // [1/J]

  void validate() const {
    if (!(temperature > 0.0 && saturation_magnetization > 0.0 && core_diameter > 0.0))
      throw ConfigError("particle: temperature, magnetization and diameter must be positive");
  }
};

}  // namespace mpidyn
