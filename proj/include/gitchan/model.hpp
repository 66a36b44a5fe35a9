// Copyright 2026 The git-channel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Physical constants, parameter sets of the two optomechanical systems and the
// derived quantities that do not need the transfer-function machinery.
//
// Every rate and frequency is an angular frequency in s^-1.

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace gitchan::model {

struct PhysicalConstants {
  static constexpr double G = 6.674e-11;       // m^3 kg^-1 s^-2
  static constexpr double hbar = 1.0546e-34;   // J s
  static constexpr double k_B = 1.3807e-23;    // J K^-1
  static constexpr double rho_Au = 1.93e4;     // kg m^-3
};

namespace detail {

inline void require_finite(const char* name, double value) {
  if (!std::isfinite(value)) {
    throw std::invalid_argument(std::string(name) + " must be finite");
  }
}

inline void require_positive(const char* name, double value) {
  require_finite(name, value);
  if (!(value > 0.0)) {
    throw std::invalid_argument(std::string(name) + " must be > 0");
  }
}

inline void require_non_negative(const char* name, double value) {
  require_finite(name, value);
  if (value < 0.0) {
    throw std::invalid_argument(std::string(name) + " must be >= 0");
  }
}

}  // namespace detail

struct Temperature {
  double kelvin;
};

struct Occupation {
  double n;
};

/// A mechanical bath is specified either by its temperature or directly by
/// its mean occupation, never both.
using Bath = std::variant<Temperature, Occupation>;

/// Bose-Einstein occupation 1/(exp(hbar w / k_B T) - 1); zero at T = 0.
inline double thermal_occupation(double omega_B, Temperature T) {
  detail::require_positive("omega_B", omega_B);
  detail::require_non_negative("temperature", T.kelvin);
  if (T.kelvin == 0.0) return 0.0;
  const double x = PhysicalConstants::hbar * omega_B / (PhysicalConstants::k_B * T.kelvin);
  return 1.0 / std::expm1(x);
}

inline double occupation_of(const Bath& bath, double omega_B) {
  if (const auto* t = std::get_if<Temperature>(&bath)) {
    return thermal_occupation(omega_B, *t);
  }
  const double n = std::get<Occupation>(bath).n;
  detail::require_non_negative("N_T", n);
  return n;
}

/// Identical optomechanical systems in the resonant (Delta = omega_B) frame.
struct SymmetricParams {
  double omega_B = 0.0;
  double gamma = 0.0;
  double kappa = 0.0;
  double g = 0.0;
  double lambda = 0.0;
  double N_T = 0.0;
  double Delta = 0.0;

  static SymmetricParams make(double omega_B, double gamma, double kappa, double g,
                              double lambda, const Bath& bath) {
    SymmetricParams p;
    p.omega_B = omega_B;
    p.gamma = gamma;
    p.kappa = kappa;
    p.g = g;
    p.lambda = lambda;
    p.N_T = occupation_of(bath, omega_B);
    p.Delta = omega_B;
    p.validate();
    return p;
  }

  void validate() const {
    detail::require_positive("omega_B", omega_B);
    detail::require_positive("gamma", gamma);
    detail::require_positive("kappa", kappa);
    detail::require_non_negative("g", g);
    detail::require_non_negative("lambda", lambda);
    detail::require_non_negative("N_T", N_T);
    detail::require_finite("Delta", Delta);
  }
};

/// Two possibly different systems coupled by the same gravitational rate.
/// Frequencies follow the laser frame: omega = 0 is the pump frequency.
struct AsymmetricParams {
  struct System {
    double omega_B = 0.0;
    double gamma = 0.0;
    double kappa = 0.0;
    double g = 0.0;
    double Delta = 0.0;
    double N_T = 0.0;
  };

  std::array<System, 2> sys{};
  double lambda = 0.0;

  static AsymmetricParams from_symmetric(const SymmetricParams& p) {
    AsymmetricParams a;
    for (auto& s : a.sys) {
      s = System{p.omega_B, p.gamma, p.kappa, p.g, p.Delta, p.N_T};
    }
    a.lambda = p.lambda;
    return a;
  }

  /// The symmetric view, when every paired field agrees exactly.
  std::optional<SymmetricParams> as_symmetric() const {
    const auto& a = sys[0];
    const auto& b = sys[1];
    if (a.omega_B != b.omega_B || a.gamma != b.gamma || a.kappa != b.kappa || a.g != b.g ||
        a.Delta != b.Delta || a.N_T != b.N_T) {
      return std::nullopt;
    }
    SymmetricParams p;
    p.omega_B = a.omega_B;
    p.gamma = a.gamma;
    p.kappa = a.kappa;
    p.g = a.g;
    p.lambda = lambda;
    p.N_T = a.N_T;
    p.Delta = a.Delta;
    return p;
  }

  void validate() const {
    for (const auto& s : sys) {
      detail::require_positive("omega_B", s.omega_B);
      detail::require_positive("gamma", s.gamma);
      detail::require_positive("kappa", s.kappa);
      detail::require_non_negative("g", s.g);
      detail::require_finite("Delta", s.Delta);
      detail::require_non_negative("N_T", s.N_T);
    }
    detail::require_non_negative("lambda", lambda);
  }

  /// Non-fatal validity notes. The model assumes |omega_B1 - omega_B2| << omega_B1.
  std::vector<std::string> warnings(double closeness = 0.1) const {
    std::vector<std::string> out;
    const double split = std::abs(sys[0].omega_B - sys[1].omega_B);
    if (split > closeness * sys[0].omega_B) {
      out.push_back("mechanical frequencies differ by more than " +
                    std::to_string(closeness) + " of omega_B_1; the model assumes they are close");
    }
    return out;
  }
};

/// Two homogeneous spheres at centre distance d.
struct DeviceGeometry {
  double mass = 0.0;
  double distance = 0.0;
  double radius = 0.0;
  double density = 0.0;
  double temperature = 0.0;

  /// Mass from (R, rho); distance defaults to touching spheres, d = 2R.
  static DeviceGeometry spheres(double radius, double density, double temperature,
                                std::optional<double> distance = std::nullopt) {
    DeviceGeometry d;
    d.radius = radius;
    d.density = density;
    d.temperature = temperature;
    d.mass = 4.0 / 3.0 * std::numbers::pi * radius * radius * radius * density;
    d.distance = distance.value_or(2.0 * radius);
    d.validate();
    return d;
  }

  void validate() const {
    detail::require_positive("radius", radius);
    detail::require_positive("mass", mass);
    detail::require_positive("density", density);
    detail::require_positive("temperature", temperature);
    detail::require_finite("distance", distance);
    if (distance < 2.0 * radius * (1.0 - 1e-12)) {
      throw std::invalid_argument("distance must be >= 2 * radius");
    }
  }

  /// G m / d^3, the squared gravitational frequency scale of this geometry.
  /// Equals w_G^2 = pi G rho / 6 for touching spheres.
  double coupling_scale_sq() const {
    return PhysicalConstants::G * mass / (distance * distance * distance);
  }
};

/// lambda = G m / (d^3 omega_B).
inline double lambda_spheres(double mass, double distance, double omega_B) {
  detail::require_positive("mass", mass);
  detail::require_positive("distance", distance);
  detail::require_positive("omega_B", omega_B);
  return PhysicalConstants::G * mass / (distance * distance * distance * omega_B);
}

struct CriticalFrequencies {
  double w_G = 0.0;
  double w_T = 0.0;
};

inline CriticalFrequencies critical_frequencies(double rho, Temperature T) {
  detail::require_positive("density", rho);
  detail::require_positive("temperature", T.kelvin);
  return {std::sqrt(std::numbers::pi * PhysicalConstants::G * rho / 6.0),
          PhysicalConstants::k_B * T.kelvin / PhysicalConstants::hbar};
}

struct RwaCheck {
  bool valid = false;
  double margin = 0.0;          // N_T / bound; +inf when the bound is zero
  double bound = 0.0;           // g^2 kappa / (gamma omega_B^2)
  double coupling_ratio = 0.0;  // g / kappa
};

/// Rotating-wave validity: thermal noise must dominate the light-induced
/// back-action noise, N_T >> g^2 kappa / (gamma omega_B^2), and g << kappa.
/// "Much greater" is read as a factor of margin_factor.
inline RwaCheck rwa_valid(const SymmetricParams& p, double margin_factor = 10.0) {
  RwaCheck r;
  r.bound = p.g * p.g * p.kappa / (p.gamma * p.omega_B * p.omega_B);
  r.margin = r.bound > 0.0 ? p.N_T / r.bound : std::numeric_limits<double>::infinity();
  r.coupling_ratio = p.g / p.kappa;
  const bool noise_ok = r.bound == 0.0 || p.N_T > margin_factor * r.bound;
  const bool weak = r.coupling_ratio * margin_factor <= 1.0;
  r.valid = std::isfinite(r.bound) && noise_ok && weak;
  return r;
}

struct Cooperativities {
  double Gamma_1 = 0.0;
  double Gamma_2 = 0.0;
  double Gamma_lambda = 0.0;
  double x_1 = 0.0;
  double x_2 = 0.0;
  double y_1 = 0.0;
  double y_2 = 0.0;
  std::complex<double> varrho;
  std::complex<double> varsigma;
};

/// Optomechanical and gravitational cooperativities with the relative
/// detunings at laser-frame frequency omega.
inline Cooperativities cooperativities(const AsymmetricParams& p, double omega) {
  using cplx = std::complex<double>;
  constexpr cplx I{0.0, 1.0};
  const auto& s1 = p.sys[0];
  const auto& s2 = p.sys[1];
  Cooperativities c;
  c.Gamma_1 = 4.0 * s1.g * s1.g / (s1.kappa * s1.gamma);
  c.Gamma_2 = 4.0 * s2.g * s2.g / (s2.kappa * s2.gamma);
  c.Gamma_lambda = 4.0 * p.lambda * p.lambda / (s1.gamma * s2.gamma);
  c.x_1 = 2.0 * (s1.Delta - omega) / s1.kappa;
  c.x_2 = 2.0 * (s2.Delta - omega) / s2.kappa;
  c.y_1 = 2.0 * (s1.omega_B - omega) / s1.gamma;
  c.y_2 = 2.0 * (s2.omega_B - omega) / s2.gamma;
  c.varrho = (1.0 + I * c.x_1) * (1.0 + I * c.y_1) + c.Gamma_1;
  c.varsigma =
      (1.0 + I * c.x_2) * ((1.0 + I * c.y_2) + (1.0 + I * c.x_1) * c.Gamma_lambda / c.varrho);
  return c;
}

/// hbar G m / (gamma k_B T d^3): the gravity-induced-entanglement rate over the
/// thermal decoherence rate. In the low-frequency limit it coincides with the
/// channel criterion lambda / (gamma N_T).
inline double git_vs_gie_ratio(const DeviceGeometry& geometry, double gamma) {
  geometry.validate();
  detail::require_positive("gamma", gamma);
  const double d3 = geometry.distance * geometry.distance * geometry.distance;
  return PhysicalConstants::hbar * PhysicalConstants::G * geometry.mass /
         (gamma * PhysicalConstants::k_B * geometry.temperature * d3);
}

}  // namespace gitchan::model
