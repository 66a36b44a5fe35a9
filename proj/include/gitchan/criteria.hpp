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

// Non-classicality decisions for thermal attenuators and the feasibility
// quantities mapped over the (omega_B, Q) plane.

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gitchan/channel.hpp"
#include "gitchan/model.hpp"
#include "gitchan/parallel.hpp"

namespace gitchan::criteria {

namespace detail {
inline void require_channel(double eta, double N) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw std::invalid_argument("eta must lie in [0, 1]");
  if (!(N >= 0.0) || std::isnan(N)) throw std::invalid_argument("N_eff must be >= 0");
}
}  // namespace detail

/// True iff eta < (1 - eta) N. Equality counts as not entanglement-breaking.
inline bool is_entanglement_breaking(double eta, double N) {
  detail::require_channel(eta, N);
  return eta < (1.0 - eta) * N;
}

inline bool is_entanglement_breaking(const channel::AttenuatorChannel& ch) {
  return ch.eta < ch.output_noise();
}

/// A: not entanglement-breaking, B: not LOCC-simulable, C: positive two-way
/// quantum capacity. For thermal attenuators the three coincide and hold iff
/// eta / ((1 - eta) N) > 1.
struct Verdicts {
  bool A = false;
  bool B = false;
  bool C = false;
  double ratio = 0.0;
};

inline Verdicts verdicts_from_ratio(double ratio) {
  const bool q = ratio > 1.0;
  return {q, q, q, ratio};
}

inline Verdicts nonclassicality_criteria(double eta, double N) {
  detail::require_channel(eta, N);
  const double noise = (1.0 - eta) * N;
  const double ratio =
      eta == 0.0 ? 0.0 : (noise > 0.0 ? eta / noise : std::numeric_limits<double>::infinity());
  return verdicts_from_ratio(ratio);
}

inline Verdicts nonclassicality_criteria(const channel::AttenuatorChannel& ch) {
  return verdicts_from_ratio(ch.eta == 0.0 ? 0.0 : ch.ratio());
}

enum class Classification { quantum, classical };

inline std::string_view to_string(Classification c) {
  return c == Classification::quantum ? "quantum" : "classical";
}

inline Classification classify(double ratio) {
  return ratio > 1.0 ? Classification::quantum : Classification::classical;
}

/// 2 Q (w_G / omega_B)^2 sinh(omega_B / 2 w_T): equal to lambda / (gamma sqrt(N_T (N_T + 1)))
/// with lambda = w_G^2 / omega_B and gamma = omega_B / Q. Exceeds 1 exactly where the
/// channel at its optimum is quantum.
inline double parameter_space_ratio(double omega_B, double Q, double w_G, double w_T) {
  const double r = w_G / omega_B;
  return 2.0 * Q * r * r * std::sinh(omega_B / (2.0 * w_T));
}

struct BoundaryQ {
  double Q = 0.0;
  std::optional<std::string> warning;
};

/// Low-frequency boundary Q = w_T omega_B / w_G^2.
inline BoundaryQ low_frequency_boundary_Q(double omega_B, double w_G, double w_T) {
  BoundaryQ b;
  b.Q = w_T * omega_B / (w_G * w_G);
  if (omega_B > w_T / 10.0) {
    b.warning = "omega_B exceeds w_T / 10; the low-frequency boundary is inaccurate here";
  }
  return b;
}

/// Q at which parameter_space_ratio equals 1.
inline double exact_boundary_Q(double omega_B, double w_G, double w_T) {
  const double r = w_G / omega_B;
  return 1.0 / (2.0 * r * r * std::sinh(omega_B / (2.0 * w_T)));
}

/// Optimal transmissivity in terms of (omega_B, Q), with lambda / gamma = Q w_G^2 / omega_B^2.
inline double eta_opt(double omega_B, double Q, double w_G) {
  const double r = Q * (w_G / omega_B) * (w_G / omega_B);
  const double x = 2.0 * r * r;
  return x / (1.0 + std::sqrt(1.0 + 2.0 * x) + x);
}

/// Time needed to resolve the transparency window, 1 / gamma_eff.
inline double minimum_time(const model::SymmetricParams& p) {
  return 1.0 / channel::transparency_linewidth(p);
}

inline double minimum_time(double omega_B, double Q, double w_G) {
  const double r = Q * (w_G / omega_B) * (w_G / omega_B);
  return (Q / omega_B) / (1.0 + std::sqrt(1.0 + 4.0 * r * r));
}

/// Input photons needed for one transmitted photon on average.
inline double minimum_input_photons(double eta_opt) {
  if (!(eta_opt >= 0.0 && eta_opt <= 1.0)) throw std::invalid_argument("eta must lie in [0, 1]");
  return eta_opt > 0.0 ? 1.0 / eta_opt : std::numeric_limits<double>::infinity();
}

/// hbar omega_A / (eta_opt tau_min); +inf when eta_opt = 0 (untestable point).
inline double minimum_power(double eta_opt, double tau_min, double omega_A) {
  if (!(tau_min > 0.0)) throw std::invalid_argument("tau_min must be > 0");
  if (!(omega_A > 0.0)) throw std::invalid_argument("omega_A must be > 0");
  return model::PhysicalConstants::hbar * omega_A * minimum_input_photons(eta_opt) / tau_min;
}

struct FeasibilityPoint {
  double omega_B = 0.0;
  double Q = 0.0;
  double ratio = 0.0;
  Classification classification = Classification::classical;
  double eta_opt = 0.0;
  double tau_min = 0.0;
  double P_min = 0.0;
};

struct GridOptions {
  double omega_B_min = 1e-3;
  double omega_B_max = 1e11;
  double Q_min = 1.0;
  double Q_max = 1e16;
  std::size_t n_omega = 200;
  std::size_t n_Q = 200;
  double omega_A = 1e15;
  unsigned workers = 1;

  void validate() const {
    if (!(omega_B_min > 0.0 && omega_B_max > omega_B_min && std::isfinite(omega_B_max))) {
      throw std::invalid_argument("grid: need 0 < omega_B_min < omega_B_max");
    }
    if (!(Q_min > 0.0 && Q_max > Q_min && std::isfinite(Q_max))) {
      throw std::invalid_argument("grid: need 0 < Q_min < Q_max");
    }
    if (n_omega < 2 || n_Q < 2) throw std::invalid_argument("grid: need at least 2 points per axis");
    if (!(omega_A > 0.0)) throw std::invalid_argument("grid: omega_A must be > 0");
  }
};

/// Point i of n log-spaced points on [lo, hi], endpoints exact.
inline double log_point(double lo, double hi, std::size_t i, std::size_t n) {
  if (i == 0) return lo;
  if (i + 1 == n) return hi;
  const double t = static_cast<double>(i) / static_cast<double>(n - 1);
  return std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo)));
}

inline FeasibilityPoint feasibility_at(double omega_B, double Q, double w_G, double w_T,
                                       double omega_A) {
  FeasibilityPoint f;
  f.omega_B = omega_B;
  f.Q = Q;
  f.ratio = parameter_space_ratio(omega_B, Q, w_G, w_T);
  f.classification = classify(f.ratio);
  f.eta_opt = eta_opt(omega_B, Q, w_G);
  f.tau_min = minimum_time(omega_B, Q, w_G);
  f.P_min = minimum_power(f.eta_opt, f.tau_min, omega_A);
  return f;
}

/// Evaluates the feasibility quantities on a log grid. Rows are Q values, so
/// the result is ordered Q-major: index = iQ * n_omega + iw. The gravitational
/// scale is w_G^2 = G m / d^3 of the device; w_T follows from its temperature.
inline std::vector<FeasibilityPoint> classify_grid(const model::DeviceGeometry& device,
                                                   const GridOptions& opt = {}) {
  opt.validate();
  device.validate();
  const double w_G = std::sqrt(device.coupling_scale_sq());
  const double w_T =
      model::PhysicalConstants::k_B * device.temperature / model::PhysicalConstants::hbar;
  std::vector<FeasibilityPoint> out(opt.n_omega * opt.n_Q);
  parallel_for(opt.n_Q, opt.workers, [&](std::size_t iq) {
    const double Q = log_point(opt.Q_min, opt.Q_max, iq, opt.n_Q);
    for (std::size_t iw = 0; iw < opt.n_omega; ++iw) {
      const double w = log_point(opt.omega_B_min, opt.omega_B_max, iw, opt.n_omega);
      out[iq * opt.n_omega + iw] = feasibility_at(w, Q, w_G, w_T, opt.omega_A);
    }
  });
  return out;
}

}  // namespace gitchan::criteria
