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

// The gravitationally-induced optical channel: drift matrix, transfer
// coefficients of the second cavity's output, and the thermal-attenuator
// description (eta, N, phi) derived from them.
//
// Symmetric-case frequencies are interaction-picture frequencies, 0 being the
// cavity resonance. The asymmetric model works in the laser frame; see
// to_laser_frame / to_interaction_frame.

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "gitchan/errors.hpp"
#include "gitchan/linalg.hpp"
#include "gitchan/model.hpp"

namespace gitchan::channel {

using cplx = std::complex<double>;
inline constexpr cplx I{0.0, 1.0};

/// Below this loss the channel is treated as noiseless and N_eff is reported as 0.
inline constexpr double kNoiselessLoss = 1e-15;

struct TransferCoefficients {
  cplx alpha_1;  // a_in1
  cplx beta_1;   // b_in1
  cplx alpha_2;  // a_in2
  cplx beta_2;   // b_in2
  double omega = 0.0;

  double unitarity_sum() const {
    return std::norm(alpha_1) + std::norm(beta_1) + std::norm(alpha_2) + std::norm(beta_2);
  }
  std::array<cplx, 4> as_array() const { return {alpha_1, beta_1, alpha_2, beta_2}; }
};

struct AttenuatorChannel {
  double eta = 0.0;
  double loss = 1.0;   // 1 - eta, accumulated from the non-transmitted weights
  double n_eff = 0.0;
  double phi = 0.0;
  double omega = 0.0;
  bool noiseless_limit = false;

  /// Output noise (1 - eta) N in units of quanta.
  double output_noise() const { return loss * n_eff; }

  /// eta / ((1 - eta) N); +inf for a noiseless channel.
  double ratio() const {
    const double noise = output_noise();
    return noise > 0.0 ? eta / noise : std::numeric_limits<double>::infinity();
  }
};

struct DriftSystem {
  linalg::ComplexMatrix A;
  std::vector<double> B;  // diagonal of the input matrix
};

/// Drift and input matrices for mode order (a1, b1, a2, b2).
inline DriftSystem drift_matrix(const model::SymmetricParams& p) {
  const double k = p.kappa / 2.0;
  const double m = p.gamma / 2.0;
  const cplx ig = I * p.g;
  const cplx il = I * p.lambda;
  DriftSystem s;
  s.A = linalg::ComplexMatrix{{-k, -ig, 0.0, 0.0},
                              {-ig, -m, 0.0, -il},
                              {0.0, 0.0, -k, -ig},
                              {0.0, -il, -ig, -m}};
  s.B = {std::sqrt(p.kappa), std::sqrt(p.gamma), std::sqrt(p.kappa), std::sqrt(p.gamma)};
  return s;
}

namespace detail {

/// Rates and frequency divided by omega_B. Transfer coefficients are
/// dimensionless, so they are unchanged, and intermediate products stay in range
/// when gamma is many orders of magnitude below kappa.
struct Scaled {
  double kappa, gamma, g, lambda, omega;
};

inline Scaled scaled(const model::SymmetricParams& p, double omega) {
  const double s = p.omega_B;
  return {p.kappa / s, p.gamma / s, p.g / s, p.lambda / s, omega / s};
}

inline void require_usable_det(cplx det) {
  if (!(std::isfinite(det.real()) && std::isfinite(det.imag())) || det == 0.0) {
    throw SingularMatrixError("det(A + i omega) vanishes", std::numeric_limits<double>::infinity());
  }
}

}  // namespace detail

/// det(A + i omega) in units of omega_B^4.
inline cplx scaled_determinant(const model::SymmetricParams& p, double omega) {
  const auto s = detail::scaled(p, omega);
  const cplx u = s.kappa / 2.0 - I * s.omega;
  const cplx v = s.gamma / 2.0 - I * s.omega;
  const cplx uv = u * v + s.g * s.g;
  return uv * uv + s.lambda * s.lambda * u * u;
}

/// Closed-form coefficients.
inline TransferCoefficients transfer_coefficients_analytic(const model::SymmetricParams& p,
                                                           double omega) {
  const auto s = detail::scaled(p, omega);
  const double k = s.kappa, ga = s.gamma, g = s.g, l = s.lambda, w = s.omega;
  const cplx det = scaled_determinant(p, omega);
  detail::require_usable_det(det);

  const double g2 = g * g, l2 = l * l, w2 = w * w;
  const double skg = std::sqrt(k * ga);

  TransferCoefficients c;
  c.omega = omega;
  c.alpha_1 = k * I * g2 * l / det;
  c.beta_1 = skg * g * l * (I * w - k / 2.0) / det;
  const cplx num = g2 * ga / 2.0 - I * g2 * w + k * ga * ga / 8.0 - I * k * ga * w / 2.0 +
                   k * l2 / 2.0 - k * w2 / 2.0 - I * ga * ga * w / 4.0 - ga * w2 - I * l2 * w +
                   I * w2 * w;
  c.alpha_2 = k * num / det - 1.0;
  c.beta_2 = skg * g * (-I * g2 - I * k * ga / 4.0 - k * w / 2.0 - ga * w / 2.0 + I * w2) / det;
  return c;
}

/// Coefficients from a generic linear solve of (A + i omega) r = -B r_in,
/// followed by a_out2 = sqrt(kappa) a2 - a_in2.
inline TransferCoefficients transfer_coefficients_numeric(const model::SymmetricParams& p,
                                                          double omega) {
  model::SymmetricParams q = p;
  const double scale = p.omega_B;
  q.kappa /= scale;
  q.gamma /= scale;
  q.g /= scale;
  q.lambda /= scale;
  const double w = omega / scale;
  auto sys = drift_matrix(q);
  linalg::ComplexMatrix M = sys.A;
  for (std::size_t i = 0; i < 4; ++i) M(i, i) += I * w;

  std::array<cplx, 4> row{};
  for (std::size_t j = 0; j < 4; ++j) {
    std::vector<cplx> rhs(4, 0.0);
    rhs[j] = -sys.B[j];
    const auto x = linalg::solve(M, rhs);
    row[j] = std::sqrt(q.kappa) * x[2];
  }
  row[2] -= 1.0;

  TransferCoefficients c;
  c.omega = omega;
  c.alpha_1 = row[0];
  c.beta_1 = row[1];
  c.alpha_2 = row[2];
  c.beta_2 = row[3];
  return c;
}

/// Thermal-attenuator view of a set of coefficients. Both mechanical baths hold
/// N_T quanta; optical inputs are vacuum.
inline AttenuatorChannel channel_from(const TransferCoefficients& c, double N_T) {
  AttenuatorChannel ch;
  ch.omega = c.omega;
  ch.eta = std::norm(c.alpha_1);
  const double mech = std::norm(c.beta_1) + std::norm(c.beta_2);
  ch.loss = std::norm(c.alpha_2) + mech;
  ch.phi = std::arg(c.alpha_1);
  if (ch.loss < kNoiselessLoss) {
    ch.noiseless_limit = true;
    ch.n_eff = 0.0;
  } else {
    ch.n_eff = mech * N_T / ch.loss;
  }
  return ch;
}

inline AttenuatorChannel channel_at(const model::SymmetricParams& p, double omega) {
  return channel_from(transfer_coefficients_analytic(p, omega), p.N_T);
}

/// eta / ((1 - eta) N) in the simplified form that never divides by 1 - eta.
inline double ratio_at(const model::SymmetricParams& p, double omega) {
  const auto s = detail::scaled(p, omega);
  const double k = s.kappa, ga = s.gamma, g = s.g, l = s.lambda, w = s.omega;
  const double w2 = w * w;
  const double a = g * g + k * ga / 4.0 - w2;
  const double b = k * w / 2.0 + ga * w / 2.0;
  const double den = l * l * (k * k / 4.0 + w2) + a * a + b * b;
  const double num = g * g * k * l * l;
  if (num == 0.0) return 0.0;
  return num / (p.N_T * ga * den);
}

struct OptimalPoint {
  double g_opt = 0.0;
  double eta_opt = 0.0;
  double loss_opt = 1.0;
  double N_opt = 0.0;
  double ratio_opt = 0.0;
  double omega_opt = 0.0;
};

/// Maximum of the non-classicality ratio over (omega, g), reached on resonance.
inline OptimalPoint optimal_point(const model::SymmetricParams& p) {
  OptimalPoint o;
  o.g_opt = std::sqrt(p.kappa) / 2.0 * std::sqrt(std::hypot(p.gamma, 2.0 * p.lambda));
  const double x = 2.0 * (p.lambda / p.gamma) * (p.lambda / p.gamma);
  const double root = 1.0 + std::sqrt(1.0 + 2.0 * x);
  o.eta_opt = x / (root + x);
  o.loss_opt = root / (root + x);
  o.N_opt = p.N_T;
  o.ratio_opt = x == 0.0 ? 0.0 : x / (p.N_T * root);
  o.omega_opt = 0.0;
  return o;
}

inline model::SymmetricParams with_optimal_coupling(model::SymmetricParams p) {
  p.g = optimal_point(p).g_opt;
  return p;
}

/// alpha_2 at (omega = 0, g = g_opt); vanishes identically.
inline cplx reflection_at_optimum(const model::SymmetricParams& p) {
  return transfer_coefficients_analytic(with_optimal_coupling(p), 0.0).alpha_2;
}

/// The off-resonant stationary point omega' of the ratio, when real.
inline std::optional<double> suboptimal_critical_frequency(const model::SymmetricParams& p) {
  const double s = p.omega_B;
  const double g = p.g / s, k = p.kappa / s, ga = p.gamma / s, l = p.lambda / s;
  const double d = g * g - k * k / 8.0 - ga * ga / 8.0 - l * l / 2.0;
  if (d < 0.0) return std::nullopt;
  return std::sqrt(d) * s;
}

/// Transparency linewidth gamma + sqrt(gamma^2 + 4 lambda^2), at g = g_opt.
inline double transparency_linewidth(const model::SymmetricParams& p) {
  return p.gamma + std::hypot(p.gamma, 2.0 * p.lambda);
}

/// Interaction-picture frequency to laser frame: omega_laser = omega + Delta.
inline double to_laser_frame(double omega_interaction, double Delta) {
  return omega_interaction + Delta;
}
inline double to_interaction_frame(double omega_laser, double Delta) {
  return omega_laser - Delta;
}

// ---------------------------------------------------------------------------
// Asymmetric systems.

struct AsymmetricChannel {
  TransferCoefficients coeffs;  // alpha_2 is real, with modulus fixed by unitarity
  AttenuatorChannel channel;
};

/// Channel from system 1 to system 2 at laser-frame frequency omega.
inline AsymmetricChannel asymmetric_channel_at(const model::AsymmetricParams& p, double omega) {
  const auto c = model::cooperativities(p, omega);
  const cplx denom = c.varrho * (c.varsigma + c.Gamma_2);
  const cplx s2 = c.varsigma + c.Gamma_2;
  if (c.varrho == 0.0 || s2 == 0.0) {
    throw SingularMatrixError("asymmetric resonance denominator vanishes",
                              std::numeric_limits<double>::infinity());
  }
  const double sG2 = std::sqrt(c.Gamma_2);
  const double sGl = std::sqrt(c.Gamma_lambda);
  AsymmetricChannel out;
  auto& t = out.coeffs;
  t.omega = omega;
  t.alpha_1 = 2.0 * I * std::sqrt(c.Gamma_lambda * c.Gamma_1) * sG2 / denom;
  t.beta_1 = -2.0 * (1.0 + I * c.x_1) * sGl * sG2 / denom;
  t.beta_2 = -2.0 * I * sG2 / s2;
  const double rest = 1.0 - std::norm(t.alpha_1) - std::norm(t.beta_1) - std::norm(t.beta_2);
  t.alpha_2 = std::sqrt(std::max(0.0, rest));

  auto& ch = out.channel;
  ch.omega = omega;
  ch.eta = std::norm(t.alpha_1);
  ch.loss = std::max(0.0, 1.0 - ch.eta);
  ch.phi = std::arg(t.alpha_1);
  if (ch.loss < kNoiselessLoss) {
    ch.noiseless_limit = true;
  } else {
    ch.n_eff =
        (std::norm(t.beta_1) * p.sys[0].N_T + std::norm(t.beta_2) * p.sys[1].N_T) / ch.loss;
  }
  return out;
}

/// eta / ((1 - eta) N) for the asymmetric channel.
inline double asymmetric_ratio(const model::AsymmetricParams& p, double omega) {
  const auto c = model::cooperativities(p, omega);
  if (c.Gamma_lambda == 0.0 || c.Gamma_1 == 0.0) return 0.0;
  const double x1 = c.x_1;
  return c.Gamma_1 /
         ((1.0 + x1 * x1) * p.sys[0].N_T + std::norm(c.varrho) * p.sys[1].N_T / c.Gamma_lambda);
}

struct TunedParameters {
  double Delta_1 = 0.0;
  double g_1 = 0.0;
  double Delta_2 = 0.0;
  double g_2 = 0.0;
};

/// Detunings and couplings that maximize the ratio (system 1) and the
/// transmissivity (system 2) at omega = omega_B1.
inline TunedParameters asymmetric_optimum(const model::AsymmetricParams& p) {
  const auto& s1 = p.sys[0];
  const auto& s2 = p.sys[1];
  const double N1 = s1.N_T, N2 = s2.N_T;
  if (!(N1 > 0.0 && N2 > 0.0)) {
    throw std::invalid_argument("asymmetric tuning needs N_T > 0 in both systems");
  }
  const double l2 = p.lambda * p.lambda;
  TunedParameters t;
  t.Delta_1 = s1.omega_B;
  const double g1sq =
      s1.kappa / 4.0 * std::sqrt(4.0 * l2 * s1.gamma * N1 / (s2.gamma * N2) + s1.gamma * s1.gamma);
  t.g_1 = std::sqrt(g1sq);

  const double P = (N2 / N1) * std::sqrt(4.0 * l2 * s2.gamma * N1 / (s1.gamma * N2) + s2.gamma * s2.gamma);
  const double Q = s2.gamma * (N2 - N1) / N1;
  const double split = s2.omega_B - s1.omega_B;
  t.Delta_2 = s1.omega_B + s2.kappa * split / (P - Q);
  const double shape = 4.0 * l2 * s2.gamma * N2 / (s1.gamma * N1) +
                       s2.gamma * s2.gamma * (2.0 * N2 - N1) / N1;
  const double g2sq = s2.kappa / 4.0 * (P + Q) * (1.0 + 4.0 * split * split / shape) -
                      s2.kappa * s2.gamma / 2.0 * (N2 - N1) / N1;
  if (!(g2sq > 0.0) || !std::isfinite(g2sq)) {
    throw PhysicsError("no real tuned coupling for system 2 at these parameters");
  }
  t.g_2 = std::sqrt(g2sq);
  return t;
}

inline model::AsymmetricParams apply_tuning(model::AsymmetricParams p, const TunedParameters& t) {
  p.sys[0].Delta = t.Delta_1;
  p.sys[0].g = t.g_1;
  p.sys[1].Delta = t.Delta_2;
  p.sys[1].g = t.g_2;
  return p;
}

}  // namespace gitchan::channel
