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

// Gaussian states in the quadrature picture: q = (a + a^dag)/sqrt(2), vacuum
// covariance I/2, ordering (q1, p1, q2, p2, ...).

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "gitchan/channel.hpp"
#include "gitchan/linalg.hpp"

namespace gitchan::gaussian {

using linalg::RealMatrix;
using cplx = std::complex<double>;

// ---------------------------------------------------------------------------
// Random streams.

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

using Rng = std::mt19937_64;

/// Independent stream `index` of a run seeded with `seed`.
inline Rng make_stream(std::uint64_t seed, std::uint64_t index) {
  return Rng(splitmix64(splitmix64(seed) ^ splitmix64(~index)));
}

// ---------------------------------------------------------------------------

struct GaussianState {
  std::size_t n_modes = 0;
  std::vector<double> mean;
  RealMatrix cov;

  /// Smallest eigenvalue of cov + (i/2) Omega, which is >= 0 for a physical state.
  double uncertainty_margin() const {
    const auto n = static_cast<Eigen::Index>(2 * n_modes);
    Eigen::MatrixXcd h(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) {
        h(i, j) = cov(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      }
    for (Eigen::Index k = 0; k < n; k += 2) {
      h(k, k + 1) += cplx(0.0, 0.5);
      h(k + 1, k) -= cplx(0.0, 0.5);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
  }

  bool is_physical(double tol = 1e-10) const {
    if (cov.rows() != 2 * n_modes || cov.cols() != 2 * n_modes || mean.size() != 2 * n_modes) {
      return false;
    }
    if (!cov.all_finite()) return false;
    const double scale = std::max(1.0, linalg::frobenius_norm(cov));
    if (linalg::frobenius_norm(cov - cov.transpose()) > tol * scale) return false;
    return uncertainty_margin() >= -tol * scale;
  }
};

inline GaussianState make_vacuum(std::size_t n_modes = 1) {
  return {n_modes, std::vector<double>(2 * n_modes, 0.0),
          RealMatrix::identity(2 * n_modes) * 0.5};
}

inline GaussianState make_thermal(double N) {
  if (!(N >= 0.0) || !std::isfinite(N)) throw std::invalid_argument("thermal: N must be >= 0");
  return {1, {0.0, 0.0}, RealMatrix::identity(2) * (N + 0.5)};
}

inline GaussianState make_coherent(cplx alpha) {
  auto s = make_vacuum(1);
  s.mean = {std::sqrt(2.0) * alpha.real(), std::sqrt(2.0) * alpha.imag()};
  return s;
}

/// Two-mode squeezed vacuum with squeezing r.
inline GaussianState make_tmsv(double r) {
  if (!std::isfinite(r)) throw std::invalid_argument("tmsv: r must be finite");
  const double c = std::cosh(2.0 * r) / 2.0;
  const double s = std::sinh(2.0 * r) / 2.0;
  GaussianState st = make_vacuum(2);
  st.cov = RealMatrix{{c, 0, s, 0}, {0, c, 0, -s}, {s, 0, c, 0}, {0, -s, 0, c}};
  return st;
}

/// Mean of mode k as a complex amplitude.
inline cplx amplitude(const GaussianState& s, std::size_t mode) {
  return cplx(s.mean[2 * mode], s.mean[2 * mode + 1]) / std::sqrt(2.0);
}

/// Thermal attenuator on one mode: a -> sqrt(eta) e^{i phi} a + sqrt(1 - eta) e,
/// with the environment e thermal with N quanta. The channel's `loss` field is
/// used for 1 - eta so that it keeps full precision when eta is close to 1.
inline GaussianState apply_attenuator(const GaussianState& in, std::size_t mode,
                                      const channel::AttenuatorChannel& ch) {
  if (mode >= in.n_modes) throw std::out_of_range("attenuator: mode index out of range");
  if (!(ch.eta >= 0.0 && ch.eta <= 1.0)) {
    throw std::invalid_argument("attenuator: eta must lie in [0, 1]");
  }
  if (!(ch.loss >= 0.0 && ch.loss <= 1.0)) {
    throw std::invalid_argument("attenuator: loss must lie in [0, 1]");
  }
  if (!(ch.n_eff >= 0.0) || !std::isfinite(ch.n_eff)) {
    throw std::invalid_argument("attenuator: N must be >= 0");
  }
  const std::size_t n = 2 * in.n_modes;
  const std::size_t k = 2 * mode;
  const double t = std::sqrt(ch.eta);
  const double c = t * std::cos(ch.phi), s = t * std::sin(ch.phi);
  RealMatrix X = RealMatrix::identity(n);
  X(k, k) = c;
  X(k, k + 1) = -s;
  X(k + 1, k) = s;
  X(k + 1, k + 1) = c;

  GaussianState out = in;
  out.mean = X * in.mean;
  out.cov = X * in.cov * X.transpose();
  const double noise = ch.loss * (ch.n_eff + 0.5);
  out.cov(k, k) += noise;
  out.cov(k + 1, k + 1) += noise;
  return out;
}

inline channel::AttenuatorChannel attenuator(double eta, double N, double phi = 0.0) {
  channel::AttenuatorChannel ch;
  ch.eta = eta;
  ch.loss = 1.0 - eta;
  ch.n_eff = N;
  ch.phi = phi;
  return ch;
}

inline GaussianState apply_attenuator(const GaussianState& in, std::size_t mode, double eta,
                                      double N, double phi = 0.0) {
  return apply_attenuator(in, mode, attenuator(eta, N, phi));
}

/// Joint state of two modes.
inline GaussianState reduce(const GaussianState& s, std::vector<std::size_t> modes) {
  GaussianState out;
  out.n_modes = modes.size();
  out.mean.resize(2 * modes.size());
  out.cov = RealMatrix(2 * modes.size(), 2 * modes.size());
  for (std::size_t a = 0; a < modes.size(); ++a) {
    if (modes[a] >= s.n_modes) throw std::out_of_range("reduce: mode index out of range");
    for (std::size_t u = 0; u < 2; ++u) {
      out.mean[2 * a + u] = s.mean[2 * modes[a] + u];
      for (std::size_t b = 0; b < modes.size(); ++b)
        for (std::size_t v = 0; v < 2; ++v)
          out.cov(2 * a + u, 2 * b + v) = s.cov(2 * modes[a] + u, 2 * modes[b] + v);
    }
  }
  return out;
}

inline GaussianState tensor(const GaussianState& a, const GaussianState& b) {
  GaussianState out = make_vacuum(a.n_modes + b.n_modes);
  const std::size_t na = 2 * a.n_modes;
  for (std::size_t i = 0; i < na; ++i) {
    out.mean[i] = a.mean[i];
    for (std::size_t j = 0; j < na; ++j) out.cov(i, j) = a.cov(i, j);
  }
  for (std::size_t i = 0; i < 2 * b.n_modes; ++i) {
    out.mean[na + i] = b.mean[i];
    for (std::size_t j = 0; j < 2 * b.n_modes; ++j) out.cov(na + i, na + j) = b.cov(i, j);
  }
  return out;
}

/// Symplectic eigenvalues, ascending: moduli of the eigenvalues of i Omega cov.
inline std::vector<double> symplectic_eigenvalues(const GaussianState& s) {
  const std::size_t n = 2 * s.n_modes;
  linalg::ComplexMatrix m(n, n);
  for (std::size_t k = 0; k < n; k += 2)
    for (std::size_t j = 0; j < n; ++j) {
      // (Omega cov) rows: Omega = diag([[0, 1], [-1, 0]]).
      m(k, j) = cplx(0.0, s.cov(k + 1, j));
      m(k + 1, j) = cplx(0.0, -s.cov(k, j));
    }
  auto ev = linalg::eigenvalues(m);
  std::vector<double> mods;
  for (const auto& e : ev) mods.push_back(std::abs(e));
  std::sort(mods.begin(), mods.end());
  std::vector<double> out;
  for (std::size_t i = 0; i < mods.size(); i += 2) out.push_back(0.5 * (mods[i] + mods[i + 1]));
  return out;
}

struct TwoModeVerdict {
  double nu_tilde_minus = 0.0;
  double log_negativity = 0.0;
  bool entangled = false;
};

/// PPT test for modes (i, j) from the partially transposed symplectic spectrum.
inline TwoModeVerdict two_mode_verdict(const GaussianState& s, std::size_t i, std::size_t j) {
  if (i == j) throw std::invalid_argument("two_mode_verdict: modes must differ");
  const auto r = reduce(s, {i, j});
  if (!r.is_physical()) throw std::invalid_argument("two_mode_verdict: covariance is not physical");
  const auto& V = r.cov;
  const double detA = V(0, 0) * V(1, 1) - V(0, 1) * V(1, 0);
  const double detB = V(2, 2) * V(3, 3) - V(2, 3) * V(3, 2);
  const double detC = V(0, 2) * V(1, 3) - V(0, 3) * V(1, 2);
  const double detV = linalg::determinant(V);
  const double delta = detA + detB - 2.0 * detC;
  const double disc = std::max(0.0, delta * delta - 4.0 * detV);
  // Smaller root written without cancellation: (delta - sqrt(disc)) / 2 = 2 detV / (delta + sqrt(disc)).
  const double nu2 = 2.0 * detV / (delta + std::sqrt(disc));
  TwoModeVerdict v;
  v.nu_tilde_minus = std::sqrt(std::max(0.0, nu2));
  v.entangled = v.nu_tilde_minus < 0.5;
  v.log_negativity = v.entangled ? -std::log2(2.0 * v.nu_tilde_minus) : 0.0;
  return v;
}

/// One heterodyne outcome beta = (q + i p)/sqrt(2), (q, p) ~ N(mean, cov + I/2).
inline cplx heterodyne_sample(const GaussianState& s, std::size_t mode, Rng& rng) {
  if (mode >= s.n_modes) throw std::out_of_range("heterodyne: mode index out of range");
  const std::size_t k = 2 * mode;
  const double a = s.cov(k, k) + 0.5;
  const double b = s.cov(k, k + 1);
  const double d = s.cov(k + 1, k + 1) + 0.5;
  const double l11 = std::sqrt(a);
  const double l21 = b / l11;
  const double l22 = std::sqrt(std::max(0.0, d - l21 * l21));
  std::normal_distribution<double> z;
  const double z1 = z(rng), z2 = z(rng);
  const double q = s.mean[k] + l11 * z1;
  const double p = s.mean[k + 1] + l21 * z1 + l22 * z2;
  return cplx(q, p) / std::sqrt(2.0);
}

// ---------------------------------------------------------------------------
// Fidelities. Fidelity is the overlap <alpha|rho|alpha>, equal to pi Q(alpha),
// so the identity channel scores 1.

/// Output overlap for a coherent input through the channel; phi_c is the
/// phase left over after the receiver undoes the channel phase.
inline double coherent_overlap_fidelity(const channel::AttenuatorChannel& ch, cplx alpha,
                                        double phi_c = 0.0) {
  const double M = ch.output_noise();
  const cplx d = alpha - std::sqrt(ch.eta) * std::polar(1.0, phi_c) * alpha;
  return std::exp(-std::norm(d) / (M + 1.0)) / (M + 1.0);
}

/// Average of the overlap over coherent inputs drawn from a thermal (Gaussian)
/// ensemble with mean photon number N_in, channel phase compensated.
inline double average_fidelity(const channel::AttenuatorChannel& ch, double N_in) {
  if (!(N_in >= 0.0)) throw std::invalid_argument("average_fidelity: N_in must be >= 0");
  const double M = ch.output_noise();
  const double gap = ch.loss / (1.0 + std::sqrt(ch.eta));  // 1 - sqrt(eta)
  return 1.0 / (M + 1.0 + gap * gap * N_in);
}

/// Best average fidelity of any measure-and-prepare strategy for the same ensemble.
inline double classical_fidelity_bound(double N_in) {
  if (!(N_in >= 0.0)) throw std::invalid_argument("classical bound: N_in must be >= 0");
  return (N_in + 1.0) / (2.0 * N_in + 1.0);
}

}  // namespace gitchan::gaussian
