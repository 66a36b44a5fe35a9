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

// Independent checks of the frequency-domain results: a time-domain integration
// of the mean fields, the stationary covariance from the moment equations, and
// the output noise spectrum from a generic linear solve.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <sstream>
#include <vector>

#include "gitchan/channel.hpp"
#include "gitchan/errors.hpp"
#include "gitchan/linalg.hpp"
#include "gitchan/model.hpp"

namespace gitchan::oracle {

using cplx = std::complex<double>;
using linalg::ComplexMatrix;
using linalg::RealMatrix;

/// Drift, diffusion and output-read matrices in quadratures
/// (q1, p1, ..., q4, p4) for modes (a1, b1, a2, b2).
struct QuadratureModel {
  RealMatrix A_q;    // 8x8
  RealMatrix D;      // 8x8
  RealMatrix C_out;  // 2x8, reads sqrt(kappa) a2 (the a_in2 term is added separately)
};

/// Real 2n x 2n form of a complex n x n matrix: x + iy -> [[x, -y], [y, x]].
inline RealMatrix realify(const ComplexMatrix& m) {
  RealMatrix r(2 * m.rows(), 2 * m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const double x = m(i, j).real(), y = m(i, j).imag();
      r(2 * i, 2 * j) = x;
      r(2 * i, 2 * j + 1) = -y;
      r(2 * i + 1, 2 * j) = y;
      r(2 * i + 1, 2 * j + 1) = x;
    }
  return r;
}

inline QuadratureModel quadrature_model(const model::SymmetricParams& p) {
  const auto sys = channel::drift_matrix(p);
  QuadratureModel m;
  m.A_q = realify(sys.A);
  // Input occupations: vacuum light, thermal mechanics.
  const std::array<double, 4> n_in{0.0, p.N_T, 0.0, p.N_T};
  m.D = RealMatrix(8, 8);
  for (std::size_t j = 0; j < 4; ++j) {
    const double d = sys.B[j] * sys.B[j] * (n_in[j] + 0.5);
    m.D(2 * j, 2 * j) = d;
    m.D(2 * j + 1, 2 * j + 1) = d;
  }
  m.C_out = RealMatrix(2, 8);
  m.C_out(0, 4) = sys.B[2];
  m.C_out(1, 5) = sys.B[2];
  return m;
}

/// Stationary covariance: solves A_q S + S A_q^T + D = 0. Rates are divided by
/// omega_B first; the equation is homogeneous, so S is unchanged.
inline RealMatrix steady_state_covariance(const model::SymmetricParams& p) {
  auto q = p;
  q.kappa /= p.omega_B;
  q.gamma /= p.omega_B;
  q.g /= p.omega_B;
  q.lambda /= p.omega_B;
  const auto m = quadrature_model(q);
  return linalg::lyapunov_solve(m.A_q, m.D);
}

/// (1 - eta) N at omega: thermal quanta reaching the output, from the generic
/// linear-solve coefficients and the input occupations.
inline double output_spectrum(const model::SymmetricParams& p, double omega) {
  const auto c = channel::transfer_coefficients_numeric(p, omega);
  const std::array<double, 4> n_in{0.0, p.N_T, 0.0, p.N_T};
  const auto row = c.as_array();
  double s = 0.0;
  for (std::size_t j = 0; j < 4; ++j) s += std::norm(row[j]) * n_in[j];
  return s;
}

struct IntegrationOptions {
  double drive = 1.0;            // amplitude of the coherent drive on a_in1
  double step_fraction = 0.01;   // step = step_fraction / fastest rate
  double settle_factor = 25.0;   // one settling block lasts settle_factor / slowest rate
  int max_blocks = 8;            // blocks integrated before giving up
  double residual_tol = 1e-10;   // |dR/dt| relative to the drive term
  double stiffness_limit = 1e6;  // kappa / gamma_eff above which the cavities are eliminated
};

struct MeanFieldResult {
  cplx ratio;             // a_out2 / a_in1 in steady state
  double time = 0.0;      // integrated time, s
  std::size_t steps = 0;
  double residual = 0.0;  // relative |dR/dt| at the end
  bool adiabatic = false; // cavities eliminated
  double scale_separation = 0.0;  // kappa / gamma_eff
};

namespace detail {

template <std::size_t N>
using CVec = std::array<cplx, N>;

template <std::size_t N>
CVec<N> affine(const std::array<std::array<cplx, N>, N>& M, const CVec<N>& f, const CVec<N>& x) {
  CVec<N> y{};
  for (std::size_t i = 0; i < N; ++i) {
    cplx s = f[i];
    for (std::size_t j = 0; j < N; ++j) s += M[i][j] * x[j];
    y[i] = s;
  }
  return y;
}

template <std::size_t N>
double vec_norm(const CVec<N>& v) {
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  return std::sqrt(s);
}

/// Integrates dR/dt = M R + f from R = 0 with classical RK4 until the residual
/// |M R + f| / |f| drops below tol. With constant forcing the RK4 fixed point is
/// exactly the stationary solution, so only the transient limits accuracy.
template <std::size_t N>
CVec<N> settle(const std::array<std::array<cplx, N>, N>& M, const CVec<N>& f, double h,
               std::size_t steps_per_block, const IntegrationOptions& opt, MeanFieldResult& out) {
  CVec<N> x{};
  const double fn = vec_norm(f);
  for (int block = 0; block < opt.max_blocks; ++block) {
    for (std::size_t s = 0; s < steps_per_block; ++s) {
      const auto k1 = affine(M, f, x);
      CVec<N> t;
      for (std::size_t i = 0; i < N; ++i) t[i] = x[i] + 0.5 * h * k1[i];
      const auto k2 = affine(M, f, t);
      for (std::size_t i = 0; i < N; ++i) t[i] = x[i] + 0.5 * h * k2[i];
      const auto k3 = affine(M, f, t);
      for (std::size_t i = 0; i < N; ++i) t[i] = x[i] + h * k3[i];
      const auto k4 = affine(M, f, t);
      for (std::size_t i = 0; i < N; ++i) x[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    out.steps += steps_per_block;
    out.time += h * static_cast<double>(steps_per_block);
    out.residual = vec_norm(affine(M, f, x)) / fn;
    if (out.residual < opt.residual_tol) return x;
  }
  std::ostringstream msg;
  msg << "mean-field integration did not settle (relative residual " << out.residual << ")";
  throw PhysicsError(msg.str());
}

}  // namespace detail

/// Drives a_in1 with eps e^{-i omega t} and integrates the mean fields in the
/// frame rotating with the drive until the envelope is stationary; returns
/// a_out2 / a_in1. When kappa / gamma_eff exceeds the stiffness limit the
/// cavity envelopes are slaved to the mechanics (their stationary relation) and
/// only the two mechanical envelopes are integrated.
inline MeanFieldResult mean_field_transmission(const model::SymmetricParams& p, double omega,
                                               const IntegrationOptions& opt = {}) {
  const auto sys = channel::drift_matrix(p);
  const auto ev = linalg::eigenvalues(sys.A);
  double slowest = INFINITY, fastest = 0.0;
  for (const auto& e : ev) {
    if (!(e.real() < 0.0)) {
      std::ostringstream msg;
      msg << "drift matrix is not Hurwitz (eigenvalue " << e << ")";
      throw NotHurwitzError(msg.str(), e);
    }
    slowest = std::min(slowest, -e.real());
    fastest = std::max(fastest, std::abs(e + cplx(0.0, omega)));
  }

  MeanFieldResult out;
  out.scale_separation = p.kappa / channel::transparency_linewidth(p);
  out.adiabatic = out.scale_separation > opt.stiffness_limit;
  const cplx I{0.0, 1.0};
  const double eps = opt.drive;

  if (!out.adiabatic) {
    std::array<std::array<cplx, 4>, 4> M{};
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) M[i][j] = sys.A(i, j) + (i == j ? I * omega : 0.0);
    const detail::CVec<4> f{sys.B[0] * eps, 0.0, 0.0, 0.0};
    const double h = opt.step_fraction / fastest;
    const auto steps = static_cast<std::size_t>(std::ceil(opt.settle_factor / (slowest * h)));
    const auto x = detail::settle(M, f, h, steps, opt, out);
    out.ratio = sys.B[2] * x[2] / eps;
    return out;
  }

  // Cavity j obeys 0 = -(kappa/2 - i omega) a_j - i g b_j + sqrt(kappa) a_in,j once
  // the envelope is stationary on the cavity timescale.
  const cplx u = p.kappa / 2.0 - I * omega;
  const cplx v = p.gamma / 2.0 - I * omega;
  const cplx load = p.g * p.g / u;  // back-action of the slaved cavity on its mechanics
  std::array<std::array<cplx, 2>, 2> M{};
  M[0][0] = -v - load;
  M[0][1] = -I * p.lambda;
  M[1][0] = -I * p.lambda;
  M[1][1] = -v - load;
  const detail::CVec<2> f{-I * p.g * std::sqrt(p.kappa) * eps / u, 0.0};
  const auto mech_ev = linalg::eigenvalues(linalg::ComplexMatrix{{M[0][0], M[0][1]}, {M[1][0], M[1][1]}});
  double slow = INFINITY, fast = 0.0;
  for (const auto& e : mech_ev) {
    slow = std::min(slow, -e.real());
    fast = std::max(fast, std::abs(e));
  }
  const double h = opt.step_fraction / fast;
  const auto steps = static_cast<std::size_t>(std::ceil(opt.settle_factor / (slow * h)));
  const auto b = detail::settle(M, f, h, steps, opt, out);
  const cplx a2 = -I * p.g * b[1] / u;
  out.ratio = std::sqrt(p.kappa) * a2 / eps;
  return out;
}

}  // namespace gitchan::oracle
