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

// Direct linear solve of the asymmetric Langevin equations in the laser frame,
// written with Eigen so it shares no code with the library's solver.

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>

#include "gitchan/model.hpp"

namespace gitchan::testing {

inline std::array<std::complex<double>, 4> asymmetric_numeric(const model::AsymmetricParams& p,
                                                              double omega) {
  using C = std::complex<double>;
  const C i{0.0, 1.0};
  const auto& a = p.sys[0];
  const auto& b = p.sys[1];
  Eigen::Matrix4cd M = Eigen::Matrix4cd::Zero();
  M(0, 0) = -(a.kappa / 2.0 + i * (a.Delta - omega));
  M(0, 1) = -i * a.g;
  M(1, 0) = -i * a.g;
  M(1, 1) = -(a.gamma / 2.0 + i * (a.omega_B - omega));
  M(1, 3) = -i * p.lambda;
  M(2, 2) = -(b.kappa / 2.0 + i * (b.Delta - omega));
  M(2, 3) = -i * b.g;
  M(3, 1) = -i * p.lambda;
  M(3, 2) = -i * b.g;
  M(3, 3) = -(b.gamma / 2.0 + i * (b.omega_B - omega));
  const Eigen::Vector4cd B(std::sqrt(a.kappa), std::sqrt(a.gamma), std::sqrt(b.kappa),
                           std::sqrt(b.gamma));
  const Eigen::Matrix4cd X = -M.fullPivLu().solve(Eigen::Matrix4cd(B.asDiagonal()));
  std::array<C, 4> row;
  for (int j = 0; j < 4; ++j) row[j] = std::sqrt(b.kappa) * X(2, j);
  row[2] -= 1.0;
  return row;
}

}  // namespace gitchan::testing
