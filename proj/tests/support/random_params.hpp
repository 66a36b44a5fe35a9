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

#include <cmath>
#include <random>

#include "gitchan/model.hpp"

namespace gitchan::testing {

inline double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  return std::exp(u(rng));
}

/// Rates drawn log-uniformly over six decades around omega_B = 1.
inline model::SymmetricParams random_symmetric(std::mt19937_64& rng) {
  model::SymmetricParams p;
  p.omega_B = log_uniform(rng, 1e-2, 1e2);
  p.Delta = p.omega_B;
  p.kappa = p.omega_B * log_uniform(rng, 1e-4, 1e2);
  p.gamma = p.omega_B * log_uniform(rng, 1e-4, 1e2);
  p.g = p.omega_B * log_uniform(rng, 1e-4, 1e2);
  p.lambda = p.omega_B * log_uniform(rng, 1e-4, 1e2);
  p.N_T = log_uniform(rng, 1e-2, 1e9);
  return p;
}

/// A frequency on the scale of the system's fastest rate, either sign.
inline double random_omega(std::mt19937_64& rng, const model::SymmetricParams& p) {
  const double scale = std::max({p.kappa, p.gamma, p.g, p.lambda});
  const double w = scale * log_uniform(rng, 1e-3, 1e1);
  return std::bernoulli_distribution(0.5)(rng) ? w : -w;
}

}  // namespace gitchan::testing
