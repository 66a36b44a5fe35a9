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

#include <gtest/gtest.h>

#include <cmath>

#include "gitchan/criteria.hpp"
#include "support/reference.hpp"

namespace gitchan::criteria {
namespace {

namespace fz = testing::frozen;

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

TEST(EntanglementBreaking, Examples) {
  EXPECT_FALSE(is_entanglement_breaking(0.6, 1.0));
  EXPECT_FALSE(is_entanglement_breaking(0.5, 1.0));
  EXPECT_TRUE(is_entanglement_breaking(0.1, 9.0));
  EXPECT_THROW(is_entanglement_breaking(1.5, 1.0), std::invalid_argument);
  EXPECT_THROW(is_entanglement_breaking(0.5, -1.0), std::invalid_argument);
}

TEST(NonclassicalityCriteria, Examples) {
  const auto ref = channel::channel_at(testing::reference_params(), 0.0);
  const auto v = nonclassicality_criteria(ref);
  EXPECT_TRUE(v.A && v.B && v.C);
  EXPECT_NEAR(v.ratio, fz::ratio_opt, 1e-6);

  const auto edge = nonclassicality_criteria(0.5, 1.0);
  EXPECT_FALSE(edge.A || edge.B || edge.C);
  EXPECT_DOUBLE_EQ(edge.ratio, 1.0);
  // The boundary is quantum for the channel-level flag, classical for the criteria.
  EXPECT_FALSE(is_entanglement_breaking(0.5, 1.0));

  const auto dark = nonclassicality_criteria(0.0, 3.0);
  EXPECT_FALSE(dark.A || dark.B || dark.C);
}

TEST(ParameterSpaceRatio, ReferencePoint) {
  const double Q = 1e14;
  const double r = parameter_space_ratio(testing::kOmegaB, Q, fz::w_G, fz::w_T);
  EXPECT_NEAR(r, 2.733, 0.01);
  EXPECT_EQ(classify(r), Classification::quantum);
}

TEST(ParameterSpaceRatio, MatchesLambdaForm) {
  for (double w : {1e-2, 1.0, 1e3, 1e8, 5e8}) {
    for (double Q : {1.0, 1e6, 1e14}) {
      const double lambda = fz::w_G * fz::w_G / w;
      const double gamma = w / Q;
      const double N = model::thermal_occupation(w, model::Temperature{1e-3});
      const double lam_form = lambda / (gamma * std::sqrt(N * (N + 1.0)));
      EXPECT_LE(rel(parameter_space_ratio(w, Q, fz::w_G, fz::w_T), lam_form), 1e-12);
    }
  }
}

TEST(ParameterSpaceRatio, LowFrequencyLimitAndLinearity) {
  const double w = 1e-2, Q = 1e10;
  const double r = parameter_space_ratio(w, Q, fz::w_G, fz::w_T);
  EXPECT_LE(rel(r, Q * fz::w_G * fz::w_G / (fz::w_T * w)), 1e-12);
  EXPECT_LE(rel(parameter_space_ratio(w, Q / 2, fz::w_G, fz::w_T), r / 2), 1e-15);
}

TEST(BoundaryQ, ReferencePoint) {
  const auto b = low_frequency_boundary_Q(testing::kOmegaB, fz::w_G, fz::w_T);
  EXPECT_LE(rel(b.Q, fz::Q_boundary), 1e-12);
  EXPECT_LE(rel(b.Q, 3.6e13), 0.02);
  EXPECT_FALSE(b.warning.has_value());
  const auto d = low_frequency_boundary_Q(2 * testing::kOmegaB, fz::w_G, fz::w_T);
  EXPECT_LE(rel(d.Q, 2 * b.Q), 1e-15);
  EXPECT_TRUE(low_frequency_boundary_Q(fz::w_T, fz::w_G, fz::w_T).warning.has_value());
}

TEST(BoundaryQ, ApproximationAgreesWithExactAtLowFrequency) {
  for (double w = 1e-3; w < fz::w_T / 100; w *= 10) {
    const double approx = low_frequency_boundary_Q(w, fz::w_G, fz::w_T).Q;
    const double exact = exact_boundary_Q(w, fz::w_G, fz::w_T);
    EXPECT_LE(rel(approx, exact), 0.01);
    EXPECT_NEAR(parameter_space_ratio(w, exact, fz::w_G, fz::w_T), 1.0, 1e-12);
  }
}

TEST(MinimumTime, Examples) {
  const auto p = testing::reference_params();
  EXPECT_LE(rel(minimum_time(p), 1.0 / (2 * p.lambda)), 1e-6);
  EXPECT_NEAR(minimum_time(p) / 1.4e5, 1.0, 0.01);
  EXPECT_NEAR(minimum_time(p) * channel::transparency_linewidth(p), 1.0, 1e-12);
  auto q = p;
  q.lambda = 0.0;
  EXPECT_DOUBLE_EQ(minimum_time(q), 1.0 / (2 * q.gamma));
  const double Q = p.omega_B / p.gamma;
  const double w_G = std::sqrt(p.lambda * p.omega_B);
  EXPECT_LE(rel(minimum_time(p.omega_B, Q, w_G), minimum_time(p)), 1e-12);
}

TEST(MinimumPower, Examples) {
  const auto p = testing::reference_params();
  const double eta = channel::optimal_point(p).eta_opt;
  const double P = minimum_power(eta, minimum_time(p), 1e15);
  EXPECT_NEAR(P / 7.5e-25, 1.0, 0.02);
  EXPECT_LE(rel(minimum_power(0.25, 1.0, 1.0), 2 * minimum_power(0.5, 1.0, 1.0)), 1e-15);
  EXPECT_TRUE(std::isinf(minimum_power(0.0, 1.0, 1.0)));
  EXPECT_DOUBLE_EQ(minimum_input_photons(0.1), 10.0);
}

TEST(EtaOpt, MatchesOptimalPoint) {
  for (double w : {1e-2, 1.0, 1e4, 1e9}) {
    for (double Q : {1.0, 1e8, 1e15}) {
      model::SymmetricParams p;
      p.omega_B = w;
      p.gamma = w / Q;
      p.kappa = 1e-1 * w;
      p.lambda = fz::w_G * fz::w_G / w;
      p.N_T = 1.0;
      EXPECT_LE(rel(eta_opt(w, Q, fz::w_G), channel::optimal_point(p).eta_opt), 1e-12);
    }
  }
}

TEST(Monotonicity, RatioInQAndPowerInEta) {
  double prev = 0.0;
  for (double Q = 1.0; Q < 1e16; Q *= 3) {
    const double r = parameter_space_ratio(10.0, Q, fz::w_G, fz::w_T);
    EXPECT_GT(r, prev);
    prev = r;
  }
  EXPECT_GT(minimum_power(0.1, 1.0, 1e15), minimum_power(0.2, 1.0, 1e15));
}

TEST(ClassifyGrid, ShapeOrderAndSampledCells) {
  const auto dev = model::DeviceGeometry::spheres(0.01, model::PhysicalConstants::rho_Au, 1e-3);
  GridOptions opt;
  opt.n_omega = 40;
  opt.n_Q = 30;
  const auto g = classify_grid(dev, opt);
  ASSERT_EQ(g.size(), 1200u);
  EXPECT_EQ(g.front().omega_B, opt.omega_B_min);
  EXPECT_EQ(g.front().Q, opt.Q_min);
  EXPECT_EQ(g.back().omega_B, opt.omega_B_max);
  EXPECT_EQ(g.back().Q, opt.Q_max);
  EXPECT_EQ(g[1].Q, opt.Q_min);
  for (std::size_t i = 0; i < opt.n_omega; ++i) {
    if (g[i].omega_B < 1e7) EXPECT_EQ(g[i].classification, Classification::classical);
  }
  for (const auto& f : g) EXPECT_EQ(f.classification == Classification::quantum, f.ratio > 1.0);
}

TEST(ClassifyGrid, HighFrequencyQuantumRegionHasTinyTransmissivity) {
  const auto dev = model::DeviceGeometry::spheres(0.01, model::PhysicalConstants::rho_Au, 1e-3);
  const double w_G = std::sqrt(dev.coupling_scale_sq());
  const auto f = feasibility_at(1e10, 1e12, w_G, fz::w_T, 1e15);
  EXPECT_EQ(f.classification, Classification::quantum);
  EXPECT_LT(f.eta_opt, 1e-23);
}

TEST(ClassifyGrid, WorkerCountDoesNotChangeResults) {
  const auto dev = model::DeviceGeometry::spheres(0.01, model::PhysicalConstants::rho_Au, 1e-3);
  GridOptions a;
  a.n_omega = 25;
  a.n_Q = 17;
  GridOptions b = a;
  b.workers = 4;
  const auto x = classify_grid(dev, a);
  const auto y = classify_grid(dev, b);
  ASSERT_EQ(x.size(), y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    EXPECT_EQ(x[i].ratio, y[i].ratio);
    EXPECT_EQ(x[i].P_min, y[i].P_min);
  }
}

TEST(ClassifyGrid, RejectsBadRanges) {
  const auto dev = model::DeviceGeometry::spheres(0.01, model::PhysicalConstants::rho_Au, 1e-3);
  GridOptions o;
  o.omega_B_min = -1.0;
  EXPECT_THROW(classify_grid(dev, o), std::invalid_argument);
  o = {};
  o.n_Q = 1;
  EXPECT_THROW(classify_grid(dev, o), std::invalid_argument);
}

}  // namespace
}  // namespace gitchan::criteria
