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

#include <random>

#include "gitchan/linalg.hpp"

namespace gitchan::linalg {
namespace {

ComplexMatrix random_complex(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> d;
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = cplx(d(rng), d(rng));
  return m;
}

std::vector<cplx> random_vector(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> d;
  std::vector<cplx> v(n);
  for (auto& x : v) x = cplx(d(rng), d(rng));
  return v;
}

TEST(Solve, IdentityReturnsRhs) {
  const std::vector<cplx> v{{1, 2}, {3, -1}, {0, 0}, {-2, 5}};
  const auto x = solve(ComplexMatrix::identity(4), v);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(x[i], v[i]);
}

TEST(Solve, Diagonal) {
  const cplx d{0.0, 2.0};
  const auto m = ComplexMatrix::diagonal({d, d, d});
  const std::vector<cplx> v{{1, 0}, {0, 1}, {3, 3}};
  const auto x = solve(m, v);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_LT(std::abs(x[i] - v[i] / d), 1e-15);
}

TEST(Solve, RoundTripOnRandomSystems) {
  std::mt19937_64 rng(11);
  int checked = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto m = random_complex(rng, 4);
    if (LU<cplx>(m).condition(m) > 1e3) continue;
    const auto x = random_vector(rng, 4);
    const auto got = solve(m, m * x);
    std::vector<cplx> err(4);
    for (std::size_t i = 0; i < 4; ++i) err[i] = got[i] - x[i];
    EXPECT_LE(norm(err), 1e-12 * norm(x));
    ++checked;
  }
  EXPECT_GT(checked, 500);
}

TEST(Solve, SingularReportsCondition) {
  ComplexMatrix m{{1.0, 2.0}, {2.0, 4.0}};
  try {
    solve(m, std::vector<cplx>{1.0, 1.0});
    FAIL() << "expected SingularMatrixError";
  } catch (const SingularMatrixError& e) {
    EXPECT_GE(e.condition(), kConditionLimit);
  }
}

TEST(Determinant, TrivialCases) {
  EXPECT_EQ(determinant(ComplexMatrix::identity(4)), cplx(1.0));
  const auto d = determinant(ComplexMatrix::diagonal({2.0, cplx(0, 3), -1.0, 0.5}));
  EXPECT_LT(std::abs(d - cplx(0, -3)), 1e-15);
  RealMatrix upper{{2, 5, 7}, {0, 3, 1}, {0, 0, -4}};
  EXPECT_EQ(determinant(upper), -24.0);
}

TEST(Determinant, Multiplicative) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = random_complex(rng, 4);
    const auto b = random_complex(rng, 4);
    const cplx lhs = determinant(a * b);
    const cplx rhs = determinant(a) * determinant(b);
    EXPECT_LE(std::abs(lhs - rhs), 1e-10 * std::abs(rhs));
  }
}

TEST(Determinant, MatchesEigenvalueProduct) {
  std::mt19937_64 rng(9);
  const auto m = random_complex(rng, 6);
  cplx prod = 1.0;
  for (const auto& e : eigenvalues(m)) prod *= e;
  EXPECT_LE(std::abs(determinant(m) - prod), 1e-10 * std::abs(prod));
}

TEST(Lyapunov, ScalarBalance) {
  const auto A = RealMatrix::identity(3) * -0.5;
  const auto S = lyapunov_solve(A, RealMatrix::identity(3));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(S(i, j), i == j ? 1.0 : 0.0, 1e-14);
}

TEST(Lyapunov, ZeroDiffusion) {
  RealMatrix A{{-1.0, 2.0}, {-2.0, -1.0}};
  const auto S = lyapunov_solve(A, RealMatrix(2, 2));
  EXPECT_EQ(frobenius_norm(S), 0.0);
}

TEST(Lyapunov, RandomStableSystem) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> d;
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 8;
    RealMatrix A(n, n), L(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        A(i, j) = d(rng);
        L(i, j) = d(rng);
      }
    const double shift = rightmost_eigenvalue(A).real() + 0.5;
    for (std::size_t i = 0; i < n; ++i) A(i, i) -= shift;
    const auto D = L * L.transpose();
    const auto S = lyapunov_solve(A, D);
    EXPECT_LE(lyapunov_residual(A, S, D), 1e-10 * frobenius_norm(D));
    EXPECT_LE(frobenius_norm(S - S.transpose()), 1e-12 * frobenius_norm(S));
    for (const auto& e : eigenvalues(S)) EXPECT_GE(e.real(), -1e-10 * frobenius_norm(S));
  }
}

TEST(Lyapunov, RejectsNonHurwitz) {
  RealMatrix A{{0.1, 0.0}, {0.0, -1.0}};
  try {
    lyapunov_solve(A, RealMatrix::identity(2));
    FAIL() << "expected NotHurwitzError";
  } catch (const NotHurwitzError& e) {
    EXPECT_NEAR(e.eigenvalue().real(), 0.1, 1e-14);
  }
}

}  // namespace
}  // namespace gitchan::linalg
