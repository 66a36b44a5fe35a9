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

// Small dense matrices, LU solves and determinants, and a Lyapunov solver.
// Dimensions never exceed 16 here, so everything is direct and dense.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "gitchan/errors.hpp"

namespace gitchan::linalg {

using cplx = std::complex<double>;

inline constexpr double kConditionLimit = 1e14;

template <class T>
class Matrix {
 public:
  using value_type = T;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw std::invalid_argument("ragged matrix initializer");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  static Matrix diagonal(const std::vector<T>& d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<T>& data() const noexcept { return data_; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix& operator+=(const Matrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  Matrix& operator*=(T s) {
    for (auto& x : data_) x *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, T s) { return a *= s; }
  friend Matrix operator*(T s, Matrix a) { return a *= s; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T aik = a(i, k);
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend std::vector<T> operator*(const Matrix& a, const std::vector<T>& v) {
    if (a.cols_ != v.size()) throw std::invalid_argument("matrix-vector shape mismatch");
    std::vector<T> out(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      T s{};
      for (std::size_t j = 0; j < a.cols_; ++j) s += a(i, j) * v[j];
      out[i] = s;
    }
    return out;
  }

  bool all_finite() const {
    return std::all_of(data_.begin(), data_.end(), [](const T& x) {
      if constexpr (std::is_same_v<T, double>) {
        return std::isfinite(x);
      } else {
        return std::isfinite(x.real()) && std::isfinite(x.imag());
      }
    });
  }

 private:
  void check_same(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RealMatrix = Matrix<double>;
using ComplexMatrix = Matrix<cplx>;

template <class T>
double frobenius_norm(const Matrix<T>& m) {
  double s = 0.0;
  for (const auto& x : m.data()) s += std::norm(x);
  return std::sqrt(s);
}

template <class T>
double norm(const std::vector<T>& v) {
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  return std::sqrt(s);
}

template <class T>
double one_norm(const Matrix<T>& m) {
  double best = 0.0;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) s += std::abs(m(i, j));
    best = std::max(best, s);
  }
  return best;
}

/// Partial-pivot LU factorization, PA = LU stored in place.
template <class T>
struct LU {
  Matrix<T> lu;
  std::vector<std::size_t> perm;
  int sign = 1;
  bool singular = false;

  explicit LU(const Matrix<T>& m) : lu(m), perm(m.rows()) {
    if (!m.square()) throw std::invalid_argument("LU needs a square matrix");
    const std::size_t n = m.rows();
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t p = k;
      double best = std::abs(lu(k, k));
      for (std::size_t i = k + 1; i < n; ++i) {
        if (std::abs(lu(i, k)) > best) {
          best = std::abs(lu(i, k));
          p = i;
        }
      }
      if (best == 0.0) {
        singular = true;
        continue;
      }
      if (p != k) {
        for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(p, j));
        std::swap(perm[k], perm[p]);
        sign = -sign;
      }
      for (std::size_t i = k + 1; i < n; ++i) {
        lu(i, k) /= lu(k, k);
        const T f = lu(i, k);
        if (f == T(0)) continue;
        for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= f * lu(k, j);
      }
    }
  }

  T determinant() const {
    if (singular) return T(0);
    T d = T(sign);
    for (std::size_t i = 0; i < lu.rows(); ++i) d *= lu(i, i);
    return d;
  }

  std::vector<T> solve(const std::vector<T>& b) const {
    const std::size_t n = lu.rows();
    std::vector<T> x(n);
    for (std::size_t i = 0; i < n; ++i) {
      T s = b[perm[i]];
      for (std::size_t j = 0; j < i; ++j) s -= lu(i, j) * x[j];
      x[i] = s;
    }
    for (std::size_t i = n; i-- > 0;) {
      T s = x[i];
      for (std::size_t j = i + 1; j < n; ++j) s -= lu(i, j) * x[j];
      x[i] = s / lu(i, i);
    }
    return x;
  }

  /// 1-norm condition number from the explicit inverse (n is tiny).
  double condition(const Matrix<T>& original) const {
    if (singular) return std::numeric_limits<double>::infinity();
    const std::size_t n = lu.rows();
    Matrix<T> inv(n, n);
    std::vector<T> e(n);
    for (std::size_t j = 0; j < n; ++j) {
      std::fill(e.begin(), e.end(), T(0));
      e[j] = T(1);
      const auto col = solve(e);
      for (std::size_t i = 0; i < n; ++i) inv(i, j) = col[i];
    }
    const double c = one_norm(original) * one_norm(inv);
    return std::isfinite(c) ? c : std::numeric_limits<double>::infinity();
  }
};

template <class T>
T determinant(const Matrix<T>& m) {
  if (!m.square()) throw std::invalid_argument("determinant needs a square matrix");
  return LU<T>(m).determinant();
}

/// Solves M x = v. Throws SingularMatrixError when the condition estimate
/// exceeds kConditionLimit.
template <class T>
std::vector<T> solve(const Matrix<T>& m, const std::vector<T>& v) {
  if (!m.square()) throw std::invalid_argument("solve needs a square matrix");
  if (m.rows() != v.size()) throw std::invalid_argument("solve: rhs size mismatch");
  const LU<T> lu(m);
  const double cond = lu.condition(m);
  if (!(cond < kConditionLimit)) {
    std::ostringstream msg;
    msg << "matrix is singular or ill-conditioned (condition estimate " << cond << ")";
    throw SingularMatrixError(msg.str(), cond);
  }
  auto x = lu.solve(v);
  // One step of iterative refinement.
  auto r = m * x;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = v[i] - r[i];
  const auto dx = lu.solve(r);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += dx[i];
  return x;
}

template <class T>
std::vector<cplx> eigenvalues(const Matrix<T>& m) {
  if (!m.square()) throw std::invalid_argument("eigenvalues need a square matrix");
  const auto n = static_cast<Eigen::Index>(m.rows());
  Eigen::MatrixXcd e(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      e(i, j) = cplx(m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(e, false);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigenvalue solver failed");
  std::vector<cplx> out(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
  return out;
}

/// Eigenvalue with the largest real part.
template <class T>
cplx rightmost_eigenvalue(const Matrix<T>& m) {
  const auto ev = eigenvalues(m);
  return *std::max_element(ev.begin(), ev.end(),
                           [](const cplx& a, const cplx& b) { return a.real() < b.real(); });
}

/// Steady state of dS/dt = A S + S A^T + D: returns symmetric S with
/// A S + S A^T + D = 0. A must be Hurwitz.
inline RealMatrix lyapunov_solve(const RealMatrix& A, const RealMatrix& D) {
  if (!A.square() || !D.square() || A.rows() != D.rows()) {
    throw std::invalid_argument("lyapunov_solve: A and D must be square and of equal size");
  }
  const cplx worst = rightmost_eigenvalue(A);
  if (!(worst.real() < 0.0)) {
    std::ostringstream msg;
    msg << "drift matrix is not Hurwitz (eigenvalue " << worst.real() << (worst.imag() < 0 ? "" : "+")
        << worst.imag() << "i)";
    throw NotHurwitzError(msg.str(), worst);
  }
  const std::size_t n = A.rows();
  const std::size_t nn = n * n;
  // Row-major vec: vec(A S)[i n + j] = sum_k A(i,k) S(k,j), vec(S A^T)[i n + j] = sum_k A(j,k) S(i,k).
  RealMatrix K(nn, nn);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        K(i * n + j, k * n + j) += A(i, k);
        K(i * n + j, i * n + k) += A(j, k);
      }
  std::vector<double> rhs(nn);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) rhs[i * n + j] = -0.5 * (D(i, j) + D(j, i));
  const auto x = solve(K, rhs);
  RealMatrix S(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) S(i, j) = 0.5 * (x[i * n + j] + x[j * n + i]);
  return S;
}

/// ||A S + S A^T + D||_F.
inline double lyapunov_residual(const RealMatrix& A, const RealMatrix& S, const RealMatrix& D) {
  return frobenius_norm(A * S + S * A.transpose() + D);
}

}  // namespace gitchan::linalg
