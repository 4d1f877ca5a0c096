// Copyright 2026 The pptmaps Authors
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

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pptmaps/error.hpp"

namespace pptmaps {

using Complex = std::complex<double>;

/// Dense complex matrix, row-major.
///
/// Vectorization throughout the library stacks columns:
/// vec(X)[r + c * rows] = X(r, c). With this convention the transfer matrix
/// of the Schur multiplier X -> P o X is exactly diag(vec P).
class ComplexMatrix {
 public:
  ComplexMatrix() = default;

  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) {
      throw DimensionMismatch("ComplexMatrix: entry count " +
                              std::to_string(data_.size()) + " != " +
                              std::to_string(rows_) + "x" +
                              std::to_string(cols_));
    }
  }

  /// Row-wise initializer, e.g. {{0, 1}, {1, 0}}.
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      if (row.size() != cols_) {
        throw DimensionMismatch("ComplexMatrix: ragged initializer");
      }
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static ComplexMatrix zeros(std::size_t rows, std::size_t cols) {
    return ComplexMatrix(rows, cols);
  }

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  /// All-ones matrix J.
  static ComplexMatrix ones(std::size_t rows, std::size_t cols) {
    ComplexMatrix m(rows, cols);
    std::fill(m.data_.begin(), m.data_.end(), Complex(1.0));
    return m;
  }

  /// Matrix unit E_{ij}.
  static ComplexMatrix unit(std::size_t rows, std::size_t cols, std::size_t i,
                            std::size_t j) {
    ComplexMatrix m(rows, cols);
    m(i, j) = 1.0;
    return m;
  }

  static ComplexMatrix diagonal(std::span<const Complex> d) {
    ComplexMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) {
    return data_[r * cols_ + c];
  }
  const Complex& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::span<Complex> entries() noexcept { return data_; }
  std::span<const Complex> entries() const noexcept { return data_; }

  ComplexMatrix adjoint() const {
    ComplexMatrix m(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) m(c, r) = std::conj((*this)(r, c));
    return m;
  }

  ComplexMatrix transpose() const {
    ComplexMatrix m(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) m(c, r) = (*this)(r, c);
    return m;
  }

  ComplexMatrix conjugate() const {
    ComplexMatrix m = *this;
    for (auto& z : m.data_) z = std::conj(z);
    return m;
  }

  Complex trace() const {
    Complex s = 0.0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) s += (*this)(i, i);
    return s;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const auto& z : data_) s += std::norm(z);
    return std::sqrt(s);
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& z : data_) m = std::max(m, std::abs(z));
    return m;
  }

  /// Column-major vectorization as a (rows*cols) x 1 matrix.
  ComplexMatrix vec() const {
    ComplexMatrix v(rows_ * cols_, 1);
    for (std::size_t c = 0; c < cols_; ++c)
      for (std::size_t r = 0; r < rows_; ++r) v(r + c * rows_, 0) = (*this)(r, c);
    return v;
  }

  /// Inverse of vec(): reshape a column vector into rows x cols.
  static ComplexMatrix unvec(const ComplexMatrix& v, std::size_t rows,
                             std::size_t cols) {
    if (v.rows() * v.cols() != rows * cols) {
      throw DimensionMismatch("unvec: size mismatch");
    }
    ComplexMatrix m(rows, cols);
    for (std::size_t c = 0; c < cols; ++c)
      for (std::size_t r = 0; r < rows; ++r) m(r, c) = v.data_[r + c * rows];
    return m;
  }

  ComplexMatrix& operator+=(const ComplexMatrix& o) {
    require_same_shape(o, "+=");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }

  ComplexMatrix& operator-=(const ComplexMatrix& o) {
    require_same_shape(o, "-=");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }

  ComplexMatrix& operator*=(Complex s) {
    for (auto& z : data_) z *= s;
    return *this;
  }

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) {
    a += b;
    return a;
  }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) {
    a -= b;
    return a;
  }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) {
    a *= s;
    return a;
  }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) {
    a *= s;
    return a;
  }

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols_ != b.rows_) {
      throw DimensionMismatch("matrix product: " + a.shape() + " * " +
                              b.shape());
    }
    ComplexMatrix m(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      Complex* out = &m.data_[i * b.cols_];
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Complex aik = a(i, k);
        if (aik == Complex(0.0)) continue;
        const Complex* brow = &b.data_[k * b.cols_];
        for (std::size_t j = 0; j < b.cols_; ++j) out[j] += aik * brow[j];
      }
    }
    return m;
  }

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

  std::string shape() const {
    return std::to_string(rows_) + "x" + std::to_string(cols_);
  }

 private:
  void require_same_shape(const ComplexMatrix& o, const char* op) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) {
      throw DimensionMismatch(std::string("matrix ") + op + ": " + shape() +
                              " vs " + o.shape());
    }
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

/// Largest entrywise modulus of a - b.
inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).max_abs();
}

/// Elementwise (Schur) product.
inline ComplexMatrix schur_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch("schur_product: " + a.shape() + " vs " + b.shape());
  }
  ComplexMatrix m(a.rows(), a.cols());
  for (std::size_t k = 0; k < a.entries().size(); ++k)
    m.entries()[k] = a.entries()[k] * b.entries()[k];
  return m;
}

/// Kronecker product: block (i, j) of the result is a(i, j) * b.
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix m(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      if (aij == Complex(0.0)) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          m(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return m;
}

/// Transposes each q x q block of a (pq) x (pq) block matrix (the second
/// tensor factor). A pure permutation of entries, hence an exact involution.
inline ComplexMatrix partial_transpose(const ComplexMatrix& c, std::size_t p,
                                       std::size_t q) {
  if (c.rows() != p * q || c.cols() != p * q) {
    throw DimensionMismatch("partial_transpose: expected " +
                            std::to_string(p * q) + "x" +
                            std::to_string(p * q) + ", got " + c.shape());
  }
  ComplexMatrix m(p * q, p * q);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j)
      for (std::size_t k = 0; k < q; ++k)
        for (std::size_t l = 0; l < q; ++l)
          m(i * q + k, j * q + l) = c(i * q + l, j * q + k);
  return m;
}

/// max_{ij} |m_ij - conj(m_ji)|.
inline double hermitian_defect(const ComplexMatrix& m) {
  if (!m.is_square()) return std::numeric_limits<double>::infinity();
  double d = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j)
      d = std::max(d, std::abs(m(i, j) - std::conj(m(j, i))));
  return d;
}

/// Hermiticity within 1e-12 * (1 + max|m_ij|).
inline bool is_hermitian(const ComplexMatrix& m, double rel_tol = 1e-12) {
  return m.is_square() && hermitian_defect(m) <= rel_tol * (1.0 + m.max_abs());
}

inline ComplexMatrix matrix_power(ComplexMatrix base, unsigned long long exponent) {
  if (!base.is_square()) throw DimensionMismatch("matrix_power: non-square");
  ComplexMatrix result = ComplexMatrix::identity(base.rows());
  while (exponent > 0) {
    if (exponent & 1ULL) result = result * base;
    exponent >>= 1;
    if (exponent > 0) base = base * base;
  }
  return result;
}

/// LU factorization with partial pivoting, kept for solves and inversion.
class LuDecomposition {
 public:
  explicit LuDecomposition(ComplexMatrix m) : lu_(std::move(m)) {
    if (!lu_.is_square()) throw DimensionMismatch("LU: non-square input");
    const std::size_t n = lu_.rows();
    perm_.resize(n);
    for (std::size_t i = 0; i < n; ++i) perm_[i] = i;
    const double scale = std::max(lu_.max_abs(), std::numeric_limits<double>::min());
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t piv = k;
      double best = std::abs(lu_(k, k));
      for (std::size_t r = k + 1; r < n; ++r) {
        if (std::abs(lu_(r, k)) > best) {
          best = std::abs(lu_(r, k));
          piv = r;
        }
      }
      if (best <= std::numeric_limits<double>::epsilon() * scale * 1e-4) {
        singular_ = true;
        return;
      }
      if (piv != k) {
        for (std::size_t c = 0; c < n; ++c) std::swap(lu_(k, c), lu_(piv, c));
        std::swap(perm_[k], perm_[piv]);
      }
      for (std::size_t r = k + 1; r < n; ++r) {
        const Complex f = lu_(r, k) / lu_(k, k);
        lu_(r, k) = f;
        if (f == Complex(0.0)) continue;
        for (std::size_t c = k + 1; c < n; ++c) lu_(r, c) -= f * lu_(k, c);
      }
    }
  }

  bool singular() const noexcept { return singular_; }

  /// Solves M X = B. Precondition: !singular().
  ComplexMatrix solve(const ComplexMatrix& b) const {
    const std::size_t n = lu_.rows();
    if (b.rows() != n) throw DimensionMismatch("LU solve: rhs rows");
    ComplexMatrix x(n, b.cols());
    for (std::size_t c = 0; c < b.cols(); ++c) {
      std::vector<Complex> y(n);
      for (std::size_t i = 0; i < n; ++i) {
        Complex s = b(perm_[i], c);
        for (std::size_t k = 0; k < i; ++k) s -= lu_(i, k) * y[k];
        y[i] = s;
      }
      for (std::size_t ii = n; ii-- > 0;) {
        Complex s = y[ii];
        for (std::size_t k = ii + 1; k < n; ++k) s -= lu_(ii, k) * x(k, c);
        x(ii, c) = s / lu_(ii, ii);
      }
    }
    return x;
  }

  ComplexMatrix inverse() const {
    return solve(ComplexMatrix::identity(lu_.rows()));
  }

 private:
  ComplexMatrix lu_;
  std::vector<std::size_t> perm_;
  bool singular_ = false;
};

}  // namespace pptmaps
