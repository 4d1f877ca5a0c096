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

#include <cstddef>
#include <functional>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <utility>

#include "pptmaps/error.hpp"
#include "pptmaps/matrix.hpp"

namespace pptmaps {

/// Choi matrix (pq x pq) to transfer matrix (q^2 x p^2).
///
/// With C = sum_ij E_ij (x) phi(E_ij) and column-major vec, the transfer
/// matrix T satisfying vec(phi(X)) = T vec(X) has
/// T(k + l q, i + j p) = C(i q + k, j q + l).
inline ComplexMatrix reshuffle(const ComplexMatrix& c, std::size_t p, std::size_t q) {
  if (c.rows() != p * q || c.cols() != p * q) {
    throw DimensionMismatch("reshuffle: expected " + std::to_string(p * q) + "x" +
                            std::to_string(p * q) + ", got " + c.shape());
  }
  ComplexMatrix t(q * q, p * p);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j)
      for (std::size_t k = 0; k < q; ++k)
        for (std::size_t l = 0; l < q; ++l) t(k + l * q, i + j * p) = c(i * q + k, j * q + l);
  return t;
}

/// Transfer matrix (q^2 x p^2) back to Choi matrix (pq x pq). For p = q this
/// is the same permutation as reshuffle, which is then an involution.
inline ComplexMatrix unreshuffle(const ComplexMatrix& t, std::size_t p, std::size_t q) {
  if (t.rows() != q * q || t.cols() != p * p) {
    throw DimensionMismatch("unreshuffle: expected " + std::to_string(q * q) + "x" +
                            std::to_string(p * p) + ", got " + t.shape());
  }
  ComplexMatrix c(p * q, p * q);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j)
      for (std::size_t k = 0; k < q; ++k)
        for (std::size_t l = 0; l < q; ++l) c(i * q + k, j * q + l) = t(k + l * q, i + j * p);
  return c;
}

/// A linear map M_p -> M_q, held by its Choi matrix.
///
/// Immutable. The transfer matrix is derived lazily on first use and shared
/// between copies.
class Channel {
 public:
  using Action = std::function<ComplexMatrix(const ComplexMatrix&)>;

  Channel(std::size_t p, std::size_t q, ComplexMatrix choi, std::string label = {})
      : p_(p), q_(q), choi_(std::move(choi)), label_(std::move(label)),
        cache_(std::make_shared<TransferCache>()) {
    if (p_ == 0 || q_ == 0) throw DimensionMismatch("Channel: zero dimension");
    if (choi_.rows() != p_ * q_ || choi_.cols() != p_ * q_) {
      throw DimensionMismatch("Channel: Choi matrix " + choi_.shape() +
                              " does not match p=" + std::to_string(p_) +
                              ", q=" + std::to_string(q_));
    }
    hermitian_choi_ = is_hermitian(choi_);
  }

  /// Builds the Choi matrix by applying `action` to the p^2 matrix units.
  static Channel from_action(std::size_t p, std::size_t q, const Action& action,
                             std::string label = {}) {
    ComplexMatrix choi(p * q, p * q);
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = 0; j < p; ++j) {
        const ComplexMatrix out = action(ComplexMatrix::unit(p, p, i, j));
        if (out.rows() != q || out.cols() != q) {
          throw DimensionMismatch("Channel::from_action: action returned " + out.shape());
        }
        for (std::size_t k = 0; k < q; ++k)
          for (std::size_t l = 0; l < q; ++l) choi(i * q + k, j * q + l) = out(k, l);
      }
    return Channel(p, q, std::move(choi), std::move(label));
  }

  static Channel from_transfer(std::size_t p, std::size_t q, ComplexMatrix transfer,
                               std::string label = {}) {
    Channel ch(p, q, unreshuffle(transfer, p, q), std::move(label));
    std::call_once(ch.cache_->once, [&] { ch.cache_->transfer = std::move(transfer); });
    return ch;
  }

  std::size_t p() const noexcept { return p_; }
  std::size_t q() const noexcept { return q_; }
  const ComplexMatrix& choi() const noexcept { return choi_; }
  const std::string& label() const noexcept { return label_; }

  /// True when the Choi matrix is Hermitian within 1e-12 (1 + max|c_ij|),
  /// i.e. the map sends Hermitian matrices to Hermitian matrices.
  bool hermitian_choi() const noexcept { return hermitian_choi_; }

  const ComplexMatrix& transfer() const {
    std::call_once(cache_->once, [this] { cache_->transfer = reshuffle(choi_, p_, q_); });
    return cache_->transfer;
  }

  ComplexMatrix apply(const ComplexMatrix& x) const {
    if (x.rows() != p_ || x.cols() != p_) {
      throw DimensionMismatch("Channel::apply: expected " + std::to_string(p_) + "x" +
                              std::to_string(p_) + " input, got " + x.shape());
    }
    return ComplexMatrix::unvec(transfer() * x.vec(), q_, q_);
  }

  /// Adjoint with respect to the Hilbert-Schmidt inner product.
  Channel adjoint() const {
    return from_transfer(q_, p_, transfer().adjoint(), "adjoint(" + label_ + ")");
  }

  Channel scaled(double factor) const {
    return Channel(p_, q_, choi_ * Complex(factor), label_);
  }

  Channel with_label(std::string label) const {
    Channel ch = *this;
    ch.label_ = std::move(label);
    return ch;
  }

  friend Channel operator+(const Channel& a, const Channel& b) {
    if (a.p_ != b.p_ || a.q_ != b.q_) throw DimensionMismatch("Channel sum: dimensions differ");
    return Channel(a.p_, a.q_, a.choi_ + b.choi_, a.label_ + " + " + b.label_);
  }

 private:
  struct TransferCache {
    std::once_flag once;
    ComplexMatrix transfer;
  };

  std::size_t p_;
  std::size_t q_;
  ComplexMatrix choi_;
  std::string label_;
  bool hermitian_choi_ = false;
  std::shared_ptr<TransferCache> cache_;
};

namespace detail {

inline std::string format_scalar(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace detail

/// delta(X) = (Tr X / p) I_p. Choi matrix I_{p^2} / p.
inline Channel make_delta(std::size_t p) {
  return Channel::from_action(
      p, p,
      [p](const ComplexMatrix& x) {
        return ComplexMatrix::identity(p) * (x.trace() / static_cast<double>(p));
      },
      "delta(p=" + std::to_string(p) + ")");
}

/// Schur multiplier X -> P o X.
inline Channel make_schur(const ComplexMatrix& mult) {
  if (!mult.is_square()) throw DimensionMismatch("make_schur: non-square multiplier");
  return Channel::from_action(
      mult.rows(), mult.rows(), [&mult](const ComplexMatrix& x) { return schur_product(mult, x); },
      "schur(" + mult.shape() + ")");
}

inline Channel make_identity_map(std::size_t p) {
  return Channel::from_action(
      p, p, [](const ComplexMatrix& x) { return x; }, "id(p=" + std::to_string(p) + ")");
}

inline Channel make_transpose_map(std::size_t p) {
  return Channel::from_action(
      p, p, [](const ComplexMatrix& x) { return x.transpose(); },
      "transpose(p=" + std::to_string(p) + ")");
}

/// X -> U X U*.
inline Channel make_unitary_conjugation(const ComplexMatrix& u) {
  if (!u.is_square()) throw DimensionMismatch("make_unitary_conjugation: non-square");
  const ComplexMatrix ua = u.adjoint();
  return Channel::from_action(
      u.rows(), u.rows(), [&](const ComplexMatrix& x) { return u * x * ua; },
      "conj(" + u.shape() + ")");
}

/// Throws InvalidAdjacency unless `a` is square, 0/1, symmetric, hollow.
inline void validate_adjacency(const ComplexMatrix& a) {
  if (!a.is_square()) throw InvalidAdjacency("adjacency matrix is not square: " + a.shape());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex x = a(i, j);
      if (x != Complex(0.0) && x != Complex(1.0)) {
        throw InvalidAdjacency("adjacency entry (" + std::to_string(i) + "," +
                               std::to_string(j) + ") is not 0 or 1");
      }
      if (x != a(j, i)) {
        throw InvalidAdjacency("adjacency matrix is not symmetric at (" + std::to_string(i) +
                               "," + std::to_string(j) + ")");
      }
    }
    if (a(i, i) != Complex(0.0)) {
      throw InvalidAdjacency("adjacency matrix has a loop at vertex " + std::to_string(i));
    }
  }
}

/// gamma_{t,A} = t delta + S_A, Choi matrix (t/p) I + sum_{(i,j) in E} E_ij (x) E_ij.
inline Channel make_gamma(double t, const ComplexMatrix& adjacency) {
  validate_adjacency(adjacency);
  if (!(t >= 0.0)) throw ValidationFailure("make_gamma: t must be >= 0");
  const std::size_t p = adjacency.rows();
  std::size_t ordered = 0;
  for (const auto& x : adjacency.entries()) ordered += x == Complex(1.0) ? 1 : 0;
  Channel sum = make_delta(p).scaled(t) + make_schur(adjacency);
  return sum.with_label("gamma(t=" + detail::format_scalar(t) + ", p=" + std::to_string(p) +
                        ", edges=" + std::to_string(ordered / 2) + ")");
}

/// phi o psi: first psi, then phi.
inline Channel compose(const Channel& phi, const Channel& psi) {
  if (psi.q() != phi.p()) {
    throw DimensionMismatch("compose: inner map outputs " + std::to_string(psi.q()) +
                            "x" + std::to_string(psi.q()) + " but outer expects " +
                            std::to_string(phi.p()));
  }
  return Channel::from_transfer(psi.p(), phi.q(), phi.transfer() * psi.transfer(),
                                "(" + phi.label() + ") o (" + psi.label() + ")");
}

inline ComplexMatrix apply(const Channel& phi, const ComplexMatrix& x) { return phi.apply(x); }

struct ChannelProps {
  bool unital = false;
  bool trace_preserving = false;
  bool hermiticity_preserving = false;
};

inline ChannelProps channel_props(const Channel& phi, double tol = 1e-9) {
  if (phi.p() != phi.q()) throw DimensionMismatch("channel_props: requires p = q");
  const auto id = ComplexMatrix::identity(phi.p());
  ChannelProps props;
  props.unital = (phi.apply(id) - id).frobenius_norm() <= tol;
  props.trace_preserving = (phi.adjoint().apply(id) - id).frobenius_norm() <= tol;
  props.hermiticity_preserving = hermitian_defect(phi.choi()) <= tol;
  return props;
}

}  // namespace pptmaps
