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
#include <limits>
#include <numeric>
#include <optional>
#include <vector>

#include "pptmaps/error.hpp"
#include "pptmaps/matrix.hpp"

namespace pptmaps {

/// Eigenvalues sorted by (real, imag) ascending, with optional column
/// eigenvectors in the same order.
struct EigResult {
  std::vector<Complex> values;
  std::optional<ComplexMatrix> vectors;
  /// max_j |M v_j - lambda_j v_j|_2, or the Schur residual |MZ - ZT|_F
  /// when no vectors are returned.
  double residual = 0.0;
  /// |V|_F |V^-1|_F for the general solver; 1 for the Hermitian solver.
  double condition = 1.0;

  double min_real() const { return values.front().real(); }
  double max_real() const { return values.back().real(); }
};

struct HermEigOptions {
  /// Residual bound, scaled by (1 + |H|_F).
  double tolerance = 1e-9;
  int max_sweeps = 100;
};

struct GeneralEigOptions {
  bool want_vectors = true;
  /// Eigenvectors are dropped when the eigenvector matrix is worse
  /// conditioned than this.
  double condition_limit = 1e8;
  int max_iterations_per_eigenvalue = 60;
};

namespace detail {

inline bool complex_less(const Complex& a, const Complex& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

inline std::vector<std::size_t> sorted_order(const std::vector<Complex>& v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return complex_less(v[a], v[b]);
  });
  return idx;
}

inline double eigen_residual(const ComplexMatrix& m, const std::vector<Complex>& values,
                             const ComplexMatrix& vectors) {
  const std::size_t n = m.rows();
  double worst = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      Complex r = -values[j] * vectors(i, j);
      for (std::size_t k = 0; k < n; ++k) r += m(i, k) * vectors(k, j);
      s += std::norm(r);
    }
    worst = std::max(worst, std::sqrt(s));
  }
  return worst;
}

}  // namespace detail

/// Eigen-decomposition of a Hermitian matrix by the cyclic Jacobi method.
///
/// Throws NonHermitianInput when |h_ij - conj(h_ji)| exceeds
/// 1e-12 (1 + max|h_ij|), NoConvergence when the sweep budget runs out or the
/// final residual misses the tolerance.
inline EigResult herm_eig(const ComplexMatrix& h, const HermEigOptions& opts = {}) {
  if (!h.is_square()) throw DimensionMismatch("herm_eig: non-square " + h.shape());
  if (!is_hermitian(h)) {
    throw NonHermitianInput("herm_eig: input is not Hermitian (defect " +
                            std::to_string(hermitian_defect(h)) + ")");
  }
  const std::size_t n = h.rows();
  ComplexMatrix a = (h + h.adjoint()) * Complex(0.5);
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double eps = std::numeric_limits<double>::epsilon();
  const double tiny = std::numeric_limits<double>::min() / eps;

  bool converged = n <= 1;
  for (int sweep = 0; sweep < opts.max_sweeps && !converged; ++sweep) {
    double off = 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const double x = std::norm(a(i, j));
        total += x;
        if (i != j) off += x;
      }
    if (off <= eps * eps * total || off == 0.0) {
      converged = true;
      break;
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double mag = std::abs(a(p, q));
        if (mag == 0.0) continue;
        // Near-subnormal entries give a phase of modulus != 1 and hence a
        // non-unitary rotation. Their size is far below any tolerance.
        if (mag < tiny) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        // Negligible against both diagonal entries: drop it.
        if (sweep > 3 && std::abs(app) + 100.0 * mag == std::abs(app) &&
            std::abs(aqq) + 100.0 * mag == std::abs(aqq)) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        Complex phase = a(p, q) / mag;
        phase /= std::abs(phase);
        const double tau = (aqq - app) / (2.0 * mag);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const Complex cph = std::conj(phase);
        // Columns of the unitary G: p' = (c, -s e^{-i phi}), q' = (s, c e^{-i phi}).
        const Complex g00 = c, g01 = s, g10 = -s * cph, g11 = c * cph;
        for (std::size_t r = 0; r < n; ++r) {
          const Complex xp = a(r, p), xq = a(r, q);
          a(r, p) = xp * g00 + xq * g10;
          a(r, q) = xp * g01 + xq * g11;
        }
        for (std::size_t col = 0; col < n; ++col) {
          const Complex xp = a(p, col), xq = a(q, col);
          a(p, col) = std::conj(g00) * xp + std::conj(g10) * xq;
          a(q, col) = std::conj(g01) * xp + std::conj(g11) * xq;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = app - t * mag;
        a(q, q) = aqq + t * mag;
        for (std::size_t r = 0; r < n; ++r) {
          const Complex xp = v(r, p), xq = v(r, q);
          v(r, p) = xp * g00 + xq * g10;
          v(r, q) = xp * g01 + xq * g11;
        }
      }
    }
  }
  if (!converged) {
    throw NoConvergence("herm_eig: Jacobi sweep budget exhausted");
  }

  std::vector<Complex> raw(n);
  for (std::size_t i = 0; i < n; ++i) raw[i] = a(i, i).real();
  const auto order = detail::sorted_order(raw);
  EigResult out;
  out.values.resize(n);
  ComplexMatrix vs(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = raw[order[k]];
    for (std::size_t r = 0; r < n; ++r) vs(r, k) = v(r, order[k]);
  }
  out.residual = detail::eigen_residual(h, out.values, vs);
  out.vectors = std::move(vs);
  if (out.residual > opts.tolerance * (1.0 + h.frobenius_norm())) {
    throw NoConvergence("herm_eig: residual " + std::to_string(out.residual) +
                        " above tolerance");
  }
  return out;
}

/// Eigenvalues (and, when well conditioned, eigenvectors) of a general square
/// matrix: Householder reduction to Hessenberg form followed by single-shift
/// complex QR to Schur form. Eigenvectors come from back substitution on the
/// triangular factor.
inline EigResult eig_general(const ComplexMatrix& m, const GeneralEigOptions& opts = {}) {
  if (!m.is_square()) throw DimensionMismatch("eig_general: non-square " + m.shape());
  const std::size_t n = m.rows();
  const double eps = std::numeric_limits<double>::epsilon();
  const double tiny = std::numeric_limits<double>::min();
  ComplexMatrix h = m;
  ComplexMatrix z = ComplexMatrix::identity(n);

  // Hessenberg reduction.
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double alpha = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) alpha += std::norm(h(i, k));
    alpha = std::sqrt(alpha);
    double below = 0.0;
    for (std::size_t i = k + 2; i < n; ++i) below += std::norm(h(i, k));
    if (alpha == 0.0 || below == 0.0) continue;
    std::vector<Complex> u(n, 0.0);
    const Complex x0 = h(k + 1, k);
    const Complex phase = std::abs(x0) == 0.0 ? Complex(1.0) : x0 / std::abs(x0);
    for (std::size_t i = k + 1; i < n; ++i) u[i] = h(i, k);
    u[k + 1] += phase * alpha;
    double un = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) un += std::norm(u[i]);
    un = std::sqrt(un);
    for (std::size_t i = k + 1; i < n; ++i) u[i] /= un;
    // h <- (I - 2uu*) h
    for (std::size_t j = 0; j < n; ++j) {
      Complex w = 0.0;
      for (std::size_t i = k + 1; i < n; ++i) w += std::conj(u[i]) * h(i, j);
      for (std::size_t i = k + 1; i < n; ++i) h(i, j) -= 2.0 * u[i] * w;
    }
    // h <- h (I - 2uu*), z <- z (I - 2uu*)
    for (ComplexMatrix* target : {&h, &z}) {
      ComplexMatrix& t = *target;
      for (std::size_t i = 0; i < n; ++i) {
        Complex w = 0.0;
        for (std::size_t j = k + 1; j < n; ++j) w += t(i, j) * u[j];
        for (std::size_t j = k + 1; j < n; ++j) t(i, j) -= 2.0 * w * std::conj(u[j]);
      }
    }
    for (std::size_t i = k + 2; i < n; ++i) h(i, k) = 0.0;
  }

  // Shifted QR to upper triangular (Schur) form.
  const double hnorm = std::max(h.frobenius_norm(), tiny);
  std::size_t total_iterations = 0;
  const std::size_t budget =
      static_cast<std::size_t>(opts.max_iterations_per_eigenvalue) * std::max<std::size_t>(n, 1);
  std::ptrdiff_t iu = static_cast<std::ptrdiff_t>(n) - 1;
  int its = 0;
  struct Rotation {
    double c;
    Complex s;
  };
  std::vector<Rotation> rotations;
  while (iu > 0) {
    std::ptrdiff_t l = iu;
    for (; l > 0; --l) {
      double s = std::abs(h(l - 1, l - 1)) + std::abs(h(l, l));
      if (s == 0.0) s = hnorm;
      if (std::abs(h(l, l - 1)) <= eps * s) break;
    }
    if (l > 0) h(l, l - 1) = 0.0;
    if (l == iu) {
      --iu;
      its = 0;
      continue;
    }
    if (++total_iterations > budget) {
      throw NoConvergence("eig_general: QR iteration budget exhausted");
    }
    ++its;
    Complex shift;
    if (its % 10 == 0) {
      // Exceptional shift to break cycles.
      shift = h(iu, iu) + std::abs(h(iu, iu - 1).real()) +
              (iu >= 2 ? std::abs(h(iu - 1, iu - 2).real()) : 0.0);
    } else {
      const Complex a = h(iu - 1, iu - 1), b = h(iu - 1, iu);
      const Complex c = h(iu, iu - 1), d = h(iu, iu);
      const Complex half = 0.5 * (a - d);
      const Complex disc = std::sqrt(half * half + b * c);
      const Complex mu1 = 0.5 * (a + d) + disc;
      const Complex mu2 = 0.5 * (a + d) - disc;
      shift = std::abs(mu1 - d) <= std::abs(mu2 - d) ? mu1 : mu2;
    }
    for (std::ptrdiff_t k = l; k <= iu; ++k) h(k, k) -= shift;
    rotations.clear();
    for (std::ptrdiff_t k = l; k < iu; ++k) {
      const Complex x = h(k, k), y = h(k + 1, k);
      const double ax = std::abs(x), ay = std::abs(y);
      const double nrm = std::hypot(ax, ay);
      Rotation g{1.0, 0.0};
      if (nrm != 0.0) {
        if (ax == 0.0) {
          g = {0.0, std::conj(y) / ay};
        } else {
          g = {ax / nrm, (x / ax) * std::conj(y) / nrm};
        }
      }
      rotations.push_back(g);
      for (std::size_t j = static_cast<std::size_t>(k); j < n; ++j) {
        const Complex hk = h(k, j), hk1 = h(k + 1, j);
        h(k, j) = g.c * hk + g.s * hk1;
        h(k + 1, j) = -std::conj(g.s) * hk + g.c * hk1;
      }
      h(k + 1, k) = 0.0;
    }
    for (std::ptrdiff_t k = l; k < iu; ++k) {
      const Rotation& g = rotations[static_cast<std::size_t>(k - l)];
      const std::size_t last = static_cast<std::size_t>(k) + 1;
      for (std::size_t i = 0; i <= last; ++i) {
        const Complex hk = h(i, k), hk1 = h(i, k + 1);
        h(i, k) = hk * g.c + hk1 * std::conj(g.s);
        h(i, k + 1) = -hk * g.s + hk1 * g.c;
      }
      for (std::size_t i = 0; i < n; ++i) {
        const Complex zk = z(i, k), zk1 = z(i, k + 1);
        z(i, k) = zk * g.c + zk1 * std::conj(g.s);
        z(i, k + 1) = -zk * g.s + zk1 * g.c;
      }
    }
    for (std::ptrdiff_t k = l; k <= iu; ++k) h(k, k) += shift;
  }
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) h(i, j) = 0.0;

  std::vector<Complex> raw(n);
  for (std::size_t i = 0; i < n; ++i) raw[i] = h(i, i);
  const auto order = detail::sorted_order(raw);
  EigResult out;
  out.values.resize(n);
  for (std::size_t k = 0; k < n; ++k) out.values[k] = raw[order[k]];

  const auto schur_residual = [&] { return (m * z - z * h).frobenius_norm(); };
  if (!opts.want_vectors || n == 0) {
    out.residual = schur_residual();
    out.condition = std::numeric_limits<double>::infinity();
    return out;
  }

  // Back substitution on the triangular factor; near-zero pivots are
  // perturbed as in LAPACK's trevc.
  const double smin = std::max(eps * hnorm, tiny);
  ComplexMatrix y(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    y(k, k) = 1.0;
    for (std::size_t jj = k; jj-- > 0;) {
      Complex s = 0.0;
      for (std::size_t mm = jj + 1; mm <= k; ++mm) s += h(jj, mm) * y(mm, k);
      Complex den = h(jj, jj) - h(k, k);
      if (std::abs(den) < smin) den = smin;
      y(jj, k) = -s / den;
      if (std::abs(y(jj, k)) > 1e100) {
        for (std::size_t r = jj; r <= k; ++r) y(r, k) *= 1e-100;
      }
    }
  }
  ComplexMatrix vecs = z * y;
  ComplexMatrix sorted(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t src = order[k];
    double nrm = 0.0;
    for (std::size_t i = 0; i < n; ++i) nrm += std::norm(vecs(i, src));
    nrm = std::sqrt(nrm);
    for (std::size_t i = 0; i < n; ++i) sorted(i, k) = vecs(i, src) / nrm;
  }
  LuDecomposition lu(sorted);
  out.condition = lu.singular()
                      ? std::numeric_limits<double>::infinity()
                      : sorted.frobenius_norm() * lu.inverse().frobenius_norm();
  if (out.condition > opts.condition_limit) {
    out.residual = schur_residual();
    return out;
  }
  out.residual = detail::eigen_residual(m, out.values, sorted);
  out.vectors = std::move(sorted);
  return out;
}

struct PsdVerdict {
  bool psd = false;
  double min_eig = 0.0;
};

/// Default PSD tolerance: 1e-9 scaled by (1 + |H|_F).
inline double default_psd_tolerance(const ComplexMatrix& h) {
  return 1e-9 * (1.0 + h.frobenius_norm());
}

/// PSD test through the least eigenvalue: psd = (min_eig >= -tol).
inline PsdVerdict psd_check(const ComplexMatrix& h, std::optional<double> tol = std::nullopt) {
  const double t = tol.value_or(default_psd_tolerance(h));
  const EigResult e = herm_eig(h);
  const double lo = e.values.empty() ? 0.0 : e.min_real();
  return {lo >= -t, lo};
}

}  // namespace pptmaps
