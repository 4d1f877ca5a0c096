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
#include <cstddef>
#include <string>
#include <vector>

#include "pptmaps/channel.hpp"
#include "pptmaps/classify.hpp"
#include "pptmaps/eigen.hpp"
#include "pptmaps/error.hpp"
#include "pptmaps/matrix.hpp"

namespace pptmaps {

/// Rescales phi so that phi(I) = I. Throws NotScalarUnital unless
/// phi(I) = c I with c > 0 (within 1e-9 (1 + |phi(I)|_F)).
inline Channel normalize_channel(const Channel& phi) {
  if (phi.p() != phi.q()) throw DimensionMismatch("normalize_channel: requires p = q");
  const std::size_t p = phi.p();
  const ComplexMatrix image = phi.apply(ComplexMatrix::identity(p));
  const Complex c = image.trace() / static_cast<double>(p);
  const double defect = (image - ComplexMatrix::identity(p) * c).frobenius_norm();
  if (defect > 1e-9 * (1.0 + image.frobenius_norm()) || std::abs(c.imag()) > 1e-9 ||
      !(c.real() > 0.0)) {
    throw NotScalarUnital("normalize_channel: phi(I) is not a positive multiple of I");
  }
  return phi.scaled(1.0 / c.real()).with_label("normalized(" + phi.label() + ")");
}

enum class PsiMethod { Spectral, Iterative };

inline const char* to_string(PsiMethod m) {
  return m == PsiMethod::Spectral ? "spectral" : "iterative";
}

struct PeripheralOptions {
  /// Eigenvalues with |lambda| >= 1 - tol count as peripheral.
  double tolerance = 1e-6;
  double idempotency_tolerance = 1e-7;
  double condition_limit = 1e8;
};

/// The idempotent limit point psi of (phi^k) together with diagnostics.
struct PeripheralProjection {
  Channel psi;
  PsiMethod method = PsiMethod::Spectral;
  /// |psi o psi - psi|_F on transfer matrices.
  double idempotency_error = 0.0;
  /// |phi o psi - psi o phi|_F on transfer matrices.
  double commutator_error = 0.0;
  /// Eigenvalues of the transfer matrix of phi, (real, imag) ascending.
  std::vector<Complex> spectrum;
  /// max |lambda| over non-peripheral eigenvalues (0 if there are none).
  double subperipheral_radius = 0.0;
};

namespace detail {

inline double idempotency_error(const ComplexMatrix& psi) {
  return (psi * psi - psi).frobenius_norm();
}

inline double commutator_error(const ComplexMatrix& t, const ComplexMatrix& psi) {
  return (t * psi - psi * t).frobenius_norm();
}

}  // namespace detail

/// Limit point of the powers phi^{n!}: raises the transfer matrix to 12! and
/// then squares until idempotent. Peripheral eigenvalues of a power-bounded
/// positive map are roots of unity; any root of order <= 12 becomes 1 here.
inline ComplexMatrix peripheral_idempotent_iterative(const ComplexMatrix& transfer,
                                                     double idempotency_tol = 1e-7) {
  ComplexMatrix m = transfer;
  for (unsigned long long k = 2; k <= 12; ++k) m = matrix_power(m, k);
  for (int s = 0; s < 64 && detail::idempotency_error(m) > idempotency_tol; ++s) m = m * m;
  return m;
}

/// Spectral projection of phi's transfer matrix onto its peripheral
/// eigenvalues, acting as the identity there and 0 on the complementary
/// invariant subspace. Falls back to the iterative construction when the
/// eigenvectors are ill conditioned or the projection fails the idempotency
/// or commutation checks.
inline PeripheralProjection peripheral_projection(const Channel& phi,
                                                  const PeripheralOptions& opts = {}) {
  if (phi.p() != phi.q()) throw DimensionMismatch("peripheral_idempotent: requires p = q");
  const ComplexMatrix& t = phi.transfer();
  const std::size_t n = t.rows();
  GeneralEigOptions eo;
  eo.condition_limit = opts.condition_limit;
  const EigResult eig = eig_general(t, eo);

  double sub = 0.0;
  for (const auto& z : eig.values)
    if (std::abs(z) < 1.0 - opts.tolerance) sub = std::max(sub, std::abs(z));

  const auto accept = [&](const ComplexMatrix& psi) {
    return detail::idempotency_error(psi) <= opts.idempotency_tolerance &&
           detail::commutator_error(t, psi) <= opts.idempotency_tolerance;
  };

  ComplexMatrix psi;
  PsiMethod method = PsiMethod::Spectral;
  bool ok = false;
  if (eig.vectors) {
    const ComplexMatrix& v = *eig.vectors;
    LuDecomposition lu(v);
    if (!lu.singular()) {
      ComplexMatrix vm = v;
      for (std::size_t j = 0; j < n; ++j)
        if (std::abs(eig.values[j]) < 1.0 - opts.tolerance)
          for (std::size_t i = 0; i < n; ++i) vm(i, j) = 0.0;
      psi = vm * lu.inverse();
      ok = accept(psi);
    }
  }
  if (!ok) {
    method = PsiMethod::Iterative;
    psi = peripheral_idempotent_iterative(t, opts.idempotency_tolerance);
    ok = accept(psi);
  }
  if (!ok) {
    throw DefectivePeripheralSpectrum(
        "peripheral_idempotent: neither the spectral nor the iterative construction is "
        "idempotent and commuting within tolerance");
  }
  const double idem = detail::idempotency_error(psi);
  const double comm = detail::commutator_error(t, psi);
  return {Channel::from_transfer(phi.p(), phi.p(), std::move(psi), "psi(" + phi.label() + ")"),
          method, idem, comm, eig.values, sub};
}

inline Channel peripheral_idempotent(const Channel& phi, double tol = 1e-6) {
  PeripheralOptions opts;
  opts.tolerance = tol;
  return peripheral_projection(phi, opts).psi;
}

/// Convergence of phi^k towards phi^k o psi, measured in the Frobenius norm
/// of transfer matrices.
struct IterationTrace {
  std::vector<std::size_t> k_values;
  /// |phi^k - phi^k o psi|_F.
  std::vector<double> distances;
  /// exp(slope) of a least-squares fit of log(distance) against k over the
  /// tail half; 0 when the tail distances vanish.
  double fitted_rate = 0.0;
  Channel psi;
  PsiMethod psi_method = PsiMethod::Spectral;
  double psi_idempotency_error = 0.0;
  double psi_commutator_error = 0.0;
  bool psi_is_ppt = false;
  bool phi_is_ppt = false;
  /// The analysis ran on the adjoint (phi trace preserving, not unital).
  bool adjoint_side = false;
  double subperipheral_radius = 0.0;
  /// True when psi is PPT, so every distance bounds d(phi^k, EB) from above.
  bool eb_distance_bound = false;
};

inline double fit_log_rate(const std::vector<std::size_t>& ks, const std::vector<double>& ds) {
  const std::size_t start = ks.size() / 2;
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t n = 0;
  for (std::size_t i = start; i < ks.size(); ++i) {
    if (!(ds[i] > 0.0)) continue;
    const double x = static_cast<double>(ks[i]);
    const double y = std::log(ds[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 2) return 0.0;
  const double denom = static_cast<double>(n) * sxx - sx * sx;
  if (denom == 0.0) return 0.0;
  return std::exp((static_cast<double>(n) * sxy - sx * sy) / denom);
}

/// distances[k-1] = |T^k (I - Psi)|_F for k = 1..steps, where T and Psi are
/// the transfer matrices of phi and psi. Computed as powers of T (I - Psi),
/// which equals T^k (I - Psi) because Psi is an idempotent commuting with T,
/// and keeps the relative accuracy of the decaying part.
inline IterationTrace convergence_report(const Channel& phi, std::size_t steps,
                                         const PeripheralOptions& opts = {}) {
  if (phi.p() != phi.q()) throw DimensionMismatch("convergence_report: requires p = q");
  if (steps < 2) throw ValidationFailure("convergence_report: need at least 2 steps");
  const double tol = 1e-9 * (1.0 + phi.choi().frobenius_norm());
  const ChannelProps props = channel_props(phi, tol);
  bool adjoint_side = false;
  Channel target = phi;
  if (!props.unital) {
    if (!props.trace_preserving) {
      throw NotScalarUnital(
          "convergence_report: map is neither unital nor trace preserving; normalize first");
    }
    adjoint_side = true;
    target = phi.adjoint();
  }
  PeripheralProjection pp = peripheral_projection(target, opts);
  const ComplexMatrix& t = target.transfer();
  const ComplexMatrix r = t - t * pp.psi.transfer();

  IterationTrace trace{.k_values = {}, .distances = {}, .psi = pp.psi};
  ComplexMatrix power = r;
  for (std::size_t k = 1; k <= steps; ++k) {
    trace.k_values.push_back(k);
    trace.distances.push_back(power.frobenius_norm());
    if (k < steps) power = r * power;
  }
  trace.fitted_rate = fit_log_rate(trace.k_values, trace.distances);
  trace.psi_method = pp.method;
  trace.psi_idempotency_error = pp.idempotency_error;
  trace.psi_commutator_error = pp.commutator_error;
  trace.psi_is_ppt = is_ppt(pp.psi).holds;
  trace.phi_is_ppt = is_ppt(target).holds;
  trace.adjoint_side = adjoint_side;
  trace.subperipheral_radius = pp.subperipheral_radius;
  trace.eb_distance_bound = trace.psi_is_ppt;
  return trace;
}

}  // namespace pptmaps
