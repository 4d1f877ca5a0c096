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
#include <array>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "pptmaps/certificate.hpp"
#include "pptmaps/channel.hpp"
#include "pptmaps/eigen.hpp"
#include "pptmaps/error.hpp"
#include "pptmaps/graph.hpp"
#include "pptmaps/matrix.hpp"
#include "pptmaps/theta.hpp"

namespace pptmaps {

struct CpVerdict {
  bool holds = false;
  /// Least eigenvalue of the Choi matrix; NaN when the Choi matrix is not
  /// Hermitian (then the map cannot be CP).
  double min_eig = 0.0;
};

/// Choi's criterion: CP iff the Choi matrix is PSD within `tol`
/// (default 1e-9 (1 + |C|_F)).
inline CpVerdict is_cp(const Channel& phi, std::optional<double> tol = std::nullopt) {
  if (!phi.hermitian_choi()) return {false, std::numeric_limits<double>::quiet_NaN()};
  const auto v = psd_check(phi.choi(), tol);
  return {v.psd, v.min_eig};
}

struct PptVerdict {
  bool holds = false;
  double min_eig = 0.0;
  /// Least eigenvalue of the partial transpose of the Choi matrix.
  double min_eig_pt = 0.0;
};

/// PPT iff CP and the partially transposed Choi matrix (the Choi matrix of
/// phi o T, transposed) is PSD. The default tolerance is the same for both
/// tests since the partial transpose preserves the Frobenius norm.
inline PptVerdict is_ppt(const Channel& phi, std::optional<double> tol = std::nullopt) {
  const auto cp = is_cp(phi, tol);
  if (std::isnan(cp.min_eig)) return {false, cp.min_eig, cp.min_eig};
  const auto pt = psd_check(partial_transpose(phi.choi(), phi.p(), phi.q()), tol);
  return {cp.holds && pt.psd, cp.min_eig, pt.min_eig};
}

enum class SchurVerdict { NotCP, CPNotPPT, PPT };

inline const char* to_string(SchurVerdict v) {
  switch (v) {
    case SchurVerdict::NotCP: return "NotCP";
    case SchurVerdict::CPNotPPT: return "CPNotPPT";
    case SchurVerdict::PPT: return "PPT";
  }
  return "unknown";
}

/// S_P is CP iff P >= 0, and PPT iff moreover P is diagonal.
/// Uses the same tolerance rule as is_ppt(make_schur(P)) so the two agree.
inline SchurVerdict schur_ppt_classify(const ComplexMatrix& mult,
                                       std::optional<double> tol = std::nullopt) {
  if (!mult.is_square()) throw DimensionMismatch("schur_ppt_classify: non-square multiplier");
  if (!is_hermitian(mult)) return SchurVerdict::NotCP;
  const double t = tol.value_or(default_psd_tolerance(mult));
  if (!psd_check(mult, t).psd) return SchurVerdict::NotCP;
  double off = 0.0;
  for (std::size_t i = 0; i < mult.rows(); ++i)
    for (std::size_t j = 0; j < mult.cols(); ++j)
      if (i != j) off = std::max(off, std::abs(mult(i, j)));
  return off <= t ? SchurVerdict::PPT : SchurVerdict::CPNotPPT;
}

/// Bisection for the least t in [lo, hi] at which a monotone predicate turns
/// true. Requires pred(hi); returns hi after shrinking [lo, hi] below `width`.
inline double bisect_threshold(const std::function<bool(double)>& pred, double lo, double hi,
                               double width) {
  if (!pred(hi)) throw ValidationFailure("bisect_threshold: predicate false at upper end");
  while (hi - lo > width) {
    const double mid = 0.5 * (lo + hi);
    (pred(mid) ? hi : lo) = mid;
  }
  return hi;
}

struct TPosOptions {
  std::size_t restarts = 64;
  std::size_t iterations = 500;
  /// Optimization stops once the step length falls below this.
  double tolerance = 1e-12;
  std::uint64_t seed = 0;
  /// 0 = hardware concurrency.
  unsigned threads = 1;
};

struct TPosEstimate {
  /// -p * f(witness); a certified lower bound on t_pos.
  double estimate = 0.0;
  /// f(witness) = lambda_min(A o vv*).
  double objective = 0.0;
  std::vector<Complex> witness;
  std::size_t best_restart = 0;
};

namespace detail {

struct BottomPair {
  double value;
  std::vector<Complex> vector;
};

/// lambda_min(A o vv*) and its eigenvector.
inline BottomPair schur_rank_one_bottom(const ComplexMatrix& a, const std::vector<Complex>& v) {
  const std::size_t p = v.size();
  ComplexMatrix m(p, p);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j)
      if (a(i, j) != Complex(0.0)) m(i, j) = a(i, j) * v[i] * std::conj(v[j]);
  const EigResult e = herm_eig(m);
  std::vector<Complex> u(p);
  for (std::size_t i = 0; i < p; ++i) u[i] = (*e.vectors)(i, 0);
  return {e.min_real(), std::move(u)};
}

inline void normalize(std::vector<Complex>& v) {
  double n = 0.0;
  for (const auto& z : v) n += std::norm(z);
  n = std::sqrt(n);
  for (auto& z : v) z /= n;
}

struct RestartResult {
  double objective;
  std::vector<Complex> witness;
};

inline RestartResult descend_from(const ComplexMatrix& a, std::vector<Complex> v,
                                  const TPosOptions& opts) {
  const std::size_t p = v.size();
  normalize(v);
  BottomPair cur = schur_rank_one_bottom(a, v);
  double step = 1.0;
  for (std::size_t it = 0; it < opts.iterations && step > opts.tolerance; ++it) {
    // df/d conj(v_j) = u_j (A (conj(u) o v))_j for f = u* (A o vv*) u.
    std::vector<Complex> w(p), g(p);
    for (std::size_t i = 0; i < p; ++i) w[i] = std::conj(cur.vector[i]) * v[i];
    for (std::size_t j = 0; j < p; ++j) {
      Complex s = 0.0;
      for (std::size_t i = 0; i < p; ++i) s += a(j, i) * w[i];
      g[j] = 2.0 * cur.vector[j] * s;
    }
    // Project onto the tangent space of the sphere at v.
    Complex radial = 0.0;
    for (std::size_t j = 0; j < p; ++j) radial += std::conj(v[j]) * g[j];
    double gnorm = 0.0;
    for (std::size_t j = 0; j < p; ++j) {
      g[j] -= radial.real() * v[j];
      gnorm += std::norm(g[j]);
    }
    if (std::sqrt(gnorm) <= opts.tolerance) break;
    std::vector<Complex> trial(p);
    for (std::size_t j = 0; j < p; ++j) trial[j] = v[j] - step * g[j];
    normalize(trial);
    BottomPair next = schur_rank_one_bottom(a, trial);
    if (next.value < cur.value) {
      v = std::move(trial);
      cur = std::move(next);
      step *= 1.5;
    } else {
      step *= 0.5;
    }
  }
  return {cur.value, std::move(v)};
}

}  // namespace detail

/// Witness-backed lower bound on t_pos by multi-start projected gradient
/// descent of f(v) = lambda_min(A o vv*) over unit vectors v in C^p. Restart r
/// starts from a complex Gaussian vector seeded by (seed, r); restarts may run
/// on several threads and are reduced by (objective, restart index).
inline TPosEstimate t_pos_estimate(const ComplexMatrix& adjacency, const TPosOptions& opts = {}) {
  validate_adjacency(adjacency);
  if (adjacency.max_abs() == 0.0) {
    throw ValidationFailure("t_pos_estimate: adjacency matrix must be nonzero");
  }
  const std::size_t p = adjacency.rows();
  const std::size_t restarts = std::max<std::size_t>(opts.restarts, 1);
  std::vector<detail::RestartResult> results(restarts);
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t r = next++; r < restarts; r = next++) {
      std::seed_seq seq{static_cast<std::uint32_t>(opts.seed),
                        static_cast<std::uint32_t>(opts.seed >> 32),
                        static_cast<std::uint32_t>(r)};
      std::mt19937_64 rng(seq);
      std::normal_distribution<double> gauss;
      std::vector<Complex> v(p);
      for (auto& z : v) {
        const double re = gauss(rng);
        z = Complex(re, gauss(rng));
      }
      results[r] = detail::descend_from(adjacency, std::move(v), opts);
    }
  };
  unsigned threads = opts.threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                       : opts.threads;
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, restarts));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned k = 0; k < threads; ++k) pool.emplace_back(worker);
  }

  std::size_t best = 0;
  for (std::size_t r = 1; r < restarts; ++r)
    if (results[r].objective < results[best].objective) best = r;
  TPosEstimate out;
  out.best_restart = best;
  out.witness = results[best].witness;
  // Re-evaluate at the witness so the reported bound is exactly what it proves.
  out.objective = detail::schur_rank_one_bottom(adjacency, out.witness).value;
  out.estimate = -static_cast<double>(p) * out.objective;
  return out;
}

struct ThresholdOptions {
  TPosOptions t_pos;
  ThetaOptions theta;
};

/// Parameters of the family gamma_t = t delta + S_A for one graph.
struct ThresholdReport {
  std::size_t p = 0;
  /// Both (i,j) and (j,i) counted.
  std::size_t ordered_edge_count = 0;
  std::size_t max_degree = 0;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  double t_cp = 0.0;
  double t_ppt = 0.0;
  /// p d: gamma_{pd} is entanglement breaking.
  double t_eb_upper = 0.0;
  /// 1, -lambda_min, -p lambda_min / |E|, -p lambda_min / t_eb_upper,
  /// lambda_max / (theta_bar - 1). The last is absent when theta_bar = 1.
  std::array<std::optional<double>, 5> t_pos_lower_components{};
  double t_pos_lower = 0.0;
  double t_pos_numeric = 0.0;
  std::vector<Complex> t_pos_witness;
  double theta_bar = 0.0;
  ThetaStatus theta_status = ThetaStatus::Exact;
  bool ppt_squared_ok = true;
};

inline ThresholdReport thresholds(const Graph& g, const ThresholdOptions& opts = {}) {
  ThresholdReport r;
  r.p = g.vertex_count();
  if (g.empty()) {
    // gamma_t = t delta is entanglement breaking for every t >= 0.
    r.t_pos_lower_components = {0.0, 0.0, 0.0, 0.0, 0.0};
    r.theta_bar = r.p > 0 ? 1.0 : 0.0;
    r.theta_status = ThetaStatus::Optimal;
    return r;
  }
  const GraphReport gr = graph_report(g);
  const double p = static_cast<double>(r.p);
  r.ordered_edge_count = gr.ordered_edge_count;
  r.max_degree = gr.max_degree;
  r.lambda_min = gr.lambda_min;
  r.lambda_max = gr.lambda_max;
  r.t_cp = -p * gr.lambda_min;
  r.t_ppt = r.t_cp;
  r.t_eb_upper = p * static_cast<double>(gr.max_degree);

  const ThetaSolution theta = lovasz_theta_bar(g, opts.theta);
  r.theta_bar = theta.value;
  r.theta_status = theta.status;

  auto& c = r.t_pos_lower_components;
  c[0] = 1.0;
  c[1] = -gr.lambda_min;
  c[2] = r.t_cp / static_cast<double>(gr.ordered_edge_count);
  c[3] = r.t_cp / r.t_eb_upper;
  if (theta.value - 1.0 > 1e-12) c[4] = gr.lambda_max / (theta.value - 1.0);
  r.t_pos_lower = 0.0;
  for (const auto& x : c)
    if (x) r.t_pos_lower = std::max(r.t_pos_lower, *x);

  const TPosEstimate est = t_pos_estimate(g.adjacency_matrix(), opts.t_pos);
  r.t_pos_numeric = est.estimate;
  r.t_pos_witness = est.witness;
  r.ppt_squared_ok = r.t_eb_upper <= r.t_ppt * r.t_ppt;
  return r;
}

inline ThresholdReport thresholds(const ComplexMatrix& adjacency, const ThresholdOptions& opts = {}) {
  return thresholds(Graph::from_adjacency(adjacency), opts);
}

/// t_ppt(A) = -p lambda_min(A), or 0 for the empty graph.
inline double t_ppt_of(const Graph& g) {
  if (g.empty()) return 0.0;
  return -static_cast<double>(g.vertex_count()) * herm_eig(g.adjacency_matrix()).min_real();
}

struct Ppt2Result {
  bool composition_is_gamma = false;
  bool eb_certified = false;
  /// max |choi(gamma_{t1,A} o gamma_{t2,B}) - choi(gamma_{t1 t2, A o B})|,
  /// accepted up to 1e-10 (1 + t1 t2).
  double composition_deviation = 0.0;
  double t_product = 0.0;
  /// "trace_map" when A o B = 0, otherwise "certificate".
  std::string route;
  double t_eb_upper_product = 0.0;
  std::string certificate_failure;
};

/// Checks that gamma_{t1,A} o gamma_{t2,B} = gamma_{t1 t2, A o B} and that the
/// composition is entanglement breaking: either A o B = 0 (then it is
/// X -> t1 t2 tr(X) I) or t1 t2 >= p d(A o B) and the exact certificate
/// for gamma_{p d, A o B} verifies. Throws NotPPT unless t1 >= t_ppt(A) and
/// t2 >= t_ppt(B).
inline Ppt2Result ppt2_verify(const Graph& a, const Graph& b, double t1, double t2) {
  if (a.vertex_count() != b.vertex_count()) {
    throw DimensionMismatch("ppt2_verify: graphs have different vertex counts");
  }
  const double ta = t_ppt_of(a), tb = t_ppt_of(b);
  const auto below = [](double t, double threshold) {
    return t < threshold - 1e-9 * (1.0 + threshold);
  };
  if (below(t1, ta)) {
    throw NotPPT("gamma_{t1,A} is not PPT: t1 = " + detail::format_scalar(t1) +
                 " < t_ppt(A) = " + detail::format_scalar(ta));
  }
  if (below(t2, tb)) {
    throw NotPPT("gamma_{t2,B} is not PPT: t2 = " + detail::format_scalar(t2) +
                 " < t_ppt(B) = " + detail::format_scalar(tb));
  }
  const ComplexMatrix am = a.adjacency_matrix(), bm = b.adjacency_matrix();
  const ComplexMatrix prod = schur_product(am, bm);
  const Graph ab = Graph::from_adjacency(prod);

  Ppt2Result r;
  r.t_product = t1 * t2;
  const Channel composed = compose(make_gamma(t1, am), make_gamma(t2, bm));
  const Channel expected = make_gamma(r.t_product, prod);
  r.composition_deviation = max_abs_diff(composed.choi(), expected.choi());
  r.composition_is_gamma = r.composition_deviation <= 1e-10 * (1.0 + r.t_product);

  if (ab.empty()) {
    r.route = "trace_map";
    r.eb_certified = true;
    return r;
  }
  r.route = "certificate";
  r.t_eb_upper_product = static_cast<double>(ab.vertex_count() * ab.max_degree());
  const CertificateCheck check = verify_certificate(build_certificate(ab), ab);
  r.certificate_failure = check.failure;
  r.eb_certified = !below(r.t_product, r.t_eb_upper_product) && check.ok;
  return r;
}

}  // namespace pptmaps
