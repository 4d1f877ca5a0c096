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

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "pptmaps/eigen.hpp"
#include "pptmaps/graph.hpp"
#include "pptmaps/matrix.hpp"

namespace pptmaps {

enum class ThetaStatus {
  /// Every entry is constrained; the value is exact.
  Exact,
  /// A zero subgradient was found; the iterate is optimal.
  Optimal,
  /// Budget exhausted after the objective improved at least once.
  BudgetExhausted,
  /// Free entries exist but the objective never decreased.
  NoProgress,
};

inline const char* to_string(ThetaStatus s) {
  switch (s) {
    case ThetaStatus::Exact: return "exact";
    case ThetaStatus::Optimal: return "optimal";
    case ThetaStatus::BudgetExhausted: return "budget_exhausted";
    case ThetaStatus::NoProgress: return "no_progress";
  }
  return "unknown";
}

/// Feasible point of the eigenvalue minimization for the theta number of the
/// complement: H = H*, H_ii = 1, H_ij = 1 on edges of G, other entries free.
/// Constrained entries are never written after initialization.
/// `value` = lambda_max(H) is always an upper bound on theta(complement G).
struct ThetaSolution {
  double value = 0.0;
  ComplexMatrix certificate;
  std::size_t iterations = 0;
  double gap_estimate = 0.0;
  ThetaStatus status = ThetaStatus::Exact;
};

struct ThetaOptions {
  std::size_t iterations = 20000;
  /// Subgradient norms at or below this count as zero.
  double tolerance = 1e-12;
  /// Target-level offset c / sqrt(k) of the Polyak step.
  double step_scale = 0.1;
};

/// theta(complement of G) = min lambda_max(H) over the free (non-edge,
/// off-diagonal) entries, minimized by subgradient descent.
///
/// Steps follow Polyak's rule against the diminishing target
/// f_best - c / sqrt(k): the iterate moves (f(x_k) - f_best + c / sqrt(k)) / |g|
/// along -g / |g|, where g = vv* restricted to the free entries and v is a top
/// eigenvector.
///
/// The free entries are kept real: lambda_max is invariant under entrywise
/// conjugation and convex, so a real minimizer exists.
inline ThetaSolution lovasz_theta_bar(const Graph& g, const ThetaOptions& opts = {}) {
  const std::size_t p = g.vertex_count();
  ComplexMatrix h = g.adjacency_matrix() + ComplexMatrix::identity(p);
  std::vector<std::pair<std::size_t, std::size_t>> free;
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = i + 1; j < p; ++j)
      if (!g.has_edge(i, j)) free.emplace_back(i, j);

  ThetaSolution sol;
  if (p == 0) {
    sol.value = 0.0;
    return sol;
  }
  const auto evaluate = [](const ComplexMatrix& m) {
    EigResult e = herm_eig(m);
    const std::size_t top = e.values.size() - 1;
    std::vector<Complex> v(e.values.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = (*e.vectors)(i, top);
    return std::pair{e.max_real(), std::move(v)};
  };

  auto [value, top] = evaluate(h);
  sol.value = value;
  sol.certificate = h;
  if (free.empty()) {
    // Complete graph: H is the all-ones matrix, whose top eigenvalue is p.
    sol.value = static_cast<double>(p);
    sol.status = ThetaStatus::Exact;
    return sol;
  }

  const double initial = value;
  double current = value;
  std::vector<double> x(free.size(), 0.0);
  std::vector<double> best_x = x;
  double sum_step = 0.0, sum_step_sq = 0.0;
  sol.status = ThetaStatus::BudgetExhausted;
  std::size_t k = 0;
  for (; k < opts.iterations; ++k) {
    // d lambda_max / d x_ij = 2 Re(conj(v_i) v_j) for the symmetric pair.
    std::vector<double> grad(free.size());
    double gnorm = 0.0;
    for (std::size_t f = 0; f < free.size(); ++f) {
      const auto [i, j] = free[f];
      grad[f] = 2.0 * (std::conj(top[i]) * top[j]).real();
      gnorm += grad[f] * grad[f];
    }
    gnorm = std::sqrt(gnorm);
    if (gnorm <= opts.tolerance) {
      sol.status = ThetaStatus::Optimal;
      break;
    }
    const double offset = opts.step_scale / std::sqrt(static_cast<double>(k + 1));
    const double step = (current - sol.value + offset) / gnorm;
    sum_step += step;
    sum_step_sq += step * step;
    for (std::size_t f = 0; f < free.size(); ++f) {
      x[f] -= step * grad[f] / gnorm;
      const auto [i, j] = free[f];
      h(i, j) = x[f];
      h(j, i) = x[f];
    }
    auto [v, t] = evaluate(h);
    top = std::move(t);
    current = v;
    if (v < sol.value) {
      sol.value = v;
      best_x = x;
    }
  }
  sol.iterations = k;
  for (std::size_t f = 0; f < free.size(); ++f) {
    const auto [i, j] = free[f];
    sol.certificate(i, j) = best_x[f];
    sol.certificate(j, i) = best_x[f];
  }
  // Recompute so that `value` is exactly lambda_max of the returned matrix.
  sol.value = herm_eig(sol.certificate).max_real();
  if (sol.status != ThetaStatus::Optimal && sol.value >= initial) {
    sol.status = ThetaStatus::NoProgress;
  }
  if (sum_step > 0.0) {
    double radius_sq = 0.0;
    for (double xi : best_x) radius_sq += xi * xi;
    sol.gap_estimate = (radius_sq + sum_step_sq) / (2.0 * sum_step);
  }
  return sol;
}

}  // namespace pptmaps
