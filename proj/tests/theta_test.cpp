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

#include "pptmaps/theta.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "gtest/gtest.h"
#include "pptmaps/graph.hpp"

using namespace pptmaps;

namespace {

// For the 5-cycle every optimal H can be taken circulant, with the free
// (distance-two) entries equal to x; its eigenvalues are
// 1 + 2 cos(2 pi k / 5) + 2 x cos(4 pi k / 5). Minimize the largest over x.
double five_cycle_oracle() {
  const auto top = [](double x) {
    double m = -1e300;
    for (int k = 0; k < 5; ++k) {
      const double a = 2.0 * std::numbers::pi * k / 5.0;
      m = std::max(m, 1.0 + 2.0 * std::cos(a) + 2.0 * x * std::cos(2.0 * a));
    }
    return m;
  };
  double lo = -5.0, hi = 5.0;
  for (int it = 0; it < 200; ++it) {
    const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
    (top(m1) < top(m2) ? hi : lo) = top(m1) < top(m2) ? m2 : m1;
  }
  return top(0.5 * (lo + hi));
}

std::size_t clique_number(const Graph& g) {
  const std::size_t p = g.vertex_count();
  std::size_t best = p > 0 ? 1 : 0;
  for (std::uint32_t mask = 1; mask < (1u << p); ++mask) {
    bool clique = true;
    for (std::size_t u = 0; u < p && clique; ++u)
      for (std::size_t v = u + 1; v < p && clique; ++v)
        if ((mask >> u & 1) && (mask >> v & 1) && !g.has_edge(u, v)) clique = false;
    if (clique) best = std::max<std::size_t>(best, std::popcount(mask));
  }
  return best;
}

bool colourable(const Graph& g, std::size_t k, std::vector<std::size_t>& colour, std::size_t v) {
  if (v == g.vertex_count()) return true;
  for (std::size_t c = 0; c < k; ++c) {
    bool ok = true;
    for (std::size_t u = 0; u < v && ok; ++u)
      if (g.has_edge(u, v) && colour[u] == c) ok = false;
    if (!ok) continue;
    colour[v] = c;
    if (colourable(g, k, colour, v + 1)) return true;
  }
  return false;
}

std::size_t chromatic_number(const Graph& g) {
  std::vector<std::size_t> colour(g.vertex_count());
  for (std::size_t k = 1;; ++k)
    if (colourable(g, k, colour, 0)) return k;
}

}  // namespace

TEST(Theta, CompleteGraphIsExact) {
  for (std::size_t p : {1u, 2u, 4u, 7u}) {
    const auto s = lovasz_theta_bar(graphs::complete(p));
    EXPECT_EQ(s.status, ThetaStatus::Exact);
    EXPECT_EQ(s.value, static_cast<double>(p));
  }
}

TEST(Theta, EmptyGraphGivesOne) {
  for (std::size_t p : {1u, 3u, 6u}) {
    const auto s = lovasz_theta_bar(graphs::empty(p));
    EXPECT_NEAR(s.value, 1.0, 1e-6);
  }
}

TEST(Theta, FiveCycleMatchesCirculantOracle) {
  const double oracle = five_cycle_oracle();
  EXPECT_NEAR(oracle, std::sqrt(5.0), 1e-9);
  const auto s = lovasz_theta_bar(graphs::cycle(5));
  EXPECT_NEAR(s.value, oracle, 1e-3);
  EXPECT_GE(s.value, oracle - 1e-9);
}

TEST(Theta, PetersenComplement) {
  // Vertex transitivity gives theta(G) theta(complement G) = p, and theta = 4
  // for the Petersen graph.
  const auto s = lovasz_theta_bar(graphs::petersen());
  EXPECT_NEAR(s.value, 2.5, 1e-3);
  EXPECT_GE(s.value, 2.5 - 1e-9);
}

TEST(Theta, CertificateIsFeasibleAndAttainsValue) {
  const auto g = graphs::cycle(7);
  const auto s = lovasz_theta_bar(g);
  for (std::size_t i = 0; i < 7; ++i) {
    EXPECT_EQ(s.certificate(i, i), Complex(1.0));
    for (std::size_t j = 0; j < 7; ++j)
      if (g.has_edge(i, j)) {
        EXPECT_EQ(s.certificate(i, j), Complex(1.0));
      }
  }
  EXPECT_TRUE(is_hermitian(s.certificate));
  EXPECT_NEAR(herm_eig(s.certificate).max_real(), s.value, 1e-14);
}

TEST(Theta, SandwichedByCliqueAndChromaticNumbers) {
  // Every returned value is lambda_max of a feasible H, so the clique bound is
  // exact. The chromatic side allows for subgradient slowness.
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 12; ++trial) {
    const auto g = graphs::random(2 + rng() % 6, 0.5, rng());
    const auto s = lovasz_theta_bar(g);
    EXPECT_GE(s.value, static_cast<double>(clique_number(g)) - 1e-9) << serialize_graph(g);
    EXPECT_LE(s.value, static_cast<double>(chromatic_number(g)) + 5e-2) << serialize_graph(g);
  }
}

TEST(Theta, BetweenOneAndVertexCount) {
  std::mt19937_64 rng(52);
  ThetaOptions opts;
  opts.iterations = 2000;
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = graphs::random(1 + rng() % 10, 0.4, rng());
    const auto s = lovasz_theta_bar(g, opts);
    EXPECT_GE(s.value, 1.0 - 1e-9);
    EXPECT_LE(s.value, static_cast<double>(g.vertex_count()) + 1e-9);
  }
}

TEST(Theta, PerfectGraphsReachCliqueNumber) {
  // Bipartite graphs are perfect, so theta of the complement equals 2.
  for (const auto& g : {graphs::path(5), graphs::cycle(6), graphs::complete_bipartite(2, 3)}) {
    EXPECT_NEAR(lovasz_theta_bar(g).value, 2.0, 1e-3) << serialize_graph(g);
  }
}

TEST(Theta, StatusNames) {
  EXPECT_STREQ(to_string(ThetaStatus::Exact), "exact");
  EXPECT_STREQ(to_string(ThetaStatus::BudgetExhausted), "budget_exhausted");
}
