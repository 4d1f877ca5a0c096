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

#include "pptmaps/certificate.hpp"

#include <random>

#include "gtest/gtest.h"
#include "pptmaps/channel.hpp"
#include "pptmaps/graph.hpp"
#include "test_util.hpp"

using namespace pptmaps;

namespace {

ComplexMatrix scaled_gamma_choi(const Graph& g) {
  const double p = static_cast<double>(g.vertex_count());
  const double t = p * static_cast<double>(g.max_degree());
  return make_gamma(t, g.adjacency_matrix()).choi() * Complex(8.0);
}

ProductTerm& first_product(SeparabilityCertificate& cert) {
  for (auto& t : cert.terms)
    if (auto* prod = std::get_if<ProductTerm>(&t)) return *prod;
  throw std::logic_error("no product term");
}

}  // namespace

TEST(Certificate, VerifiesNamedGraphs) {
  for (const auto& g : {graphs::complete(2), graphs::complete(3), graphs::cycle(5),
                        graphs::petersen(), graphs::star(4), graphs::complete(6)}) {
    const auto cert = build_certificate(g);
    const auto check = verify_certificate(cert, g);
    EXPECT_TRUE(check.ok) << serialize_graph(g) << check.failure;
  }
}

TEST(Certificate, VerifiesRandomGraphs) {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 40; ++trial) {
    const auto g = graphs::random(1 + rng() % 12, 0.5, rng());
    const auto check = verify_certificate(build_certificate(g), g);
    EXPECT_TRUE(check.ok) << serialize_graph(g) << check.failure;
  }
}

TEST(Certificate, SumMatchesFloatingPointChoi) {
  std::mt19937_64 rng(72);
  for (int trial = 0; trial < 10; ++trial) {
    const auto g = pptmaps::testing::random_nonempty_graph(2 + rng() % 8, rng);
    EXPECT_LE(max_abs_diff(certificate_sum(build_certificate(g)), scaled_gamma_choi(g)), 1e-12);
  }
}

TEST(Certificate, EdgeFactorsAreTwiceProjections) {
  const auto cert = build_certificate(graphs::cycle(5));
  for (const auto& t : cert.terms) {
    const auto* prod = std::get_if<ProductTerm>(&t);
    if (!prod) continue;
    for (const auto* q : {&prod->left, &prod->right}) {
      GaussianIntMatrix twice = *q;
      for (std::size_t r = 0; r < q->rows(); ++r)
        for (std::size_t c = 0; c < q->cols(); ++c) twice(r, c) = (*q)(r, c) * GaussianInt(2);
      EXPECT_EQ(*q * *q, twice);
    }
  }
}

TEST(Certificate, TermCountBound) {
  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = graphs::random(2 + rng() % 10, 0.5, rng());
    const std::size_t p = g.vertex_count();
    EXPECT_LE(build_certificate(g).terms.size(), 4 * g.edge_count() + p * p + 1);
  }
}

TEST(Certificate, EmptyGraphHasNoTerms) {
  const auto g = graphs::empty(4);
  const auto cert = build_certificate(g);
  EXPECT_TRUE(cert.terms.empty());
  EXPECT_TRUE(verify_certificate(cert, g).ok);
}

TEST(Certificate, MutatedWeightFails) {
  const auto g = graphs::petersen();
  auto cert = build_certificate(g);
  first_product(cert).weight += 1;
  const auto check = verify_certificate(cert, g);
  EXPECT_FALSE(check.ok);
  EXPECT_NE(check.failure.find("mismatch"), std::string::npos) << check.failure;
}

TEST(Certificate, NegativeWeightFails) {
  const auto g = graphs::complete(3);
  auto cert = build_certificate(g);
  first_product(cert).weight = -2;
  EXPECT_FALSE(verify_certificate(cert, g).ok);
}

TEST(Certificate, NonPsdFactorFails) {
  const auto g = graphs::complete(2);
  auto cert = build_certificate(g);
  // [[1, 2], [2, 1]] is Hermitian but indefinite.
  auto& prod = first_product(cert);
  prod.left(0, 1) = 2;
  prod.left(1, 0) = 2;
  const auto check = verify_certificate(cert, g);
  EXPECT_FALSE(check.ok);
  EXPECT_NE(check.failure.find("left"), std::string::npos) << check.failure;
}

TEST(Certificate, DroppedTermFails) {
  const auto g = graphs::cycle(5);
  auto cert = build_certificate(g);
  cert.terms.pop_back();
  EXPECT_FALSE(verify_certificate(cert, g).ok);
}

TEST(Certificate, WrongGraphFails) {
  const auto cert = build_certificate(graphs::cycle(5));
  EXPECT_FALSE(verify_certificate(cert, graphs::path(5)).ok);
  EXPECT_FALSE(verify_certificate(cert, graphs::cycle(6)).ok);
}

TEST(Certificate, JsonRoundTrip) {
  const auto g = graphs::petersen();
  const auto cert = build_certificate(g);
  const auto j = to_json(cert);
  EXPECT_EQ(j.at("format"), "pptmaps.separability_certificate");
  const auto back = certificate_from_json(nlohmann::ordered_json::parse(j.dump()));
  EXPECT_EQ(back.p, cert.p);
  EXPECT_EQ(back.terms.size(), cert.terms.size());
  EXPECT_TRUE(verify_certificate(back, g).ok);
  EXPECT_EQ(to_json(back), j);
}

TEST(Certificate, JsonRejectsUnknownFormat) {
  auto j = to_json(build_certificate(graphs::complete(2)));
  j["format"] = "something.else";
  EXPECT_THROW(certificate_from_json(j), ValidationFailure);
}

TEST(ExactPsd, Examples) {
  GaussianIntMatrix ones(2, 2);
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t c = 0; c < 2; ++c) ones(r, c) = 1;
  EXPECT_FALSE(exact_psd_failure(ones).has_value());
  GaussianIntMatrix diag(2, 2);
  diag(0, 0) = 3;
  EXPECT_FALSE(exact_psd_failure(diag).has_value());
  diag(1, 1) = -1;
  EXPECT_TRUE(exact_psd_failure(diag).has_value());
  GaussianIntMatrix skew(2, 2);
  skew(0, 1) = GaussianInt(0, 1);
  skew(1, 0) = GaussianInt(0, 1);
  EXPECT_TRUE(exact_psd_failure(skew).has_value());
}

TEST(GaussianInt, Arithmetic) {
  const GaussianInt a(2, 3), b(-1, 4);
  EXPECT_EQ(a * b, GaussianInt(-14, 5));
  EXPECT_EQ(a + b, GaussianInt(1, 7));
  EXPECT_EQ(a.conj(), GaussianInt(2, -3));
}
