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

#include "pptmaps/channel.hpp"

#include <random>

#include "gtest/gtest.h"
#include "pptmaps/graph.hpp"
#include "test_util.hpp"

using namespace pptmaps;
using namespace pptmaps::testing;

namespace {

// Direct evaluation of t tr(X)/p I + A o X, entry by entry.
ComplexMatrix gamma_direct(double t, const ComplexMatrix& a, const ComplexMatrix& x) {
  const std::size_t p = a.rows();
  ComplexMatrix out(p, p);
  Complex tr = 0.0;
  for (std::size_t i = 0; i < p; ++i) tr += x(i, i);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j)
      out(i, j) = a(i, j) * x(i, j) + (i == j ? t * tr / static_cast<double>(p) : Complex(0.0));
  return out;
}

}  // namespace

TEST(Delta, ChoiIsScaledIdentity) {
  for (std::size_t p : {1u, 2u, 3u, 5u}) {
    const auto d = make_delta(p);
    EXPECT_LE(max_abs_diff(d.choi(), ComplexMatrix::identity(p * p) * Complex(1.0 / p)), 1e-15);
  }
}

TEST(Delta, TransferIsRankOneVecIdentity) {
  const std::size_t p = 3;
  const auto v = ComplexMatrix::identity(p).vec();
  const auto expected = v * v.transpose() * Complex(1.0 / p);
  EXPECT_LE(max_abs_diff(make_delta(p).transfer(), expected), 1e-15);
}

TEST(Schur, TransferIsDiagonalOfVec) {
  std::mt19937_64 rng(21);
  const auto m = random_matrix(4, 4, rng);
  const auto vm = m.vec();
  std::vector<Complex> diag(vm.entries().begin(), vm.entries().end());
  EXPECT_LE(max_abs_diff(make_schur(m).transfer(), ComplexMatrix::diagonal(diag)), 0.0);
}

TEST(Schur, OnesIsIdentityMap) {
  std::mt19937_64 rng(22);
  const auto x = random_matrix(3, 3, rng);
  EXPECT_LE(max_abs_diff(make_schur(ComplexMatrix::ones(3, 3)).apply(x), x), 1e-15);
}

TEST(Gamma, ChoiOnEdge) {
  const auto a = graphs::complete(2).adjacency_matrix();
  const ComplexMatrix expected{{1, 0, 0, 1}, {0, 1, 0, 0}, {0, 0, 1, 0}, {1, 0, 0, 1}};
  EXPECT_LE(max_abs_diff(make_gamma(2.0, a).choi(), expected), 1e-15);
}

TEST(Gamma, ActionMatchesDirectFormula) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t p = 1 + rng() % 7;
    const auto a = graphs::random(p, 0.5, rng()).adjacency_matrix();
    const double t = 10.0 * std::uniform_real_distribution<double>()(rng);
    const auto x = random_matrix(p, p, rng);
    EXPECT_LE(max_abs_diff(make_gamma(t, a).apply(x), gamma_direct(t, a, x)), 1e-12);
  }
}

TEST(Gamma, RejectsBadAdjacency) {
  EXPECT_THROW(make_gamma(1.0, ComplexMatrix{{1, 0}, {0, 0}}), InvalidAdjacency);
  EXPECT_THROW(make_gamma(1.0, ComplexMatrix{{0, 1}, {0, 0}}), InvalidAdjacency);
  EXPECT_THROW(make_gamma(1.0, ComplexMatrix{{0, 2}, {2, 0}}), InvalidAdjacency);
  EXPECT_THROW(make_gamma(1.0, ComplexMatrix(2, 3)), InvalidAdjacency);
  EXPECT_THROW(make_gamma(-1.0, ComplexMatrix(2, 2)), ValidationFailure);
}

TEST(Gamma, IsUnitalAndTracePreservingUpToScale) {
  const auto g = graphs::petersen();
  const auto props = channel_props(make_gamma(20.0, g.adjacency_matrix()).scaled(1.0 / 20.0));
  EXPECT_TRUE(props.unital);
  EXPECT_TRUE(props.trace_preserving);
  EXPECT_TRUE(props.hermiticity_preserving);
}

TEST(Reshuffle, IsInvolutionForSquareMaps) {
  std::mt19937_64 rng(24);
  for (std::size_t p = 1; p <= 5; ++p) {
    const auto c = random_matrix(p * p, p * p, rng);
    EXPECT_EQ(reshuffle(reshuffle(c, p, p), p, p), c);
    EXPECT_EQ(unreshuffle(reshuffle(c, p, p), p, p), c);
  }
}

TEST(Reshuffle, RectangularRoundTrip) {
  std::mt19937_64 rng(25);
  const auto c = random_matrix(6, 6, rng);
  const auto t = reshuffle(c, 2, 3);
  ASSERT_EQ(t.rows(), 9u);
  ASSERT_EQ(t.cols(), 4u);
  EXPECT_EQ(unreshuffle(t, 2, 3), c);
}

TEST(Channel, ApplyAgreesWithChoiContraction) {
  // phi(X) = sum_ij x_ij phi(E_ij), read off the Choi blocks.
  std::mt19937_64 rng(26);
  const std::size_t p = 3, q = 2;
  const auto c = random_matrix(p * q, p * q, rng);
  const Channel phi(p, q, c);
  const auto x = random_matrix(p, p, rng);
  ComplexMatrix expected(q, q);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j)
      for (std::size_t k = 0; k < q; ++k)
        for (std::size_t l = 0; l < q; ++l) expected(k, l) += x(i, j) * c(i * q + k, j * q + l);
  EXPECT_LE(max_abs_diff(phi.apply(x), expected), 1e-12);
}

TEST(Channel, AdjointSatisfiesHilbertSchmidtDuality) {
  std::mt19937_64 rng(27);
  const Channel phi(3, 2, random_matrix(6, 6, rng));
  const auto x = random_matrix(3, 3, rng), y = random_matrix(2, 2, rng);
  const Complex lhs = (y.adjoint() * phi.apply(x)).trace();
  const Complex rhs = (phi.adjoint().apply(y).adjoint() * x).trace();
  EXPECT_LE(std::abs(lhs - rhs), 1e-12);
}

TEST(Channel, RejectsBadShapes) {
  EXPECT_THROW(Channel(2, 2, ComplexMatrix(3, 3)), DimensionMismatch);
  EXPECT_THROW(make_delta(2).apply(ComplexMatrix(3, 3)), DimensionMismatch);
  EXPECT_THROW(compose(make_delta(2), make_delta(3)), DimensionMismatch);
}

TEST(Compose, MatchesSequentialApplication) {
  std::mt19937_64 rng(28);
  const Channel phi(2, 3, random_matrix(6, 6, rng));
  const Channel psi(4, 2, random_matrix(8, 8, rng));
  const auto x = random_matrix(4, 4, rng);
  EXPECT_LE(max_abs_diff(compose(phi, psi).apply(x), phi.apply(psi.apply(x))), 1e-12);
}

TEST(Compose, Associative) {
  std::mt19937_64 rng(29);
  const Channel a(3, 3, random_matrix(9, 9, rng)), b(3, 3, random_matrix(9, 9, rng)),
      c(3, 3, random_matrix(9, 9, rng));
  EXPECT_LE(max_abs_diff(compose(a, compose(b, c)).choi(), compose(compose(a, b), c).choi()),
            1e-11);
}

TEST(Compose, GammaOnPathAfterGammaOnTriangle) {
  const auto p3 = graphs::path(3).adjacency_matrix();
  const auto k3 = graphs::complete(3).adjacency_matrix();
  const auto lhs = compose(make_gamma(2.0, p3), make_gamma(2.0, k3));
  const auto rhs = make_gamma(4.0, schur_product(p3, k3));
  EXPECT_LE(max_abs_diff(lhs.choi(), rhs.choi()), 1e-12);
}

TEST(Compose, GammaFamilyIsMultiplicativeInT) {
  std::mt19937_64 rng(30);
  std::uniform_real_distribution<double> u(0.0, 8.0);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t p = 2 + rng() % 6;
    const auto a = graphs::random(p, 0.5, rng()).adjacency_matrix();
    const auto b = graphs::random(p, 0.5, rng()).adjacency_matrix();
    const double s = u(rng), t = u(rng);
    const auto lhs = compose(make_gamma(s, a), make_gamma(t, b));
    const auto rhs = make_gamma(s * t, schur_product(a, b));
    EXPECT_LE(max_abs_diff(lhs.choi(), rhs.choi()), 1e-11 * (1.0 + s * t));
  }
}

TEST(Compose, DeltaAbsorbsSchur) {
  const auto a = graphs::cycle(5).adjacency_matrix();
  const auto lhs = compose(make_delta(5), make_schur(a));
  EXPECT_LE(lhs.choi().max_abs(), 1e-15);
  const auto d = compose(make_delta(5), make_delta(5));
  EXPECT_LE(max_abs_diff(d.choi(), make_delta(5).choi()), 1e-15);
}

TEST(ChannelProps, TransposeIsUnitalAndTracePreserving) {
  const auto props = channel_props(make_transpose_map(3));
  EXPECT_TRUE(props.unital);
  EXPECT_TRUE(props.trace_preserving);
  EXPECT_TRUE(props.hermiticity_preserving);
}

TEST(ChannelProps, NonUnitalSchur) {
  const auto props = channel_props(make_schur(graphs::cycle(4).adjacency_matrix()));
  EXPECT_FALSE(props.unital);
  EXPECT_FALSE(props.trace_preserving);
}

TEST(ChannelProps, NonHermitianChoi) {
  std::mt19937_64 rng(31);
  const Channel phi(2, 2, random_matrix(4, 4, rng));
  EXPECT_FALSE(phi.hermitian_choi());
  EXPECT_FALSE(channel_props(phi).hermiticity_preserving);
}

TEST(UnitaryConjugation, PreservesUnitality) {
  const ComplexMatrix u{{0, 1}, {1, 0}};
  const auto props = channel_props(make_unitary_conjugation(u));
  EXPECT_TRUE(props.unital);
  EXPECT_TRUE(props.trace_preserving);
}
