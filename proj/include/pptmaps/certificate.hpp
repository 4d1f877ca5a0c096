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
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <nlohmann/json.hpp>

#include "pptmaps/error.hpp"
#include "pptmaps/graph.hpp"
#include "pptmaps/matrix.hpp"

namespace pptmaps {

using BigInt = boost::multiprecision::cpp_int;

struct GaussianInt {
  BigInt re;
  BigInt im;

  GaussianInt() = default;
  GaussianInt(BigInt r, BigInt i = 0) : re(std::move(r)), im(std::move(i)) {}
  GaussianInt(long long r, long long i = 0) : re(r), im(i) {}

  bool is_zero() const { return re == 0 && im == 0; }
  GaussianInt conj() const { return {re, -im}; }

  GaussianInt& operator+=(const GaussianInt& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  friend GaussianInt operator+(GaussianInt a, const GaussianInt& b) { return a += b; }
  friend GaussianInt operator-(const GaussianInt& a, const GaussianInt& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussianInt operator*(const GaussianInt& a, const GaussianInt& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend bool operator==(const GaussianInt& a, const GaussianInt& b) {
    return a.re == b.re && a.im == b.im;
  }

  std::string str() const { return "(" + re.str() + (im < 0 ? "" : "+") + im.str() + "i)"; }
};

/// Dense matrix of Gaussian integers.
class GaussianIntMatrix {
 public:
  GaussianIntMatrix() = default;
  GaussianIntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  GaussianInt& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const GaussianInt& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  friend GaussianIntMatrix operator*(const GaussianIntMatrix& a, const GaussianIntMatrix& b) {
    if (a.cols_ != b.rows_) throw DimensionMismatch("GaussianIntMatrix product");
    GaussianIntMatrix m(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k).is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          if (b(k, j).is_zero()) continue;
          m(i, j) += a(i, k) * b(k, j);
        }
      }
    return m;
  }

  friend bool operator==(const GaussianIntMatrix& a, const GaussianIntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  /// Nonzero entries as (row, col, value), row-major order.
  std::vector<std::tuple<std::size_t, std::size_t, GaussianInt>> nonzeros() const {
    std::vector<std::tuple<std::size_t, std::size_t, GaussianInt>> out;
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c)
        if (!(*this)(r, c).is_zero()) out.emplace_back(r, c, (*this)(r, c));
    return out;
  }

  ComplexMatrix to_complex() const {
    ComplexMatrix m(rows_, cols_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c)
        m(r, c) = Complex((*this)(r, c).re.convert_to<double>(),
                          (*this)(r, c).im.convert_to<double>());
    return m;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<GaussianInt> data_;
};

/// Exact PSD test for the factor shapes a certificate uses. Accepts Hermitian
/// matrices that are diagonal with nonnegative entries, or that satisfy
/// tr(Q) Q^2 = tr(Q^2) Q with tr(Q) > 0 (a positive multiple of a
/// projection). Returns the reason for rejection, or nullopt.
inline std::optional<std::string> exact_psd_failure(const GaussianIntMatrix& q) {
  if (q.rows() != q.cols()) return "factor is not square";
  bool diagonal = true;
  for (std::size_t i = 0; i < q.rows(); ++i)
    for (std::size_t j = 0; j < q.cols(); ++j) {
      if (!(q(i, j) == q(j, i).conj())) return "factor is not Hermitian";
      if (i != j && !q(i, j).is_zero()) diagonal = false;
    }
  if (diagonal) {
    for (std::size_t i = 0; i < q.rows(); ++i)
      if (q(i, i).re < 0) return "diagonal factor has a negative entry";
    return std::nullopt;
  }
  BigInt tr = 0;
  for (std::size_t i = 0; i < q.rows(); ++i) tr += q(i, i).re;
  if (tr <= 0) return "factor has non-positive trace";
  const GaussianIntMatrix sq = q * q;
  BigInt tr_sq = 0;
  for (std::size_t i = 0; i < q.rows(); ++i) tr_sq += sq(i, i).re;
  for (std::size_t i = 0; i < q.rows(); ++i)
    for (std::size_t j = 0; j < q.cols(); ++j)
      if (!(sq(i, j) * GaussianInt(tr) == q(i, j) * GaussianInt(tr_sq))) {
        return "factor is not a positive multiple of a projection";
      }
  return std::nullopt;
}

/// weight * left (x) right.
struct ProductTerm {
  GaussianIntMatrix left;
  GaussianIntMatrix right;
  BigInt weight;
};

/// weight * sum over (i, j) in positions of E_ii (x) E_jj.
struct DiagonalTerm {
  std::vector<std::pair<std::size_t, std::size_t>> positions;
  BigInt weight;
};

using CertificateTerm = std::variant<ProductTerm, DiagonalTerm>;

/// Claims scale * C_phi = sum of terms for phi = pd delta + S_A, every term
/// a positive multiple of a tensor product of PSD matrices.
struct SeparabilityCertificate {
  std::size_t p = 0;
  BigInt scale = 8;
  std::vector<CertificateTerm> terms;
};

namespace detail {

/// The four 2x2-block factors of the per-edge identity
/// 4(P(x)P + E_ij(x)E_ij + E_ji(x)E_ji) = Q1(x)Q1 + Q2(x)Q2 + Q3(x)Q4 + Q4(x)Q3,
/// where P = E_ii + E_jj.
inline std::array<GaussianIntMatrix, 4> edge_factors(std::size_t p, std::size_t i, std::size_t j) {
  std::array<GaussianIntMatrix, 4> q;
  const GaussianInt off[4][2] = {
      {{1, 0}, {1, 0}},    // Q1: +E_ij + E_ji
      {{-1, 0}, {-1, 0}},  // Q2: -E_ij - E_ji
      {{0, 1}, {0, -1}},   // Q3: +iE_ij - iE_ji
      {{0, -1}, {0, 1}},   // Q4: -iE_ij + iE_ji
  };
  for (std::size_t k = 0; k < 4; ++k) {
    q[k] = GaussianIntMatrix(p, p);
    q[k](i, i) = 1;
    q[k](j, j) = 1;
    q[k](i, j) = off[k][0];
    q[k](j, i) = off[k][1];
  }
  return q;
}

using SparseSum = std::map<std::pair<std::size_t, std::size_t>, GaussianInt>;

inline void accumulate(SparseSum& sum, const CertificateTerm& term, std::size_t p) {
  if (const auto* prod = std::get_if<ProductTerm>(&term)) {
    const auto left = prod->left.nonzeros();
    const auto right = prod->right.nonzeros();
    const GaussianInt w(prod->weight);
    for (const auto& [a, b, x] : left)
      for (const auto& [c, d, y] : right) sum[{a * p + c, b * p + d}] += w * x * y;
  } else {
    const auto& diag = std::get<DiagonalTerm>(term);
    for (const auto& [i, j] : diag.positions) sum[{i * p + j, i * p + j}] += GaussianInt(diag.weight);
  }
}

}  // namespace detail

/// Builds the certificate that gamma_{pd,A} is entanglement breaking, where
/// d is the maximum degree: per undirected edge the four products above with
/// weight 2, plus diagonal padding bringing every E_kk (x) E_ll coefficient up
/// to 8d. An empty graph yields an empty certificate.
inline SeparabilityCertificate build_certificate(const Graph& g) {
  SeparabilityCertificate cert;
  const std::size_t p = g.vertex_count();
  cert.p = p;
  cert.scale = 8;
  if (g.empty()) return cert;

  for (const auto& [i, j] : g.edges()) {
    const auto q = detail::edge_factors(p, i, j);
    cert.terms.emplace_back(ProductTerm{q[0], q[0], 2});
    cert.terms.emplace_back(ProductTerm{q[1], q[1], 2});
    cert.terms.emplace_back(ProductTerm{q[2], q[3], 2});
    cert.terms.emplace_back(ProductTerm{q[3], q[2], 2});
  }

  // The products cover E_kk (x) E_kk with 8 d_k and E_kk (x) E_ll (k != l)
  // with 8 when {k,l} is an edge.
  const auto degrees = g.degrees();
  const long long d = static_cast<long long>(g.max_degree());
  std::map<long long, std::vector<std::pair<std::size_t, std::size_t>>> padding;
  for (std::size_t k = 0; k < p; ++k)
    for (std::size_t l = 0; l < p; ++l) {
      long long covered = 0;
      if (k == l) covered = 8 * static_cast<long long>(degrees[k]);
      else if (g.has_edge(k, l)) covered = 8;
      const long long missing = 8 * d - covered;
      if (missing > 0) padding[missing].emplace_back(k, l);
    }
  for (auto& [weight, positions] : padding) {
    cert.terms.emplace_back(DiagonalTerm{std::move(positions), weight});
  }
  return cert;
}

inline SeparabilityCertificate build_certificate(const ComplexMatrix& adjacency) {
  return build_certificate(Graph::from_adjacency(adjacency));
}

struct CertificateCheck {
  bool ok = false;
  /// Empty when ok; otherwise the first failing factor or matrix position.
  std::string failure;

  explicit operator bool() const noexcept { return ok; }
};

/// Exact verification: every weight positive, every product factor exactly
/// PSD, and sum of terms == scale * (d I(x)I + sum_{(i,j) in E} E_ij (x) E_ij)
/// with integer equality. No floating point is involved.
inline CertificateCheck verify_certificate(const SeparabilityCertificate& cert, const Graph& g) {
  const std::size_t p = g.vertex_count();
  if (cert.p != p) {
    return {false, "certificate dimension " + std::to_string(cert.p) + " != graph dimension " +
                       std::to_string(p)};
  }
  if (cert.scale <= 0) return {false, "scale must be positive"};
  detail::SparseSum sum;
  for (std::size_t t = 0; t < cert.terms.size(); ++t) {
    const auto& term = cert.terms[t];
    const std::string name = "term " + std::to_string(t);
    if (const auto* prod = std::get_if<ProductTerm>(&term)) {
      if (prod->weight <= 0) return {false, name + ": weight must be positive"};
      if (prod->left.rows() != p || prod->right.rows() != p) {
        return {false, name + ": factor dimension mismatch"};
      }
      if (auto why = exact_psd_failure(prod->left)) return {false, name + " left: " + *why};
      if (auto why = exact_psd_failure(prod->right)) return {false, name + " right: " + *why};
    } else {
      const auto& diag = std::get<DiagonalTerm>(term);
      if (diag.weight <= 0) return {false, name + ": weight must be positive"};
      for (const auto& [i, j] : diag.positions)
        if (i >= p || j >= p) return {false, name + ": diagonal position out of range"};
    }
    detail::accumulate(sum, term, p);
  }

  detail::SparseSum target;
  const BigInt d = static_cast<long long>(g.max_degree());
  if (d > 0) {
    for (std::size_t k = 0; k < p * p; ++k) target[{k, k}] = GaussianInt(cert.scale * d);
  }
  for (const auto& [i, j] : g.edges()) {
    target[{i * p + i, j * p + j}] += GaussianInt(cert.scale);
    target[{j * p + j, i * p + i}] += GaussianInt(cert.scale);
  }

  std::set<std::pair<std::size_t, std::size_t>> keys;
  for (const auto& [k, v] : sum) keys.insert(k);
  for (const auto& [k, v] : target) keys.insert(k);
  for (const auto& key : keys) {
    const auto s = sum.count(key) ? sum[key] : GaussianInt{};
    const auto t = target.count(key) ? target[key] : GaussianInt{};
    if (!(s == t)) {
      return {false, "mismatch at (" + std::to_string(key.first) + "," +
                         std::to_string(key.second) + "): expected " + t.str() + ", got " +
                         s.str()};
    }
  }
  return {true, {}};
}

inline CertificateCheck verify_certificate(const SeparabilityCertificate& cert,
                                           const ComplexMatrix& adjacency) {
  return verify_certificate(cert, Graph::from_adjacency(adjacency));
}

/// The certificate's sum of terms as a floating-point p^2 x p^2 matrix.
inline ComplexMatrix certificate_sum(const SeparabilityCertificate& cert) {
  detail::SparseSum sum;
  for (const auto& term : cert.terms) detail::accumulate(sum, term, cert.p);
  ComplexMatrix m(cert.p * cert.p, cert.p * cert.p);
  for (const auto& [key, v] : sum)
    m(key.first, key.second) = Complex(v.re.convert_to<double>(), v.im.convert_to<double>());
  return m;
}

// JSON: integers that may be large are written as decimal strings.

inline nlohmann::ordered_json to_json(const GaussianIntMatrix& m) {
  nlohmann::ordered_json entries = nlohmann::ordered_json::array();
  for (const auto& [r, c, v] : m.nonzeros()) entries.push_back({r, c, v.re.str(), v.im.str()});
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

inline nlohmann::ordered_json to_json(const SeparabilityCertificate& cert) {
  nlohmann::ordered_json terms = nlohmann::ordered_json::array();
  for (const auto& term : cert.terms) {
    if (const auto* prod = std::get_if<ProductTerm>(&term)) {
      terms.push_back({{"type", "product"},
                       {"weight", prod->weight.str()},
                       {"left", to_json(prod->left)},
                       {"right", to_json(prod->right)}});
    } else {
      const auto& diag = std::get<DiagonalTerm>(term);
      nlohmann::ordered_json pos = nlohmann::ordered_json::array();
      for (const auto& [i, j] : diag.positions) pos.push_back({i, j});
      terms.push_back({{"type", "diagonal"}, {"weight", diag.weight.str()}, {"positions", pos}});
    }
  }
  return {{"format", "pptmaps.separability_certificate"},
          {"version", 1},
          {"p", cert.p},
          {"scale", cert.scale.str()},
          {"terms", terms}};
}

namespace detail {

inline BigInt parse_bigint(const nlohmann::ordered_json& j) {
  const std::string s = j.get<std::string>();
  if (s.empty()) throw ValidationFailure("certificate: empty integer string");
  std::size_t start = (s[0] == '-') ? 1 : 0;
  if (start == s.size()) throw ValidationFailure("certificate: bad integer '" + s + "'");
  for (std::size_t k = start; k < s.size(); ++k)
    if (s[k] < '0' || s[k] > '9') throw ValidationFailure("certificate: bad integer '" + s + "'");
  return BigInt(s);
}

inline GaussianIntMatrix gaussian_matrix_from_json(const nlohmann::ordered_json& j) {
  GaussianIntMatrix m(j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>());
  for (const auto& e : j.at("entries")) {
    const auto r = e.at(0).get<std::size_t>();
    const auto c = e.at(1).get<std::size_t>();
    if (r >= m.rows() || c >= m.cols()) throw ValidationFailure("certificate: entry out of range");
    m(r, c) = GaussianInt(parse_bigint(e.at(2)), parse_bigint(e.at(3)));
  }
  return m;
}

}  // namespace detail

/// Throws ValidationFailure (or nlohmann's exceptions) on malformed input.
inline SeparabilityCertificate certificate_from_json(const nlohmann::ordered_json& j) {
  if (j.at("format").get<std::string>() != "pptmaps.separability_certificate") {
    throw ValidationFailure("certificate: unknown format tag");
  }
  SeparabilityCertificate cert;
  cert.p = j.at("p").get<std::size_t>();
  cert.scale = detail::parse_bigint(j.at("scale"));
  for (const auto& t : j.at("terms")) {
    const std::string type = t.at("type").get<std::string>();
    if (type == "product") {
      cert.terms.emplace_back(ProductTerm{detail::gaussian_matrix_from_json(t.at("left")),
                                          detail::gaussian_matrix_from_json(t.at("right")),
                                          detail::parse_bigint(t.at("weight"))});
    } else if (type == "diagonal") {
      DiagonalTerm diag;
      diag.weight = detail::parse_bigint(t.at("weight"));
      for (const auto& pos : t.at("positions"))
        diag.positions.emplace_back(pos.at(0).get<std::size_t>(), pos.at(1).get<std::size_t>());
      cert.terms.emplace_back(std::move(diag));
    } else {
      throw ValidationFailure("certificate: unknown term type '" + type + "'");
    }
  }
  return cert;
}

}  // namespace pptmaps
