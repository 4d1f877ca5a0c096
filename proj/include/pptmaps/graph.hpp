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
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pptmaps/eigen.hpp"
#include "pptmaps/error.hpp"
#include "pptmaps/matrix.hpp"

namespace pptmaps {

/// Simple undirected graph on vertices 0..p-1.
class Graph {
 public:
  using Edge = std::pair<std::size_t, std::size_t>;

  Graph() = default;

  /// Throws GraphValidationError on loops, duplicates or out-of-range ends.
  /// Endpoint order within an edge is irrelevant.
  Graph(std::size_t p, const std::vector<Edge>& edges) : p_(p) {
    for (const auto& [u, v] : edges) add_edge(u, v);
  }

  std::size_t vertex_count() const noexcept { return p_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  /// Edges as (u, v) with u < v, sorted.
  const std::set<Edge>& edges() const noexcept { return edges_; }
  bool empty() const noexcept { return edges_.empty(); }

  bool has_edge(std::size_t u, std::size_t v) const {
    return edges_.count({std::min(u, v), std::max(u, v)}) > 0;
  }

  std::vector<std::size_t> degrees() const {
    std::vector<std::size_t> d(p_, 0);
    for (const auto& [u, v] : edges_) {
      ++d[u];
      ++d[v];
    }
    return d;
  }

  std::size_t max_degree() const {
    const auto d = degrees();
    return d.empty() ? 0 : *std::max_element(d.begin(), d.end());
  }

  ComplexMatrix adjacency_matrix() const {
    ComplexMatrix a(p_, p_);
    for (const auto& [u, v] : edges_) {
      a(u, v) = 1.0;
      a(v, u) = 1.0;
    }
    return a;
  }

  /// Reads the graph back from an adjacency matrix; throws InvalidAdjacency.
  static Graph from_adjacency(const ComplexMatrix& a);

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  void add_edge(std::size_t u, std::size_t v) {
    const std::string name = "edge {" + std::to_string(u) + "," + std::to_string(v) + "}";
    if (u >= p_ || v >= p_) {
      throw GraphValidationError(name + ": endpoint out of range for p=" + std::to_string(p_));
    }
    if (u == v) throw GraphValidationError(name + ": self-loop");
    if (!edges_.insert({std::min(u, v), std::max(u, v)}).second) {
      throw GraphValidationError(name + ": duplicate edge");
    }
  }

  std::size_t p_ = 0;
  std::set<Edge> edges_;
};

inline Graph Graph::from_adjacency(const ComplexMatrix& a) {
  if (!a.is_square()) throw InvalidAdjacency("adjacency matrix is not square");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (a(i, i) != Complex(0.0)) throw InvalidAdjacency("loop at vertex " + std::to_string(i));
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j) != Complex(0.0) && a(i, j) != Complex(1.0)) {
        throw InvalidAdjacency("entry (" + std::to_string(i) + "," + std::to_string(j) +
                               ") is not 0 or 1");
      }
      if (a(i, j) != a(j, i)) throw InvalidAdjacency("adjacency matrix is not symmetric");
      if (i < j && a(i, j) == Complex(1.0)) edges.emplace_back(i, j);
    }
  }
  return Graph(a.rows(), edges);
}

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::size_t parse_count(std::string_view tok, std::size_t line, const char* what) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError(line, std::string("expected non-negative integer ") + what + ", got '" +
                               std::string(tok) + "'");
  }
  return value;
}

}  // namespace detail

/// Edge-list format: a header line "p m", then m lines "u v" with 0-based
/// endpoints. Blank lines are ignored.
inline Graph parse_graph(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  std::size_t p = 0, m = 0;
  bool have_header = false;
  std::vector<Graph::Edge> edges;
  std::vector<std::size_t> edge_lines;
  while (std::getline(in, line)) {
    ++lineno;
    const auto tokens = detail::split_ws(line);
    if (tokens.empty()) continue;
    if (tokens.size() != 2) {
      throw ParseError(lineno, "expected two whitespace-separated integers");
    }
    if (!have_header) {
      p = detail::parse_count(tokens[0], lineno, "vertex count");
      m = detail::parse_count(tokens[1], lineno, "edge count");
      have_header = true;
      continue;
    }
    if (edges.size() == m) throw ParseError(lineno, "more edge lines than declared");
    edges.emplace_back(detail::parse_count(tokens[0], lineno, "endpoint"),
                       detail::parse_count(tokens[1], lineno, "endpoint"));
    edge_lines.push_back(lineno);
  }
  if (!have_header) throw ParseError(lineno + 1, "missing 'p m' header");
  if (edges.size() != m) {
    throw ParseError(lineno + 1, "declared " + std::to_string(m) + " edges, found " +
                                     std::to_string(edges.size()));
  }
  std::set<Graph::Edge> seen;
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const auto [u, v] = edges[k];
    const std::string name = "edge {" + std::to_string(u) + "," + std::to_string(v) +
                             "} (line " + std::to_string(edge_lines[k]) + ")";
    if (u >= p || v >= p) {
      throw GraphValidationError(name + ": endpoint out of range for p=" + std::to_string(p));
    }
    if (u == v) throw GraphValidationError(name + ": self-loop");
    if (!seen.insert({std::min(u, v), std::max(u, v)}).second) {
      throw GraphValidationError(name + ": duplicate edge");
    }
  }
  Graph g(p, edges);
  return g;
}

inline Graph parse_graph(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_graph(in);
}

/// Canonical serialization: header, then edges "u v" with u < v in sorted
/// order, each line newline-terminated.
inline std::string serialize_graph(const Graph& g) {
  std::string out = std::to_string(g.vertex_count()) + " " + std::to_string(g.edge_count()) + "\n";
  for (const auto& [u, v] : g.edges()) out += std::to_string(u) + " " + std::to_string(v) + "\n";
  return out;
}

inline Graph complement(const Graph& g) {
  std::vector<Graph::Edge> edges;
  for (std::size_t u = 0; u < g.vertex_count(); ++u)
    for (std::size_t v = u + 1; v < g.vertex_count(); ++v)
      if (!g.has_edge(u, v)) edges.emplace_back(u, v);
  return Graph(g.vertex_count(), edges);
}

struct GraphReport {
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  std::size_t max_degree = 0;
  /// Both (i,j) and (j,i) counted, so the degree sum equals this.
  std::size_t ordered_edge_count = 0;
  /// D + A; PSD by diagonal dominance.
  ComplexMatrix signless_laplacian;
};

inline GraphReport graph_report(const Graph& g) {
  GraphReport r;
  const ComplexMatrix a = g.adjacency_matrix();
  if (g.vertex_count() > 0) {
    const EigResult e = herm_eig(a);
    r.lambda_min = e.min_real();
    r.lambda_max = e.max_real();
  }
  r.max_degree = g.max_degree();
  r.ordered_edge_count = 2 * g.edge_count();
  r.signless_laplacian = a;
  const auto d = g.degrees();
  for (std::size_t i = 0; i < d.size(); ++i) r.signless_laplacian(i, i) = static_cast<double>(d[i]);
  return r;
}

namespace graphs {

inline Graph empty(std::size_t p) { return Graph(p, {}); }

inline Graph complete(std::size_t p) { return complement(empty(p)); }

inline Graph cycle(std::size_t p) {
  std::vector<Graph::Edge> e;
  for (std::size_t i = 0; i < p; ++i) e.emplace_back(i, (i + 1) % p);
  return Graph(p, e);
}

inline Graph path(std::size_t p) {
  std::vector<Graph::Edge> e;
  for (std::size_t i = 0; i + 1 < p; ++i) e.emplace_back(i, i + 1);
  return Graph(p, e);
}

/// K_{1,leaves}: vertex 0 joined to 1..leaves.
inline Graph star(std::size_t leaves) {
  std::vector<Graph::Edge> e;
  for (std::size_t i = 1; i <= leaves; ++i) e.emplace_back(0, i);
  return Graph(leaves + 1, e);
}

inline Graph complete_bipartite(std::size_t a, std::size_t b) {
  std::vector<Graph::Edge> e;
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t j = 0; j < b; ++j) e.emplace_back(i, a + j);
  return Graph(a + b, e);
}

/// Petersen graph as the Kneser graph K(5,2): 2-subsets of {0..4},
/// adjacent when disjoint.
inline Graph petersen() {
  std::vector<std::pair<int, int>> subsets;
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j) subsets.emplace_back(i, j);
  std::vector<Graph::Edge> e;
  for (std::size_t u = 0; u < subsets.size(); ++u)
    for (std::size_t v = u + 1; v < subsets.size(); ++v) {
      const auto [a, b] = subsets[u];
      const auto [c, d] = subsets[v];
      if (a != c && a != d && b != c && b != d) e.emplace_back(u, v);
    }
  return Graph(subsets.size(), e);
}

/// Erdos-Renyi G(p, density), reproducible for a given seed.
inline Graph random(std::size_t p, double density, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Graph::Edge> e;
  for (std::size_t u = 0; u < p; ++u)
    for (std::size_t v = u + 1; v < p; ++v)
      if (unit(rng) < density) e.emplace_back(u, v);
  return Graph(p, e);
}

}  // namespace graphs

}  // namespace pptmaps
