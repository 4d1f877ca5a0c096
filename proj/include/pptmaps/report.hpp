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

#include <charconv>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pptmaps/classify.hpp"
#include "pptmaps/dynamics.hpp"
#include "pptmaps/graph.hpp"
#include "pptmaps/matrix.hpp"
#include "pptmaps/theta.hpp"

namespace pptmaps {

using Json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "pptmaps 1.0.0";

namespace detail {

inline void format_double(std::string& out, double x) {
  if (!std::isfinite(x)) {
    out += "null";
    return;
  }
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  std::string s(buf, res.ptr);
  if (s.find_first_of(".en") == std::string::npos) s += ".0";
  out += s;
}

inline void dump_into(std::string& out, const Json& j, int indent, int depth) {
  const auto newline = [&](int d) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case Json::value_t::number_float:
      format_double(out, j.get<double>());
      break;
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        break;
      }
      out += '[';
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        dump_into(out, e, indent, depth + 1);
      }
      newline(depth);
      out += ']';
      break;
    }
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        break;
      }
      out += '{';
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += Json(key).dump();
        out += indent < 0 ? ":" : ": ";
        dump_into(out, value, indent, depth + 1);
      }
      newline(depth);
      out += '}';
      break;
    }
    default:
      out += j.dump();
  }
}

}  // namespace detail

/// Serializes with insertion-ordered keys and doubles at 17 significant
/// digits, so equal values always give identical bytes.
inline std::string dump_json(const Json& j, int indent = 2) {
  std::string out;
  detail::dump_into(out, j, indent, 0);
  return out;
}

inline Json to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

inline Json to_json(const std::vector<Complex>& v) {
  Json a = Json::array();
  for (const auto& z : v) a.push_back(to_json(z));
  return a;
}

/// Rows of [re, im] pairs.
inline Json to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

inline Json to_json(const ThresholdReport& r) {
  static const char* kNames[5] = {"one", "neg_lambda_min", "p_neg_lambda_min_over_ordered_edges",
                                  "p_neg_lambda_min_over_t_eb_upper",
                                  "lambda_max_over_theta_bar_minus_one"};
  Json comps = Json::object();
  for (std::size_t k = 0; k < 5; ++k) {
    comps[kNames[k]] = r.t_pos_lower_components[k] ? Json(*r.t_pos_lower_components[k]) : Json();
  }
  return {{"p", r.p},
          {"ordered_edge_count", r.ordered_edge_count},
          {"max_degree", r.max_degree},
          {"lambda_min", r.lambda_min},
          {"lambda_max", r.lambda_max},
          {"t_cp", r.t_cp},
          {"t_ppt", r.t_ppt},
          {"t_eb_upper", r.t_eb_upper},
          {"t_eb_bracket", Json::array({r.t_ppt, r.t_eb_upper})},
          {"t_pos_lower_components", comps},
          {"t_pos_lower", r.t_pos_lower},
          {"t_pos_numeric", r.t_pos_numeric},
          {"t_pos_bracket", Json::array({std::max(r.t_pos_lower, r.t_pos_numeric), r.t_cp})},
          {"t_pos_witness", to_json(r.t_pos_witness)},
          {"theta_bar", r.theta_bar},
          {"theta_status", to_string(r.theta_status)},
          {"ppt_squared_ok", r.ppt_squared_ok}};
}

inline Json to_json(const ThetaSolution& s) {
  return {{"value", s.value},
          {"iterations", s.iterations},
          {"gap_estimate", s.gap_estimate},
          {"status", to_string(s.status)},
          {"certificate", to_json(s.certificate)}};
}

inline Json to_json(const Ppt2Result& r) {
  return {{"composition_is_gamma", r.composition_is_gamma},
          {"composition_deviation", r.composition_deviation},
          {"t_product", r.t_product},
          {"route", r.route},
          {"t_eb_upper_product", r.t_eb_upper_product},
          {"eb_certified", r.eb_certified},
          {"certificate_failure", r.certificate_failure}};
}

/// Trace export: (k, distance) pairs plus psi diagnostics.
inline Json to_json(const IterationTrace& t) {
  Json pairs = Json::array();
  for (std::size_t i = 0; i < t.k_values.size(); ++i)
    pairs.push_back(Json::array({t.k_values[i], t.distances[i]}));
  return {{"norm", "frobenius norm of transfer matrices"},
          {"distance", "|phi^k - phi^k o psi|"},
          {"eb_distance_bound", t.eb_distance_bound},
          {"adjoint_side", t.adjoint_side},
          {"fitted_rate", t.fitted_rate},
          {"subperipheral_radius", t.subperipheral_radius},
          {"psi",
           {{"method", to_string(t.psi_method)},
            {"idempotency_error", t.psi_idempotency_error},
            {"commutator_error", t.psi_commutator_error},
            {"is_ppt", t.psi_is_ppt}}},
          {"phi_is_ppt", t.phi_is_ppt},
          {"trace", pairs}};
}

inline Json to_json(const Graph& g) {
  Json edges = Json::array();
  for (const auto& [u, v] : g.edges()) edges.push_back(Json::array({u, v}));
  return {{"p", g.vertex_count()}, {"m", g.edge_count()}, {"edges", edges}};
}

/// Envelope emitted by every CLI command.
struct Report {
  std::string command;
  Json inputs = Json::object();
  Json tolerances = Json::object();
  Json results = Json::object();
  std::string version = kVersion;

  friend bool operator==(const Report&, const Report&) = default;
};

inline Json to_json(const Report& r) {
  return {{"command", r.command},
          {"version", r.version},
          {"inputs", r.inputs},
          {"tolerances", r.tolerances},
          {"results", r.results}};
}

inline Report report_from_json(const Json& j) {
  Report r;
  r.command = j.at("command").get<std::string>();
  r.version = j.at("version").get<std::string>();
  r.inputs = j.at("inputs");
  r.tolerances = j.at("tolerances");
  r.results = j.at("results");
  return r;
}

}  // namespace pptmaps
