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

#include <cstdint>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pptmaps/certificate.hpp"
#include "pptmaps/classify.hpp"
#include "pptmaps/dynamics.hpp"
#include "pptmaps/error.hpp"
#include "pptmaps/graph.hpp"
#include "pptmaps/matrix_io.hpp"
#include "pptmaps/report.hpp"
#include "pptmaps/theta.hpp"

namespace pptmaps::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitNumerical = 2;
inline constexpr int kExitUsage = 64;

namespace detail {

inline Graph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationFailure("cannot open graph file '" + path + "'");
  return parse_graph(in);
}

inline ComplexMatrix load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationFailure("cannot open matrix file '" + path + "'");
  return parse_matrix(in);
}

inline Json graph_input(const std::string& path, const Graph& g) {
  Json j = to_json(g);
  j["file"] = path;
  return j;
}

inline Json conventions() {
  return {{"edge_count", "ordered edges: (i,j) and (j,i) both counted"},
          {"vectorization", "column-major"},
          {"ordered_edge_convention", true}};
}

}  // namespace detail

/// Runs one command. `args` excludes the program name. Writes the JSON report
/// to `out` and diagnostics to `err`; returns the process exit code.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Positivity, PPT and entanglement-breaking thresholds of graph-indexed maps"};
  app.require_subcommand(1);
  std::uint64_t seed = 0;
  app.add_option("--seed", seed, "Seed for randomized procedures")->capture_default_str();

  std::string graph_path, graph_b_path, matrix_path;
  std::string certificate_out;
  std::size_t restarts = 64, tpos_iterations = 500, theta_iterations = 20000, steps = 25;
  unsigned threads = 1;
  double t = 0.0, t1 = -1.0, t2 = -1.0, schur_tol = -1.0;

  auto* th = app.add_subcommand("thresholds", "t_cp, t_ppt, t_eb bound and t_pos bracket");
  th->add_option("graph", graph_path, "Edge-list file")->required();
  th->add_option("--restarts", restarts, "t_pos optimizer restarts")->capture_default_str();
  th->add_option("--tpos-iterations", tpos_iterations, "Iterations per restart")
      ->capture_default_str();
  th->add_option("--theta-iterations", theta_iterations, "Theta solver budget")
      ->capture_default_str();
  th->add_option("--threads", threads, "Worker threads for restarts (0 = all cores)")
      ->capture_default_str();

  auto* theta = app.add_subcommand("theta", "Lovasz theta of the complement");
  theta->add_option("graph", graph_path, "Edge-list file")->required();
  theta->add_option("--iterations", theta_iterations, "Iteration budget")->capture_default_str();

  auto* certify = app.add_subcommand("certify", "Exact separability certificate at t = p d");
  certify->add_option("graph", graph_path, "Edge-list file")->required();
  certify->add_option("--certificate-out", certificate_out, "Write the certificate JSON here");

  auto* ppt2 = app.add_subcommand("ppt2", "Composition of two PPT members of the family");
  ppt2->add_option("graphA", graph_path, "Edge-list file for A")->required();
  ppt2->add_option("graphB", graph_b_path, "Edge-list file for B")->required();
  ppt2->add_option("--t1", t1, "Parameter for A (default t_ppt(A))");
  ppt2->add_option("--t2", t2, "Parameter for B (default t_ppt(B))");

  auto* iterate = app.add_subcommand("iterate", "Iterates of (1/t) gamma_{t,A}");
  iterate->add_option("graph", graph_path, "Edge-list file")->required();
  iterate->add_option("--t", t, "Parameter t > 0")->required();
  iterate->add_option("--steps", steps, "Number of iterates")->capture_default_str();

  auto* schur = app.add_subcommand("classify-schur", "NotCP / CPNotPPT / PPT for S_P");
  schur->add_option("matrix", matrix_path, "Dense complex matrix file")->required();
  schur->add_option("--tol", schur_tol, "Absolute tolerance (default 1e-9 (1 + |P|_F))");

  std::vector<const char*> argv{"pptmaps"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  Report report;
  report.inputs["conventions"] = detail::conventions();
  report.inputs["seed"] = seed;
  try {
    if (th->parsed()) {
      report.command = "thresholds";
      const Graph g = detail::load_graph(graph_path);
      ThresholdOptions opts;
      opts.t_pos.seed = seed;
      opts.t_pos.restarts = restarts;
      opts.t_pos.iterations = tpos_iterations;
      opts.t_pos.threads = threads;
      opts.theta.iterations = theta_iterations;
      report.inputs["graph"] = detail::graph_input(graph_path, g);
      report.tolerances = {{"eigensolver_residual", "1e-9 (1 + |H|_F)"},
                           {"t_pos_restarts", restarts},
                           {"t_pos_iterations", tpos_iterations},
                           {"t_pos_step_tolerance", opts.t_pos.tolerance},
                           {"theta_iterations", theta_iterations},
                           {"theta_step_scale", opts.theta.step_scale}};
      report.results = to_json(thresholds(g, opts));
    } else if (theta->parsed()) {
      report.command = "theta";
      const Graph g = detail::load_graph(graph_path);
      ThetaOptions opts;
      opts.iterations = theta_iterations;
      report.inputs["graph"] = detail::graph_input(graph_path, g);
      report.tolerances = {{"theta_iterations", theta_iterations},
                           {"theta_step_scale", opts.step_scale},
                           {"zero_subgradient", opts.tolerance}};
      report.results = to_json(lovasz_theta_bar(g, opts));
    } else if (certify->parsed()) {
      report.command = "certify";
      const Graph g = detail::load_graph(graph_path);
      report.inputs["graph"] = detail::graph_input(graph_path, g);
      report.tolerances = {{"arithmetic", "exact (arbitrary-precision Gaussian integers)"}};
      const SeparabilityCertificate cert = build_certificate(g);
      const CertificateCheck check = verify_certificate(cert, g);
      std::size_t products = 0;
      for (const auto& term : cert.terms) products += std::holds_alternative<ProductTerm>(term);
      report.results = {{"verified", check.ok},
                        {"failure", check.failure},
                        {"t_certified", static_cast<double>(g.vertex_count() * g.max_degree())},
                        {"scale", cert.scale.str()},
                        {"product_terms", products},
                        {"diagonal_terms", cert.terms.size() - products}};
      if (!certificate_out.empty()) {
        std::ofstream f(certificate_out);
        if (!f) throw ValidationFailure("cannot write '" + certificate_out + "'");
        f << dump_json(to_json(cert)) << '\n';
        report.results["certificate_file"] = certificate_out;
      }
    } else if (ppt2->parsed()) {
      report.command = "ppt2";
      const Graph a = detail::load_graph(graph_path);
      const Graph b = detail::load_graph(graph_b_path);
      const double ta = t1 >= 0.0 ? t1 : t_ppt_of(a);
      const double tb = t2 >= 0.0 ? t2 : t_ppt_of(b);
      report.inputs["graph_a"] = detail::graph_input(graph_path, a);
      report.inputs["graph_b"] = detail::graph_input(graph_b_path, b);
      report.inputs["t1"] = ta;
      report.inputs["t2"] = tb;
      report.tolerances = {{"composition_entrywise", "1e-10 (1 + t1 t2)"},
                           {"ppt_precondition_relative", 1e-9}};
      report.results = to_json(ppt2_verify(a, b, ta, tb));
    } else if (iterate->parsed()) {
      report.command = "iterate";
      const Graph g = detail::load_graph(graph_path);
      if (!(t > 0.0)) throw ValidationFailure("iterate: --t must be positive");
      report.inputs["graph"] = detail::graph_input(graph_path, g);
      report.inputs["t"] = t;
      report.inputs["steps"] = steps;
      const PeripheralOptions opts;
      report.tolerances = {{"peripheral_band", opts.tolerance},
                           {"idempotency", opts.idempotency_tolerance},
                           {"eigenvector_condition_limit", opts.condition_limit},
                           {"psd", "1e-9 (1 + |C|_F)"}};
      const Channel phi = normalize_channel(make_gamma(t, g.adjacency_matrix()));
      report.results = to_json(convergence_report(phi, steps, opts));
    } else if (schur->parsed()) {
      report.command = "classify-schur";
      const ComplexMatrix pm = detail::load_matrix(matrix_path);
      std::optional<double> tol;
      if (schur_tol >= 0.0) tol = schur_tol;
      report.inputs["matrix_file"] = matrix_path;
      report.inputs["matrix"] = to_json(pm);
      report.tolerances = {{"psd", tol ? Json(*tol) : Json("1e-9 (1 + |P|_F)")}};
      const SchurVerdict v = schur_ppt_classify(pm, tol);
      const PptVerdict direct = is_ppt(make_schur(pm), tol);
      report.results = {{"verdict", to_string(v)},
                        {"is_ppt_direct", direct.holds},
                        {"choi_min_eig", direct.min_eig},
                        {"choi_pt_min_eig", direct.min_eig_pt}};
    }
  } catch (const ValidationFailure& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const NumericalFailure& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  out << dump_json(to_json(report)) << '\n';
  return kExitOk;
}

}  // namespace pptmaps::cli
