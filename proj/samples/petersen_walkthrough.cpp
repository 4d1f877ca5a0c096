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

// Walks the Petersen graph through the library: thresholds, the exact
// certificate at t = p d, and the iterates of gamma_t / t at t = t_ppt.

#include <cstdio>

#include "pptmaps/pptmaps.hpp"

int main() {
  using namespace pptmaps;
  const Graph g = graphs::petersen();
  const ComplexMatrix a = g.adjacency_matrix();

  ThresholdOptions opts;
  opts.t_pos.restarts = 16;
  const ThresholdReport r = thresholds(g, opts);
  std::printf("p = %zu, |E| = %zu (ordered), d = %zu\n", r.p, r.ordered_edge_count, r.max_degree);
  std::printf("lambda_min = %.6f, lambda_max = %.6f, theta_bar = %.6f\n", r.lambda_min,
              r.lambda_max, r.theta_bar);
  std::printf("t_cp = t_ppt = %.6f, t_eb <= %.1f\n", r.t_cp, r.t_eb_upper);
  std::printf("t_pos in [%.6f, %.6f]\n", std::max(r.t_pos_lower, r.t_pos_numeric), r.t_cp);

  // Just below and at the PPT threshold.
  std::printf("gamma_19.9 PPT: %s, gamma_20 PPT: %s\n",
              is_ppt(make_gamma(19.9, a)).holds ? "yes" : "no",
              is_ppt(make_gamma(20.0, a)).holds ? "yes" : "no");

  const SeparabilityCertificate cert = build_certificate(g);
  const CertificateCheck check = verify_certificate(cert, g);
  std::printf("certificate for gamma_%.0f: %zu terms, verified: %s\n", r.t_eb_upper,
              cert.terms.size(), check.ok ? "yes" : check.failure.c_str());

  const IterationTrace trace = convergence_report(normalize_channel(make_gamma(r.t_ppt, a)), 10);
  std::printf("iterates of gamma_20 / 20: psi %s PPT, rate %.6f\n",
              trace.psi_is_ppt ? "is" : "is not", trace.fitted_rate);
  for (std::size_t k = 0; k < trace.k_values.size(); k += 3)
    std::printf("  k = %2zu  distance = %.6e\n", trace.k_values[k], trace.distances[k]);
  return check.ok && trace.psi_is_ppt ? 0 : 1;
}
