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

#include "pptmaps/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "gtest/gtest.h"

using namespace pptmaps;

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& rel) { return std::string(PPTMAPS_DATA_DIR) + "/" + rel; }

Json results_of(const RunResult& r) { return Json::parse(r.out).at("results"); }

std::filesystem::path temp_file(const std::string& name, const std::string& contents) {
  const auto path = std::filesystem::temp_directory_path() / ("pptmaps_cli_test_" + name);
  std::ofstream(path) << contents;
  return path;
}

}  // namespace

TEST(Cli, ThresholdsSingleEdge) {
  const auto r = run({"thresholds", data("graphs/k2.graph")});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const auto j = Json::parse(r.out);
  EXPECT_EQ(j.at("command"), "thresholds");
  EXPECT_EQ(j.at("version"), kVersion);
  EXPECT_EQ(j.at("inputs").at("conventions").at("ordered_edge_convention"), true);
  const auto res = j.at("results");
  EXPECT_EQ(res.at("t_cp").get<double>(), 2.0);
  EXPECT_EQ(res.at("ordered_edge_count").get<int>(), 2);
  EXPECT_NEAR(res.at("t_pos_numeric").get<double>(), 1.0, 1e-4);
  EXPECT_NE(r.out.find("\"t_cp\": 2.0"), std::string::npos);
}

TEST(Cli, ThresholdsIsByteIdenticalAcrossRunsAndThreads) {
  const std::vector<std::string> base{"--seed", "7", "thresholds", data("graphs/petersen.graph"),
                                      "--restarts", "8", "--theta-iterations", "500"};
  const auto a = run(base), b = run(base);
  auto threaded = base;
  threaded.insert(threaded.end(), {"--threads", "3"});
  const auto c = run(threaded);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  // Only the echoed thread count may differ; results must match exactly.
  EXPECT_EQ(results_of(a), results_of(c));
}

TEST(Cli, SeedChangesWitnessButNotThresholds) {
  const auto a = run({"--seed", "1", "thresholds", data("graphs/c5.graph"), "--restarts", "4"});
  const auto b = run({"--seed", "2", "thresholds", data("graphs/c5.graph"), "--restarts", "4"});
  ASSERT_EQ(a.code, 0);
  ASSERT_EQ(b.code, 0);
  EXPECT_EQ(results_of(a).at("t_cp"), results_of(b).at("t_cp"));
  EXPECT_NE(results_of(a).at("t_pos_witness"), results_of(b).at("t_pos_witness"));
}

TEST(Cli, ReportRoundTrip) {
  const auto r = run({"certify", data("graphs/k3.graph")});
  ASSERT_EQ(r.code, 0);
  const Report rep = report_from_json(Json::parse(r.out));
  EXPECT_EQ(rep.command, "certify");
  EXPECT_EQ(dump_json(to_json(rep)) + "\n", r.out);
  EXPECT_EQ(report_from_json(to_json(rep)), rep);
}

TEST(Cli, Theta) {
  const auto r = run({"theta", data("graphs/c5.graph")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(results_of(r).at("value").get<double>(), std::sqrt(5.0), 1e-3);
}

TEST(Cli, CertifyWritesVerifiableCertificate) {
  const auto path = std::filesystem::temp_directory_path() / "pptmaps_cli_test_petersen.json";
  const auto r = run({"certify", data("graphs/petersen.graph"), "--certificate-out", path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto res = results_of(r);
  EXPECT_TRUE(res.at("verified").get<bool>());
  EXPECT_EQ(res.at("t_certified").get<double>(), 30.0);
  EXPECT_EQ(res.at("product_terms").get<int>(), 60);
  std::ifstream in(path);
  const auto cert = certificate_from_json(nlohmann::ordered_json::parse(in));
  EXPECT_TRUE(verify_certificate(cert, graphs::petersen()).ok);
  std::filesystem::remove(path);
}

TEST(Cli, Ppt2DefaultsToThresholds) {
  const auto r = run({"ppt2", data("graphs/c5.graph"), data("graphs/c5.graph")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto res = results_of(r);
  EXPECT_TRUE(res.at("composition_is_gamma").get<bool>());
  EXPECT_TRUE(res.at("eb_certified").get<bool>());
  EXPECT_EQ(res.at("route"), "certificate");
}

TEST(Cli, Ppt2TraceMapRoute) {
  const auto r = run({"ppt2", data("graphs/p3_edge01.graph"), data("graphs/p3_edge12.graph")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(results_of(r).at("route"), "trace_map");
  EXPECT_TRUE(results_of(r).at("eb_certified").get<bool>());
}

TEST(Cli, Ppt2BelowThresholdIsValidationFailure) {
  const auto r = run({"ppt2", data("graphs/k2.graph"), data("graphs/k2.graph"), "--t1", "1"});
  EXPECT_EQ(r.code, cli::kExitValidation);
  EXPECT_NE(r.err.find("not PPT"), std::string::npos) << r.err;
  EXPECT_TRUE(r.out.empty());
}

TEST(Cli, Iterate) {
  const auto r = run({"iterate", data("graphs/k2.graph"), "--t", "4", "--steps", "10"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto res = results_of(r);
  const auto& tr = res.at("trace");
  ASSERT_EQ(tr.size(), 10u);
  for (std::size_t k = 1; k <= 10; ++k) {
    EXPECT_EQ(tr[k - 1][0].get<int>(), static_cast<int>(k));
    const double expected = std::pow(4.0, -static_cast<double>(k)) * std::sqrt(2.0);
    EXPECT_NEAR(tr[k - 1][1].get<double>() / expected, 1.0, 1e-6);
  }
  EXPECT_TRUE(res.at("psi").at("is_ppt").get<bool>());
  EXPECT_EQ(run({"iterate", data("graphs/k2.graph"), "--t", "0"}).code, cli::kExitValidation);
  EXPECT_EQ(run({"iterate", data("graphs/k2.graph")}).code, cli::kExitUsage);
}

TEST(Cli, ClassifySchur) {
  const auto verdict = [](const std::string& file) {
    const auto r = run({"classify-schur", data("matrices/" + file)});
    EXPECT_EQ(r.code, 0) << r.err;
    return results_of(r).at("verdict").get<std::string>();
  };
  EXPECT_EQ(verdict("ones2.matrix"), "CPNotPPT");
  EXPECT_EQ(verdict("diag12.matrix"), "PPT");
  EXPECT_EQ(verdict("indefinite.matrix"), "NotCP");
  EXPECT_EQ(verdict("complex_psd.matrix"), "CPNotPPT");
}

TEST(Cli, ClassifySchurNonHermitianReportsNull) {
  const auto path = temp_file("nonherm.matrix", "2 2\n0 1\n0 0\n");
  const auto r = run({"classify-schur", path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(results_of(r).at("verdict"), "NotCP");
  EXPECT_TRUE(results_of(r).at("choi_min_eig").is_null());
  std::filesystem::remove(path);
}

TEST(Cli, MalformedGraphReportsLine) {
  const auto path = temp_file("bad.graph", "3 2\n0 1\n1 q\n");
  const auto r = run({"thresholds", path.string()});
  EXPECT_EQ(r.code, cli::kExitValidation);
  EXPECT_NE(r.err.find("line 3"), std::string::npos) << r.err;
  std::filesystem::remove(path);
}

TEST(Cli, InvalidGraphNamesEdge) {
  const auto path = temp_file("loop.graph", "3 1\n2 2\n");
  const auto r = run({"certify", path.string()});
  EXPECT_EQ(r.code, cli::kExitValidation);
  EXPECT_NE(r.err.find("{2,2}"), std::string::npos) << r.err;
  std::filesystem::remove(path);
}

TEST(Cli, MissingFile) {
  const auto r = run({"theta", "/nonexistent/graph"});
  EXPECT_EQ(r.code, cli::kExitValidation);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, cli::kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"thresholds", data("graphs/k2.graph"), "--bogus"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"thresholds", data("graphs/k2.graph"), "--restarts", "x"}).code, cli::kExitUsage);
}

TEST(Cli, HelpExitsCleanly) {
  const auto r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("thresholds"), std::string::npos);
}

TEST(Cli, BinaryExitCodes) {
  const auto status = [](const std::string& args) {
    const std::string cmd = std::string(PPTMAPS_TOOL) + " " + args + " >/dev/null 2>&1";
    const int raw = std::system(cmd.c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };
  EXPECT_EQ(status("certify " + data("graphs/k3.graph")), 0);
  EXPECT_EQ(status("certify /nonexistent"), 1);
  EXPECT_EQ(status("thresholds --bogus"), 64);
}

TEST(JsonFormat, DoublesRoundTripExactly) {
  Json j = {{"a", 0.1}, {"b", 2.0}, {"c", 1e-300}, {"d", std::nan("")}, {"e", 3}};
  const auto text = dump_json(j, -1);
  EXPECT_EQ(text, "{\"a\":0.10000000000000001,\"b\":2.0,\"c\":1e-300,\"d\":null,\"e\":3}");
  const auto back = Json::parse(text);
  EXPECT_EQ(back.at("a").get<double>(), 0.1);
  EXPECT_EQ(back.at("c").get<double>(), 1e-300);
}
