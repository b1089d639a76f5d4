// Copyright 2026 The geobench Authors
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


#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "geobench/report.hpp"
#include "mock_endpoint.hpp"

namespace geobench::report {
namespace {

namespace fs = std::filesystem;
using testing::MockEndpoint;

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("geobench-cli-" + std::to_string(::getpid()) + "-" +
                                         std::to_string(counter_++));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  fs::path operator/(const std::string& s) const { return path_ / s; }

 private:
  static inline int counter_ = 0;
  fs::path path_;
};

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome cli(std::vector<std::string> args) {
  args.insert(args.begin(), "geobench");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path endpoint_file(const TempDir& dir, const MockEndpoint& mock,
                       nlohmann::json extra = nlohmann::json::object()) {
  nlohmann::json j = {{"label", "mock"}, {"query_url", mock.url()}, {"request_timeout_secs", 10}};
  j.update(extra);
  static int counter = 0;
  const auto path = dir / ("endpoint-" + std::to_string(counter++) + ".json");
  std::ofstream(path) << j.dump();
  return path;
}

/// Generates and calibrates the n=12 workload; returns the manifest path.
fs::path small_workload(const TempDir& dir) {
  EXPECT_EQ(cli({"generate", "-n", "12", "-k", "2", "-o", (dir / "data").string()}).code, 0);
  const auto manifest = dir / "workload.json";
  EXPECT_EQ(cli({"calibrate", "--from", (dir / "data").string(), "-o", manifest.string()}).code, 0);
  return manifest;
}

/// Answers every synthetic query with its oracle count (+ `skew` for one id).
void answer_with_oracle(MockEndpoint& mock, const fs::path& manifest, const std::string& skew_id = "") {
  std::map<std::string, int> counts;
  const auto j = nlohmann::json::parse(slurp(manifest));
  for (const auto& q : j["instances"]) {
    counts[q["sparql"]] = q["expected_count"].get<int>() + (q["id"] == skew_id ? 1 : 0);
  }
  mock.rows_for = [counts](const std::string& sparql) -> std::optional<int> {
    const auto it = counts.find(sparql);
    return it == counts.end() ? std::nullopt : std::optional<int>(it->second);
  };
}

std::vector<ResultRecord> rows_of(const fs::path& p) { return load_results(p); }

TEST(Cli, UsageErrorsExitOne) {
  EXPECT_EQ(cli({}).code, 1);
  EXPECT_EQ(cli({"frobnicate"}).code, 1);
  EXPECT_EQ(cli({"generate"}).code, 1);  // missing -o
  EXPECT_EQ(cli({"generate", "-n", "7", "-o", "/tmp/unused"}).code, 1);
  EXPECT_EQ(cli({"--help"}).code, 0);
}

TEST(Cli, GenerateAndCalibrateAreDeterministic) {
  TempDir dir;
  for (const char* d : {"a", "b"}) {
    ASSERT_EQ(cli({"generate", "-n", "64", "-k", "5", "--seed", "7", "-o", (dir / d).string()}).code, 0);
    ASSERT_EQ(cli({"calibrate", "--from", (dir / d).string(), "-o", (dir / (std::string(d) + ".json")).string()})
                  .code,
              0);
  }
  int files = 0;
  for (const auto& e : fs::directory_iterator(dir / "a")) {
    ++files;
    EXPECT_EQ(slurp(e.path()), slurp(dir / "b" / e.path().filename())) << e.path();
  }
  EXPECT_EQ(files, 5);  // four datasets and the sidecar
  EXPECT_EQ(slurp(dir / "a.json"), slurp(dir / "b.json"));
  const auto manifest = nlohmann::json::parse(slurp(dir / "a.json"));
  EXPECT_EQ(manifest["instances"].size(), 36u);
}

TEST(Cli, CalibrateRejectsMissingOrStaleSidecars) {
  TempDir dir;
  EXPECT_EQ(cli({"calibrate", "--from", (dir / "nothing").string(), "-o", (dir / "m.json").string()}).code, 1);
  ASSERT_EQ(cli({"generate", "-n", "12", "-k", "2", "-o", (dir / "d").string()}).code, 0);
  const auto sidecar = dir / "d" / "generator-12-2.json";
  auto j = nlohmann::json::parse(slurp(sidecar));
  j["params"]["n"] = 14;
  std::ofstream(sidecar, std::ios::trunc) << j.dump();
  EXPECT_EQ(cli({"calibrate", "--from", (dir / "d").string(), "-o", (dir / "m.json").string()}).code, 1);
}

TEST(Cli, SyntheticRunVerifyAndReport) {
  TempDir dir;
  MockEndpoint mock;
  const auto manifest = small_workload(dir);
  answer_with_oracle(mock, manifest);
  const auto ep = endpoint_file(dir, mock);
  const auto results = dir / "results.csv";

  const auto run = cli({"run", "--suite", "synthetic-default", "--endpoint", ep.string(), "--manifest",
                        manifest.string(), "--output", results.string()});
  ASSERT_EQ(run.code, 0) << run.err;
  const auto rows = rows_of(results);
  EXPECT_EQ(rows.size(), 36u * 3);
  for (const auto& r : rows) EXPECT_EQ(r.verify, harness::Verification::kMatch) << r.measurement.query_id;
  EXPECT_EQ(mock.queries().size(), 36u * 4);

  const auto verify = cli({"verify", "--manifest", manifest.string(), "--results", results.string()});
  EXPECT_EQ(verify.code, 0) << verify.out;
  EXPECT_NE(verify.out.find("36 match, 0 mismatch"), std::string::npos) << verify.out;

  const auto report = cli({"report", "--results", results.string(), "--group-by", "selectivity", "--out-dir",
                           (dir / "report").string()});
  ASSERT_EQ(report.code, 0) << report.err;
  EXPECT_TRUE(fs::exists(dir / "report" / "summary.csv"));
  int selection_figures = 0, join_figures = 0;
  for (const auto& e : fs::directory_iterator(dir / "report" / "plotdata")) {
    const auto name = e.path().filename().string();
    selection_figures += name.rfind("selection-", 0) == 0;
    join_figures += name.rfind("join-", 0) == 0;
  }
  EXPECT_EQ(selection_figures, 4);  // 2 datasets x 2 thema values
  EXPECT_EQ(join_figures, 3);
}

TEST(Cli, VerifyFailsOnAWrongCount) {
  TempDir dir;
  MockEndpoint mock;
  const auto manifest = small_workload(dir);
  answer_with_oracle(mock, manifest, "sel-poi-within-0.5-t1");
  const auto ep = endpoint_file(dir, mock);
  const auto direct = cli({"verify", "--manifest", manifest.string(), "--endpoint", ep.string()});
  EXPECT_EQ(direct.code, 2);
  EXPECT_NE(direct.out.find("sel-poi-within-0.5-t1"), std::string::npos);
  EXPECT_NE(direct.out.find("35 match, 1 mismatch"), std::string::npos) << direct.out;
  EXPECT_EQ(cli({"verify", "--manifest", manifest.string(), "--endpoint", ep.string(), "--only", "join"}).code, 0);
  EXPECT_EQ(cli({"verify", "--manifest", manifest.string()}).code, 1);
}

TEST(Cli, RunRejectsBadConfigurationBeforeQuerying) {
  TempDir dir;
  MockEndpoint mock;
  const auto manifest = small_workload(dir);
  const auto ep = endpoint_file(dir, mock);
  const auto st = endpoint_file(dir, mock, {{"dialect", "stsparql"}});
  EXPECT_EQ(cli({"run", "--suite", "synthetic-default", "--endpoint", ep.string()}).code, 1);
  EXPECT_EQ(cli({"run", "--suite", "nope", "--endpoint", ep.string()}).code, 1);
  EXPECT_EQ(cli({"run", "--suite", "micro-real", "--endpoint", ep.string(), "--mode", "cold"}).code, 1);
  EXPECT_EQ(cli({"run", "--suite", "micro-real", "--endpoint", ep.string(), "--runs", "0"}).code, 1);
  EXPECT_EQ(cli({"run", "--suite", "synthetic-default", "--endpoint", st.string(), "--manifest",
                 manifest.string()})
                .code,
            1);
  EXPECT_EQ(cli({"run", "--suite", "micro-real", "--endpoint", (dir / "missing.json").string()}).code, 1);
  EXPECT_TRUE(mock.requests().empty());
}

TEST(Cli, MicroSuiteSkipsUnsupportedEntries) {
  TempDir dir;
  MockEndpoint mock;
  const auto results = dir / "micro.csv";
  const auto run = cli({"run", "--suite", "micro-real", "--endpoint", endpoint_file(dir, mock).string(),
                        "--runs", "2", "--output", results.string()});
  ASSERT_EQ(run.code, 0) << run.err;
  EXPECT_NE(run.out.find("Q28 skipped"), std::string::npos);
  EXPECT_EQ(rows_of(results).size(), 27u * 2);
  EXPECT_EQ(mock.max_in_flight(), 1);
}

TEST(Cli, FailedRequestsExitTwoButKeepResults) {
  TempDir dir;
  MockEndpoint mock;
  mock.rows_for = [](const std::string&) -> std::optional<int> { return std::nullopt; };
  const auto manifest = small_workload(dir);
  // Make every synthetic query fail with HTTP 500.
  auto j = nlohmann::json::parse(slurp(manifest));
  for (auto& q : j["instances"]) q["sparql"] = q["sparql"].get<std::string>() + "#status=500\n";
  std::ofstream(manifest, std::ios::trunc) << j.dump();
  const auto results = dir / "r.csv";
  const auto run = cli({"run", "--suite", "synthetic-default", "--endpoint", endpoint_file(dir, mock).string(),
                        "--manifest", manifest.string(), "--output", results.string()});
  EXPECT_EQ(run.code, 2);
  EXPECT_EQ(rows_of(results).size(), 36u);  // one failed warm-up each
}

TEST(Cli, MacroRunWritesIterationsAndLoadTime) {
  TempDir dir;
  MockEndpoint mock;
  ASSERT_EQ(cli({"generate", "-n", "6", "-k", "1", "-o", (dir / "data").string()}).code, 0);
  const auto ep = endpoint_file(dir, mock, {{"load_hook", {"true"}}});
  const auto results = dir / "macro.csv";
  const auto run = cli({"run", "--suite", "macro-rg", "--endpoint", ep.string(), "--duration", "0.3", "--seed",
                        "3", "--load-dir", (dir / "data").string(), "--output", results.string()});
  ASSERT_EQ(run.code, 0) << run.err;
  int iterations = 0, queries = 0, loads = 0;
  for (const auto& r : rows_of(results)) {
    iterations += r.kind == RecordKind::kMacroIteration;
    queries += r.kind == RecordKind::kMacroQuery;
    loads += r.kind == RecordKind::kLoad;
  }
  EXPECT_GE(iterations, 1);
  EXPECT_EQ(queries, 2 * iterations);
  EXPECT_EQ(loads, 1);

  const auto report = cli({"report", "--results", results.string(), "--out-dir", (dir / "rep").string()});
  ASSERT_EQ(report.code, 0) << report.err;
  EXPECT_NE(report.out.find("iterations)"), std::string::npos) << report.out;
  EXPECT_TRUE(fs::exists(dir / "rep" / "plotdata" / "macro-iterations.csv"));
  EXPECT_TRUE(fs::exists(dir / "rep" / "plotdata" / "load-times.csv"));
}

}  // namespace
}  // namespace geobench::report
