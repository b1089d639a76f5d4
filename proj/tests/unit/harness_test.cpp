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


#include "geobench/harness.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "geobench/error.hpp"
#include "mock_endpoint.hpp"

namespace geobench::harness {
namespace {

using std::chrono::milliseconds;
using Clock = std::chrono::steady_clock;
using testing::MockEndpoint;

EndpointConfig config_for(const MockEndpoint& mock, HttpMethod method = HttpMethod::kPostForm) {
  EndpointConfig ep;
  ep.label = "mock";
  ep.query_url = mock.url();
  ep.method = method;
  ep.readiness_timeout = milliseconds(5000);
  return ep;
}

QueryInstance instance(std::string id, std::string sparql) {
  QueryInstance q;
  q.id = std::move(id);
  q.sparql = std::move(sparql);
  return q;
}

class TempDir {
 public:
  TempDir() {
    path_ = std::filesystem::temp_directory_path() /
            ("geobench-harness-" + std::to_string(::getpid()) + "-" + std::to_string(counter_++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  const std::filesystem::path& path() const { return path_; }

 private:
  static inline int counter_ = 0;
  std::filesystem::path path_;
};

int line_count(const std::filesystem::path& p) {
  std::ifstream in(p);
  int n = 0;
  for (std::string line; std::getline(in, line);) ++n;
  return n;
}

TEST(ExecuteQuery, CountsRowsAndMeasuresUntilLastByte) {
  MockEndpoint mock;
  const auto m = execute_query(config_for(mock), "SELECT * {} #rows=5 #sleep=120", milliseconds(5000));
  EXPECT_EQ(m.status, Status::kOk) << m.error_detail;
  EXPECT_EQ(m.result_rows, 5u);
  EXPECT_GE(m.elapsed.count(), 120.0);
  EXPECT_LT(m.elapsed.count(), 1000.0);
}

TEST(ExecuteQuery, StreamedBodyIsIncludedInElapsedTime) {
  MockEndpoint mock;
  const auto m = execute_query(config_for(mock), "SELECT * {} #rows=2 #stream=200", milliseconds(5000));
  EXPECT_EQ(m.status, Status::kOk) << m.error_detail;
  EXPECT_EQ(m.result_rows, 2u);
  EXPECT_GE(m.elapsed.count(), 200.0);
}

TEST(ExecuteQuery, EveryResultFormatIsCounted) {
  MockEndpoint mock;
  for (const char* f : {"json", "xml", "csv", "tsv"}) {
    const auto m = execute_query(config_for(mock), std::string("SELECT * {} #rows=4 #format=") + f, milliseconds(5000));
    EXPECT_EQ(m.status, Status::kOk) << f << ": " << m.error_detail;
    EXPECT_EQ(m.result_rows, 4u) << f;
  }
}

TEST(ExecuteQuery, TimeoutIsEnforcedWithinThePollInterval) {
  MockEndpoint mock;
  const milliseconds timeout(2000);
  for (const char* q : {"SELECT * {} #rows=1 #sleep=10000", "SELECT * {} #rows=1 #stream=10000"}) {
    const auto start = Clock::now();
    const auto m = execute_query(config_for(mock), q, timeout);
    const Millis wall = Clock::now() - start;
    EXPECT_EQ(m.status, Status::kTimeout) << q;
    EXPECT_GE(wall.count(), timeout.count()) << q;
    EXPECT_LT(wall.count(), (timeout + kPollInterval).count()) << q;
  }
}

TEST(ExecuteQuery, HttpErrorsAreReportedNotThrown) {
  MockEndpoint mock;
  const auto m = execute_query(config_for(mock), "SELECT * {} #status=500", milliseconds(5000));
  EXPECT_EQ(m.status, Status::kError);
  EXPECT_NE(m.error_detail.find("HTTP 500"), std::string::npos) << m.error_detail;
  EXPECT_NE(m.error_detail.find("mock failure"), std::string::npos) << m.error_detail;
}

TEST(ExecuteQuery, TruncatedResultIsAnError) {
  MockEndpoint mock;
  const auto m = execute_query(config_for(mock), "SELECT * {} #rows=3 #truncate", milliseconds(5000));
  EXPECT_EQ(m.status, Status::kError);
}

TEST(ExecuteQuery, RefusedConnectionIsAnError) {
  EndpointConfig ep;
  {
    MockEndpoint mock;
    ep = config_for(mock);
  }
  const auto m = execute_query(ep, "SELECT * {}", milliseconds(2000));
  EXPECT_EQ(m.status, Status::kError);
  EXPECT_NE(m.error_detail.find("transport"), std::string::npos) << m.error_detail;
}

TEST(ExecuteQuery, AllProtocolVariantsDeliverQueryAndGraphs) {
  MockEndpoint mock;
  const std::string q = "SELECT ?s { ?s ?p \"a&b=c\" } #rows=1";
  for (auto method : {HttpMethod::kGet, HttpMethod::kPostForm, HttpMethod::kPostDirect}) {
    const auto m = execute_query(config_for(mock, method), q, milliseconds(5000), {"http://g/1", "http://g/2"});
    EXPECT_EQ(m.status, Status::kOk) << m.error_detail;
  }
  const auto log = mock.queries();
  ASSERT_EQ(log.size(), 3u);
  EXPECT_EQ(log[0].method, "GET");
  EXPECT_EQ(log[1].content_type, "application/x-www-form-urlencoded");
  EXPECT_EQ(log[2].content_type, "application/sparql-query");
  for (const auto& r : log) {
    EXPECT_EQ(r.query, q);
    EXPECT_EQ(r.default_graphs, (std::vector<std::string>{"http://g/1", "http://g/2"}));
  }
}

TEST(RunMicro, WarmRunsWarmUpThenTimedRunsOneAtATime) {
  MockEndpoint mock;
  RunPolicy policy;
  policy.runs = 3;
  policy.timeout = milliseconds(5000);
  const std::vector<QueryInstance> qs = {instance("a", "SELECT * {} #rows=2 #sleep=20"),
                                         instance("b", "SELECT * {} #rows=7"),
                                         instance("skipped", "SELECT * {}")};
  auto with_skip = qs;
  with_skip[2].skip_reason = "not supported";
  int streamed = 0;
  const auto ms = run_micro(config_for(mock), with_skip, policy, [&](const Measurement&) { ++streamed; });

  EXPECT_EQ(mock.queries().size(), 8u);  // (1 warm-up + 3) per runnable query
  ASSERT_EQ(ms.size(), 6u);
  EXPECT_EQ(streamed, 6);
  EXPECT_EQ(mock.max_in_flight(), 1);
  for (std::size_t i = 0; i < ms.size(); ++i) {
    EXPECT_EQ(ms[i].query_id, i < 3 ? "a" : "b");
    EXPECT_EQ(ms[i].run_index, static_cast<int>(i % 3) + 1);
    EXPECT_EQ(ms[i].cache_mode, CacheMode::kWarm);
    EXPECT_EQ(ms[i].status, Status::kOk);
    EXPECT_EQ(ms[i].result_rows, i < 3 ? 2u : 7u);
  }
  for (const auto& r : mock.queries()) EXPECT_EQ(r.query.find("skipped"), std::string::npos);
}

TEST(RunMicro, ColdRunsCallTheHookBeforeEveryTimedRun) {
  MockEndpoint mock;
  TempDir dir;
  const auto marks = dir.path() / "hook.log";
  std::vector<int> hooks_seen;
  mock.on_query = [&](const std::string&) { hooks_seen.push_back(line_count(marks)); };
  auto ep = config_for(mock);
  ep.cold_hook = {"/bin/sh", "-c", "echo restart >> '" + marks.string() + "'"};
  mock.asks_until_ready = 2;

  RunPolicy policy;
  policy.cache_mode = CacheMode::kCold;
  policy.runs = 3;
  policy.timeout = milliseconds(5000);
  const auto ms = run_micro(ep, {instance("q", "SELECT * {} #rows=1")}, policy);

  ASSERT_EQ(ms.size(), 3u);
  EXPECT_EQ(hooks_seen, (std::vector<int>{1, 2, 3}));  // no warm-up, one hook per run
  for (const auto& m : ms) EXPECT_EQ(m.cache_mode, CacheMode::kCold);
  EXPECT_EQ(mock.max_in_flight(), 1);
}

TEST(RunMicro, ColdRunsWithoutHookAreRejected) {
  MockEndpoint mock;
  RunPolicy policy;
  policy.cache_mode = CacheMode::kCold;
  EXPECT_THROW(run_micro(config_for(mock), {instance("q", "SELECT * {}")}, policy), ConfigError);
  EXPECT_TRUE(mock.requests().empty());
}

TEST(RunMicro, FailureSkipsTheRemainingRunsOfThatQuery) {
  MockEndpoint mock;
  RunPolicy policy;
  policy.runs = 3;
  policy.timeout = milliseconds(300);
  // Third execution (the second timed run) is slow.
  const auto ms = run_micro(config_for(mock),
                            {instance("slow", "SELECT * {} #rows=1 #sleep=3000 #slow_from=3"),
                             instance("next", "SELECT * {} #rows=1")},
                            policy);
  ASSERT_EQ(ms.size(), 5u);
  EXPECT_EQ(ms[0].status, Status::kOk);
  EXPECT_EQ(ms[1].status, Status::kTimeout);
  EXPECT_EQ(ms[1].run_index, 2);
  EXPECT_EQ(ms[2].query_id, "next");
  EXPECT_EQ(ms.back().run_index, 3);
}

TEST(RunMicro, FailedWarmUpIsRecordedAsRunZero) {
  MockEndpoint mock;
  RunPolicy policy;
  policy.timeout = milliseconds(5000);
  const auto ms = run_micro(config_for(mock), {instance("broken", "SELECT * {} #status=500")}, policy);
  ASSERT_EQ(ms.size(), 1u);
  EXPECT_EQ(ms[0].run_index, 0);
  EXPECT_EQ(ms[0].status, Status::kError);
  EXPECT_EQ(mock.queries().size(), 1u);
}

TEST(RunPolicy, Validation) {
  RunPolicy p;
  EXPECT_NO_THROW(p.validate());
  p.runs = 0;
  EXPECT_THROW(p.validate(), InvalidParams);
  p.runs = 1;
  p.warmup_runs = 0;
  EXPECT_THROW(p.validate(), InvalidParams);
  p.cache_mode = CacheMode::kCold;
  EXPECT_NO_THROW(p.validate());
  p.timeout = milliseconds(0);
  EXPECT_THROW(p.validate(), InvalidParams);
}

TEST(Readiness, PollsUntilTheEndpointAnswers) {
  MockEndpoint mock;
  mock.asks_until_ready = 3;
  EXPECT_NO_THROW(wait_until_ready(config_for(mock)));
  EXPECT_EQ(mock.requests().size(), 4u);

  mock.asks_until_ready = 1000;
  auto ep = config_for(mock);
  ep.readiness_timeout = milliseconds(400);
  EXPECT_THROW(wait_until_ready(ep), HookFailure);
}

TEST(Hooks, FailuresRaiseHookFailure) {
  EXPECT_NO_THROW(run_hook({"true"}));
  EXPECT_THROW(run_hook({"false"}), HookFailure);
  EXPECT_THROW(run_hook({"/nonexistent/geobench-hook"}), HookFailure);
  EXPECT_THROW(run_hook({"/bin/sh", "-c", "kill -9 $$"}), HookFailure);
  EXPECT_THROW(run_hook({}), ConfigError);
}

TEST(MeasureLoad, TimesTheHookAndPassesTheFiles) {
  TempDir dir;
  const auto args = dir.path() / "args";
  EndpointConfig ep;
  ep.query_url = "http://127.0.0.1:1/sparql";
  ep.load_hook = {"/bin/sh", "-c", "sleep 0.2; printf '%s\\n' \"$@\" > '" + args.string() + "'", "load"};
  const auto t = measure_load(ep, {"/data/a.nt", "/data/b.nt"});
  EXPECT_GE(t.count(), 200.0);
  EXPECT_LT(t.count(), 2000.0);
  std::ifstream in(args);
  std::stringstream got;
  got << in.rdbuf();
  EXPECT_EQ(got.str(), "/data/a.nt\n/data/b.nt\n");

  ep.load_hook.clear();
  EXPECT_THROW(measure_load(ep, {}), ConfigError);
}

suites::Suite three_query_suite(int sleep_ms) {
  suites::Suite s;
  s.name = "macro-test";
  s.kind = suites::SuiteKind::kMacro;
  s.dialects[Dialect::kGeoSparql] = {};
  for (int i = 1; i <= 3; ++i) {
    suites::QueryTemplateEntry e;
    e.id = "M" + std::to_string(i);
    e.sparql_template = "SELECT * { {v} } #rows=1 #sleep=" + std::to_string(sleep_ms);
    e.placeholders = {{"v", suites::PlaceholderKind::kNumber, ""}};
    s.entries.push_back(e);
  }
  return s;
}

TEST(RunMacro, RepeatsIterationsForTheBudget) {
  MockEndpoint mock;
  MacroScenario sc;
  sc.name = "test";
  sc.suite = three_query_suite(100);
  sc.bindings.domains["v"] = nlohmann::json{{"min", 1}, {"max", 9}};
  sc.duration = milliseconds(1000);
  sc.timeout = milliseconds(5000);
  const auto r = run_macro(config_for(mock), sc);

  EXPECT_TRUE(r.complete) << r.detail;
  EXPECT_GE(r.iterations, 3);
  EXPECT_NEAR(r.average_iteration.count(), 300.0, 60.0);
  ASSERT_EQ(r.per_query_average.size(), 3u);
  for (const auto& [id, t] : r.per_query_average) EXPECT_NEAR(t.count(), 100.0, 20.0) << id;
  EXPECT_EQ(r.measurements.size(), static_cast<std::size_t>(3 * r.iterations));
  EXPECT_EQ(mock.max_in_flight(), 1);
}

TEST(RunMacro, TimeoutMarksTheScenarioIncomplete) {
  MockEndpoint mock;
  MacroScenario sc;
  sc.name = "slow";
  sc.suite = three_query_suite(5000);
  sc.bindings.domains["v"] = nlohmann::json{{"min", 1}, {"max", 9}};
  sc.duration = milliseconds(1000);
  sc.timeout = milliseconds(200);
  const auto r = run_macro(config_for(mock), sc);
  EXPECT_FALSE(r.complete);
  EXPECT_EQ(r.iterations, 0);
  EXPECT_NE(r.detail.find("M1"), std::string::npos);
  EXPECT_NE(r.detail.find("timeout"), std::string::npos);
}

TEST(Verify, ComparesRowCountsWithTheOracle) {
  QueryInstance q;
  Measurement m;
  m.result_rows = 36;
  EXPECT_EQ(verify_results(m, q), Verification::kNotApplicable);
  q.expected_count = 36;
  EXPECT_EQ(verify_results(m, q), Verification::kMatch);
  m.result_rows = 35;
  EXPECT_EQ(verify_results(m, q), Verification::kMismatch);
  m.status = Status::kTimeout;
  EXPECT_EQ(verify_results(m, q), Verification::kNotApplicable);
}

TEST(Median, OddEvenEmpty) {
  EXPECT_EQ(median({}), std::nullopt);
  EXPECT_EQ(median({5}), 5.0);
  EXPECT_EQ(median({3, 1, 2}), 2.0);
  EXPECT_EQ(median({4, 1, 3, 2}), 2.5);
}

TEST(EndpointConfig, JsonRoundTripAndShellHooks) {
  const auto j = nlohmann::json::parse(R"({
    "label": "local", "query_url": "http://localhost:7200/repositories/x",
    "dialect": "stsparql", "method": "get", "request_timeout_secs": 2.5,
    "cold_hook": "systemctl restart store", "load_hook": ["load.sh", "--fast"],
    "named_graphs": {"land-ownership": "http://g/land"}})");
  const auto c = j.get<EndpointConfig>();
  EXPECT_EQ(c.dialect, Dialect::kStSparql);
  EXPECT_EQ(c.method, HttpMethod::kGet);
  EXPECT_EQ(c.request_timeout, milliseconds(2500));
  EXPECT_EQ(c.cold_hook.front(), "/bin/sh");
  EXPECT_EQ(c.load_hook, (std::vector<std::string>{"load.sh", "--fast"}));
  EXPECT_EQ(c.named_graphs.at(gen::DatasetKind::kLandOwnership), "http://g/land");
  const auto back = nlohmann::json(c).get<EndpointConfig>();
  EXPECT_EQ(back.cold_hook, c.cold_hook);
  EXPECT_EQ(back.named_graphs, c.named_graphs);
  EXPECT_EQ(back.request_timeout, c.request_timeout);
}

TEST(EndpointConfig, UnusableUrlsAreConfigErrors) {
  EndpointConfig c;
  for (const char* url : {"", "ftp://x/", "https://x/sparql", "http://:80/", "http://x:99999/"}) {
    c.query_url = url;
    EXPECT_THROW(c.validate(), ConfigError) << url;
  }
  c.query_url = "http://x/sparql";
  EXPECT_NO_THROW(c.validate());
  EXPECT_THROW(c.validate(true), ConfigError);
}

TEST(DefaultTimeout, ReadsTheEnvironment) {
  ::setenv("GEOBENCH_TIMEOUT_SECS", "1.5", 1);
  EXPECT_EQ(default_timeout(), milliseconds(1500));
  ::setenv("GEOBENCH_TIMEOUT_SECS", "soon", 1);
  EXPECT_THROW(default_timeout(), ConfigError);
  ::unsetenv("GEOBENCH_TIMEOUT_SECS");
  EXPECT_EQ(default_timeout(), std::chrono::hours(1));
}

TEST(Enums, StringRoundTrips) {
  for (auto s : {Status::kOk, Status::kTimeout, Status::kError}) EXPECT_EQ(status_from_string(to_string(s)), s);
  for (auto m : {CacheMode::kCold, CacheMode::kWarm}) EXPECT_EQ(cache_mode_from_string(to_string(m)), m);
  EXPECT_EQ(status_from_string("fine"), std::nullopt);
}

}  // namespace
}  // namespace geobench::harness
