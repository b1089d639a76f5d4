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


#ifndef GEOBENCH_HARNESS_HPP_
#define GEOBENCH_HARNESS_HPP_

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "geobench/generator.hpp"
#include "geobench/query.hpp"
#include "geobench/suites.hpp"

namespace geobench::harness {

using Millis = std::chrono::duration<double, std::milli>;

/// Declared bound on how late a timeout may be enforced.
inline constexpr std::chrono::milliseconds kPollInterval{100};

/// GEOBENCH_TIMEOUT_SECS when set, otherwise one hour.
std::chrono::milliseconds default_timeout();

enum class CacheMode { kCold, kWarm };
enum class Status { kOk, kTimeout, kError };

std::string_view to_string(CacheMode m);
std::string_view to_string(Status s);
std::optional<CacheMode> cache_mode_from_string(std::string_view s);
std::optional<Status> status_from_string(std::string_view s);

enum class HttpMethod { kGet, kPostForm, kPostDirect };

struct EndpointConfig {
  std::string label = "endpoint";
  std::string query_url;
  std::optional<std::string> update_url;
  Dialect dialect = Dialect::kGeoSparql;
  HttpMethod method = HttpMethod::kPostForm;
  /// Per-query limit used when the run does not override it.
  std::chrono::milliseconds request_timeout = default_timeout();
  /// External commands (argv); the load hook receives the dataset files as
  /// extra arguments.
  std::vector<std::string> cold_hook;
  std::vector<std::string> load_hook;
  /// How long to wait for the endpoint to answer after a cold hook.
  std::chrono::milliseconds readiness_timeout{std::chrono::minutes(10)};
  std::map<gen::DatasetKind, std::string> named_graphs;

  /// Throws ConfigError for an unusable URL, or a missing cold hook when
  /// `needs_cold_hook`.
  void validate(bool needs_cold_hook = false) const;
};

void from_json(const nlohmann::json& j, EndpointConfig& c);
void to_json(nlohmann::json& j, const EndpointConfig& c);
/// Throws ConfigError on unreadable or malformed files.
EndpointConfig load_endpoint_config(const std::filesystem::path& path);

struct RunPolicy {
  int runs = 3;
  CacheMode cache_mode = CacheMode::kWarm;
  std::chrono::milliseconds timeout = default_timeout();
  int warmup_runs = 1;

  /// Throws InvalidParams unless runs >= 1, timeout > 0 and warm runs have
  /// at least one warm-up.
  void validate() const;
};

struct Measurement {
  std::string query_id;
  int run_index = 0;  ///< 1-based; 0 marks a failed warm-up
  CacheMode cache_mode = CacheMode::kWarm;
  Millis elapsed{0};
  std::uint64_t result_rows = 0;
  Status status = Status::kOk;
  std::string error_detail;
};

/// Sends one query over the SPARQL protocol, counts the streamed solutions
/// and stops the clock after the last byte. A request still running at the
/// deadline is aborted and reported as Timeout; HTTP, transport and parse
/// failures come back as Error. Never throws for endpoint misbehaviour.
Measurement execute_query(const EndpointConfig& ep, const std::string& sparql,
                          std::chrono::milliseconds timeout,
                          const std::vector<std::string>& default_graphs = {});

/// Graphs to scope a synthetic instance to, from the endpoint's map.
std::vector<std::string> graphs_for(const EndpointConfig& ep, const QueryInstance& q);

/// Runs an external command and waits for it. Throws HookFailure when it
/// cannot be started or exits nonzero.
void run_hook(const std::vector<std::string>& argv, const std::vector<std::string>& extra_args = {});

/// Polls a trivial ASK query until the endpoint answers or the readiness
/// timeout passes (HookFailure).
void wait_until_ready(const EndpointConfig& ep);

using MeasurementSink = std::function<void(const Measurement&)>;

/// Micro protocol. Warm: warmup_runs untimed executions then `runs` timed
/// ones. Cold: cold hook and readiness wait before every timed run. After a
/// Timeout or Error the remaining runs of that query are skipped. Instances
/// with a skip reason are not sent. One request in flight at a time.
std::vector<Measurement> run_micro(const EndpointConfig& ep, const std::vector<QueryInstance>& instances,
                                   const RunPolicy& policy, const MeasurementSink& sink = {});

struct MacroScenario {
  std::string name;
  suites::Suite suite;
  suites::Bindings bindings;
  std::uint64_t seed = 0;
  std::chrono::milliseconds duration{std::chrono::hours(1)};
  std::chrono::milliseconds timeout = default_timeout();
};

struct MacroResult {
  std::string scenario;
  int iterations = 0;
  std::vector<Millis> iteration_times;
  Millis average_iteration{0};
  std::map<std::string, Millis> per_query_average;
  /// False when a query timed out or failed; the paper-style "-".
  bool complete = true;
  std::string detail;
  std::vector<Measurement> measurements;
};

/// Repeats {sample parameters, run every query in order} until the budget
/// is spent, finishing the iteration in progress. The first Timeout/Error
/// stops the scenario and marks it incomplete.
MacroResult run_macro(const EndpointConfig& ep, const MacroScenario& scenario,
                      const MeasurementSink& sink = {});

/// Wall time of the load hook invoked with `files`. ConfigError when no load
/// hook is configured, HookFailure when it fails.
Millis measure_load(const EndpointConfig& ep, const std::vector<std::filesystem::path>& files);

enum class Verification { kMatch, kMismatch, kNotApplicable };
std::string_view to_string(Verification v);

/// Match iff the measurement completed and its row count equals the
/// instance's oracle count; NotApplicable without an oracle count or a
/// complete result.
Verification verify_results(const Measurement& m, const QueryInstance& instance);

/// Median; the mean of the two central values for even counts.
std::optional<double> median(std::vector<double> values);

}  // namespace geobench::harness

#endif  // GEOBENCH_HARNESS_HPP_
