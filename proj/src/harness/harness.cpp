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

#include <algorithm>
#include <cstdlib>
#include <string>

#include "geobench/error.hpp"

namespace geobench::harness {
namespace {

using Clock = std::chrono::steady_clock;

}  // namespace

std::chrono::milliseconds default_timeout() {
  const char* env = std::getenv("GEOBENCH_TIMEOUT_SECS");
  if (env == nullptr || *env == '\0') return std::chrono::hours(1);
  char* end = nullptr;
  const double secs = std::strtod(env, &end);
  if (end == env || *end != '\0' || !(secs > 0)) {
    throw ConfigError(std::string("GEOBENCH_TIMEOUT_SECS must be a positive number, got '") + env + "'");
  }
  return std::chrono::milliseconds(static_cast<long long>(secs * 1000));
}

std::string_view to_string(CacheMode m) { return m == CacheMode::kCold ? "cold" : "warm"; }

std::string_view to_string(Status s) {
  switch (s) {
    case Status::kOk: return "ok";
    case Status::kTimeout: return "timeout";
    case Status::kError: return "error";
  }
  return "?";
}

std::optional<CacheMode> cache_mode_from_string(std::string_view s) {
  if (s == "cold") return CacheMode::kCold;
  if (s == "warm") return CacheMode::kWarm;
  return std::nullopt;
}

std::optional<Status> status_from_string(std::string_view s) {
  for (auto st : {Status::kOk, Status::kTimeout, Status::kError}) {
    if (to_string(st) == s) return st;
  }
  return std::nullopt;
}

std::string_view to_string(Verification v) {
  switch (v) {
    case Verification::kMatch: return "match";
    case Verification::kMismatch: return "mismatch";
    case Verification::kNotApplicable: return "n/a";
  }
  return "?";
}

void RunPolicy::validate() const {
  if (runs < 1) throw InvalidParams("runs must be at least 1");
  if (timeout.count() <= 0) throw InvalidParams("timeout must be positive");
  if (cache_mode == CacheMode::kWarm && warmup_runs < 1) {
    throw InvalidParams("warm runs need at least one warm-up execution");
  }
}

std::vector<Measurement> run_micro(const EndpointConfig& ep, const std::vector<QueryInstance>& instances,
                                   const RunPolicy& policy, const MeasurementSink& sink) {
  policy.validate();
  ep.validate(policy.cache_mode == CacheMode::kCold);
  std::vector<Measurement> out;

  for (const auto& q : instances) {
    if (!q.skip_reason.empty()) continue;
    const auto graphs = graphs_for(ep, q);
    auto record = [&](Measurement m, int run_index) {
      m.query_id = q.id;
      m.run_index = run_index;
      m.cache_mode = policy.cache_mode;
      if (sink) sink(m);
      out.push_back(std::move(m));
      return out.back().status == Status::kOk;
    };

    if (policy.cache_mode == CacheMode::kWarm) {
      bool warmed = true;
      for (int w = 0; w < policy.warmup_runs && warmed; ++w) {
        auto m = execute_query(ep, q.sparql, policy.timeout, graphs);
        // A failed warm-up is the only trace the query leaves, so keep it.
        if (m.status != Status::kOk) warmed = record(std::move(m), 0);
      }
      if (!warmed) continue;
      for (int r = 1; r <= policy.runs; ++r) {
        if (!record(execute_query(ep, q.sparql, policy.timeout, graphs), r)) break;
      }
    } else {
      for (int r = 1; r <= policy.runs; ++r) {
        run_hook(ep.cold_hook);
        wait_until_ready(ep);
        if (!record(execute_query(ep, q.sparql, policy.timeout, graphs), r)) break;
      }
    }
  }
  return out;
}

MacroResult run_macro(const EndpointConfig& ep, const MacroScenario& scenario, const MeasurementSink& sink) {
  ep.validate();
  if (scenario.duration.count() <= 0) throw InvalidParams("macro duration must be positive");
  if (scenario.timeout.count() <= 0) throw InvalidParams("timeout must be positive");

  MacroResult result;
  result.scenario = scenario.name;
  suites::ParameterSampler sampler(scenario.bindings, scenario.seed);
  std::map<std::string, Millis> per_query_total;
  Millis total{0};
  const auto start = Clock::now();

  while (result.complete && Clock::now() - start < scenario.duration) {
    const auto instances =
        suites::bind_suite(scenario.suite, sampler.next(), ep.dialect, scenario.bindings.prefixes);
    const auto iteration_start = Clock::now();
    std::map<std::string, Millis> this_iteration;
    for (const auto& q : instances) {
      if (!q.skip_reason.empty()) continue;
      auto m = execute_query(ep, q.sparql, scenario.timeout);
      m.query_id = q.id;
      m.run_index = result.iterations + 1;
      m.cache_mode = CacheMode::kWarm;
      if (sink) sink(m);
      result.measurements.push_back(m);
      if (m.status != Status::kOk) {
        result.complete = false;
        result.detail = q.id + ": " + std::string(to_string(m.status));
        if (!m.error_detail.empty()) result.detail += " (" + m.error_detail + ")";
        break;
      }
      this_iteration[q.id] += m.elapsed;
    }
    if (!result.complete) break;
    const Millis took = Clock::now() - iteration_start;
    total += took;
    result.iteration_times.push_back(took);
    for (const auto& [id, t] : this_iteration) per_query_total[id] += t;
    ++result.iterations;
  }

  if (result.iterations > 0) {
    result.average_iteration = total / result.iterations;
    for (const auto& [id, t] : per_query_total) result.per_query_average[id] = t / result.iterations;
  }
  return result;
}

Millis measure_load(const EndpointConfig& ep, const std::vector<std::filesystem::path>& files) {
  if (ep.load_hook.empty()) throw ConfigError("endpoint '" + ep.label + "' has no load_hook");
  std::vector<std::string> args;
  for (const auto& f : files) args.push_back(f.string());
  const auto start = Clock::now();
  run_hook(ep.load_hook, args);
  return Clock::now() - start;
}

Verification verify_results(const Measurement& m, const QueryInstance& instance) {
  if (!instance.expected_count || m.status != Status::kOk) return Verification::kNotApplicable;
  return m.result_rows == *instance.expected_count ? Verification::kMatch : Verification::kMismatch;
}

std::optional<double> median(std::vector<double> values) {
  if (values.empty()) return std::nullopt;
  const auto mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + mid, values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower = *std::max_element(values.begin(), values.begin() + mid);
  return (lower + upper) / 2;
}

}  // namespace geobench::harness
