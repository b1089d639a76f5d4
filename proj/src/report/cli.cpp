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


#include <CLI11.hpp>

#include <algorithm>
#include <iomanip>
#include <map>
#include <set>

#include "geobench/calibrator.hpp"
#include "geobench/error.hpp"
#include "geobench/rdf.hpp"
#include "geobench/report.hpp"
#include "geobench/suites.hpp"

namespace geobench::report {
namespace {

namespace fs = std::filesystem;
using std::chrono::milliseconds;

/// A failure of the benchmark itself rather than of its inputs (exit 2).
class ExecutionFailure : public Error {
 public:
  using Error::Error;
};

milliseconds seconds_to_ms(double secs) { return milliseconds(static_cast<long long>(secs * 1000)); }

Dialect parse_dialect(const std::string& s) {
  const auto d = dialect_from_string(s);
  if (!d) throw ConfigError("unknown dialect '" + s + "' (use geosparql or stsparql)");
  return *d;
}

// ---- generate --------------------------------------------------------------

struct GenerateArgs {
  gen::GeneratorParams params;
  std::string out_dir;
};

int cmd_generate(const GenerateArgs& a, std::ostream& out) {
  a.params.validate();
  const auto sidecar = gen::write_workload_files(a.params, a.out_dir);
  for (const auto& [name, info] : sidecar["datasets"].items()) {
    out << std::left << std::setw(16) << name << info["file"].get<std::string>() << "  "
        << info["features"].get<std::uint64_t>() << " features, " << info["triples"].get<std::uint64_t>()
        << " triples\n";
  }
  out << "sidecar " << (fs::path(a.out_dir) / gen::sidecar_file_name(a.params)).string() << "\n";
  return 0;
}

// ---- calibrate -------------------------------------------------------------

struct CalibrateArgs {
  std::string from;
  std::string output;
  std::string dialect = "geosparql";
  std::vector<double> targets{0.001, 0.10, 0.25, 0.50, 0.75, 1.0};
};

fs::path find_sidecar(const fs::path& from) {
  if (fs::is_regular_file(from)) return from;
  if (!fs::is_directory(from)) throw ConfigError(from.string() + " is neither a sidecar nor a directory");
  std::vector<fs::path> found;
  for (const auto& e : fs::directory_iterator(from)) {
    const auto name = e.path().filename().string();
    if (name.rfind("generator-", 0) == 0 && e.path().extension() == ".json") found.push_back(e.path());
  }
  if (found.size() != 1) {
    throw ConfigError(from.string() + ": expected exactly one generator-*.json sidecar, found " +
                      std::to_string(found.size()));
  }
  return found.front();
}

int cmd_calibrate(const CalibrateArgs& a, std::ostream& out) {
  const auto sidecar_path = find_sidecar(a.from);
  nlohmann::json sidecar;
  try {
    std::ifstream in(sidecar_path);
    sidecar = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(sidecar_path.string() + ": " + e.what());
  }
  gen::GeneratorParams params;
  try {
    params = sidecar.at("params").get<gen::GeneratorParams>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(sidecar_path.string() + ": " + e.what());
  }
  params.validate();

  // The generator is deterministic, so the features are rebuilt from the
  // recorded parameters; the recorded counts guard against a stale sidecar.
  const auto workload = gen::generate_workload(params);
  for (auto kind : gen::kAllDatasets) {
    const auto& recorded = sidecar["datasets"][std::string(gen::to_string(kind))];
    if (!recorded.is_object() || recorded.value("features", std::uint64_t{0}) != gen::cardinality(kind, params)) {
      throw ConfigError(sidecar_path.string() + ": feature count of " + std::string(gen::to_string(kind)) +
                        " does not match its parameters");
    }
  }

  cal::WorkloadOptions options;
  options.targets = a.targets;
  options.dialect = parse_dialect(a.dialect);
  const auto manifest = cal::calibrate_workload(workload, options);
  write_manifest(manifest, a.output);

  for (const auto& q : manifest.instances) {
    out << std::left << std::setw(48) << q.id << " expected " << std::setw(10) << q.expected_count.value_or(0);
    if (q.spatial_selectivity) out << " spatial " << q.spatial_selectivity.value();
    out << "\n";
  }
  out << manifest.instances.size() << " instances written to " << a.output << "\n";
  return 0;
}

// ---- run -------------------------------------------------------------------

struct RunArgs {
  std::string suite;
  std::string endpoint;
  std::string mode = "warm";
  int runs = 3;
  int warmup = 1;
  std::optional<double> timeout_secs;
  std::string manifest;
  std::string bindings;
  std::string suites_dir;
  std::uint64_t seed = 0;
  std::optional<double> duration_secs;
  std::string output;
  std::string out_dir = ".";
  std::string load_dir;
};

void print_measurement(std::ostream& out, const harness::Measurement& m) {
  out << std::left << std::setw(48) << m.query_id << " run " << m.run_index << "  " << std::setw(8)
      << harness::to_string(m.status) << std::right << std::fixed << std::setprecision(3) << std::setw(12)
      << m.elapsed.count() << " ms  " << m.result_rows << " rows";
  if (!m.error_detail.empty()) out << "  (" << m.error_detail << ")";
  out << std::defaultfloat << "\n";
}

std::vector<fs::path> dataset_files(const fs::path& dir) {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.path().extension() == ".nt") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw ConfigError("no .nt files in " + dir.string());
  return files;
}

int cmd_run(const RunArgs& a, std::ostream& out, std::ostream& err) {
  auto ep = harness::load_endpoint_config(a.endpoint);
  const auto mode = harness::cache_mode_from_string(a.mode);
  if (!mode) throw ConfigError("--mode must be warm or cold");
  const auto timeout = a.timeout_secs ? seconds_to_ms(*a.timeout_secs) : ep.request_timeout;
  if (timeout.count() <= 0) throw ConfigError("--timeout must be positive");

  const fs::path suites_dir = a.suites_dir.empty() ? suites::default_suites_dir() : fs::path(a.suites_dir);
  const auto suite = suites::load_suite(a.suite, suites_dir);

  // Validate everything before the first request.
  harness::RunPolicy policy;
  policy.runs = a.runs;
  policy.warmup_runs = a.warmup;
  policy.cache_mode = *mode;
  policy.timeout = timeout;
  policy.validate();
  ep.validate(*mode == harness::CacheMode::kCold && suite.kind != suites::SuiteKind::kMacro);
  if (suite.kind == suites::SuiteKind::kMacro && *mode == harness::CacheMode::kCold) {
    throw ConfigError("macro scenarios run with warm caches only");
  }
  std::vector<fs::path> load_files;
  if (!a.load_dir.empty()) {
    load_files = dataset_files(a.load_dir);
    if (ep.load_hook.empty()) throw ConfigError("--load-dir given but the endpoint has no load_hook");
  }

  std::vector<QueryInstance> instances;
  std::optional<suites::Bindings> bindings;
  if (suite.kind == suites::SuiteKind::kSynthetic) {
    if (a.manifest.empty()) throw ConfigError("--manifest is required for " + a.suite + " (see `calibrate`)");
    auto manifest = read_manifest(a.manifest);
    if (manifest.dialect != ep.dialect) {
      throw ConfigError("manifest was calibrated for " + std::string(to_string(manifest.dialect)) +
                        " but the endpoint speaks " + std::string(to_string(ep.dialect)));
    }
    instances = std::move(manifest.instances);
  } else {
    const fs::path path = a.bindings.empty() ? suites::default_bindings_path() : fs::path(a.bindings);
    bindings = suites::load_bindings(path);
    if (!bindings->authoritative) err << "note: " << path.string() << " holds non-authoritative parameter values\n";
    if (suite.kind == suites::SuiteKind::kMicro) {
      instances = suites::bind_suite(suite, bindings->defaults(), ep.dialect, bindings->prefixes);
    }
  }

  int errors = 0;
  const auto count_error = [&](const harness::Measurement& m) {
    if (m.status == harness::Status::kError) ++errors;
  };

  const fs::path results_path =
      a.output.empty() ? fs::path(a.out_dir) / timestamped_results_name() : fs::path(a.output);
  ResultsWriter writer(results_path);

  if (!load_files.empty()) {
    harness::Measurement m;
    m.query_id = fs::path(a.load_dir).filename().string();
    if (m.query_id.empty()) m.query_id = fs::path(a.load_dir).parent_path().filename().string();
    m.run_index = 1;
    m.elapsed = harness::measure_load(ep, load_files);
    writer.append(make_record(a.suite, ep.label, RecordKind::kLoad, m));
    out << "load " << m.query_id << ": " << m.elapsed.count() << " ms\n";
  }

  if (suite.kind == suites::SuiteKind::kMacro) {
    harness::MacroScenario sc;
    sc.name = suite.name;
    sc.suite = suite;
    sc.bindings = *bindings;
    sc.seed = a.seed;
    sc.duration = seconds_to_ms(a.duration_secs.value_or(suite.duration_secs));
    sc.timeout = timeout;
    const auto result = harness::run_macro(ep, sc, [&](const harness::Measurement& m) {
      writer.append(make_record(a.suite, ep.label, RecordKind::kMacroQuery, m));
      print_measurement(out, m);
      count_error(m);
    });
    for (std::size_t i = 0; i < result.iteration_times.size(); ++i) {
      harness::Measurement m;
      m.query_id = "iteration";
      m.run_index = static_cast<int>(i) + 1;
      m.elapsed = result.iteration_times[i];
      writer.append(make_record(a.suite, ep.label, RecordKind::kMacroIteration, m));
    }
    out << sc.name << ": " << result.iterations << " iterations, average " << result.average_iteration.count()
        << " ms" << (result.complete ? "" : ", incomplete: " + result.detail) << "\n";
  } else {
    std::map<std::string, const QueryInstance*> by_id;
    for (const auto& q : instances) {
      by_id[q.id] = &q;
      if (!q.skip_reason.empty()) out << q.id << " skipped: " << q.skip_reason << "\n";
    }
    harness::run_micro(ep, instances, policy, [&](const harness::Measurement& m) {
      writer.append(make_record(a.suite, ep.label, RecordKind::kQuery, m, by_id.at(m.query_id)));
      print_measurement(out, m);
      count_error(m);
    });
  }
  out << "results written to " << results_path.string() << "\n";
  // Timeouts are outcomes; failed requests mean the run itself went wrong.
  if (errors > 0) throw ExecutionFailure(std::to_string(errors) + " queries failed (see results file)");
  return 0;
}

// ---- report ----------------------------------------------------------------

struct ReportArgs {
  std::vector<std::string> results;
  std::string out_dir = "report";
  std::string group_by = "query";
};

int cmd_report(const ReportArgs& a, std::ostream& out) {
  const auto group_by = group_by_from_string(a.group_by);
  if (!group_by) throw ConfigError("--group-by must be query or selectivity");
  std::vector<ResultRecord> records;
  for (const auto& f : a.results) {
    auto loaded = load_results(f);
    records.insert(records.end(), loaded.begin(), loaded.end());
  }
  if (records.empty()) throw ConfigError("no result rows to report");

  const auto summary = summarize(records);
  fs::create_directories(a.out_dir);
  write_summary(summary, fs::path(a.out_dir) / "summary.csv");
  const auto tables = plot_data(summary, *group_by);
  const auto paths = write_plot_data(tables, fs::path(a.out_dir) / "plotdata");

  for (const auto& r : summary) {
    out << std::left << std::setw(14) << r.endpoint << std::setw(20) << r.suite << std::setw(48) << r.query_id
        << std::setw(6) << harness::to_string(r.cache_mode) << std::right << std::setw(14) << r.display();
    if (r.kind == RecordKind::kMacroIteration) out << "  (" << r.count << " iterations)";
    if (!r.verify.empty()) out << "  " << r.verify;
    out << "\n";
  }
  out << "summary: " << (fs::path(a.out_dir) / "summary.csv").string() << "\n";
  for (const auto& p : paths) out << "plot data: " << p.string() << "\n";
  if (tables.empty()) out << "no plot data for --group-by " << a.group_by << "\n";
  return 0;
}

// ---- verify ----------------------------------------------------------------

struct VerifyArgs {
  std::string manifest;
  std::vector<std::string> results;
  std::string endpoint;
  std::string only = "all";
  std::optional<double> timeout_secs;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  if (a.results.empty() == a.endpoint.empty()) throw ConfigError("give exactly one of --results or --endpoint");
  if (a.only != "all" && a.only != "selection" && a.only != "join") {
    throw ConfigError("--only must be all, selection or join");
  }
  const auto manifest = read_manifest(a.manifest);
  std::vector<const QueryInstance*> checked;
  for (const auto& q : manifest.instances) {
    if (!q.expected_count || !q.skip_reason.empty()) continue;
    if (a.only == "selection" && !q.selection()) continue;
    if (a.only == "join" && !q.join()) continue;
    checked.push_back(&q);
  }
  if (checked.empty()) throw ConfigError("manifest has no instances with oracle counts");

  // Row counts observed per instance.
  std::map<std::string, std::vector<harness::Measurement>> observed;
  if (!a.endpoint.empty()) {
    const auto ep = harness::load_endpoint_config(a.endpoint);
    const auto timeout = a.timeout_secs ? seconds_to_ms(*a.timeout_secs) : ep.request_timeout;
    for (const auto* q : checked) {
      auto m = harness::execute_query(ep, q->sparql, timeout, harness::graphs_for(ep, *q));
      m.query_id = q->id;
      m.run_index = 1;
      observed[q->id].push_back(m);
    }
  } else {
    for (const auto& f : a.results) {
      for (auto& r : load_results(f)) {
        if (r.kind == RecordKind::kQuery) observed[r.measurement.query_id].push_back(r.measurement);
      }
    }
  }

  int matches = 0;
  int mismatches = 0;
  int unverified = 0;
  for (const auto* q : checked) {
    std::string verdict = "not run";
    std::string got;
    bool any_match = false;
    bool any_mismatch = false;
    for (const auto& m : observed[q->id]) {
      switch (harness::verify_results(m, *q)) {
        case harness::Verification::kMatch: any_match = true; break;
        case harness::Verification::kMismatch:
          any_mismatch = true;
          got = std::to_string(m.result_rows);
          break;
        case harness::Verification::kNotApplicable:
          if (got.empty()) got = std::string(harness::to_string(m.status));
          break;
      }
    }
    if (any_mismatch) {
      verdict = "MISMATCH";
      ++mismatches;
    } else if (any_match) {
      verdict = "match";
      ++matches;
    } else {
      ++unverified;
    }
    out << std::left << std::setw(48) << q->id << " expected " << std::setw(10) << *q->expected_count << verdict;
    if (verdict != "match" && !got.empty()) out << " (" << got << ")";
    out << "\n";
  }
  out << matches << " match, " << mismatches << " mismatch, " << unverified << " unverified\n";
  if (mismatches > 0 || unverified > 0) throw ExecutionFailure("verification failed");
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Benchmark workbench for geospatial RDF stores"};
  app.name("geobench");
  app.require_subcommand(1);

  GenerateArgs gen_args;
  auto* generate = app.add_subcommand("generate", "Write the synthetic datasets as N-Triples plus a JSON sidecar");
  generate->add_option("-n", gen_args.params.n, "Land-ownership grid side (even, >= 6)")->capture_default_str();
  generate->add_option("-k", gen_args.params.k, "Largest tag exponent")->capture_default_str();
  generate->add_option("--seed", gen_args.params.seed, "Road jitter seed")->capture_default_str();
  generate->add_option("--cell", gen_args.params.cell, "Hexagon centre distance")->capture_default_str();
  generate->add_option("--crs", gen_args.params.crs_uri, "CRS IRI prefixed to WKT literals");
  generate->add_option("-o,--out", gen_args.out_dir, "Output directory")->required();

  CalibrateArgs cal_args;
  auto* calibrate = app.add_subcommand("calibrate", "Instantiate the synthetic query workload from generated data");
  calibrate->add_option("--from", cal_args.from, "Generator output directory or its sidecar")->required();
  calibrate->add_option("-o,--output", cal_args.output, "Workload manifest to write")->required();
  calibrate->add_option("--dialect", cal_args.dialect, "geosparql or stsparql")->capture_default_str();
  calibrate->add_option("--targets", cal_args.targets, "Target selectivities")->capture_default_str();

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "Execute a suite against an endpoint and append raw results");
  run->add_option("--suite", run_args.suite, "Suite name")->required();
  run->add_option("--endpoint", run_args.endpoint, "Endpoint config (JSON)")->required();
  run->add_option("--mode", run_args.mode, "warm or cold")->capture_default_str();
  run->add_option("--runs", run_args.runs, "Timed runs per query")->capture_default_str();
  run->add_option("--warmup", run_args.warmup, "Untimed warm-up runs per query")->capture_default_str();
  run->add_option("--timeout", run_args.timeout_secs, "Per-query timeout in seconds");
  run->add_option("--manifest", run_args.manifest, "Calibrated workload manifest (synthetic suites)");
  run->add_option("--bindings", run_args.bindings, "Placeholder values (real-world suites)");
  run->add_option("--suites-dir", run_args.suites_dir, "Directory of suite manifests");
  run->add_option("--seed", run_args.seed, "Macro parameter sampler seed")->capture_default_str();
  run->add_option("--duration", run_args.duration_secs, "Macro budget in seconds");
  run->add_option("--output", run_args.output, "Results file (appended to)");
  run->add_option("--out-dir", run_args.out_dir, "Directory for a timestamped results file")->capture_default_str();
  run->add_option("--load-dir", run_args.load_dir, "Time the load hook on the .nt files of this directory first");

  ReportArgs report_args;
  auto* report = app.add_subcommand("report", "Summarize raw results and write plot data");
  report->add_option("--results", report_args.results, "Raw results files")->required();
  report->add_option("--out-dir", report_args.out_dir, "Output directory")->capture_default_str();
  report->add_option("--group-by", report_args.group_by, "query or selectivity")->capture_default_str();

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "Cross-check result counts against the oracle");
  verify->add_option("--manifest", verify_args.manifest, "Calibrated workload manifest")->required();
  verify->add_option("--results", verify_args.results, "Raw results files to check");
  verify->add_option("--endpoint", verify_args.endpoint, "Endpoint to query directly");
  verify->add_option("--only", verify_args.only, "all, selection or join")->capture_default_str();
  verify->add_option("--timeout", verify_args.timeout_secs, "Per-query timeout in seconds (with --endpoint)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (generate->parsed()) return cmd_generate(gen_args, out);
    if (calibrate->parsed()) return cmd_calibrate(cal_args, out);
    if (run->parsed()) return cmd_run(run_args, out, err);
    if (report->parsed()) return cmd_report(report_args, out);
    if (verify->parsed()) return cmd_verify(verify_args, out);
  } catch (const ExecutionFailure& e) {
    err << "geobench: " << e.what() << "\n";
    return 2;
  } catch (const HookFailure& e) {
    err << "geobench: hook failed: " << e.what() << "\n";
    return 2;
  } catch (const SinkError& e) {
    err << "geobench: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "geobench: " << e.what() << "\n";
    return 1;
  } catch (const fs::filesystem_error& e) {
    err << "geobench: " << e.what() << "\n";
    return 1;
  } catch (const nlohmann::json::exception& e) {
    err << "geobench: malformed input: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "geobench: " << e.what() << "\n";
    return 2;
  }
  return 1;
}

}  // namespace geobench::report
