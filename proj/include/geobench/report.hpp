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


#ifndef GEOBENCH_REPORT_HPP_
#define GEOBENCH_REPORT_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "geobench/harness.hpp"
#include "geobench/query.hpp"

namespace geobench::report {

inline constexpr int kResultsSchemaVersion = 1;

/// What a raw results row measures.
///   query            one micro or synthetic execution
///   macro-query      one query inside a macro iteration (run_index = iteration)
///   macro-iteration  wall time of one completed macro iteration
///   load             one load-hook invocation
enum class RecordKind { kQuery, kMacroQuery, kMacroIteration, kLoad };

std::string_view to_string(RecordKind k);
std::optional<RecordKind> record_kind_from_string(std::string_view s);

struct ResultRecord {
  std::string suite;
  std::string endpoint;
  RecordKind kind = RecordKind::kQuery;
  harness::Measurement measurement;
  std::string dataset;   ///< selection dataset, or "left|right" for joins
  std::string function;  ///< topological function of synthetic instances
  std::optional<std::uint64_t> thema;
  std::optional<std::uint64_t> thema2;
  std::optional<double> target_selectivity;
  std::optional<double> achieved_selectivity;
  std::optional<harness::Verification> verify;
};

/// Raw results file columns, in order.
inline constexpr std::array<std::string_view, 18> kResultColumns = {
    "schema_version", "suite",  "endpoint", "record_kind", "query_id",           "cache_mode",
    "run_index",      "elapsed_ms", "rows", "status",      "detail",             "dataset",
    "function",       "thema",  "thema2",   "target_selectivity", "achieved_selectivity", "verify"};

/// A record for one measurement, with the synthetic metadata of `instance`
/// and its verification when it has an oracle count.
ResultRecord make_record(std::string suite, std::string endpoint, RecordKind kind,
                         const harness::Measurement& m, const QueryInstance* instance = nullptr);

/// Appends rows to a results CSV, writing the header when the file is new.
/// Each row is flushed as it is written.
class ResultsWriter {
 public:
  /// Throws SinkError when the file cannot be opened, ResultsError when it
  /// exists with a different header.
  explicit ResultsWriter(const std::filesystem::path& path);
  void append(const ResultRecord& r);
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
};

/// Reads a results CSV. Throws ResultsError on a missing file, a foreign
/// header, an unknown schema version or a malformed row.
std::vector<ResultRecord> load_results(const std::filesystem::path& path);

/// results-YYYYMMDDTHHMMSS.csv for the current UTC time.
std::string timestamped_results_name();

/// Marker shown instead of a value when any run timed out.
inline constexpr std::string_view kTimeoutMarker = "-";
inline constexpr std::string_view kErrorMarker = "error";

/// One line of the summary: the median of the timed runs of a query (micro
/// and synthetic), the mean of a macro query's per-iteration times, the
/// average macro iteration, or the load time.
struct SummaryRow {
  std::string endpoint;
  std::string suite;
  RecordKind kind = RecordKind::kQuery;
  std::string query_id;
  harness::CacheMode cache_mode = harness::CacheMode::kWarm;
  /// Completed measurements aggregated (iterations for macro-iteration).
  int count = 0;
  std::optional<double> value_ms;
  /// Empty, kTimeoutMarker or kErrorMarker.
  std::string marker;
  std::string dataset;
  std::string function;
  std::optional<std::uint64_t> thema;
  std::optional<std::uint64_t> thema2;
  std::optional<double> target_selectivity;
  std::optional<double> achieved_selectivity;
  /// match, mismatch, n/a; mismatch wins over match.
  std::string verify;

  /// The value with three decimals, or the marker.
  std::string display() const;
};

/// Groups by (endpoint, suite, kind, query, cache mode); the result is sorted,
/// so it does not depend on the order of `records`. Failed warm-ups
/// (run_index 0) only contribute their marker.
std::vector<SummaryRow> summarize(const std::vector<ResultRecord>& records);

void write_summary(const std::vector<SummaryRow>& rows, const std::filesystem::path& path);

enum class GroupBy { kQuery, kSelectivity };
std::optional<GroupBy> group_by_from_string(std::string_view s);

/// Tidy plot data: one observation per row.
struct PlotRow {
  std::string series;  ///< "<endpoint>/<cache mode>"
  std::string endpoint;
  harness::CacheMode cache_mode = harness::CacheMode::kWarm;
  std::string x;
  std::optional<double> y_ms;
  std::string marker;
  std::string query_id;
};

struct PlotTable {
  std::string figure;  ///< also the file stem
  std::vector<PlotRow> rows;
};

/// kQuery: one figure per suite and cache mode with queries on the x axis,
/// plus one per macro suite of average iteration times. kSelectivity: one
/// figure per synthetic selection (dataset, function, thema) with target
/// selectivity on the x axis and one figure per join function with the
/// thema pair on the x axis; every figure has one series per endpoint and
/// cache mode.
std::vector<PlotTable> plot_data(const std::vector<SummaryRow>& summary, GroupBy group_by);

/// Writes <dir>/<figure>.csv for every table and returns the paths.
std::vector<std::filesystem::path> write_plot_data(const std::vector<PlotTable>& tables,
                                                   const std::filesystem::path& dir);

/// Entry point of the geobench command. Returns 0 on success, 1 on user
/// errors and 2 on execution failures.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace geobench::report

#endif  // GEOBENCH_REPORT_HPP_
