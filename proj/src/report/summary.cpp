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


#include <algorithm>
#include <cctype>
#include <cstdio>
#include <map>
#include <numeric>
#include <tuple>

#include "csv.hpp"
#include "geobench/error.hpp"
#include "geobench/report.hpp"

namespace geobench::report {
namespace {

using harness::CacheMode;
using harness::Status;
using Key = std::tuple<std::string, std::string, RecordKind, std::string, CacheMode>;

double mean_sorted(std::vector<double> v) {
  // Sorting first keeps the sum independent of record order.
  std::sort(v.begin(), v.end());
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

std::string marker_for(bool timeout, bool error) {
  if (timeout) return std::string(kTimeoutMarker);
  if (error) return std::string(kErrorMarker);
  return {};
}

std::string merge_verify(const std::string& a, std::string_view b) {
  if (a == "mismatch" || b == "mismatch") return "mismatch";
  if (a == "match" || b == "match") return "match";
  return std::string(b.empty() ? a : b);
}

template <typename T>
std::string opt(const std::optional<T>& v) {
  return v ? format_number(*v) : std::string();
}

}  // namespace

std::string SummaryRow::display() const {
  if (!marker.empty() || !value_ms) return marker.empty() ? std::string(kTimeoutMarker) : marker;
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.3f", *value_ms);
  return buf;
}

std::vector<SummaryRow> summarize(const std::vector<ResultRecord>& records) {
  struct Acc {
    SummaryRow row;
    std::vector<double> values;
    bool timeout = false;
    bool error = false;
  };
  std::map<Key, Acc> groups;
  // Macro failures are attributed to the iteration row of their scenario.
  std::map<Key, std::pair<bool, bool>> macro_failures;

  for (const auto& r : records) {
    const auto& m = r.measurement;
    const bool macro = r.kind == RecordKind::kMacroQuery || r.kind == RecordKind::kMacroIteration;
    if (macro) {
      const Key it{r.endpoint, r.suite, RecordKind::kMacroIteration, "iteration", m.cache_mode};
      auto& g = groups[it];
      g.row.endpoint = r.endpoint;
      g.row.suite = r.suite;
      g.row.kind = RecordKind::kMacroIteration;
      g.row.query_id = "iteration";
      g.row.cache_mode = m.cache_mode;
      if (m.status == Status::kTimeout) g.timeout = true;
      if (m.status == Status::kError) g.error = true;
      if (r.kind == RecordKind::kMacroIteration) {
        if (m.status == Status::kOk) g.values.push_back(m.elapsed.count());
        continue;
      }
    }
    const Key key{r.endpoint, r.suite, r.kind, m.query_id, m.cache_mode};
    auto& g = groups[key];
    if (g.row.query_id.empty()) {
      g.row.endpoint = r.endpoint;
      g.row.suite = r.suite;
      g.row.kind = r.kind;
      g.row.query_id = m.query_id;
      g.row.cache_mode = m.cache_mode;
      g.row.dataset = r.dataset;
      g.row.function = r.function;
      g.row.thema = r.thema;
      g.row.thema2 = r.thema2;
      g.row.target_selectivity = r.target_selectivity;
      g.row.achieved_selectivity = r.achieved_selectivity;
    }
    if (m.status == Status::kTimeout) g.timeout = true;
    if (m.status == Status::kError) g.error = true;
    if (m.status == Status::kOk && (m.run_index >= 1 || r.kind == RecordKind::kLoad)) {
      g.values.push_back(m.elapsed.count());
    }
    if (r.verify) g.row.verify = merge_verify(g.row.verify, harness::to_string(*r.verify));
  }

  std::vector<SummaryRow> out;
  for (auto& [key, g] : groups) {
    g.row.count = static_cast<int>(g.values.size());
    g.row.marker = marker_for(g.timeout, g.error);
    if (g.row.marker.empty() && !g.values.empty()) {
      g.row.value_ms = g.row.kind == RecordKind::kQuery ? harness::median(g.values) : mean_sorted(g.values);
    }
    out.push_back(std::move(g.row));
  }
  return out;
}

void write_summary(const std::vector<SummaryRow>& rows, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SinkError("cannot write " + path.string());
  out << csv_line({"endpoint", "suite", "record_kind", "query_id", "cache_mode", "count", "value_ms", "display",
                   "dataset", "function", "thema", "thema2", "target_selectivity", "achieved_selectivity",
                   "verify"});
  for (const auto& r : rows) {
    out << csv_line({r.endpoint, r.suite, std::string(to_string(r.kind)), r.query_id,
                     std::string(harness::to_string(r.cache_mode)), std::to_string(r.count), opt(r.value_ms),
                     r.display(), r.dataset, r.function, opt(r.thema), opt(r.thema2), opt(r.target_selectivity),
                     opt(r.achieved_selectivity), r.verify});
  }
  if (!out) throw SinkError("write failed on " + path.string());
}

std::optional<GroupBy> group_by_from_string(std::string_view s) {
  if (s == "query") return GroupBy::kQuery;
  if (s == "selectivity") return GroupBy::kSelectivity;
  return std::nullopt;
}

std::vector<PlotTable> plot_data(const std::vector<SummaryRow>& summary, GroupBy group_by) {
  struct Entry {
    PlotRow row;
    double order = 0;  // numeric x when there is one
  };
  std::map<std::string, std::vector<Entry>> figures;

  for (const auto& s : summary) {
    std::string figure;
    Entry e;
    e.row.endpoint = s.endpoint;
    e.row.cache_mode = s.cache_mode;
    e.row.series = s.endpoint + "/" + std::string(harness::to_string(s.cache_mode));
    e.row.y_ms = s.marker.empty() ? s.value_ms : std::nullopt;
    e.row.marker = s.marker;
    e.row.query_id = s.query_id;

    if (group_by == GroupBy::kSelectivity) {
      if (s.kind != RecordKind::kQuery || s.function.empty() || !s.thema) continue;
      std::string function = s.function;
      std::transform(function.begin(), function.end(), function.begin(), [](unsigned char c) {
        return static_cast<char>(std::tolower(c));
      });
      if (s.target_selectivity) {
        figure = "selection-" + s.dataset + "-" + function + "-t" + std::to_string(*s.thema);
        e.row.x = format_number(*s.target_selectivity);
        e.order = *s.target_selectivity;
      } else {
        std::string pair = s.dataset;
        std::replace(pair.begin(), pair.end(), '|', '-');
        figure = "join-" + pair + "-" + function;
        e.row.x = "t" + std::to_string(*s.thema) + "-t" + std::to_string(s.thema2.value_or(1));
        e.order = static_cast<double>(*s.thema) * 1e20 + static_cast<double>(s.thema2.value_or(1));
      }
    } else {
      switch (s.kind) {
        case RecordKind::kQuery:
          figure = s.suite + "-" + std::string(harness::to_string(s.cache_mode));
          e.row.x = s.query_id;
          break;
        case RecordKind::kMacroIteration:
          figure = "macro-iterations";
          e.row.x = s.suite;
          break;
        case RecordKind::kLoad:
          figure = "load-times";
          e.row.x = s.query_id;
          break;
        case RecordKind::kMacroQuery:
          continue;
      }
    }
    figures[figure].push_back(std::move(e));
  }

  std::vector<PlotTable> out;
  for (auto& [figure, entries] : figures) {
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
      return std::tie(a.row.series, a.order, a.row.x, a.row.query_id) <
             std::tie(b.row.series, b.order, b.row.x, b.row.query_id);
    });
    PlotTable t;
    t.figure = figure;
    for (auto& e : entries) t.rows.push_back(std::move(e.row));
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<std::filesystem::path> write_plot_data(const std::vector<PlotTable>& tables,
                                                   const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  std::vector<std::filesystem::path> paths;
  for (const auto& t : tables) {
    const auto path = dir / (t.figure + ".csv");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw SinkError("cannot write " + path.string());
    out << csv_line({"figure", "series", "endpoint", "cache_mode", "x", "y_ms", "marker", "query_id"});
    for (const auto& r : t.rows) {
      out << csv_line({t.figure, r.series, r.endpoint, std::string(harness::to_string(r.cache_mode)), r.x,
                       opt(r.y_ms), r.marker, r.query_id});
    }
    if (!out) throw SinkError("write failed on " + path.string());
    paths.push_back(path);
  }
  return paths;
}

}  // namespace geobench::report
