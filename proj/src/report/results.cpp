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


#include <charconv>
#include <ctime>
#include <sstream>

#include "csv.hpp"
#include "geobench/error.hpp"
#include "geobench/report.hpp"

namespace geobench::report {
namespace {

std::string header_line() {
  std::vector<std::string> cols(kResultColumns.begin(), kResultColumns.end());
  return csv_line(cols);
}

template <typename T>
std::string opt(const std::optional<T>& v) {
  return v ? format_number(*v) : std::string();
}

template <typename T>
std::optional<T> parse_opt(const std::string& s, std::string_view column) {
  if (s.empty()) return std::nullopt;
  T v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ResultsError("bad " + std::string(column) + " value '" + s + "'");
  }
  return v;
}

template <typename T>
T parse_req(const std::string& s, std::string_view column) {
  const auto v = parse_opt<T>(s, column);
  if (!v) throw ResultsError("missing " + std::string(column));
  return *v;
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ec == std::errc() ? ptr : buf);
}

std::string format_number(std::uint64_t v) { return std::to_string(v); }

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string csv_line(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out += ',';
    out += csv_field(fields[i]);
  }
  return out + '\n';
}

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool any = false;  // current row has content
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c != '"') {
        field += c;
      } else if (i + 1 < text.size() && text[i + 1] == '"') {
        field += '"';
        ++i;
      } else {
        quoted = false;
      }
      continue;
    }
    switch (c) {
      case '"':
        quoted = true;
        any = true;
        break;
      case ',':
        row.push_back(std::move(field));
        field.clear();
        any = true;
        break;
      case '\r':
        break;
      case '\n':
        if (any || !field.empty()) {
          row.push_back(std::move(field));
          rows.push_back(std::move(row));
        }
        row.clear();
        field.clear();
        any = false;
        break;
      default:
        field += c;
        any = true;
    }
  }
  if (quoted) throw ResultsError("unterminated quoted field");
  if (any || !field.empty()) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string_view to_string(RecordKind k) {
  switch (k) {
    case RecordKind::kQuery: return "query";
    case RecordKind::kMacroQuery: return "macro-query";
    case RecordKind::kMacroIteration: return "macro-iteration";
    case RecordKind::kLoad: return "load";
  }
  return "?";
}

std::optional<RecordKind> record_kind_from_string(std::string_view s) {
  for (auto k : {RecordKind::kQuery, RecordKind::kMacroQuery, RecordKind::kMacroIteration, RecordKind::kLoad}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

ResultRecord make_record(std::string suite, std::string endpoint, RecordKind kind,
                         const harness::Measurement& m, const QueryInstance* instance) {
  ResultRecord r;
  r.suite = std::move(suite);
  r.endpoint = std::move(endpoint);
  r.kind = kind;
  r.measurement = m;
  if (instance == nullptr) return r;
  if (const auto* s = instance->selection()) {
    r.dataset = gen::to_string(s->dataset);
    r.function = geom::to_string(s->function);
    r.thema = s->thema;
    r.target_selectivity = s->target_selectivity;
  } else if (const auto* j = instance->join()) {
    r.dataset = std::string(gen::to_string(j->left)) + "|" + std::string(gen::to_string(j->right));
    r.function = geom::to_string(j->function);
    r.thema = j->thema;
    r.thema2 = j->thema2;
  }
  r.achieved_selectivity = instance->achieved_selectivity;
  if (instance->expected_count) r.verify = harness::verify_results(m, *instance);
  return r;
}

ResultsWriter::ResultsWriter(const std::filesystem::path& path) : path_(path) {
  std::error_code ec;
  const bool fresh = !std::filesystem::exists(path, ec) || std::filesystem::file_size(path, ec) == 0;
  if (!fresh) {
    std::ifstream in(path);
    std::string first;
    std::getline(in, first);
    if (first + '\n' != header_line()) {
      throw ResultsError(path.string() + " exists with a different column set");
    }
  }
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  out_.open(path, std::ios::app | std::ios::binary);
  if (!out_) throw SinkError("cannot open results file " + path.string());
  if (fresh) out_ << header_line() << std::flush;
}

void ResultsWriter::append(const ResultRecord& r) {
  const auto& m = r.measurement;
  std::vector<std::string> f = {
      std::to_string(kResultsSchemaVersion),
      r.suite,
      r.endpoint,
      std::string(to_string(r.kind)),
      m.query_id,
      std::string(harness::to_string(m.cache_mode)),
      std::to_string(m.run_index),
      format_number(m.elapsed.count()),
      format_number(m.result_rows),
      std::string(harness::to_string(m.status)),
      m.error_detail,
      r.dataset,
      r.function,
      opt(r.thema),
      opt(r.thema2),
      opt(r.target_selectivity),
      opt(r.achieved_selectivity),
      r.verify ? std::string(harness::to_string(*r.verify)) : std::string()};
  out_ << csv_line(f) << std::flush;
  if (!out_) throw SinkError("write failed on " + path_.string());
}

std::vector<ResultRecord> load_results(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ResultsError("cannot open results file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  std::vector<std::vector<std::string>> rows;
  try {
    rows = parse_csv(buf.str());
  } catch (const ResultsError& e) {
    throw ResultsError(path.string() + ": " + e.what());
  }
  if (rows.empty()) throw ResultsError(path.string() + ": empty results file");
  if (!std::equal(rows[0].begin(), rows[0].end(), kResultColumns.begin(), kResultColumns.end())) {
    throw ResultsError(path.string() + ": unexpected header");
  }

  std::vector<ResultRecord> out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& f = rows[i];
    const std::string where = path.string() + ":" + std::to_string(i + 1) + ": ";
    try {
      if (f.size() != kResultColumns.size()) throw ResultsError("expected 18 fields");
      if (parse_req<int>(f[0], "schema_version") != kResultsSchemaVersion) {
        throw ResultsError("unsupported schema_version " + f[0]);
      }
      ResultRecord r;
      r.suite = f[1];
      r.endpoint = f[2];
      const auto kind = record_kind_from_string(f[3]);
      if (!kind) throw ResultsError("unknown record_kind '" + f[3] + "'");
      r.kind = *kind;
      auto& m = r.measurement;
      m.query_id = f[4];
      const auto mode = harness::cache_mode_from_string(f[5]);
      if (!mode) throw ResultsError("unknown cache_mode '" + f[5] + "'");
      m.cache_mode = *mode;
      m.run_index = parse_req<int>(f[6], "run_index");
      m.elapsed = harness::Millis(parse_req<double>(f[7], "elapsed_ms"));
      m.result_rows = parse_req<std::uint64_t>(f[8], "rows");
      const auto status = harness::status_from_string(f[9]);
      if (!status) throw ResultsError("unknown status '" + f[9] + "'");
      m.status = *status;
      m.error_detail = f[10];
      r.dataset = f[11];
      r.function = f[12];
      r.thema = parse_opt<std::uint64_t>(f[13], "thema");
      r.thema2 = parse_opt<std::uint64_t>(f[14], "thema2");
      r.target_selectivity = parse_opt<double>(f[15], "target_selectivity");
      r.achieved_selectivity = parse_opt<double>(f[16], "achieved_selectivity");
      if (!f[17].empty()) {
        bool found = false;
        for (auto v : {harness::Verification::kMatch, harness::Verification::kMismatch,
                       harness::Verification::kNotApplicable}) {
          if (harness::to_string(v) == f[17]) {
            r.verify = v;
            found = true;
          }
        }
        if (!found) throw ResultsError("unknown verify '" + f[17] + "'");
      }
      out.push_back(std::move(r));
    } catch (const ResultsError& e) {
      throw ResultsError(where + e.what());
    }
  }
  return out;
}

std::string timestamped_results_name() {
  const std::time_t now = std::time(nullptr);
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "results-%Y%m%dT%H%M%S.csv", &utc);
  return buf;
}

}  // namespace geobench::report
