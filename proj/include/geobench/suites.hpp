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


#ifndef GEOBENCH_SUITES_HPP_
#define GEOBENCH_SUITES_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "geobench/query.hpp"

namespace geobench::suites {

enum class Category {
  kNonTopological,
  kSpatialSelection,
  kSpatialJoin,
  kAggregate,
  kReverseGeocoding,
  kMapSearch,
  kRapidMapping,
  kSynthetic,
};

std::string_view to_string(Category c);
std::optional<Category> category_from_string(std::string_view name);

/// How a bound value is rendered into SPARQL:
///   wkt      -> "..."^^geo:wktLiteral
///   number   -> numeric literal
///   iri      -> <...>
///   string   -> "..."
///   function -> <IRI of the named topological function in the dialect>
enum class PlaceholderKind { kWkt, kNumber, kIri, kString, kFunction };

struct Placeholder {
  std::string name;
  PlaceholderKind kind = PlaceholderKind::kString;
  std::string description;
};

/// One query intent. Templates reference placeholders as {name} and
/// dialect-specific functions as {fn:name}.
struct QueryTemplateEntry {
  std::string id;
  Category category = Category::kSpatialSelection;
  std::string operation;
  std::string description;
  std::string sparql_template;
  std::vector<Placeholder> placeholders;
  /// Whole-template replacements for one dialect.
  std::map<Dialect, std::string> dialect_variants;
  /// Dialects the entry cannot run under, with the reason.
  std::map<Dialect, std::string> skip;
  std::string note;

  const std::string& template_for(Dialect d) const;
};

/// Prefix declarations and function names of one dialect.
struct DialectProfile {
  std::map<std::string, std::string> prefixes;
  std::map<std::string, std::string> functions;
};

enum class SuiteKind { kMicro, kMacro, kSynthetic };

struct Suite {
  std::string name;
  SuiteKind kind = SuiteKind::kMicro;
  std::string description;
  /// Macro scenarios run for this long (seconds) unless overridden.
  double duration_secs = 3600;
  std::map<std::string, std::string> prefixes;
  std::map<Dialect, DialectProfile> dialects;
  std::vector<QueryTemplateEntry> entries;
};

inline constexpr std::array<std::string_view, 5> kSuiteNames = {
    "micro-real", "macro-rg", "macro-msb", "macro-rm", "synthetic-default"};

/// $GEOBENCH_SUITES_DIR, else the suites/ directory of the source tree.
std::filesystem::path default_suites_dir();

/// Loads and validates a named suite. Throws UnknownSuite for names outside
/// kSuiteNames and ManifestError for malformed manifests (duplicate ids,
/// undeclared or unused placeholders, unknown functions).
Suite load_suite(std::string_view name, const std::filesystem::path& dir = default_suites_dir());

/// Loads any manifest file; `dialects` is the shared dialect table file.
Suite load_suite_file(const std::filesystem::path& manifest, const std::filesystem::path& dialects);

/// One concrete value per placeholder name.
using BindingValues = std::map<std::string, nlohmann::json>;

/// A bindings file: per placeholder either a value, a list of candidates or
/// a numeric range {"min": a, "max": b}; optional prefix overrides.
struct Bindings {
  std::string description;
  bool authoritative = false;
  std::map<std::string, std::string> prefixes;
  std::map<std::string, nlohmann::json> domains;

  /// Lists give their first element, ranges their midpoint.
  BindingValues defaults() const;
};

Bindings parse_bindings(const nlohmann::json& j);
Bindings load_bindings(const std::filesystem::path& path);
std::filesystem::path default_bindings_path();

/// Draws one value per placeholder from its domain, reproducibly per seed.
class ParameterSampler {
 public:
  ParameterSampler(Bindings bindings, std::uint64_t seed);
  BindingValues next();

 private:
  Bindings bindings_;
  std::mt19937_64 rng_;
};

/// Renders every entry for `dialect`. Entries skipped under the dialect come
/// back with skip_reason set and no SPARQL. Throws MissingBinding when a
/// placeholder of a runnable entry has no value, ManifestError when a value
/// has the wrong shape for its kind.
std::vector<QueryInstance> bind_suite(const Suite& suite, const BindingValues& values,
                                      Dialect dialect,
                                      const std::map<std::string, std::string>& prefix_overrides = {});

/// Binds a single entry.
QueryInstance bind_entry(const Suite& suite, const QueryTemplateEntry& entry,
                         const BindingValues& values, Dialect dialect,
                         const std::map<std::string, std::string>& prefix_overrides = {});

}  // namespace geobench::suites

#endif  // GEOBENCH_SUITES_HPP_
