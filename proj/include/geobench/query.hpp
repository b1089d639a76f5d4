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


#ifndef GEOBENCH_QUERY_HPP_
#define GEOBENCH_QUERY_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "geobench/generator.hpp"
#include "geobench/geometry.hpp"
#include "geobench/predicates.hpp"

namespace geobench {

/// Filter-function vocabulary understood by an endpoint.
enum class Dialect { kGeoSparql, kStSparql };

std::string_view to_string(Dialect d);
std::optional<Dialect> dialect_from_string(std::string_view name);

inline constexpr std::string_view kGeofNamespace = "http://www.opengis.net/def/function/geosparql/";
inline constexpr std::string_view kStrdfNamespace = "http://strdf.di.uoa.gr/ontology#";

/// geof:sfWithin, strdf:within, ...
std::string function_iri(geom::TopoFunction f, Dialect d);
/// A geo:wktLiteral in N-Triples/SPARQL syntax. Both dialects accept this
/// datatype, so only the function names differ between them.
std::string wkt_literal(std::string_view wkt);

/// Template (a): a constant-geometry selection over one dataset.
struct SelectionSpec {
  gen::DatasetKind dataset = gen::DatasetKind::kLandOwnership;
  geom::TopoFunction function = geom::TopoFunction::kIntersects;
  std::uint64_t thema = 1;  ///< tag key, a power of two
  double target_selectivity = 1.0;
};

/// Template (b): a join between two datasets.
struct JoinSpec {
  gen::DatasetKind left = gen::DatasetKind::kLandOwnership;
  gen::DatasetKind right = gen::DatasetKind::kState;
  geom::TopoFunction function = geom::TopoFunction::kIntersects;
  std::uint64_t thema = 1;
  std::uint64_t thema2 = 1;
};

/// A concrete query ready to send. Synthetic instances carry their spec and
/// the oracle's expected row count; suite instances carry neither.
struct QueryInstance {
  std::string id;
  std::string sparql;
  std::variant<std::monostate, SelectionSpec, JoinSpec> spec;
  std::optional<geom::Rectangle> geom;
  /// expected_count over the dataset size (selections) or over the size of
  /// the cross product (joins).
  std::optional<double> achieved_selectivity;
  /// Fraction of the dataset satisfying the spatial predicate alone.
  std::optional<double> spatial_selectivity;
  std::optional<std::uint64_t> expected_count;
  std::string category;
  /// Non-empty when the instance must not be executed (dialect lacks support).
  std::string skip_reason;

  const SelectionSpec* selection() const { return std::get_if<SelectionSpec>(&spec); }
  const JoinSpec* join() const { return std::get_if<JoinSpec>(&spec); }
};

void to_json(nlohmann::json& j, const QueryInstance& q);
void from_json(const nlohmann::json& j, QueryInstance& q);

/// A set of instances as written by `calibrate` or produced by binding a
/// suite.
struct WorkloadManifest {
  static constexpr int kSchemaVersion = 1;

  std::string suite;
  Dialect dialect = Dialect::kGeoSparql;
  std::optional<gen::GeneratorParams> generator;
  std::vector<QueryInstance> instances;
};

void to_json(nlohmann::json& j, const WorkloadManifest& m);
void from_json(const nlohmann::json& j, WorkloadManifest& m);

/// Throws ManifestError on unreadable or malformed files.
WorkloadManifest read_manifest(const std::filesystem::path& path);
void write_manifest(const WorkloadManifest& m, const std::filesystem::path& path);

/// j such that key = 2^j; throws InvalidParams when key is not a power of two.
int tag_exponent(std::uint64_t key);

}  // namespace geobench

#endif  // GEOBENCH_QUERY_HPP_
