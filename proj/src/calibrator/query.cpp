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


#include "geobench/query.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <fstream>

#include "geobench/error.hpp"
#include "geobench/wkt.hpp"

namespace geobench {
namespace {

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

template <typename T>
T parse_enum(const nlohmann::json& j, const char* field, std::optional<T> (*parse)(std::string_view)) {
  const auto text = j.at(field).get<std::string>();
  const auto value = parse(text);
  if (!value) throw ManifestError(std::string("unknown ") + field + " '" + text + "'");
  return *value;
}

}  // namespace

std::string_view to_string(Dialect d) {
  return d == Dialect::kGeoSparql ? "GeoSPARQL" : "stSPARQL";
}

std::optional<Dialect> dialect_from_string(std::string_view name) {
  if (iequals(name, "GeoSPARQL")) return Dialect::kGeoSparql;
  if (iequals(name, "stSPARQL")) return Dialect::kStSparql;
  return std::nullopt;
}

std::string function_iri(geom::TopoFunction f, Dialect d) {
  const std::string_view name = geom::to_string(f);
  if (d == Dialect::kGeoSparql) return std::string(kGeofNamespace) + "sf" + std::string(name);
  std::string lower(name);
  lower[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(lower[0])));
  return std::string(kStrdfNamespace) + lower;
}

std::string wkt_literal(std::string_view wkt) {
  return "\"" + std::string(wkt) + "\"^^<http://www.opengis.net/ont/geosparql#wktLiteral>";
}

int tag_exponent(std::uint64_t key) {
  if (!std::has_single_bit(key)) {
    throw InvalidParams("tag key " + std::to_string(key) + " is not a power of two");
  }
  return std::countr_zero(key);
}

void to_json(nlohmann::json& j, const QueryInstance& q) {
  j = nlohmann::json{{"id", q.id}, {"sparql", q.sparql}};
  if (const auto* s = q.selection()) {
    j["kind"] = "selection";
    j["dataset"] = gen::to_string(s->dataset);
    j["function"] = geom::to_string(s->function);
    j["thema"] = s->thema;
    j["target_selectivity"] = s->target_selectivity;
  } else if (const auto* s = q.join()) {
    j["kind"] = "join";
    j["left"] = gen::to_string(s->left);
    j["right"] = gen::to_string(s->right);
    j["function"] = geom::to_string(s->function);
    j["thema"] = s->thema;
    j["thema2"] = s->thema2;
  } else {
    j["kind"] = "template";
  }
  if (q.geom) j["geom"] = geom::wkt_serialize(*q.geom);
  if (q.achieved_selectivity) j["achieved_selectivity"] = *q.achieved_selectivity;
  if (q.spatial_selectivity) j["spatial_selectivity"] = *q.spatial_selectivity;
  if (q.expected_count) j["expected_count"] = *q.expected_count;
  if (!q.category.empty()) j["category"] = q.category;
  if (!q.skip_reason.empty()) j["skip_reason"] = q.skip_reason;
}

void from_json(const nlohmann::json& j, QueryInstance& q) {
  q = QueryInstance{};
  q.id = j.at("id").get<std::string>();
  q.sparql = j.value("sparql", std::string{});
  const auto kind = j.value("kind", std::string("template"));
  if (kind == "selection") {
    SelectionSpec s;
    s.dataset = parse_enum<gen::DatasetKind>(j, "dataset", gen::dataset_from_string);
    s.function = parse_enum<geom::TopoFunction>(j, "function", geom::topo_function_from_string);
    s.thema = j.at("thema").get<std::uint64_t>();
    s.target_selectivity = j.at("target_selectivity").get<double>();
    q.spec = s;
  } else if (kind == "join") {
    JoinSpec s;
    s.left = parse_enum<gen::DatasetKind>(j, "left", gen::dataset_from_string);
    s.right = parse_enum<gen::DatasetKind>(j, "right", gen::dataset_from_string);
    s.function = parse_enum<geom::TopoFunction>(j, "function", geom::topo_function_from_string);
    s.thema = j.at("thema").get<std::uint64_t>();
    s.thema2 = j.at("thema2").get<std::uint64_t>();
    q.spec = s;
  } else if (kind != "template") {
    throw ManifestError("instance " + q.id + ": unknown kind '" + kind + "'");
  }
  if (j.contains("geom")) {
    try {
      q.geom = geom::envelope(geom::wkt_parse(j["geom"].get<std::string>()));
    } catch (const Error& e) {
      throw ManifestError("instance " + q.id + ": bad geom: " + e.what());
    }
  }
  if (j.contains("achieved_selectivity")) q.achieved_selectivity = j["achieved_selectivity"].get<double>();
  if (j.contains("spatial_selectivity")) q.spatial_selectivity = j["spatial_selectivity"].get<double>();
  if (j.contains("expected_count")) q.expected_count = j["expected_count"].get<std::uint64_t>();
  q.category = j.value("category", std::string{});
  q.skip_reason = j.value("skip_reason", std::string{});
}

void to_json(nlohmann::json& j, const WorkloadManifest& m) {
  j = nlohmann::json{{"schema_version", WorkloadManifest::kSchemaVersion},
                     {"suite", m.suite},
                     {"dialect", to_string(m.dialect)},
                     {"instances", m.instances}};
  if (m.generator) j["generator"] = *m.generator;
}

void from_json(const nlohmann::json& j, WorkloadManifest& m) {
  m = WorkloadManifest{};
  const int version = j.at("schema_version").get<int>();
  if (version != WorkloadManifest::kSchemaVersion) {
    throw ManifestError("unsupported manifest schema_version " + std::to_string(version));
  }
  m.suite = j.value("suite", std::string{});
  m.dialect = parse_enum<Dialect>(j, "dialect", dialect_from_string);
  if (j.contains("generator")) m.generator = j["generator"].get<gen::GeneratorParams>();
  m.instances = j.at("instances").get<std::vector<QueryInstance>>();
}

WorkloadManifest read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ManifestError("cannot open manifest " + path.string());
  try {
    return nlohmann::json::parse(in).get<WorkloadManifest>();
  } catch (const nlohmann::json::exception& e) {
    throw ManifestError(path.string() + ": " + e.what());
  }
}

void write_manifest(const WorkloadManifest& m, const std::filesystem::path& path) {
  std::ofstream out(path);
  out << nlohmann::json(m).dump(2) << '\n';
  if (!out.flush()) throw SinkError("cannot write manifest " + path.string());
}

}  // namespace geobench
