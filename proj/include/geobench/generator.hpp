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


#ifndef GEOBENCH_GENERATOR_HPP_
#define GEOBENCH_GENERATOR_HPP_

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "geobench/geometry.hpp"

namespace geobench::gen {

enum class DatasetKind { kLandOwnership, kState, kRoad, kPointOfInterest };

inline constexpr std::array kAllDatasets = {
    DatasetKind::kLandOwnership,
    DatasetKind::kState,
    DatasetKind::kRoad,
    DatasetKind::kPointOfInterest,
};

/// "LandOwnership", "State", "Road", "PointOfInterest".
std::string_view to_string(DatasetKind kind);
/// File-name stem: "land-ownership", "state", "road", "poi".
std::string_view file_stem(DatasetKind kind);
/// Accepts the canonical name, the file stem, or the short forms "land" and
/// "poi" (case-insensitive).
std::optional<DatasetKind> dataset_from_string(std::string_view name);

struct GeneratorParams {
  int n = 512;             ///< land-ownership grid is n x n hexagons
  int k = 9;               ///< largest tag key is 2^k
  std::uint64_t seed = 0;  ///< road jitter
  double cell = 1.0;       ///< distance between adjacent hexagon centres
  geom::Coord origin{};    ///< lower-left corner of the world envelope
  std::string crs_uri;     ///< optional CRS IRI prefixed to WKT literals

  /// Throws InvalidParams unless n >= 6, n is even, 0 <= k <= 62 and cell > 0.
  void validate() const;
};

void to_json(nlohmann::json& j, const GeneratorParams& p);
void from_json(const nlohmann::json& j, GeneratorParams& p);

struct TagAssignment {
  std::string key;
  std::string value;

  friend bool operator==(const TagAssignment&, const TagAssignment&) = default;
};

struct FeatureRecord {
  std::uint64_t id = 0;
  DatasetKind kind = DatasetKind::kLandOwnership;
  geom::Geometry geometry = geom::Geometry::point({});
  std::vector<TagAssignment> tags;
};

/// Number of features the generator emits for `kind`.
std::uint64_t cardinality(DatasetKind kind, const GeneratorParams& p);

/// Number of ids in [0, m) divisible by 2^j, i.e. ceil(m / 2^j).
std::uint64_t tag_count(std::uint64_t m, int j);

/// True when feature `id` carries key 2^j.
inline bool has_tag(std::uint64_t id, int j) { return (id & ((std::uint64_t{1} << j) - 1)) == 0; }

/// Keys 2^j for every j in [0, k] with id mod 2^j = 0; values are "v" + key.
std::vector<TagAssignment> tags_for(std::uint64_t id, int k);

/// Replaces the tags of every feature according to its id.
void assign_tags(std::span<FeatureRecord> features, int k);

/// Envelope of the land-ownership grid; every generated point lies in it.
geom::Rectangle world_envelope(const GeneratorParams& p);

/// Distance between adjacent state-hexagon centres (3 * cell whenever the
/// state grid fits inside the land grid at that spacing).
double state_spacing(const GeneratorParams& p);

using FeatureVisitor = std::function<void(FeatureRecord&&)>;

/// Streams the features of one dataset in id order, tagged, without
/// materialising the sequence.
void visit_dataset(DatasetKind kind, const GeneratorParams& p, const FeatureVisitor& visit);

/// Materialised, tagged datasets.
std::vector<FeatureRecord> generate_land_ownership(const GeneratorParams& p);
std::vector<FeatureRecord> generate_states(const GeneratorParams& p);
std::vector<FeatureRecord> generate_roads(const GeneratorParams& p);
std::vector<FeatureRecord> generate_pois(const GeneratorParams& p);
std::vector<FeatureRecord> generate(DatasetKind kind, const GeneratorParams& p);

/// All four datasets, indexed by DatasetKind.
struct Workload {
  GeneratorParams params;
  std::array<std::vector<FeatureRecord>, 4> datasets;

  const std::vector<FeatureRecord>& operator[](DatasetKind kind) const {
    return datasets[static_cast<std::size_t>(kind)];
  }
};

Workload generate_workload(const GeneratorParams& p);

}  // namespace geobench::gen

#endif  // GEOBENCH_GENERATOR_HPP_
