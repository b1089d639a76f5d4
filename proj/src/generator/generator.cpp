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


#include "geobench/generator.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "geobench/error.hpp"

namespace geobench::gen {
namespace {

using geom::Coord;
using geom::Geometry;

const double kSqrt3 = std::sqrt(3.0);

// Road jitter amplitude and slopes, in cells.
constexpr double kRoadJitter = 0.25;
constexpr double kRoadSlope = 1.0 / 16;
constexpr double kPoiSlope = 1.0 / 8;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Uniform in [-1, 1) from the top 53 bits; independent of the standard
// library's distribution implementations so output is portable.
class Jitter {
 public:
  explicit Jitter(std::uint64_t seed) : state_(seed) {}
  double next() {
    state_ = splitmix64(state_);
    return static_cast<double>(state_ >> 11) * 0x1.0p-53 * 2.0 - 1.0;
  }

 private:
  std::uint64_t state_;
};

// A hexagon grid in offset coordinates: flat-top cells, odd columns shifted
// up by half a row. Vertex coordinates are integer multiples of half the
// circumradius (x) and half the row height (y) from the grid's corner, so
// vertices shared by neighbours are bitwise identical.
struct HexGrid {
  Coord corner;
  double spacing;  // centre-to-centre distance of neighbours
  int columns;
  int rows;

  double x_unit() const { return spacing / kSqrt3 / 2; }
  double y_unit() const { return spacing / 2; }

  Geometry cell(int column, int row) const {
    const long kx = 2 + 3L * column;
    const long ky = 1 + 2L * row + (column % 2);
    auto at = [&](long dx, long dy) {
      return Coord{corner.x + x_unit() * static_cast<double>(kx + dx),
                   corner.y + y_unit() * static_cast<double>(ky + dy)};
    };
    return Geometry::polygon({at(2, 0), at(1, 1), at(-1, 1), at(-2, 0), at(-1, -1), at(1, -1)});
  }

  double width() const { return x_unit() * (3.0 * (columns - 1) + 4); }
  double height() const { return y_unit() * (2.0 * rows + (columns > 1 ? 1 : 0)); }
};

HexGrid land_grid(const GeneratorParams& p) { return {p.origin, p.cell, p.n, p.n}; }

HexGrid state_grid(const GeneratorParams& p) {
  const int s = p.n / 3;
  const HexGrid land = land_grid(p);
  const double spacing = state_spacing(p);
  HexGrid grid{{0, 0}, spacing, s, s};
  // The band of the land grid covered by every column's envelopes starts half
  // a row up; centre the state grid inside it.
  const double band_bottom = p.origin.y + p.cell / 2;
  const double band_height = land.height() - p.cell;
  grid.corner = {p.origin.x + (land.width() - grid.width()) / 2,
                 band_bottom + (band_height - grid.height()) / 2};
  return grid;
}

FeatureRecord make_feature(std::uint64_t id, DatasetKind kind, Geometry g, int k) {
  return FeatureRecord{id, kind, std::move(g), tags_for(id, k)};
}

void visit_hex_grid(const HexGrid& grid, DatasetKind kind, int k, const FeatureVisitor& visit) {
  std::uint64_t id = 0;
  for (int row = 0; row < grid.rows; ++row) {
    for (int column = 0; column < grid.columns; ++column) {
      visit(make_feature(id++, kind, grid.cell(column, row), k));
    }
  }
}

void visit_roads(const GeneratorParams& p, const FeatureVisitor& visit) {
  const geom::Rectangle world = world_envelope(p);
  const double width = world.width();
  const double height = world.height();
  const int half = p.n / 2;
  const int vertices = half + 2;  // half + 1 segments
  const double jitter = kRoadJitter * p.cell;

  // Baselines leave room for the slope's rise and the jitter on both sides.
  const double band_y = height - width * kRoadSlope - 2 * jitter;
  const double band_x = width - height * kRoadSlope - 2 * jitter;

  std::uint64_t id = 0;
  for (int r = 0; r < half; ++r, ++id) {
    Jitter rng(splitmix64(p.seed ^ splitmix64(id)));
    const double base = world.min.y + jitter + (r + 0.5) * band_y / half;
    std::vector<Coord> line;
    line.reserve(static_cast<std::size_t>(vertices));
    for (int v = 0; v < vertices; ++v) {
      const double along = v * width / (vertices - 1);
      line.push_back({world.min.x + along, base + along * kRoadSlope + jitter * rng.next()});
    }
    visit(make_feature(id, DatasetKind::kRoad, Geometry::line_string(std::move(line)), p.k));
  }
  for (int r = 0; r < half; ++r, ++id) {
    Jitter rng(splitmix64(p.seed ^ splitmix64(id)));
    const double base = world.min.x + jitter + (r + 0.5) * band_x / half;
    std::vector<Coord> line;
    line.reserve(static_cast<std::size_t>(vertices));
    for (int v = 0; v < vertices; ++v) {
      const double along = v * height / (vertices - 1);
      line.push_back({base + along * kRoadSlope + jitter * rng.next(), world.min.y + along});
    }
    visit(make_feature(id, DatasetKind::kRoad, Geometry::line_string(std::move(line)), p.k));
  }
}

void visit_pois(const GeneratorParams& p, const FeatureVisitor& visit) {
  const geom::Rectangle world = world_envelope(p);
  const double width = world.width();
  const double band = world.height() - width * kPoiSlope;
  std::uint64_t id = 0;
  for (int line = 0; line < p.n; ++line) {
    const double base = world.min.y + (line + 0.5) * band / p.n;
    for (int i = 0; i < p.n; ++i) {
      const double along = (i + 0.5) * width / p.n;
      visit(make_feature(id++, DatasetKind::kPointOfInterest,
                         Geometry::point({world.min.x + along, base + along * kPoiSlope}), p.k));
    }
  }
}

std::vector<FeatureRecord> collect(DatasetKind kind, const GeneratorParams& p) {
  std::vector<FeatureRecord> out;
  out.reserve(cardinality(kind, p));
  visit_dataset(kind, p, [&](FeatureRecord&& f) { out.push_back(std::move(f)); });
  return out;
}

}  // namespace

std::string_view to_string(DatasetKind kind) {
  switch (kind) {
    case DatasetKind::kLandOwnership:
      return "LandOwnership";
    case DatasetKind::kState:
      return "State";
    case DatasetKind::kRoad:
      return "Road";
    case DatasetKind::kPointOfInterest:
      return "PointOfInterest";
  }
  return "?";
}

std::string_view file_stem(DatasetKind kind) {
  switch (kind) {
    case DatasetKind::kLandOwnership:
      return "land-ownership";
    case DatasetKind::kState:
      return "state";
    case DatasetKind::kRoad:
      return "road";
    case DatasetKind::kPointOfInterest:
      return "poi";
  }
  return "?";
}

std::optional<DatasetKind> dataset_from_string(std::string_view name) {
  std::string lower;
  for (char c : name) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  for (DatasetKind kind : kAllDatasets) {
    std::string canonical;
    for (char c : to_string(kind)) canonical += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (lower == canonical || lower == file_stem(kind)) return kind;
  }
  if (lower == "land") return DatasetKind::kLandOwnership;
  return std::nullopt;
}

void GeneratorParams::validate() const {
  if (n < 6) throw InvalidParams("n must be at least 6");
  if (n % 2 != 0) throw InvalidParams("n must be even");
  if (k < 0 || k > 62) throw InvalidParams("k must lie in [0, 62]");
  if (!(cell > 0) || !std::isfinite(cell)) throw InvalidParams("cell must be positive");
  if (!std::isfinite(origin.x) || !std::isfinite(origin.y)) {
    throw InvalidParams("origin must be finite");
  }
}

void to_json(nlohmann::json& j, const GeneratorParams& p) {
  j = nlohmann::json{{"n", p.n},
                     {"k", p.k},
                     {"seed", p.seed},
                     {"cell", p.cell},
                     {"origin", {p.origin.x, p.origin.y}}};
  if (!p.crs_uri.empty()) j["crs_uri"] = p.crs_uri;
}

void from_json(const nlohmann::json& j, GeneratorParams& p) {
  p = GeneratorParams{};
  p.n = j.at("n").get<int>();
  p.k = j.at("k").get<int>();
  p.seed = j.value("seed", std::uint64_t{0});
  p.cell = j.value("cell", 1.0);
  if (j.contains("origin")) {
    p.origin = {j["origin"].at(0).get<double>(), j["origin"].at(1).get<double>()};
  }
  p.crs_uri = j.value("crs_uri", std::string{});
}

std::uint64_t cardinality(DatasetKind kind, const GeneratorParams& p) {
  const auto n = static_cast<std::uint64_t>(p.n);
  switch (kind) {
    case DatasetKind::kLandOwnership:
    case DatasetKind::kPointOfInterest:
      return n * n;
    case DatasetKind::kState:
      return (n / 3) * (n / 3);
    case DatasetKind::kRoad:
      return n;
  }
  return 0;
}

std::uint64_t tag_count(std::uint64_t m, int j) {
  const std::uint64_t key = std::uint64_t{1} << j;
  return m / key + (m % key != 0 ? 1 : 0);
}

std::vector<TagAssignment> tags_for(std::uint64_t id, int k) {
  std::vector<TagAssignment> tags;
  for (int j = 0; j <= k && has_tag(id, j); ++j) {
    const std::string key = std::to_string(std::uint64_t{1} << j);
    tags.push_back({key, "v" + key});
  }
  return tags;
}

void assign_tags(std::span<FeatureRecord> features, int k) {
  for (FeatureRecord& f : features) f.tags = tags_for(f.id, k);
}

geom::Rectangle world_envelope(const GeneratorParams& p) {
  const HexGrid grid = land_grid(p);
  return {p.origin, {p.origin.x + grid.width(), p.origin.y + grid.height()}};
}

double state_spacing(const GeneratorParams& p) {
  const int s = p.n / 3;
  const HexGrid land = land_grid(p);
  // Unit-spacing extents of an s x s grid; they scale linearly.
  const HexGrid unit{{0, 0}, 1.0, s, s};
  const double fit_width = land.width() / unit.width();
  const double fit_height = (land.height() - p.cell) / unit.height();
  return std::min({3 * p.cell, fit_width, fit_height});
}

void visit_dataset(DatasetKind kind, const GeneratorParams& p, const FeatureVisitor& visit) {
  p.validate();
  switch (kind) {
    case DatasetKind::kLandOwnership:
      visit_hex_grid(land_grid(p), kind, p.k, visit);
      return;
    case DatasetKind::kState:
      visit_hex_grid(state_grid(p), kind, p.k, visit);
      return;
    case DatasetKind::kRoad:
      visit_roads(p, visit);
      return;
    case DatasetKind::kPointOfInterest:
      visit_pois(p, visit);
      return;
  }
}

std::vector<FeatureRecord> generate_land_ownership(const GeneratorParams& p) {
  return collect(DatasetKind::kLandOwnership, p);
}

std::vector<FeatureRecord> generate_states(const GeneratorParams& p) {
  return collect(DatasetKind::kState, p);
}

std::vector<FeatureRecord> generate_roads(const GeneratorParams& p) {
  return collect(DatasetKind::kRoad, p);
}

std::vector<FeatureRecord> generate_pois(const GeneratorParams& p) {
  return collect(DatasetKind::kPointOfInterest, p);
}

std::vector<FeatureRecord> generate(DatasetKind kind, const GeneratorParams& p) {
  return collect(kind, p);
}

Workload generate_workload(const GeneratorParams& p) {
  Workload w{p, {}};
  for (DatasetKind kind : kAllDatasets) w.datasets[static_cast<std::size_t>(kind)] = generate(kind, p);
  return w;
}

}  // namespace geobench::gen
