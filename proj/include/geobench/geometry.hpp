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

#ifndef GEOBENCH_GEOMETRY_HPP_
#define GEOBENCH_GEOMETRY_HPP_

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace geobench::geom {

/// Distance tolerance (world units) for every on-boundary decision.
inline constexpr double kEpsilon = 1e-9;

struct Coord {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Coord&, const Coord&) = default;
};

enum class GeometryKind { kPoint, kLineString, kPolygon };

std::string_view to_string(GeometryKind kind);

/// Axis-aligned box. A degenerate box (zero width and/or height) is legal.
struct Rectangle {
  Coord min;
  Coord max;

  double width() const { return max.x - min.x; }
  double height() const { return max.y - min.y; }
  bool contains(Coord c) const {
    return c.x >= min.x && c.x <= max.x && c.y >= min.y && c.y <= max.y;
  }
  Rectangle inflated(double by) const {
    return {{min.x - by, min.y - by}, {max.x + by, max.y + by}};
  }

  friend bool operator==(const Rectangle&, const Rectangle&) = default;
};

/// A point, a linestring or a convex polygon.
///
/// Instances are immutable and always satisfy their invariants: coordinates
/// are finite; a linestring has at least two vertices and no zero-length
/// segment; a polygon ring is closed, convex, counter-clockwise and encloses
/// a positive area. The factory functions throw InvalidGeometry (or
/// UnsupportedGeometry for a non-convex ring) otherwise.
class Geometry {
 public:
  static Geometry point(Coord c);
  static Geometry line_string(std::vector<Coord> vertices);
  /// Accepts an open or closed ring in either orientation; stores it closed
  /// and counter-clockwise.
  static Geometry polygon(std::vector<Coord> ring);
  /// The rectangle as a polygon; the box must have positive area.
  static Geometry from_rectangle(const Rectangle& r);

  GeometryKind kind() const { return kind_; }
  /// Topological dimension: 0, 1 or 2.
  int dimension() const { return static_cast<int>(kind_); }

  /// Point: one coordinate. LineString: the vertices. Polygon: the closed
  /// ring (first coordinate repeated at the end).
  std::span<const Coord> coords() const { return coords_; }

  /// A linestring whose first and last vertex coincide has no boundary.
  bool is_closed_line() const;

  friend bool operator==(const Geometry&, const Geometry&) = default;

 private:
  Geometry(GeometryKind kind, std::vector<Coord> coords)
      : kind_(kind), coords_(std::move(coords)) {}

  GeometryKind kind_;
  std::vector<Coord> coords_;
};

/// Smallest axis-aligned rectangle containing g.
Rectangle envelope(const Geometry& g);

/// Regular hexagon with a flat top: vertices at 0, 60, ..., 300 degrees.
Geometry regular_hexagon(Coord center, double circumradius);

/// Signed area of a closed ring (positive when counter-clockwise).
double signed_area(std::span<const Coord> ring);

}  // namespace geobench::geom

#endif  // GEOBENCH_GEOMETRY_HPP_
