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


#include "geobench/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "geobench/error.hpp"

namespace geobench::geom {
namespace {

void require_finite(std::span<const Coord> coords) {
  for (const Coord& c : coords) {
    if (!std::isfinite(c.x) || !std::isfinite(c.y)) {
      throw InvalidGeometry("non-finite coordinate");
    }
  }
}

double cross(Coord o, Coord a, Coord b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

double distance(Coord a, Coord b) { return std::hypot(b.x - a.x, b.y - a.y); }

}  // namespace

std::string_view to_string(GeometryKind kind) {
  switch (kind) {
    case GeometryKind::kPoint:
      return "Point";
    case GeometryKind::kLineString:
      return "LineString";
    case GeometryKind::kPolygon:
      return "Polygon";
  }
  return "?";
}

Geometry Geometry::point(Coord c) {
  std::vector<Coord> coords{c};
  require_finite(coords);
  return Geometry(GeometryKind::kPoint, std::move(coords));
}

Geometry Geometry::line_string(std::vector<Coord> vertices) {
  require_finite(vertices);
  if (vertices.size() < 2) {
    throw InvalidGeometry("linestring needs at least two vertices");
  }
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    if (distance(vertices[i - 1], vertices[i]) <= kEpsilon) {
      throw InvalidGeometry("linestring has a zero-length segment");
    }
  }
  return Geometry(GeometryKind::kLineString, std::move(vertices));
}

Geometry Geometry::polygon(std::vector<Coord> ring) {
  require_finite(ring);
  if (ring.size() >= 2 && ring.front() == ring.back()) ring.pop_back();
  if (ring.size() < 3) {
    throw InvalidGeometry("polygon ring needs at least three distinct vertices");
  }
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (distance(ring[i], ring[(i + 1) % n]) <= kEpsilon) {
      throw InvalidGeometry("polygon ring has a zero-length edge");
    }
  }
  ring.push_back(ring.front());
  const double area = signed_area(ring);
  if (std::abs(area) <= kEpsilon * kEpsilon) {
    throw InvalidGeometry("polygon ring encloses no area");
  }
  if (area < 0) std::reverse(ring.begin(), ring.end());

  // Convex iff every vertex lies on the left of (or on) every edge.
  for (std::size_t e = 0; e < n; ++e) {
    const Coord a = ring[e];
    const Coord b = ring[e + 1];
    const double len = distance(a, b);
    for (std::size_t v = 0; v < n; ++v) {
      if (cross(a, b, ring[v]) < -kEpsilon * len) {
        throw UnsupportedGeometry("polygon ring is not convex");
      }
    }
  }
  return Geometry(GeometryKind::kPolygon, std::move(ring));
}

Geometry Geometry::from_rectangle(const Rectangle& r) {
  return polygon({r.min, {r.max.x, r.min.y}, r.max, {r.min.x, r.max.y}, r.min});
}

bool Geometry::is_closed_line() const {
  return kind_ == GeometryKind::kLineString && coords_.front() == coords_.back();
}

Rectangle envelope(const Geometry& g) {
  const auto coords = g.coords();
  Rectangle r{coords.front(), coords.front()};
  for (const Coord& c : coords) {
    r.min.x = std::min(r.min.x, c.x);
    r.min.y = std::min(r.min.y, c.y);
    r.max.x = std::max(r.max.x, c.x);
    r.max.y = std::max(r.max.y, c.y);
  }
  return r;
}

Geometry regular_hexagon(Coord center, double circumradius) {
  const double half = circumradius / 2;
  const double h = circumradius * std::sqrt(3.0) / 2;
  return Geometry::polygon({
      {center.x + circumradius, center.y},
      {center.x + half, center.y + h},
      {center.x - half, center.y + h},
      {center.x - circumradius, center.y},
      {center.x - half, center.y - h},
      {center.x + half, center.y - h},
  });
}

double signed_area(std::span<const Coord> ring) {
  if (ring.empty()) return 0;
  // Relative to the first vertex to avoid cancellation far from the origin.
  const Coord o = ring.front();
  double twice = 0;
  for (std::size_t i = 0; i + 1 < ring.size(); ++i) {
    const double ax = ring[i].x - o.x, ay = ring[i].y - o.y;
    const double bx = ring[i + 1].x - o.x, by = ring[i + 1].y - o.y;
    twice += ax * by - bx * ay;
  }
  return twice / 2;
}

}  // namespace geobench::geom
