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


#include "geobench/predicates.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "geobench/error.hpp"

// Exact-by-construction DE-9IM for points, simple linestrings and convex
// polygons. Every linear component of one geometry is cut at each point where
// it meets the other geometry; the open sub-segments between cuts then lie
// entirely in one location of the other geometry, so classifying one midpoint
// per sub-segment (plus the cut points and vertices) settles every entry not
// involving a polygon interior. Polygon-interior entries follow from where the
// two rings lie.

namespace geobench::geom {
namespace {

using L = Location;

struct Segment {
  Coord a;
  Coord b;
};

double length(const Segment& s) { return std::hypot(s.b.x - s.a.x, s.b.y - s.a.y); }

// Signed distance of p from the directed line through s (left is positive).
double side(const Segment& s, Coord p) {
  const double cross = (s.b.x - s.a.x) * (p.y - s.a.y) - (s.b.y - s.a.y) * (p.x - s.a.x);
  return cross / length(s);
}

// Distance of the projection of p along s, measured from s.a.
double along(const Segment& s, Coord p) {
  const double dot = (p.x - s.a.x) * (s.b.x - s.a.x) + (p.y - s.a.y) * (s.b.y - s.a.y);
  return dot / length(s);
}

bool same_point(Coord p, Coord q) { return std::hypot(p.x - q.x, p.y - q.y) <= kEpsilon; }

bool on_segment(Coord p, const Segment& s) {
  if (std::abs(side(s, p)) > kEpsilon) return false;
  const double u = along(s, p);
  return u >= -kEpsilon && u <= length(s) + kEpsilon;
}

Coord at(const Segment& s, double t) {
  return {s.a.x + (s.b.x - s.a.x) * t, s.a.y + (s.b.y - s.a.y) * t};
}

std::vector<Segment> segments(const Geometry& g) {
  std::vector<Segment> out;
  const auto c = g.coords();
  if (g.kind() == GeometryKind::kPoint) return out;
  out.reserve(c.size() - 1);
  for (std::size_t i = 0; i + 1 < c.size(); ++i) out.push_back({c[i], c[i + 1]});
  return out;
}

// Parameters t in [0, 1] along s at which s meets t_seg.
void cut_params(const Segment& s, const Segment& t_seg, std::vector<double>& out) {
  const double len = length(s);
  const double da = side(s, t_seg.a);
  const double db = side(s, t_seg.b);
  const bool a_on_line = std::abs(da) <= kEpsilon;
  const bool b_on_line = std::abs(db) <= kEpsilon;

  auto add_projection = [&](Coord p) {
    const double u = along(s, p);
    if (u >= -kEpsilon && u <= len + kEpsilon) out.push_back(std::clamp(u / len, 0.0, 1.0));
  };

  if (a_on_line && b_on_line) {
    // Collinear: the overlap (if any) is bounded by endpoints of either
    // segment; the endpoints of s are always cut points already.
    add_projection(t_seg.a);
    add_projection(t_seg.b);
    return;
  }
  if (a_on_line) add_projection(t_seg.a);
  if (b_on_line) add_projection(t_seg.b);

  const bool straddles = (da > kEpsilon && db < -kEpsilon) || (da < -kEpsilon && db > kEpsilon);
  if (!straddles) return;
  const double sa = side(t_seg, s.a);
  const double sb = side(t_seg, s.b);
  if ((sa > kEpsilon && sb < -kEpsilon) || (sa < -kEpsilon && sb > kEpsilon)) {
    out.push_back(sa / (sa - sb));
  }
}

// A piece is a connected subset of a geometry's interior or boundary lying
// entirely inside one location of the other geometry.
struct Piece {
  Coord sample;
  int dim;
  Location own;
};

template <typename Visit>
void for_each_piece(const Geometry& g, const Geometry& other, Visit&& visit) {
  const auto coords = g.coords();
  if (g.kind() == GeometryKind::kPoint) {
    visit(Piece{coords.front(), 0, L::kInterior});
    return;
  }

  const Location own = g.kind() == GeometryKind::kPolygon ? L::kBoundary : L::kInterior;
  const auto other_segments = segments(other);
  std::vector<double> params;
  for (std::size_t i = 0; i + 1 < coords.size(); ++i) {
    const Segment s{coords[i], coords[i + 1]};
    const double len = length(s);
    params.assign({0.0, 1.0});
    for (const Segment& t : other_segments) cut_params(s, t, params);
    if (other.kind() == GeometryKind::kPoint) {
      const Coord p = other.coords().front();
      if (on_segment(p, s)) params.push_back(std::clamp(along(s, p) / len, 0.0, 1.0));
    }
    std::sort(params.begin(), params.end());

    std::vector<double> cuts{0.0};
    for (double t : params) {
      if ((t - cuts.back()) * len > kEpsilon) cuts.push_back(t);
    }
    cuts.back() = 1.0;

    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      visit(Piece{at(s, (cuts[k] + cuts[k + 1]) / 2), 1, own});
      if (k > 0) visit(Piece{at(s, cuts[k]), 0, own});
    }
  }

  // Vertices.
  const bool has_endpoints = g.kind() == GeometryKind::kLineString && !g.is_closed_line();
  for (std::size_t i = 0; i < coords.size(); ++i) {
    Location loc = own;
    if (has_endpoints && (i == 0 || i + 1 == coords.size())) loc = L::kBoundary;
    visit(Piece{coords[i], 0, loc});
  }
}

}  // namespace

std::string_view to_string(TopoFunction f) {
  switch (f) {
    case TopoFunction::kEquals:
      return "Equals";
    case TopoFunction::kIntersects:
      return "Intersects";
    case TopoFunction::kWithin:
      return "Within";
    case TopoFunction::kContains:
      return "Contains";
    case TopoFunction::kTouches:
      return "Touches";
    case TopoFunction::kOverlaps:
      return "Overlaps";
    case TopoFunction::kCrosses:
      return "Crosses";
    case TopoFunction::kDisjoint:
      return "Disjoint";
  }
  return "?";
}

std::optional<TopoFunction> topo_function_from_string(std::string_view name) {
  for (TopoFunction f : kAllTopoFunctions) {
    const auto canonical = to_string(f);
    if (canonical.size() != name.size()) continue;
    bool equal = true;
    for (std::size_t i = 0; i < name.size(); ++i) {
      if (std::tolower(static_cast<unsigned char>(name[i])) !=
          std::tolower(static_cast<unsigned char>(canonical[i]))) {
        equal = false;
        break;
      }
    }
    if (equal) return f;
  }
  return std::nullopt;
}

Location locate(Coord p, const Geometry& g) {
  const auto c = g.coords();
  switch (g.kind()) {
    case GeometryKind::kPoint:
      return same_point(p, c.front()) ? L::kInterior : L::kExterior;
    case GeometryKind::kLineString: {
      if (!g.is_closed_line() && (same_point(p, c.front()) || same_point(p, c.back()))) {
        return L::kBoundary;
      }
      for (std::size_t i = 0; i + 1 < c.size(); ++i) {
        if (on_segment(p, {c[i], c[i + 1]})) return L::kInterior;
      }
      return L::kExterior;
    }
    case GeometryKind::kPolygon: {
      bool inside = true;
      for (std::size_t i = 0; i + 1 < c.size(); ++i) {
        const Segment edge{c[i], c[i + 1]};
        if (on_segment(p, edge)) return L::kBoundary;
        if (side(edge, p) <= kEpsilon) inside = false;
      }
      return inside ? L::kInterior : L::kExterior;
    }
  }
  return L::kExterior;
}

std::string IntersectionMatrix::to_string() const {
  std::string out;
  for (int cell : cells_) out += cell < 0 ? 'F' : static_cast<char>('0' + cell);
  return out;
}

IntersectionMatrix relate(const Geometry& a, const Geometry& b) {
  IntersectionMatrix m;
  m.raise(L::kExterior, L::kExterior, 2);

  struct RingSummary {
    bool in_interior = false;
    bool in_exterior = false;
    bool all_on_boundary = true;
  };
  RingSummary ring_a;  // a's ring relative to b
  RingSummary ring_b;  // b's ring relative to a

  auto track = [](RingSummary& r, const Piece& piece, Location where) {
    if (piece.dim != 1) return;
    if (where == L::kInterior) r.in_interior = true;
    if (where == L::kExterior) r.in_exterior = true;
    if (where != L::kBoundary) r.all_on_boundary = false;
  };

  for_each_piece(a, b, [&](const Piece& piece) {
    const Location where = locate(piece.sample, b);
    m.raise(piece.own, where, piece.dim);
    track(ring_a, piece, where);
  });
  for_each_piece(b, a, [&](const Piece& piece) {
    const Location where = locate(piece.sample, a);
    m.raise(where, piece.own, piece.dim);
    track(ring_b, piece, where);
  });

  const bool a_area = a.kind() == GeometryKind::kPolygon;
  const bool b_area = b.kind() == GeometryKind::kPolygon;
  if (a_area && b_area) {
    if (ring_a.in_interior || ring_b.in_interior || ring_a.all_on_boundary) {
      m.raise(L::kInterior, L::kInterior, 2);
    }
    if (ring_b.in_interior || ring_a.in_exterior) m.raise(L::kInterior, L::kExterior, 2);
    if (ring_a.in_interior || ring_b.in_exterior) m.raise(L::kExterior, L::kInterior, 2);
  } else if (a_area) {
    m.raise(L::kInterior, L::kExterior, 2);
  } else if (b_area) {
    m.raise(L::kExterior, L::kInterior, 2);
  }
  return m;
}

bool is_defined(TopoFunction f, int da, int db) {
  switch (f) {
    case TopoFunction::kOverlaps:
      return da == db;
    case TopoFunction::kCrosses:
      return (da == 1 || db == 1) && !(da == 0 && db == 0);
    default:
      return true;
  }
}

bool matches(TopoFunction f, const IntersectionMatrix& m, int da, int db) {
  const bool ii = m.nonempty(L::kInterior, L::kInterior);
  const bool ib = m.nonempty(L::kInterior, L::kBoundary);
  const bool ie = m.nonempty(L::kInterior, L::kExterior);
  const bool bi = m.nonempty(L::kBoundary, L::kInterior);
  const bool bb = m.nonempty(L::kBoundary, L::kBoundary);
  const bool be = m.nonempty(L::kBoundary, L::kExterior);
  const bool ei = m.nonempty(L::kExterior, L::kInterior);
  const bool eb = m.nonempty(L::kExterior, L::kBoundary);
  const bool intersects = ii || ib || bi || bb;

  switch (f) {
    case TopoFunction::kIntersects:
      return intersects;
    case TopoFunction::kDisjoint:
      return !intersects;
    case TopoFunction::kEquals:
      return ii && !ie && !be && !ei && !eb;
    case TopoFunction::kWithin:
      return ii && !ie && !be;
    case TopoFunction::kContains:
      return ii && !ei && !eb;
    case TopoFunction::kTouches:
      return !ii && (ib || bi || bb);
    case TopoFunction::kOverlaps:
      if (da == 1) return m.at(L::kInterior, L::kInterior) == 1 && ie && ei;
      return ii && ie && ei;
    case TopoFunction::kCrosses:
      if (da == 1 && db == 1) return m.at(L::kInterior, L::kInterior) == 0;
      if (da < db) return ii && ie;
      return ii && ei;
  }
  return false;
}

bool eval_predicate(TopoFunction f, const Geometry& a, const Geometry& b) {
  const int da = a.dimension();
  const int db = b.dimension();
  if (!is_defined(f, da, db)) {
    throw UnsupportedPair(std::string(to_string(f)) + " is undefined for " +
                          std::string(to_string(a.kind())) + "/" +
                          std::string(to_string(b.kind())));
  }
  return matches(f, relate(a, b), da, db);
}

}  // namespace geobench::geom
