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


#ifndef GEOBENCH_PREDICATES_HPP_
#define GEOBENCH_PREDICATES_HPP_

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "geobench/geometry.hpp"

namespace geobench::geom {

enum class TopoFunction {
  kEquals,
  kIntersects,
  kWithin,
  kContains,
  kTouches,
  kOverlaps,
  kCrosses,
  kDisjoint,
};

inline constexpr std::array kAllTopoFunctions = {
    TopoFunction::kEquals,   TopoFunction::kIntersects, TopoFunction::kWithin,
    TopoFunction::kContains, TopoFunction::kTouches,    TopoFunction::kOverlaps,
    TopoFunction::kCrosses,  TopoFunction::kDisjoint,
};

/// "Intersects", "Within", ...
std::string_view to_string(TopoFunction f);
std::optional<TopoFunction> topo_function_from_string(std::string_view name);

/// Location of a point relative to a geometry.
enum class Location { kInterior = 0, kBoundary = 1, kExterior = 2 };

Location locate(Coord p, const Geometry& g);

/// DE-9IM matrix. Entry (i, j) holds the dimension of the intersection of
/// location i of `a` with location j of `b`, or -1 when it is empty.
class IntersectionMatrix {
 public:
  IntersectionMatrix() { cells_.fill(-1); }

  int at(Location a, Location b) const {
    return cells_[index(a, b)];
  }
  bool nonempty(Location a, Location b) const { return at(a, b) >= 0; }
  void raise(Location a, Location b, int dim) {
    int& cell = cells_[index(a, b)];
    if (dim > cell) cell = dim;
  }

  /// Nine characters in row-major order: 'F', '0', '1' or '2'.
  std::string to_string() const;

 private:
  static std::size_t index(Location a, Location b) {
    return static_cast<std::size_t>(a) * 3 + static_cast<std::size_t>(b);
  }

  std::array<int, 9> cells_{};
};

/// Computes the DE-9IM matrix of a against b.
IntersectionMatrix relate(const Geometry& a, const Geometry& b);

/// Evaluates f(a, b). Throws UnsupportedPair when f is undefined for the
/// dimensions of a and b (Overlaps across dimensions; Crosses outside
/// point/line, line/line and line/polygon).
bool eval_predicate(TopoFunction f, const Geometry& a, const Geometry& b);

/// True when f is defined for geometries of dimensions da and db.
bool is_defined(TopoFunction f, int da, int db);

/// Evaluates f against a precomputed matrix.
bool matches(TopoFunction f, const IntersectionMatrix& m, int da, int db);

}  // namespace geobench::geom

#endif  // GEOBENCH_PREDICATES_HPP_
