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


#ifndef GEOBENCH_WKT_HPP_
#define GEOBENCH_WKT_HPP_

#include <string>
#include <string_view>

#include "geobench/geometry.hpp"

namespace geobench::geom {

/// Canonical WKT: upper-case tag, one space after the tag, ", " between
/// coordinates, shortest round-trip decimals ("2" rather than "2.0").
std::string wkt_serialize(const Geometry& g);

/// WKT of a rectangle as a closed counter-clockwise polygon starting at min.
std::string wkt_serialize(const Rectangle& r);

/// Parses POINT, LINESTRING or single-ring convex POLYGON text.
///
/// Tags are case-insensitive and whitespace is free-form. A leading
/// GeoSPARQL CRS IRI ("<http://...> POINT (1 2)") is skipped. Throws
/// ParseError for malformed text or a geometry violating its invariants,
/// UnsupportedGeometry for valid WKT outside the supported class (MULTI*,
/// EMPTY, Z/M, holes, non-convex rings).
Geometry wkt_parse(std::string_view text);

/// Shortest decimal that round-trips `v`, never in exponent form.
std::string format_coordinate(double v);

}  // namespace geobench::geom

#endif  // GEOBENCH_WKT_HPP_
