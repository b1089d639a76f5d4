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


#include "geobench/wkt.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <string>
#include <system_error>
#include <vector>

#include "geobench/error.hpp"

namespace geobench::geom {

std::string format_coordinate(double v) {
  if (v == 0) v = 0;  // drop the sign of negative zero
  char buf[400];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed);
  return std::string(buf, res.ptr);
}

namespace {

void append_coord(std::string& out, Coord c) {
  out += format_coordinate(c.x);
  out += ' ';
  out += format_coordinate(c.y);
}

void append_coord_list(std::string& out, std::span<const Coord> coords) {
  out += '(';
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (i > 0) out += ", ";
    append_coord(out, coords[i]);
  }
  out += ')';
}

class WktReader {
 public:
  explicit WktReader(std::string_view text) : text_(text) {}

  Geometry read() {
    skip_ws();
    if (peek() == '<') skip_crs();
    const std::string tag = word();
    if (tag.empty()) fail("expected a geometry tag");

    if (tag == "MULTIPOINT" || tag == "MULTILINESTRING" || tag == "MULTIPOLYGON" ||
        tag == "GEOMETRYCOLLECTION" || tag == "CIRCULARSTRING" ||
        tag == "COMPOUNDCURVE" || tag == "CURVEPOLYGON" || tag == "TRIANGLE" ||
        tag == "TIN" || tag == "POLYHEDRALSURFACE") {
      throw UnsupportedGeometry("unsupported geometry type " + tag);
    }
    if (tag != "POINT" && tag != "LINESTRING" && tag != "POLYGON") {
      fail("unknown geometry tag '" + tag + "'");
    }

    skip_ws();
    if (std::isalpha(static_cast<unsigned char>(peek()))) {
      const std::string modifier = word();
      if (modifier == "EMPTY") throw UnsupportedGeometry("empty geometries are not supported");
      if (modifier == "Z" || modifier == "M" || modifier == "ZM") {
        throw UnsupportedGeometry("only 2D coordinates are supported");
      }
      fail("unexpected token '" + modifier + "'");
    }

    Geometry g = tag == "POINT"        ? read_point()
                 : tag == "LINESTRING" ? read_line_string()
                                       : read_polygon();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing characters");
    return g;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("WKT parse error at offset " + std::to_string(pos_) + ": " + what);
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  void skip_crs() {
    const auto close = text_.find('>', pos_);
    if (close == std::string_view::npos) fail("unterminated CRS IRI");
    pos_ = close + 1;
    skip_ws();
  }

  std::string word() {
    std::string out;
    while (std::isalpha(static_cast<unsigned char>(peek()))) {
      out += static_cast<char>(std::toupper(static_cast<unsigned char>(text_[pos_])));
      ++pos_;
    }
    return out;
  }

  void expect(char c) {
    skip_ws();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  double number() {
    skip_ws();
    std::size_t start = pos_;
    if (peek() == '+') ++start;
    double v = 0;
    const char* first = text_.data() + start;
    const char* last = text_.data() + text_.size();
    const auto res = std::from_chars(first, last, v, std::chars_format::general);
    if (res.ec != std::errc() || !std::isfinite(v)) fail("expected a finite number");
    pos_ = static_cast<std::size_t>(res.ptr - text_.data());
    return v;
  }

  Coord coord() {
    Coord c{number(), number()};
    skip_ws();
    const char next = peek();
    if (next == '-' || next == '+' || next == '.' || std::isdigit(static_cast<unsigned char>(next))) {
      throw UnsupportedGeometry("only 2D coordinates are supported");
    }
    return c;
  }

  std::vector<Coord> coord_list() {
    expect('(');
    std::vector<Coord> out{coord()};
    while (accept(',')) out.push_back(coord());
    expect(')');
    return out;
  }

  Geometry read_point() {
    expect('(');
    const Coord c = coord();
    expect(')');
    return Geometry::point(c);
  }

  Geometry read_line_string() {
    auto vertices = coord_list();
    try {
      return Geometry::line_string(std::move(vertices));
    } catch (const InvalidGeometry& e) {
      fail(e.what());
    }
  }

  Geometry read_polygon() {
    expect('(');
    auto ring = coord_list();
    if (accept(',')) throw UnsupportedGeometry("polygons with holes are not supported");
    expect(')');
    if (ring.size() < 4) fail("polygon ring needs at least four coordinates");
    if (ring.front() != ring.back()) fail("polygon ring is not closed");
    try {
      return Geometry::polygon(std::move(ring));
    } catch (const InvalidGeometry& e) {
      fail(e.what());
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string wkt_serialize(const Geometry& g) {
  std::string out;
  switch (g.kind()) {
    case GeometryKind::kPoint:
      out = "POINT (";
      append_coord(out, g.coords().front());
      out += ')';
      break;
    case GeometryKind::kLineString:
      out = "LINESTRING ";
      append_coord_list(out, g.coords());
      break;
    case GeometryKind::kPolygon:
      out = "POLYGON (";
      append_coord_list(out, g.coords());
      out += ')';
      break;
  }
  return out;
}

std::string wkt_serialize(const Rectangle& r) {
  const Coord ring[] = {r.min, {r.max.x, r.min.y}, r.max, {r.min.x, r.max.y}, r.min};
  std::string out = "POLYGON (";
  append_coord_list(out, ring);
  out += ')';
  return out;
}

Geometry wkt_parse(std::string_view text) { return WktReader(text).read(); }

}  // namespace geobench::geom
