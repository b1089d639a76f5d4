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


#ifndef GEOBENCH_TESTS_CORPUS_HPP_
#define GEOBENCH_TESTS_CORPUS_HPP_

#include <cstdint>
#include <vector>

#include "de9im_oracle.hpp"
#include "geobench/geometry.hpp"

namespace geobench::testing {

/// Random small integer geometries on a [0, span] grid: points, simple
/// linestrings of 2-4 vertices, and convex polygons (triangles, boxes,
/// hulls). A fraction of entries are copies or sub-boxes of earlier ones so
/// that equal, touching and nested pairs occur often.
std::vector<IntGeometry> random_corpus(std::size_t count, std::uint64_t seed, int span = 6);

geom::Geometry to_geometry(const IntGeometry& g);

}  // namespace geobench::testing

#endif  // GEOBENCH_TESTS_CORPUS_HPP_
