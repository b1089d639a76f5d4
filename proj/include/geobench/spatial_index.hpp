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


#ifndef GEOBENCH_SPATIAL_INDEX_HPP_
#define GEOBENCH_SPATIAL_INDEX_HPP_

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "geobench/geometry.hpp"

namespace geobench::cal {

/// Uniform grid over a fixed set of boxes. Each query reports every box
/// whose extent intersects the query box exactly once, in no particular
/// order.
class GridIndex {
 public:
  /// `cells_per_side` of 0 picks roughly sqrt(boxes.size()).
  explicit GridIndex(std::vector<geom::Rectangle> boxes, int cells_per_side = 0);

  template <typename Fn>
  void query(const geom::Rectangle& q, Fn&& fn) const {
    if (boxes_.empty() || q.max.x < bounds_.min.x || q.max.y < bounds_.min.y ||
        q.min.x > bounds_.max.x || q.min.y > bounds_.max.y) {
      return;
    }
    const int cx0 = column(q.min.x), cx1 = column(q.max.x);
    const int cy0 = row(q.min.y), cy1 = row(q.max.y);
    for (int cy = cy0; cy <= cy1; ++cy) {
      for (int cx = cx0; cx <= cx1; ++cx) {
        for (std::uint32_t i : cells_[static_cast<std::size_t>(cy) * side_ + cx]) {
          const geom::Rectangle& b = boxes_[i];
          if (b.max.x < q.min.x || b.min.x > q.max.x || b.max.y < q.min.y || b.min.y > q.max.y) {
            continue;
          }
          // Report only from the first cell shared by the box and the query.
          if (std::max(column(b.min.x), cx0) != cx || std::max(row(b.min.y), cy0) != cy) continue;
          fn(static_cast<std::size_t>(i));
        }
      }
    }
  }

  const geom::Rectangle& box(std::size_t i) const { return boxes_[i]; }
  std::size_t size() const { return boxes_.size(); }

 private:
  int column(double x) const;
  int row(double y) const;

  std::vector<geom::Rectangle> boxes_;
  geom::Rectangle bounds_{};
  int side_ = 1;
  double cell_w_ = 1, cell_h_ = 1;
  std::vector<std::vector<std::uint32_t>> cells_;
};

}  // namespace geobench::cal

#endif  // GEOBENCH_SPATIAL_INDEX_HPP_
