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


#include "geobench/spatial_index.hpp"

#include <algorithm>
#include <cmath>

namespace geobench::cal {

GridIndex::GridIndex(std::vector<geom::Rectangle> boxes, int cells_per_side)
    : boxes_(std::move(boxes)) {
  if (boxes_.empty()) return;
  bounds_ = boxes_.front();
  for (const auto& b : boxes_) {
    bounds_.min = {std::min(bounds_.min.x, b.min.x), std::min(bounds_.min.y, b.min.y)};
    bounds_.max = {std::max(bounds_.max.x, b.max.x), std::max(bounds_.max.y, b.max.y)};
  }
  side_ = cells_per_side > 0
              ? cells_per_side
              : std::max(1, static_cast<int>(std::sqrt(static_cast<double>(boxes_.size()))));
  cell_w_ = std::max(bounds_.width() / side_, 1e-300);
  cell_h_ = std::max(bounds_.height() / side_, 1e-300);
  cells_.resize(static_cast<std::size_t>(side_) * side_);
  for (std::size_t i = 0; i < boxes_.size(); ++i) {
    const auto& b = boxes_[i];
    for (int cy = row(b.min.y); cy <= row(b.max.y); ++cy) {
      for (int cx = column(b.min.x); cx <= column(b.max.x); ++cx) {
        cells_[static_cast<std::size_t>(cy) * side_ + cx].push_back(static_cast<std::uint32_t>(i));
      }
    }
  }
}

int GridIndex::column(double x) const {
  const double c = std::floor((x - bounds_.min.x) / cell_w_);
  return static_cast<int>(std::clamp(c, 0.0, static_cast<double>(side_ - 1)));
}

int GridIndex::row(double y) const {
  const double c = std::floor((y - bounds_.min.y) / cell_h_);
  return static_cast<int>(std::clamp(c, 0.0, static_cast<double>(side_ - 1)));
}

}  // namespace geobench::cal
