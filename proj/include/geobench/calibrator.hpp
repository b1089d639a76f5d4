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


#ifndef GEOBENCH_CALIBRATOR_HPP_
#define GEOBENCH_CALIBRATOR_HPP_

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "geobench/generator.hpp"
#include "geobench/predicates.hpp"
#include "geobench/query.hpp"
#include "geobench/spatial_index.hpp"

namespace geobench::cal {

using gen::FeatureRecord;

/// Region the calibration rectangles grow through: from world.min - margin
/// to world.max + margin.
struct CalibrationFrame {
  geom::Rectangle world;
  double margin = 1.0;
};

CalibrationFrame frame_for(const gen::GeneratorParams& p);
/// Envelope of the features; the margin is the extent over sqrt(m).
CalibrationFrame frame_for(std::span<const FeatureRecord> features);

/// The nested rectangles a calibration walks through. Coarse step s grows
/// both sides by s / steps of the frame; refine(s) lists the rectangles
/// between coarse(s) and coarse(s + 1), first growing the height, then the
/// width, ending at coarse(s + 1). Every rectangle contains its predecessor.
class RectangleSweep {
 public:
  RectangleSweep(const CalibrationFrame& frame, int coarse_steps, int sub_steps = 16);

  int coarse_steps() const { return steps_; }
  /// 0 <= s <= coarse_steps; coarse(0) is the degenerate anchor.
  geom::Rectangle coarse(int s) const;
  /// 0 <= s < coarse_steps; degenerate rectangles are left out.
  std::vector<geom::Rectangle> refine(int s) const;

 private:
  geom::Coord anchor_;
  geom::Coord extent_;
  int steps_;
  int sub_steps_;
};

/// Counts features f(g, R) holds for, pruning with a grid over envelopes.
class SelectionCounter {
 public:
  SelectionCounter(std::span<const FeatureRecord> features, geom::TopoFunction f);

  /// Features carrying key `thema` that satisfy the predicate against r.
  std::uint64_t count(const geom::Rectangle& r, std::uint64_t thema = 1) const;
  std::uint64_t size() const { return features_.size(); }

 private:
  std::uint64_t count_intersecting(const geom::Rectangle& r, int tag, geom::TopoFunction f) const;

  std::span<const FeatureRecord> features_;
  geom::TopoFunction function_;
  GridIndex index_;
};

struct Calibration {
  geom::Rectangle rectangle;
  std::uint64_t count = 0;
  std::uint64_t total = 0;
  double achieved = 0;  ///< count / total
};

/// Grows a rectangle from the frame's lower-left corner until the fraction
/// of features satisfying f(g, R) is as close to `target` as the sweep can
/// get (ties go to the smaller rectangle). Throws InvalidParams for targets
/// outside (0, 1] or an empty feature set and Unachievable for 0 < target <
/// 1/m.
Calibration calibrate_rectangle(std::span<const FeatureRecord> features, geom::TopoFunction f,
                                double target, const CalibrationFrame& frame);
Calibration calibrate_rectangle(std::span<const FeatureRecord> features, geom::TopoFunction f,
                                double target);

std::string render_selection(const SelectionSpec& spec, const geom::Rectangle& r,
                             const gen::GeneratorParams& p, Dialect d);
std::string render_join(const JoinSpec& spec, Dialect d);

QueryInstance instantiate_selection(const SelectionSpec& spec,
                                    std::span<const FeatureRecord> features,
                                    const gen::GeneratorParams& p,
                                    Dialect d = Dialect::kGeoSparql);

/// Index pairs (i, j) with f(left[i], right[j]), ordered by i then j.
using JoinPairs = std::vector<std::pair<std::uint32_t, std::uint32_t>>;
JoinPairs join_pairs(std::span<const FeatureRecord> left, std::span<const FeatureRecord> right,
                     geom::TopoFunction f);
/// Pairs whose left side carries `thema` and right side carries `thema2`.
std::uint64_t count_join(const JoinPairs& pairs, std::span<const FeatureRecord> left,
                         std::span<const FeatureRecord> right, std::uint64_t thema,
                         std::uint64_t thema2);

QueryInstance instantiate_join(const JoinSpec& spec, std::span<const FeatureRecord> left,
                               std::span<const FeatureRecord> right,
                               Dialect d = Dialect::kGeoSparql);

struct WorkloadOptions {
  std::vector<double> targets{0.001, 0.10, 0.25, 0.50, 0.75, 1.0};
  Dialect dialect = Dialect::kGeoSparql;
};

/// Selections {Land x Intersects, POI x Within} x targets x thema {1, 2^k}
/// followed by joins {Land/State Intersects, State/State Touches, POI/State
/// Within} x {1, 2^k}^2. Targets below 1/m are raised to 1/m.
std::vector<QueryInstance> default_workload(const gen::Workload& w,
                                            const WorkloadOptions& options = {});

/// default_workload wrapped as the manifest `calibrate` writes.
WorkloadManifest calibrate_workload(const gen::Workload& w, const WorkloadOptions& options = {});

}  // namespace geobench::cal

#endif  // GEOBENCH_CALIBRATOR_HPP_
