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


#include "geobench/calibrator.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "geobench/error.hpp"
#include "geobench/rdf.hpp"
#include "geobench/wkt.hpp"

namespace geobench::cal {
namespace {

using geom::TopoFunction;

constexpr int kSubSteps = 16;

bool strictly_inside(const geom::Rectangle& inner, const geom::Rectangle& outer) {
  return inner.min.x > outer.min.x + geom::kEpsilon && inner.min.y > outer.min.y + geom::kEpsilon &&
         inner.max.x < outer.max.x - geom::kEpsilon && inner.max.y < outer.max.y - geom::kEpsilon;
}

bool degenerate(const geom::Rectangle& r) { return !(r.width() > 0 && r.height() > 0); }

std::vector<geom::Rectangle> envelopes(std::span<const FeatureRecord> features) {
  std::vector<geom::Rectangle> out;
  out.reserve(features.size());
  for (const auto& f : features) out.push_back(geom::envelope(f.geometry));
  return out;
}

Calibration calibrate_with(const SelectionCounter& counter, double target,
                           const CalibrationFrame& frame) {
  const std::uint64_t m = counter.size();
  if (m == 0) throw InvalidParams("cannot calibrate against an empty dataset");
  if (!(target > 0 && target <= 1)) {
    throw InvalidParams("target selectivity must lie in (0, 1]");
  }
  if (target * static_cast<double>(m) < 1 - 1e-9) {
    throw Unachievable("target " + std::to_string(target) + " is below 1/" + std::to_string(m));
  }
  const auto result = [m](const geom::Rectangle& r, std::uint64_t c) {
    return Calibration{r, c, m, static_cast<double>(c) / static_cast<double>(m)};
  };
  if (target >= 1) {
    const auto r = frame.world.inflated(frame.margin);
    return result(r, counter.count(r));
  }

  const int steps = std::max(64, 4 * static_cast<int>(std::ceil(std::sqrt(static_cast<double>(m)))));
  const RectangleSweep sweep(frame, steps, kSubSteps);
  const double goal = target * static_cast<double>(m);
  std::map<int, std::uint64_t> coarse_counts{{0, 0}};
  const auto coarse_count = [&](int s) {
    auto it = coarse_counts.find(s);
    if (it == coarse_counts.end()) it = coarse_counts.emplace(s, counter.count(sweep.coarse(s))).first;
    return it->second;
  };
  if (static_cast<double>(coarse_count(steps)) <= goal) {
    return result(sweep.coarse(steps), coarse_count(steps));
  }
  // Largest coarse step whose count does not exceed the goal.
  int lo = 0, hi = steps;
  while (hi - lo > 1) {
    const int mid = lo + (hi - lo) / 2;
    (static_cast<double>(coarse_count(mid)) <= goal ? lo : hi) = mid;
  }

  std::optional<Calibration> best;
  const auto consider = [&](const geom::Rectangle& r, std::uint64_t c) {
    if (c == 0) return;
    const double err = std::abs(static_cast<double>(c) - goal);
    if (!best || err < std::abs(static_cast<double>(best->count) - goal)) best = result(r, c);
  };
  if (lo >= 1) consider(sweep.coarse(lo), coarse_count(lo));
  for (const auto& r : sweep.refine(lo)) {
    const std::uint64_t c = counter.count(r);
    consider(r, c);
    if (static_cast<double>(c) > goal) break;
  }
  return *best;
}

std::string thema_literal(std::uint64_t key) { return "\"" + std::to_string(key) + "\""; }

void check_thema(std::uint64_t key, int k) {
  if (tag_exponent(key) > k) {
    throw InvalidParams("tag key " + std::to_string(key) + " exceeds 2^" + std::to_string(k));
  }
}

void check_dataset(std::span<const FeatureRecord> features, gen::DatasetKind kind) {
  for (const auto& f : features) {
    if (f.kind != kind) {
      throw InvalidParams("feature " + std::to_string(f.id) + " is not part of dataset " +
                          std::string(gen::to_string(kind)));
    }
  }
}

std::string format_target(double t) {
  std::ostringstream out;
  out << t;
  return out.str();
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string selection_id(const SelectionSpec& s) {
  return "sel-" + std::string(gen::file_stem(s.dataset)) + "-" + lower(geom::to_string(s.function)) +
         "-" + format_target(s.target_selectivity) + "-t" + std::to_string(s.thema);
}

std::string join_id(const JoinSpec& s) {
  return "join-" + std::string(gen::file_stem(s.left)) + "-" + lower(geom::to_string(s.function)) +
         "-" + std::string(gen::file_stem(s.right)) + "-t" + std::to_string(s.thema) + "-t" +
         std::to_string(s.thema2);
}

QueryInstance make_selection(const SelectionSpec& spec, const SelectionCounter& counter,
                             double calibration_target, const gen::GeneratorParams& p, Dialect d) {
  check_thema(spec.thema, p.k);
  const Calibration cal = calibrate_with(counter, calibration_target, frame_for(p));
  QueryInstance q;
  q.spec = spec;
  q.id = selection_id(spec);
  q.geom = cal.rectangle;
  q.sparql = render_selection(spec, cal.rectangle, p, d);
  q.expected_count = counter.count(cal.rectangle, spec.thema);
  q.achieved_selectivity = static_cast<double>(*q.expected_count) / static_cast<double>(counter.size());
  q.spatial_selectivity = cal.achieved;
  return q;
}

QueryInstance make_join(const JoinSpec& spec, const JoinPairs& pairs,
                        std::span<const FeatureRecord> left, std::span<const FeatureRecord> right,
                        Dialect d) {
  QueryInstance q;
  q.spec = spec;
  q.id = join_id(spec);
  q.sparql = render_join(spec, d);
  q.expected_count = count_join(pairs, left, right, spec.thema, spec.thema2);
  const double product = static_cast<double>(left.size()) * static_cast<double>(right.size());
  q.achieved_selectivity = product > 0 ? static_cast<double>(*q.expected_count) / product : 0.0;
  return q;
}

}  // namespace

CalibrationFrame frame_for(const gen::GeneratorParams& p) {
  return {gen::world_envelope(p), p.cell};
}

CalibrationFrame frame_for(std::span<const FeatureRecord> features) {
  if (features.empty()) throw InvalidParams("cannot frame an empty dataset");
  geom::Rectangle world = geom::envelope(features.front().geometry);
  for (const auto& f : features) {
    const auto e = geom::envelope(f.geometry);
    world.min = {std::min(world.min.x, e.min.x), std::min(world.min.y, e.min.y)};
    world.max = {std::max(world.max.x, e.max.x), std::max(world.max.y, e.max.y)};
  }
  double margin = std::max(world.width(), world.height()) /
                  std::sqrt(static_cast<double>(features.size()));
  if (!(margin > 0)) margin = 1.0;
  return {world, margin};
}

RectangleSweep::RectangleSweep(const CalibrationFrame& frame, int coarse_steps, int sub_steps)
    : anchor_{frame.world.min.x - frame.margin, frame.world.min.y - frame.margin},
      extent_{frame.world.width() + 2 * frame.margin, frame.world.height() + 2 * frame.margin},
      steps_(coarse_steps),
      sub_steps_(sub_steps) {
  if (coarse_steps < 1 || sub_steps < 1) throw InvalidParams("sweep needs at least one step");
}

geom::Rectangle RectangleSweep::coarse(int s) const {
  if (s == steps_) return {anchor_, {anchor_.x + extent_.x, anchor_.y + extent_.y}};
  const double t = static_cast<double>(s) / steps_;
  return {anchor_, {anchor_.x + extent_.x * t, anchor_.y + extent_.y * t}};
}

std::vector<geom::Rectangle> RectangleSweep::refine(int s) const {
  const geom::Rectangle from = coarse(s);
  const geom::Rectangle to = coarse(s + 1);
  std::vector<geom::Rectangle> out;
  out.reserve(2 * static_cast<std::size_t>(sub_steps_));
  for (int i = 1; i <= sub_steps_; ++i) {
    const double h = from.max.y + (to.max.y - from.max.y) * i / sub_steps_;
    geom::Rectangle r{anchor_, {from.max.x, i == sub_steps_ ? to.max.y : h}};
    if (!degenerate(r)) out.push_back(r);
  }
  for (int i = 1; i <= sub_steps_; ++i) {
    const double w = from.max.x + (to.max.x - from.max.x) * i / sub_steps_;
    out.push_back({anchor_, {i == sub_steps_ ? to.max.x : w, to.max.y}});
  }
  return out;
}

SelectionCounter::SelectionCounter(std::span<const FeatureRecord> features, TopoFunction f)
    : features_(features), function_(f), index_(envelopes(features)) {}

std::uint64_t SelectionCounter::count(const geom::Rectangle& r, std::uint64_t thema) const {
  const int tag = tag_exponent(thema);
  if (function_ != TopoFunction::kDisjoint) return count_intersecting(r, tag, function_);
  const auto tagged = static_cast<std::uint64_t>(std::count_if(
      features_.begin(), features_.end(), [&](const FeatureRecord& f) { return gen::has_tag(f.id, tag); }));
  return tagged - count_intersecting(r, tag, TopoFunction::kIntersects);
}

std::uint64_t SelectionCounter::count_intersecting(const geom::Rectangle& r, int tag,
                                                   TopoFunction f) const {
  const geom::Geometry rect = geom::Geometry::from_rectangle(r);
  // Features well inside r satisfy exactly Intersects and Within.
  const bool inside_value = f == TopoFunction::kIntersects || f == TopoFunction::kWithin;
  std::uint64_t n = 0;
  index_.query(r.inflated(geom::kEpsilon), [&](std::size_t i) {
    const FeatureRecord& feature = features_[i];
    if (!gen::has_tag(feature.id, tag)) return;
    const bool hit = strictly_inside(index_.box(i), r) ? inside_value
                                                       : geom::eval_predicate(f, feature.geometry, rect);
    n += hit ? 1 : 0;
  });
  return n;
}

Calibration calibrate_rectangle(std::span<const FeatureRecord> features, TopoFunction f,
                                double target, const CalibrationFrame& frame) {
  if (features.empty()) throw InvalidParams("cannot calibrate against an empty dataset");
  return calibrate_with(SelectionCounter(features, f), target, frame);
}

Calibration calibrate_rectangle(std::span<const FeatureRecord> features, TopoFunction f,
                                double target) {
  return calibrate_rectangle(features, f, target, frame_for(features));
}

std::string render_selection(const SelectionSpec& spec, const geom::Rectangle& r,
                             const gen::GeneratorParams& p, Dialect d) {
  std::string wkt = geom::wkt_serialize(r);
  if (!p.crs_uri.empty()) wkt = "<" + p.crs_uri + "> " + wkt;
  std::string q;
  q += "PREFIX ns: <" + gen::namespace_uri(spec.dataset) + ">\n";
  q += "SELECT ?s WHERE {\n";
  q += "  ?s ns:hasGeometry/ns:asWKT ?g .\n";
  q += "  ?s ns:hasTag/ns:hasKey " + thema_literal(spec.thema) + " .\n";
  q += "  FILTER(<" + function_iri(spec.function, d) + ">(?g, " + wkt_literal(wkt) + "))\n";
  q += "}\n";
  return q;
}

std::string render_join(const JoinSpec& spec, Dialect d) {
  std::string q;
  q += "PREFIX ns1: <" + gen::namespace_uri(spec.left) + ">\n";
  q += "PREFIX ns2: <" + gen::namespace_uri(spec.right) + ">\n";
  q += "SELECT ?s1 ?s2 WHERE {\n";
  q += "  ?s1 ns1:hasGeometry/ns1:asWKT ?g1 .\n";
  q += "  ?s1 ns1:hasTag/ns1:hasKey " + thema_literal(spec.thema) + " .\n";
  q += "  ?s2 ns2:hasGeometry/ns2:asWKT ?g2 .\n";
  q += "  ?s2 ns2:hasTag/ns2:hasKey " + thema_literal(spec.thema2) + " .\n";
  q += "  FILTER(<" + function_iri(spec.function, d) + ">(?g1, ?g2))\n";
  q += "}\n";
  return q;
}

QueryInstance instantiate_selection(const SelectionSpec& spec,
                                    std::span<const FeatureRecord> features,
                                    const gen::GeneratorParams& p, Dialect d) {
  check_dataset(features, spec.dataset);
  if (features.empty()) throw InvalidParams("cannot calibrate against an empty dataset");
  return make_selection(spec, SelectionCounter(features, spec.function), spec.target_selectivity,
                        p, d);
}

JoinPairs join_pairs(std::span<const FeatureRecord> left, std::span<const FeatureRecord> right,
                     TopoFunction f) {
  const GridIndex index(envelopes(right));
  JoinPairs pairs;
  std::vector<std::uint32_t> batch;
  for (std::size_t i = 0; i < left.size(); ++i) {
    batch.clear();
    const geom::Geometry& g = left[i].geometry;
    index.query(geom::envelope(g).inflated(geom::kEpsilon), [&](std::size_t j) {
      if (geom::eval_predicate(f, g, right[j].geometry)) batch.push_back(static_cast<std::uint32_t>(j));
    });
    std::sort(batch.begin(), batch.end());
    for (std::uint32_t j : batch) pairs.emplace_back(static_cast<std::uint32_t>(i), j);
  }
  return pairs;
}

std::uint64_t count_join(const JoinPairs& pairs, std::span<const FeatureRecord> left,
                         std::span<const FeatureRecord> right, std::uint64_t thema,
                         std::uint64_t thema2) {
  const int a = tag_exponent(thema);
  const int b = tag_exponent(thema2);
  return static_cast<std::uint64_t>(std::count_if(pairs.begin(), pairs.end(), [&](const auto& pr) {
    return gen::has_tag(left[pr.first].id, a) && gen::has_tag(right[pr.second].id, b);
  }));
}

QueryInstance instantiate_join(const JoinSpec& spec, std::span<const FeatureRecord> left,
                               std::span<const FeatureRecord> right, Dialect d) {
  check_dataset(left, spec.left);
  check_dataset(right, spec.right);
  if (spec.left == spec.right && spec.function != TopoFunction::kTouches) {
    throw InvalidParams("a self-join is only defined for Touches");
  }
  tag_exponent(spec.thema);
  tag_exponent(spec.thema2);
  return make_join(spec, join_pairs(left, right, spec.function), left, right, d);
}

std::vector<QueryInstance> default_workload(const gen::Workload& w, const WorkloadOptions& options) {
  using gen::DatasetKind;
  const gen::GeneratorParams& p = w.params;
  std::vector<std::uint64_t> themas{1};
  if (p.k > 0) themas.push_back(std::uint64_t{1} << p.k);

  std::vector<QueryInstance> out;
  const std::pair<DatasetKind, TopoFunction> selections[] = {
      {DatasetKind::kLandOwnership, TopoFunction::kIntersects},
      {DatasetKind::kPointOfInterest, TopoFunction::kWithin},
  };
  for (const auto& [dataset, function] : selections) {
    const auto& features = w[dataset];
    const SelectionCounter counter(features, function);
    const double floor = 1.0 / static_cast<double>(features.size());
    for (double target : options.targets) {
      for (std::uint64_t thema : themas) {
        const SelectionSpec spec{dataset, function, thema, target};
        out.push_back(make_selection(spec, counter, std::max(target, floor), p, options.dialect));
      }
    }
  }

  const std::tuple<DatasetKind, TopoFunction, DatasetKind> joins[] = {
      {DatasetKind::kLandOwnership, TopoFunction::kIntersects, DatasetKind::kState},
      {DatasetKind::kState, TopoFunction::kTouches, DatasetKind::kState},
      {DatasetKind::kPointOfInterest, TopoFunction::kWithin, DatasetKind::kState},
  };
  for (const auto& [left, function, right] : joins) {
    const JoinPairs pairs = join_pairs(w[left], w[right], function);
    for (std::uint64_t thema : themas) {
      for (std::uint64_t thema2 : themas) {
        out.push_back(make_join({left, right, function, thema, thema2}, pairs, w[left], w[right],
                                options.dialect));
      }
    }
  }
  return out;
}

WorkloadManifest calibrate_workload(const gen::Workload& w, const WorkloadOptions& options) {
  WorkloadManifest m;
  m.suite = "synthetic-default";
  m.dialect = options.dialect;
  m.generator = w.params;
  m.instances = default_workload(w, options);
  return m;
}

}  // namespace geobench::cal
