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


#include "geobench/rdf.hpp"

#include <fstream>

#include "geobench/error.hpp"
#include "geobench/wkt.hpp"

namespace geobench::gen {
namespace {

constexpr std::size_t kFlushThreshold = 1 << 20;

std::string_view local_name(DatasetKind kind) {
  switch (kind) {
    case DatasetKind::kLandOwnership:
      return "landOwnership";
    case DatasetKind::kState:
      return "state";
    case DatasetKind::kRoad:
      return "road";
    case DatasetKind::kPointOfInterest:
      return "pointOfInterest";
  }
  return "?";
}

void append_iri(std::string& out, std::string_view ns, std::string_view local) {
  out += '<';
  out += ns;
  out += local;
  out += '>';
}

void append_literal(std::string& out, std::string_view text) {
  out += '"';
  for (char c : text) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\r':
        out += "\\r";
        break;
      default:
        out += c;
    }
  }
  out += '"';
}

}  // namespace

std::string namespace_uri(DatasetKind kind) {
  std::string out(kBaseUri);
  out += local_name(kind);
  out += '/';
  return out;
}

std::uint64_t expected_triple_count(std::uint64_t m, int k) {
  std::uint64_t tags = 0;
  for (int j = 0; j <= k; ++j) tags += tag_count(m, j);
  return kTriplesPerFeature * m + kTriplesPerTag * tags;
}

NTriplesWriter::NTriplesWriter(std::ostream& sink, const GeneratorParams& params)
    : sink_(sink), params_(params) {
  buffer_.reserve(kFlushThreshold + 4096);
}

NTriplesWriter::~NTriplesWriter() {
  try {
    flush();
  } catch (const SinkError&) {
    // Reported by an explicit flush(); nothing to do while unwinding.
  }
}

void NTriplesWriter::line(std::string_view subject, std::string_view predicate,
                          std::string_view object) {
  buffer_ += subject;
  buffer_ += ' ';
  buffer_ += predicate;
  buffer_ += ' ';
  buffer_ += object;
  buffer_ += " .\n";
  ++triples_;
}

void NTriplesWriter::write(const FeatureRecord& feature) {
  const std::string ns = namespace_uri(feature.kind);
  const std::string id = std::to_string(feature.id);

  std::string subject, geometry, object;
  append_iri(subject, ns, "feature/" + id);
  append_iri(geometry, ns, "geometry/" + id);

  append_iri(object, ns, to_string(feature.kind));
  line(subject, "<" + std::string(kRdfType) + ">", object);
  line(subject, "<" + ns + "hasGeometry>", geometry);

  std::string wkt;
  if (!params_.crs_uri.empty()) wkt = "<" + params_.crs_uri + "> ";
  wkt += geom::wkt_serialize(feature.geometry);
  object.clear();
  append_literal(object, wkt);
  object += "^^<";
  object += kWktLiteral;
  object += '>';
  line(geometry, "<" + ns + "asWKT>", object);

  for (const TagAssignment& tag : feature.tags) {
    std::string tag_node;
    append_iri(tag_node, ns, "tag/" + id + "/" + tag.key);
    line(subject, "<" + ns + "hasTag>", tag_node);
    object.clear();
    append_literal(object, tag.key);
    line(tag_node, "<" + ns + "hasKey>", object);
    object.clear();
    append_literal(object, tag.value);
    line(tag_node, "<" + ns + "hasValue>", object);
  }

  if (buffer_.size() >= kFlushThreshold) flush();
}

void NTriplesWriter::flush() {
  if (!buffer_.empty()) {
    sink_.write(buffer_.data(), static_cast<std::streamsize>(buffer_.size()));
    buffer_.clear();
  }
  sink_.flush();
  if (!sink_) throw SinkError("failed writing N-Triples output");
}

std::uint64_t emit_rdf(std::span<const FeatureRecord> features, const GeneratorParams& p,
                       std::ostream& sink) {
  NTriplesWriter writer(sink, p);
  for (const FeatureRecord& f : features) writer.write(f);
  writer.flush();
  return writer.triples();
}

std::string dataset_file_name(DatasetKind kind, const GeneratorParams& p) {
  return std::string(file_stem(kind)) + "-" + std::to_string(p.n) + "-" + std::to_string(p.k) +
         ".nt";
}

std::string sidecar_file_name(const GeneratorParams& p) {
  return "generator-" + std::to_string(p.n) + "-" + std::to_string(p.k) + ".json";
}

nlohmann::json write_workload_files(const GeneratorParams& p, const std::filesystem::path& dir) {
  p.validate();
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw SinkError("cannot create " + dir.string() + ": " + ec.message());

  nlohmann::json sidecar;
  sidecar["schema_version"] = 1;
  sidecar["params"] = p;
  std::uint64_t total = 0;
  for (DatasetKind kind : kAllDatasets) {
    const auto file = dir / dataset_file_name(kind, p);
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    if (!out) throw SinkError("cannot open " + file.string());
    NTriplesWriter writer(out, p);
    std::uint64_t features = 0;
    visit_dataset(kind, p, [&](FeatureRecord&& f) {
      writer.write(f);
      ++features;
    });
    writer.flush();
    total += writer.triples();
    sidecar["datasets"][std::string(to_string(kind))] = {
        {"file", file.filename().string()},
        {"namespace", namespace_uri(kind)},
        {"features", features},
        {"triples", writer.triples()},
    };
  }
  const geom::Rectangle world = world_envelope(p);
  sidecar["world_envelope"] = {{"min", {world.min.x, world.min.y}},
                               {"max", {world.max.x, world.max.y}},
                               {"wkt", geom::wkt_serialize(world)}};
  sidecar["total_triples"] = total;

  const auto path = dir / sidecar_file_name(p);
  std::ofstream out(path, std::ios::trunc);
  out << sidecar.dump(2) << '\n';
  if (!out) throw SinkError("cannot write " + path.string());
  return sidecar;
}

}  // namespace geobench::gen
