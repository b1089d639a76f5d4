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


#ifndef GEOBENCH_RDF_HPP_
#define GEOBENCH_RDF_HPP_

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <span>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "geobench/generator.hpp"

namespace geobench::gen {

inline constexpr std::string_view kBaseUri = "http://geobench.example.org/generator/";
inline constexpr std::string_view kRdfType = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
inline constexpr std::string_view kWktLiteral = "http://www.opengis.net/ont/geosparql#wktLiteral";

/// Namespace of one dataset's ontology, e.g.
/// "http://geobench.example.org/generator/pointOfInterest/".
std::string namespace_uri(DatasetKind kind);

/// Triples emitted per feature: rdf:type, hasGeometry, asWKT, and for every
/// tag hasTag, hasKey and hasValue.
inline constexpr std::uint64_t kTriplesPerFeature = 3;
inline constexpr std::uint64_t kTriplesPerTag = 3;

/// Closed-form triple count for a dataset of m features with keys up to 2^k.
std::uint64_t expected_triple_count(std::uint64_t m, int k);

/// Streams N-Triples for features one at a time.
class NTriplesWriter {
 public:
  NTriplesWriter(std::ostream& sink, const GeneratorParams& params);
  ~NTriplesWriter();

  NTriplesWriter(const NTriplesWriter&) = delete;
  NTriplesWriter& operator=(const NTriplesWriter&) = delete;

  void write(const FeatureRecord& feature);
  /// Flushes buffered output; throws SinkError if the stream failed.
  void flush();

  std::uint64_t triples() const { return triples_; }

 private:
  void line(std::string_view subject, std::string_view predicate, std::string_view object);

  std::ostream& sink_;
  const GeneratorParams& params_;
  std::string buffer_;
  std::uint64_t triples_ = 0;
};

/// Writes every feature as N-Triples and returns the number of triples.
/// Throws SinkError on an I/O failure.
std::uint64_t emit_rdf(std::span<const FeatureRecord> features, const GeneratorParams& p,
                       std::ostream& sink);

/// Output file for one dataset: <stem>-<n>-<k>.nt.
std::string dataset_file_name(DatasetKind kind, const GeneratorParams& p);
/// JSON sidecar describing a generated workload: generator-<n>-<k>.json.
std::string sidecar_file_name(const GeneratorParams& p);

/// Generates all four datasets into `dir` (streaming, one feature in memory
/// at a time) plus the JSON sidecar, and returns the sidecar document.
nlohmann::json write_workload_files(const GeneratorParams& p, const std::filesystem::path& dir);

}  // namespace geobench::gen

#endif  // GEOBENCH_RDF_HPP_
