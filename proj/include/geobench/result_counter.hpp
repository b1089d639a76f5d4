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


#ifndef GEOBENCH_RESULT_COUNTER_HPP_
#define GEOBENCH_RESULT_COUNTER_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace geobench::harness {

enum class ResultFormat { kUnknown, kJson, kXml, kCsv, kTsv };

/// Picks the format from a Content-Type header value.
ResultFormat format_from_content_type(std::string_view content_type);

/// Counts solutions in a SPARQL result document fed in arbitrary chunks,
/// without storing it. JSON counts the objects of results.bindings, XML the
/// <result> elements, CSV/TSV the lines after the header. An unknown format
/// is sniffed from the first non-blank byte.
class ResultCounter {
 public:
  explicit ResultCounter(ResultFormat format = ResultFormat::kUnknown) : format_(format) {}

  void feed(std::string_view chunk);
  /// Call after the last chunk. Returns false (with error() set) when the
  /// document was truncated or malformed.
  bool finish();

  std::uint64_t rows() const { return rows_; }
  /// The value of an ASK result, if the document was one.
  std::optional<bool> boolean() const { return boolean_; }
  const std::string& error() const { return error_; }
  ResultFormat format() const { return format_; }

 private:
  void feed_json(char c);
  void feed_xml(char c);
  void feed_delimited(char c);

  ResultFormat format_;
  std::uint64_t rows_ = 0;
  std::optional<bool> boolean_;
  std::string error_;
  bool failed_ = false;

  // JSON state.
  struct Frame {
    bool object;
    std::string key;  ///< key this container was the value of
  };
  std::vector<Frame> stack_;
  bool in_string_ = false;
  bool escape_ = false;
  bool expect_key_ = false;
  bool reading_key_ = false;
  std::string token_;  ///< current key, or the literal after "boolean":
  std::string last_key_;
  bool root_done_ = false;

  // XML state.
  enum class XmlState { kText, kTag, kBoolean } xml_ = XmlState::kText;
  std::string tag_;  ///< element name of the tag being read
  bool name_done_ = false;
  char last_ = '\0';  ///< last non-blank byte inside the tag
  std::string text_;
  int xml_depth_ = 0;
  bool saw_root_ = false;

  // CSV/TSV state.
  bool quoted_ = false;
  bool line_has_content_ = false;
  std::uint64_t lines_ = 0;
};

}  // namespace geobench::harness

#endif  // GEOBENCH_RESULT_COUNTER_HPP_
