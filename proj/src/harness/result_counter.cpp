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


#include "geobench/result_counter.hpp"

#include <algorithm>
#include <cctype>

namespace geobench::harness {
namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

ResultFormat format_from_content_type(std::string_view content_type) {
  const std::string ct = lower(content_type);
  if (ct.find("json") != std::string::npos) return ResultFormat::kJson;
  if (ct.find("xml") != std::string::npos) return ResultFormat::kXml;
  if (ct.find("tab-separated") != std::string::npos) return ResultFormat::kTsv;
  if (ct.find("csv") != std::string::npos) return ResultFormat::kCsv;
  return ResultFormat::kUnknown;
}

void ResultCounter::feed(std::string_view chunk) {
  for (char c : chunk) {
    if (failed_) return;
    if (format_ == ResultFormat::kUnknown) {
      if (is_space(c)) continue;
      if (c == '{') {
        format_ = ResultFormat::kJson;
      } else if (c == '<') {
        format_ = ResultFormat::kXml;
      } else {
        failed_ = true;
        error_ = "unrecognised result format";
        return;
      }
    }
    switch (format_) {
      case ResultFormat::kJson:
        feed_json(c);
        break;
      case ResultFormat::kXml:
        feed_xml(c);
        break;
      default:
        feed_delimited(c);
    }
  }
}

void ResultCounter::feed_json(char c) {
  if (in_string_) {
    if (escape_) {
      escape_ = false;
    } else if (c == '\\') {
      escape_ = true;
      return;
    } else if (c == '"') {
      in_string_ = false;
      if (reading_key_) {
        last_key_ = token_;
        reading_key_ = false;
      }
      return;
    }
    if (reading_key_ && token_.size() < 64) token_ += c;
    return;
  }
  if (is_space(c)) return;
  if (root_done_) {
    failed_ = true;
    error_ = "trailing data after the JSON document";
    return;
  }
  const bool in_object = !stack_.empty() && stack_.back().object;
  switch (c) {
    case '"':
      in_string_ = true;
      if (in_object && expect_key_) {
        reading_key_ = true;
        token_.clear();
        expect_key_ = false;
      }
      return;
    case '{':
    case '[': {
      if (c == '{' && stack_.size() == 3 && !stack_[2].object && stack_[2].key == "bindings" &&
          stack_[1].key == "results") {
        ++rows_;
      }
      std::string key = in_object ? last_key_ : std::string(stack_.empty() ? "" : "[]");
      stack_.push_back({c == '{', std::move(key)});
      expect_key_ = c == '{';
      return;
    }
    case '}':
    case ']':
      if (stack_.empty() || stack_.back().object != (c == '}')) {
        failed_ = true;
        error_ = "mismatched brackets in JSON results";
        return;
      }
      stack_.pop_back();
      expect_key_ = false;
      if (stack_.empty()) root_done_ = true;
      return;
    case ',':
      expect_key_ = in_object;
      return;
    default:
      // Bare literal; an ASK document has "boolean": true or false at the top.
      if (stack_.size() == 1 && in_object && last_key_ == "boolean") {
        if (c == 't') boolean_ = true;
        if (c == 'f') boolean_ = false;
      }
  }
}

void ResultCounter::feed_xml(char c) {
  if (xml_ == XmlState::kTag) {
    if (c != '>') {
      if (is_space(c)) {
        name_done_ = !tag_.empty() || name_done_;
      } else {
        if (!name_done_) tag_ += c;
        last_ = c;
      }
      return;
    }
    xml_ = XmlState::kText;
    const char first = tag_.empty() ? '\0' : tag_.front();
    if (first == '?' || first == '!' || first == '\0') return;
    if (first == '/') {
      --xml_depth_;
      return;
    }
    const bool self_closing = last_ == '/';
    if (!tag_.empty() && tag_.back() == '/') tag_.pop_back();
    const auto colon = tag_.find(':');
    const std::string_view local =
        colon == std::string::npos ? std::string_view(tag_) : std::string_view(tag_).substr(colon + 1);
    saw_root_ = true;
    if (local == "result") ++rows_;
    if (self_closing) return;
    ++xml_depth_;
    if (local == "boolean") {
      xml_ = XmlState::kBoolean;
      text_.clear();
    }
    return;
  }
  if (c != '<') {
    if (xml_ == XmlState::kBoolean && text_.size() < 16 && !is_space(c)) {
      text_ += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return;
  }
  if (xml_ == XmlState::kBoolean) {
    if (text_ == "true" || text_ == "1") boolean_ = true;
    if (text_ == "false" || text_ == "0") boolean_ = false;
  }
  xml_ = XmlState::kTag;
  tag_.clear();
  name_done_ = false;
  last_ = '\0';
}

void ResultCounter::feed_delimited(char c) {
  if (format_ == ResultFormat::kCsv && c == '"') quoted_ = !quoted_;
  if (c == '\n' && !quoted_) {
    if (line_has_content_) ++lines_;
    line_has_content_ = false;
  } else if (c != '\r') {
    line_has_content_ = true;
  }
  rows_ = lines_ > 0 ? lines_ - 1 : 0;
}

bool ResultCounter::finish() {
  if (failed_) return false;
  switch (format_) {
    case ResultFormat::kUnknown:
      error_ = "empty result document";
      failed_ = true;
      break;
    case ResultFormat::kJson:
      if (in_string_ || !stack_.empty() || !root_done_) {
        error_ = "truncated JSON results";
        failed_ = true;
      }
      break;
    case ResultFormat::kXml:
      if (!saw_root_ || xml_depth_ != 0 || xml_ != XmlState::kText) {
        error_ = "truncated XML results";
        failed_ = true;
      }
      break;
    default:
      if (line_has_content_) ++lines_;
      line_has_content_ = false;
      rows_ = lines_ > 0 ? lines_ - 1 : 0;
  }
  return !failed_;
}

}  // namespace geobench::harness
