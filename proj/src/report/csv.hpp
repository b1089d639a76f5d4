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


#ifndef GEOBENCH_SRC_REPORT_CSV_HPP_
#define GEOBENCH_SRC_REPORT_CSV_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace geobench::report {

/// Shortest decimal that reads back to the same double.
std::string format_number(double v);
std::string format_number(std::uint64_t v);

/// RFC 4180 quoting, applied only when needed.
std::string csv_field(std::string_view s);
std::string csv_line(const std::vector<std::string>& fields);
/// Blank lines are skipped. Throws ResultsError on an unterminated quote.
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

}  // namespace geobench::report

#endif  // GEOBENCH_SRC_REPORT_CSV_HPP_
