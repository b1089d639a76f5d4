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

#ifndef GEOBENCH_ERROR_HPP_
#define GEOBENCH_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace geobench {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define GEOBENCH_DEFINE_ERROR(Name)   \
  class Name : public Error {         \
   public:                            \
    using Error::Error;               \
  }

// geometry
GEOBENCH_DEFINE_ERROR(ParseError);
GEOBENCH_DEFINE_ERROR(UnsupportedGeometry);
GEOBENCH_DEFINE_ERROR(UnsupportedPair);
GEOBENCH_DEFINE_ERROR(InvalidGeometry);

// generator / calibrator
GEOBENCH_DEFINE_ERROR(InvalidParams);
GEOBENCH_DEFINE_ERROR(SinkError);
GEOBENCH_DEFINE_ERROR(Unachievable);

// harness
GEOBENCH_DEFINE_ERROR(ConfigError);
GEOBENCH_DEFINE_ERROR(HookFailure);

// suites
GEOBENCH_DEFINE_ERROR(UnknownSuite);
GEOBENCH_DEFINE_ERROR(ManifestError);
GEOBENCH_DEFINE_ERROR(MissingBinding);

// report
GEOBENCH_DEFINE_ERROR(ResultsError);

#undef GEOBENCH_DEFINE_ERROR

}  // namespace geobench

#endif  // GEOBENCH_ERROR_HPP_
