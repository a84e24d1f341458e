// Copyright 2026 The arclens Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace arclens {

// Bad flag values, out-of-range parameters, malformed input data.
// The CLI maps these to exit code 2.
class ParamError : public std::runtime_error {
public:
  explicit ParamError(const std::string& what) : std::runtime_error(what) {}
};

// Filesystem failures. The CLI maps these to exit code 1.
class IoError : public std::runtime_error {
public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace arclens
