// Copyright 2026 The odqa Authors.
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

#ifndef ODQA_ERROR_HPP_
#define ODQA_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace odqa {

// Raised for anything wrong with caller-supplied data: malformed files,
// out-of-range spans, unknown ids, bad configuration values. The command
// line tool maps it to exit status 1; any other exception is internal.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& message)
      : std::runtime_error(message) {}

  // Prefixes the message with "<source>:<line>: ".
  InputError(const std::string& source, std::size_t line,
             const std::string& message)
      : std::runtime_error(source + ":" + std::to_string(line) + ": " +
                           message),
        line_(line) {}

  // 1-based line number, or 0 when the error is not tied to a line.
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_ = 0;
};

class NotFoundError : public InputError {
 public:
  using InputError::InputError;
};

}  // namespace odqa

#endif  // ODQA_ERROR_HPP_
