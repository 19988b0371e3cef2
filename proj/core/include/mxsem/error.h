// Copyright 2026 The mxsem Authors.
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

#ifndef MXSEM_ERROR_H_
#define MXSEM_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace mxsem {

// Malformed input file content. `line` is 1-based; 0 when not line-bound.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : std::runtime_error(line == 0 ? message
                                     : "line " + std::to_string(line) + ": " +
                                           message),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Input that parsed but violates a domain invariant. Carries every problem
// found, not just the first.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<std::string> problems)
      : std::runtime_error(Join(problems)), problems_(std::move(problems)) {}

  const std::vector<std::string>& problems() const { return problems_; }

 private:
  static std::string Join(const std::vector<std::string>& problems) {
    std::string out;
    for (const auto& p : problems) {
      if (!out.empty()) out += "; ";
      out += p;
    }
    return out;
  }

  std::vector<std::string> problems_;
};

// A caller broke an operation's precondition.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace mxsem

#endif  // MXSEM_ERROR_H_
