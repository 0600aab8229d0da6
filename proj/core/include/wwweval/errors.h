// Copyright 2026 The wwweval Authors.
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

#ifndef WWWEVAL_ERRORS_H_
#define WWWEVAL_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wwweval {

// Root of every error thrown by the library. The CLI maps each subclass to
// a distinct exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text. line() is 1-based; 0 when the error is not tied to a
// particular line.
class ParseError : public Error {
 public:
  ParseError(const std::string &message, std::size_t line)
      : Error(line == 0 ? message
                        : "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Well-formed input that violates an operation's preconditions.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace wwweval

#endif  // WWWEVAL_ERRORS_H_
