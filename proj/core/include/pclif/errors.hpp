// Copyright 2026 The pclif authors
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

namespace pclif {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Rank or modulus mismatch between operands.
struct DimensionError : Error {
  using Error::Error;
};

// Type checking or side-condition failure.
struct TypeError : Error {
  using Error::Error;
};

struct ParseError : Error {
  int line;
  int column;
  ParseError(const std::string& msg, int line_, int col_)
      : Error(msg + " at " + std::to_string(line_) + ":" + std::to_string(col_)),
        line(line_),
        column(col_) {}
};

// Runtime evaluation failure (step budget, stuck term).
struct EvalError : Error {
  using Error::Error;
};

// A dense matrix is not a Q_{d,n} element.
struct DecodeError : Error {
  using Error::Error;
};

// Broken internal invariant; indicates a bug, not bad input.
struct InternalError : Error {
  using Error::Error;
};

}  // namespace pclif
