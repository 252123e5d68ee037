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

#include <string>

#include "pclif/parser.hpp"

namespace pclif {

// Exit codes shared by the library entry points and the CLI:
// 0 success, 1 type/check failure, 2 parse error, 3 verification mismatch.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitParseError = 2;
inline constexpr int kExitVerifyMismatch = 3;

struct CommandResult {
  int exit_code = 0;
  std::string output;
};

// Type-checks every definition; one line per definition, with the computed
// symplectic side-condition values.
CommandResult cmd_check(const std::string& source);

// Evaluates a closed expression in the program's scope and prints it.
CommandResult cmd_run(const std::string& source, const std::string& expr_text);

// Prints the Pauli frame of a Clifford definition.
CommandResult cmd_frame(const std::string& source, const std::string& def_text, bool json);

// Applies the operational inverse of a definition to an expression.
CommandResult cmd_invert(const std::string& source, const std::string& def_text,
                         const std::string& expr_text);

// With a gate name: checks the definition's encoding against the dense
// library unitary. Without: runs the internal property battery.
CommandResult cmd_verify(const std::string& source, const std::string& def_text,
                         const std::string& gate_name, bool json);

}  // namespace pclif
