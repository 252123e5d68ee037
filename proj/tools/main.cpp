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

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "pclif/commands.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "cannot open '" << path << "'\n";
    std::exit(pclif::kExitParseError);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int emit(const pclif::CommandResult& result) {
  (result.exit_code == 0 ? std::cout : std::cerr) << result.output;
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"type checker and interpreter for qudit projective Clifford programs"};
  app.require_subcommand(1);

  std::string file, expr, def, gate;
  bool json = false;

  auto* check = app.add_subcommand("check", "type-check every definition");
  check->add_option("file", file)->required();

  auto* run = app.add_subcommand("run", "evaluate a closed expression (default: main)");
  run->add_option("file", file)->required();
  run->add_option("expr", expr);

  auto* frame = app.add_subcommand("frame", "print the Pauli frame of a Clifford");
  frame->add_option("file", file)->required();
  frame->add_option("def", def)->required();
  frame->add_flag("--json", json, "structured output");

  auto* invert = app.add_subcommand("invert", "apply the inverse of a Clifford");
  invert->add_option("file", file)->required();
  invert->add_option("def", def)->required();
  invert->add_option("expr", expr)->required();

  auto* verify = app.add_subcommand("verify", "check an encoding against the dense oracle");
  verify->add_option("file", file)->required();
  verify->add_option("def", def)->required();
  verify->add_option("--gate", gate, "library gate to compare against");
  verify->add_flag("--json", json, "structured output");

  CLI11_PARSE(app, argc, argv);

  if (check->parsed()) return emit(pclif::cmd_check(read_file(file)));
  if (run->parsed()) return emit(pclif::cmd_run(read_file(file), expr));
  if (frame->parsed()) return emit(pclif::cmd_frame(read_file(file), def, json));
  if (invert->parsed()) return emit(pclif::cmd_invert(read_file(file), def, expr));
  if (verify->parsed()) return emit(pclif::cmd_verify(read_file(file), def, gate, json));
  return 0;
}
