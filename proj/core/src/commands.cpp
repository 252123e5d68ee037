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

#include "pclif/commands.hpp"

#include <random>
#include <sstream>

#include "json.hpp"
#include "pclif/oracle.hpp"

namespace pclif {

namespace {

CommandResult parse_failure(const ParseError& err) {
  return {kExitParseError, std::string("parse error: ") + err.what() + "\n"};
}

CommandResult check_failure(const Error& err) {
  return {kExitCheckFailed, std::string("error: ") + err.what() + "\n"};
}

// Loads and fails fast (exit 1) when any definition is broken.
LoadedProgram load_or_throw(const std::string& source) {
  LoadedProgram prog = load_program(source);
  if (!prog.failures.empty()) {
    std::ostringstream msg;
    for (const auto& [name, what] : prog.failures) msg << name << ": " << what << "; ";
    throw TypeError(msg.str());
  }
  return prog;
}

}  // namespace

CommandResult cmd_check(const std::string& source) {
  try {
    LoadedProgram prog = load_program(source);
    std::ostringstream out;
    bool failed = false;
    for (const auto& def : prog.defs) {
      if (def.parametric()) {
        out << def.name << ": parametric (checked at instantiation)\n";
        continue;
      }
      bool this_failed = false;
      for (const auto& [name, what] : prog.failures) {
        if (name == def.name) {
          out << def.name << ": FAIL: " << what << "\n";
          this_failed = true;
          failed = true;
        }
      }
      if (this_failed) continue;
      out << def.name << ": OK\n";
      auto it = prog.traces.find(def.name);
      if (it != prog.traces.end()) {
        for (const auto& sc : it->second.conditions) {
          out << "  " << sc.where << ": omega = " << sc.computed << " (required " << sc.required
              << ")\n";
        }
      }
    }
    return {failed ? kExitCheckFailed : kExitOk, out.str()};
  } catch (const ParseError& err) {
    return parse_failure(err);
  } catch (const Error& err) {
    return check_failure(err);
  }
}

CommandResult cmd_run(const std::string& source, const std::string& expr_text) {
  try {
    LoadedProgram prog = load_or_throw(source);
    // An empty expression runs the program's main definition.
    auto [expr, q] = parse_expr_in(prog, expr_text.empty() ? "main" : expr_text);
    PValue result = eval_p(prog.ctx, expr);
    return {kExitOk, render_pvalue(prog.ctx, result) + "\n"};
  } catch (const ParseError& err) {
    return parse_failure(err);
  } catch (const Error& err) {
    return check_failure(err);
  }
}

CommandResult cmd_frame(const std::string& source, const std::string& def_text, bool json) {
  try {
    LoadedProgram prog = load_or_throw(source);
    NLDefPtr def = resolve_def(prog, def_text);
    Frame frame = compile_frame(prog.ctx, *def);
    if (json) {
      return {kExitOk, frame_to_json(frame) + "\n"};
    }
    return {kExitOk, render_frame(frame)};
  } catch (const ParseError& err) {
    return parse_failure(err);
  } catch (const Error& err) {
    return check_failure(err);
  }
}

CommandResult cmd_invert(const std::string& source, const std::string& def_text,
                         const std::string& expr_text) {
  try {
    LoadedProgram prog = load_or_throw(source);
    NLDefPtr def = resolve_def(prog, def_text);
    PExprPtr expr = parse_expr_expecting(prog, expr_text, def->q_out);
    PValue input = eval_p(prog.ctx, expr);
    PValue result = apply_inverse(prog.ctx, *def, input);
    return {kExitOk, render_pvalue(prog.ctx, result) + "\n"};
  } catch (const ParseError& err) {
    return parse_failure(err);
  } catch (const Error& err) {
    return check_failure(err);
  }
}

namespace {

struct VerifySummary {
  std::size_t checked = 0;
  std::vector<std::string> problems;
};

void battery(const RingContext& ring, const NLDef& def, VerifySummary& sum) {
  CondensedEncoding enc = to_encoding(ring, def);  // constructor checks symplecticity
  int n = enc.psi.dom_rank();

  for (int j = 0; j < 2 * n; ++j) {
    std::vector<std::int64_t> e(2 * static_cast<std::size_t>(n), 0);
    e[static_cast<std::size_t>(j)] = 1;
    PhaseVector b(ring, std::move(e));
    ++sum.checked;
    if (kappa(enc.psi, b) != 0) {
      sum.problems.push_back("kappa nonzero on basis column " + std::to_string(j));
    }
  }

  Frame frame = to_frame(enc);
  ++sum.checked;
  if (!check_frame(frame)) sum.problems.push_back("frame fails the commutation conditions");
  ++sum.checked;
  Frame compiled = compile_frame(ring, def);
  if (!(compiled == frame)) {
    sum.problems.push_back("structural frame compilation disagrees with the encoding frame");
  }

  // Star automorphism on sampled pairs.
  std::mt19937 rng(7);
  std::uniform_int_distribution<std::int64_t> dist(0, ring.d() - 1);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::int64_t> ea(2 * static_cast<std::size_t>(n));
    std::vector<std::int64_t> eb(2 * static_cast<std::size_t>(n));
    for (auto& x : ea) x = dist(rng);
    for (auto& x : eb) x = dist(rng);
    PauliElement a(dist(rng), PhaseVector(ring, std::move(ea)));
    PauliElement b(dist(rng), PhaseVector(ring, std::move(eb)));
    ++sum.checked;
    if (!(evaluate(enc, cprod(a, b)) == cprod(evaluate(enc, a), evaluate(enc, b)))) {
      sum.problems.push_back("evaluate does not distribute over the condensed product");
      break;
    }
  }
}

}  // namespace

CommandResult cmd_verify(const std::string& source, const std::string& def_text,
                         const std::string& gate_name, bool json) {
  try {
    LoadedProgram prog = load_or_throw(source);
    NLDefPtr def = resolve_def(prog, def_text);
    VerifySummary sum;

    if (!gate_name.empty()) {
      auto lib = oracle::gate_library(prog.ctx);
      auto it = lib.find(gate_name);
      if (it == lib.end()) {
        throw TypeError("gate '" + gate_name + "' not in the library for d = " +
                        std::to_string(prog.ctx.d()));
      }
      CondensedEncoding enc = to_encoding(prog.ctx, *def);
      if (q_rank(def->q_in) != it->second.sites) {
        throw DimensionError("definition rank does not match the gate");
      }
      std::size_t samples = q_rank(def->q_in) <= 2 ? 0 : 2000;
      auto report = oracle::verify_encoding(enc, it->second.unitary, samples);
      sum.checked = report.checked;
      for (const auto& mm : report.mismatches) {
        sum.problems.push_back("on " + render_pauli(mm.input) + ": encoding gives " +
                               render_pauli(mm.via_encoding) + ", conjugation gives " +
                               render_pauli(mm.via_conjugation));
      }
    } else {
      battery(prog.ctx, *def, sum);
    }

    std::ostringstream out;
    if (json) {
      nlohmann::json j;
      j["definition"] = def->name;
      j["checked"] = sum.checked;
      j["problems"] = sum.problems;
      j["ok"] = sum.problems.empty();
      out << j.dump() << "\n";
    } else {
      out << def->name << ": " << sum.checked << " checks, "
          << (sum.problems.empty() ? "all passed" : "FAILURES:") << "\n";
      for (const auto& p : sum.problems) out << "  " << p << "\n";
    }
    return {sum.problems.empty() ? kExitOk : kExitVerifyMismatch, out.str()};
  } catch (const ParseError& err) {
    return parse_failure(err);
  } catch (const Error& err) {
    return check_failure(err);
  }
}

}  // namespace pclif
