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

// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Every tolerance and time bound is pinned here.

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "pclif/commands.hpp"
#include "pclif/oracle.hpp"
#include "term_gen.hpp"

using namespace pclif;

namespace {

struct Check {
  std::size_t total = 0;
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    ++total;
    if (!ok && failures.size() < 8) failures.push_back(what);
    if (!ok && failures.size() >= 8) failures.resize(8);
  }
};

std::string fixture(const std::string& name) {
  std::ifstream in(std::string(PCLIF_FIXTURE_DIR) + "/" + name);
  if (!in) throw Error("missing fixture " + name);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

PExprPtr embed_xz(const RingContext& ring, std::int64_t x, std::int64_t z) {
  return p_embed(c_pair(c_const(ring.norm(x)), c_const(ring.norm(z))));
}

NLDefPtr fourier_def(const RingContext& ring) {
  PExprPtr body =
      p_case_xz(p_var("q"), embed_xz(ring, 0, 1), embed_xz(ring, ring.d() - 1, 0));
  return std::make_shared<NLDef>(
      NLDef{"fourier", NLDef::Kind::CliffordFn, q_pauli(), q_pauli(), "q", body});
}

NLDefPtr identity_def(const QTypePtr& q) {
  return std::make_shared<NLDef>(
      NLDef{"identity", NLDef::Kind::CliffordFn, q, q, "q", p_var("q")});
}

// Valid encodings without a group sampler: words over the verified library.
std::vector<CondensedEncoding> generators(const RingContext& ring) {
  std::vector<CondensedEncoding> out;
  for (const auto& [name, gate] : oracle::gate_library(ring)) {
    if (gate.sites == 1) out.push_back(gate.encoding);
  }
  return out;
}

CondensedEncoding random_word(const RingContext& ring, std::mt19937& rng) {
  auto gens = generators(ring);
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  std::uniform_int_distribution<int> len(1, 8);
  CondensedEncoding acc = identity_encoding(ring, 1);
  int k = len(rng);
  for (int i = 0; i < k; ++i) acc = compose(gens[pick(rng)], acc);
  return acc;
}

// ---------------------------------------------------------------------------

void criterion1(Check& c) {
  std::string corpus = fixture("corpus.pc");
  CommandResult r1 = cmd_run(corpus, "hadamard Y");
  c.expect(r1.exit_code == 0 && r1.output == "<1> Y\n",
           "hadamard Y printed '" + r1.output + "'");
  CommandResult r2 = cmd_run(corpus, "cnot_2 (X ** Y)");
  c.expect(r2.exit_code == 0 && r2.output == "Y ** Z\n",
           "cnot_2 (X ** Y) printed '" + r2.output + "'");
  CommandResult r3 = cmd_invert(corpus, "S_2", "X");
  c.expect(r3.exit_code == 0 && r3.output == "<1> Y\n",
           "(S_2)^-1 X printed '" + r3.output + "'");

  // The interpreter value for hadamard Y is exactly <1>[1,1].
  LoadedProgram prog = load_program(corpus);
  auto [expr, q] = parse_expr_in(prog, "hadamard Y");
  PValue v = eval_p(prog.ctx, expr);
  c.expect(v.phase == 1 && flatten_value(v.value) == std::vector<std::int64_t>{1, 1},
           "hadamard Y did not normalize to <1>[1,1]");
}

void criterion2(Check& c) {
  CommandResult bad = cmd_check(fixture("ill_typed.pc"));
  c.expect(bad.exit_code == kExitCheckFailed, "ill_typed was not rejected");
  c.expect(bad.output.find("omega = 0") != std::string::npos &&
               bad.output.find("required 1") != std::string::npos,
           "rejection did not report omega = 0 where 1 is required");

  CommandResult good = cmd_check(fixture("corpus.pc"));
  c.expect(good.exit_code == kExitOk, "corpus did not check");
  c.expect(good.output.find("hadamard: OK") != std::string::npos,
           "hadamard was not reported OK");
  // At d = 2 the hadamard side condition evaluates to d - 1 = 1.
  c.expect(good.output.find("omega = 1 (required 1)") != std::string::npos,
           "hadamard side condition value not reported as 1");
}

void criterion3(Check& c) {
  for (std::int64_t d : {2, 3}) {
    RingContext ring(d);
    auto lib = oracle::gate_library(ring);
    auto all = oracle::all_paulis(ring, 1);
    for (const auto& [name, gate] : lib) {
      if (gate.sites != 1) continue;
      for (const auto& p : all) {
        PauliElement lhs = evaluate(gate.encoding, p);
        PauliElement rhs = oracle::conjugate(gate.unitary, p);
        c.expect(lhs == rhs, name + " disagrees with conjugation on " + render_pauli(p));
        // Entrywise closeness of the dense forms.
        oracle::ComplexMatrix dense_lhs = oracle::dense_pauli(lhs);
        oracle::ComplexMatrix dense_rhs =
            gate.unitary * oracle::dense_pauli(p) * gate.unitary.adjoint();
        c.expect(oracle::approx_equal(dense_lhs, dense_rhs, 1e-8),
                 name + " dense mismatch on " + render_pauli(p));
      }
    }
  }
}

void criterion4(Check& c) {
  RingContext d2(2);
  auto lib2 = oracle::gate_library(d2);
  auto all2 = oracle::all_paulis(d2, 2);

  std::vector<std::pair<std::string, std::pair<CondensedEncoding, oracle::ComplexMatrix>>>
      cases;
  for (const char* g : {"cnot", "cz", "swap"}) {
    cases.push_back({g, {lib2.at(g).encoding, lib2.at(g).unitary}});
  }
  // Parallel compositions of single-site programs.
  NLDefPtr h2 = std::make_shared<NLDef>(NLDef{
      "hadamard", NLDef::Kind::CliffordFn, q_pauli(), q_pauli(), "q",
      p_case_xz(p_var("q"), embed_xz(d2, 0, 1), embed_xz(d2, 1, 0))});
  NLDefPtr s2 = std::make_shared<NLDef>(NLDef{
      "S_2", NLDef::Kind::CliffordFn, q_pauli(), q_pauli(), "q",
      p_case_xz(p_var("q"), embed_xz(d2, 1, 1), embed_xz(d2, 0, 1))});
  cases.push_back({"hadamard||identity",
                   {to_encoding(d2, *parallel_clifford(h2, identity_def(q_pauli()))),
                    oracle::kron(lib2.at("hadamard").unitary,
                                 oracle::ComplexMatrix::Identity(2, 2))}});
  cases.push_back({"S||hadamard",
                   {to_encoding(d2, *parallel_clifford(s2, h2)),
                    oracle::kron(lib2.at("s_gate").unitary, lib2.at("hadamard").unitary)}});

  for (const auto& [name, pair] : cases) {
    const auto& [enc, u] = pair;
    for (const auto& p : all2) {
      c.expect(evaluate(enc, p) == oracle::conjugate(u, p),
               name + " disagrees on " + render_pauli(p));
    }
  }

  // d = 3, n = 2: >= 1000 random elements per embedded gate.
  RingContext d3(3);
  auto lib3 = oracle::gate_library(d3);
  NLDefPtr f3 = fourier_def(d3);
  std::vector<std::pair<std::string, std::pair<CondensedEncoding, oracle::ComplexMatrix>>>
      cases3;
  cases3.push_back({"F3||F3",
                    {to_encoding(d3, *parallel_clifford(f3, f3)),
                     oracle::kron(lib3.at("fourier").unitary, lib3.at("fourier").unitary)}});
  NLDefPtr shift3 = pauli_to_clifford(PauliElement(0, PhaseVector(d3, {1, 0})));
  NLDefPtr clock3 = pauli_to_clifford(PauliElement(0, PhaseVector(d3, {0, 1})));
  cases3.push_back({"shift||clock",
                    {to_encoding(d3, *parallel_clifford(shift3, clock3)),
                     oracle::kron(lib3.at("shift").unitary, lib3.at("clock").unitary)}});

  std::mt19937 rng(2026);
  std::uniform_int_distribution<std::int64_t> dist(0, 2);
  for (const auto& [name, pair] : cases3) {
    const auto& [enc, u] = pair;
    for (int trial = 0; trial < 1000; ++trial) {
      std::vector<std::int64_t> e(4);
      for (auto& x : e) x = dist(rng);
      PauliElement p(dist(rng), PhaseVector(d3, std::move(e)));
      c.expect(evaluate(enc, p) == oracle::conjugate(u, p),
               name + " disagrees on " + render_pauli(p));
    }
  }
}

void criterion5(Check& c) {
  std::mt19937 rng(555);
  for (std::int64_t d : {2, 3, 4, 5}) {
    RingContext ring(d);
    auto all = oracle::all_paulis(ring, 1);

    // Star phase closure, exhaustive over all pairs of Q_{d,1}.
    for (const auto& a : all) {
      for (const auto& b : all) {
        PauliElement s = cprod(a, b);
        c.expect(s.phase >= 0 && s.phase < d, "phase left Zd in a condensed product");
      }
    }

    std::vector<CondensedEncoding> encodings = generators(ring);
    for (int i = 0; i < 6; ++i) encodings.push_back(random_word(ring, rng));

    for (const auto& enc : encodings) {
      // kappa vanishes on basis vectors.
      for (const auto& b : basis(ring, 1)) {
        c.expect(kappa(enc.psi, b) == 0, "kappa nonzero on a basis vector");
      }
      // Frames are well-formed.
      c.expect(check_frame(to_frame(enc)), "frame failed the commutation conditions");
      // Inverses round-trip.
      c.expect(compose(invert(enc), enc) == identity_encoding(ring, 1),
               "left inverse failed");
      c.expect(compose(enc, invert(enc)) == identity_encoding(ring, 1),
               "right inverse failed");
      // Evaluation distributes over the condensed product.
      std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
      for (int trial = 0; trial < 60; ++trial) {
        const auto& a = all[pick(rng)];
        const auto& b = all[pick(rng)];
        c.expect(evaluate(enc, cprod(a, b)) == cprod(evaluate(enc, a), evaluate(enc, b)),
                 "evaluate does not distribute over the condensed product");
      }
    }

    // Composition equals sequential evaluation on all basis Paulis.
    for (int trial = 0; trial < 25; ++trial) {
      CondensedEncoding e1 = random_word(ring, rng);
      CondensedEncoding e2 = random_word(ring, rng);
      CondensedEncoding both = compose(e2, e1);
      for (const auto& b : basis(ring, 1)) {
        PauliElement p(0, b);
        c.expect(evaluate(both, p) == evaluate(e2, evaluate(e1, p)),
                 "compose disagrees with sequential evaluation");
      }
    }
  }
}

void criterion6(Check& c) {
  std::string source = fixture("repx.pc");
  CommandResult checked = cmd_check(source);
  c.expect(checked.exit_code == kExitOk, "repX did not type-check");

  LoadedProgram prog = load_program(source);
  NLDefPtr repx = resolve_def(prog, "repX");
  Frame frame = compile_frame(prog.ctx, *repx);
  c.expect(frame.rows.size() == 5, "repX frame does not have 5 rows");

  // Fig-8 circuit: X on the three data qubits, then the four CNOTs.
  std::vector<oracle::CircuitOp> ops = {{"shift", {0}}, {"shift", {1}}, {"shift", {2}},
                                        {"cnot", {0, 3}}, {"cnot", {1, 3}}, {"cnot", {1, 4}},
                                        {"cnot", {2, 4}}};
  oracle::ComplexMatrix u = oracle::build_circuit(prog.ctx, 5, ops);
  c.expect(u.rows() == 32, "repX circuit is not 32 x 32");

  for (int i = 0; i < 5; ++i) {
    PauliElement xi(0, basis_x(prog.ctx, 5, i));
    PauliElement zi(0, basis_z(prog.ctx, 5, i));
    c.expect(frame.rows[static_cast<std::size_t>(i)].first == oracle::conjugate(u, xi),
             "repX frame row " + std::to_string(i + 1) + " X disagrees with the circuit");
    c.expect(frame.rows[static_cast<std::size_t>(i)].second == oracle::conjugate(u, zi),
             "repX frame row " + std::to_string(i + 1) + " Z disagrees with the circuit");
  }
}

void criterion7(Check& c) {
  for (std::int64_t d : {2, 3}) {
    RingContext ring(d);
    testgen::TermGen gen(ring, 4242 + static_cast<unsigned>(d));
    const int terms = 5000;  // 5000 per d; 10^4 total
    for (int i = 0; i < terms; ++i) {
      CTypePtr t = gen.random_first_order_type(2);
      CExprPtr e = gen.closed(t, 6);
      try {
        CTypePtr t0 = typecheck_c(ring, LinearCtx{}, e);
        c.expect(type_equal(t0, t), "generated term has the wrong type");
        CExprPtr cur = e;
        bool done = false;
        bool preserved = true;
        for (std::int64_t steps = 0; steps < kDefaultStepBudget; ++steps) {
          CStep s = step_c(ring, cur);
          if (s.value) {
            done = true;
            break;
          }
          cur = s.next;
          if (!type_equal(typecheck_c(ring, LinearCtx{}, cur), t)) preserved = false;
        }
        c.expect(preserved, "type not preserved by a step");
        c.expect(done, "term did not normalize within the budget");
      } catch (const Error& err) {
        c.expect(false, std::string("generator or checker failure: ") + err.what());
      }
    }

    // Linearity of denotation for generated closed functions.
    for (int i = 0; i < 120; ++i) {
      CTypePtr arg = gen.random_first_order_type(2);
      CTypePtr res = gen.random_first_order_type(2);
      CExprPtr f = gen.closed_function(arg, res, 4);
      auto apply = [&](const CValuePtr& v) {
        return flatten_value(eval_c(ring, c_app(f, value_to_expr(v))));
      };
      auto bs = basis_values(arg);
      for (const auto& u : bs) {
        for (const auto& w : bs) {
          auto fu = apply(u);
          auto fw = apply(w);
          auto uw = flatten_value(u);
          auto wf = flatten_value(w);
          std::vector<std::int64_t> sum(uw.size());
          for (std::size_t k = 0; k < uw.size(); ++k) sum[k] = ring.add(uw[k], wf[k]);
          auto lhs = apply(unflatten_value(arg, sum));
          std::vector<std::int64_t> rhs(fu.size());
          for (std::size_t k = 0; k < fu.size(); ++k) rhs[k] = ring.add(fu[k], fw[k]);
          c.expect(lhs == rhs, "f(u + w) != f(u) + f(w)");
        }
        for (ZdScalar r = 0; r < ring.d(); ++r) {
          auto uf = flatten_value(u);
          std::vector<std::int64_t> scaled(uf.size());
          for (std::size_t k = 0; k < uf.size(); ++k) scaled[k] = ring.mul(r, uf[k]);
          auto lhs = apply(unflatten_value(arg, scaled));
          auto fu = apply(u);
          std::vector<std::int64_t> rhs(fu.size());
          for (std::size_t k = 0; k < fu.size(); ++k) rhs[k] = ring.mul(r, fu[k]);
          c.expect(lhs == rhs, "f(r u) != r f(u)");
        }
      }
    }
  }
}

void criterion8(Check& c) {
  std::mt19937 rng(88);
  // Library-gate oracle equivalence at the extra dimensions.
  for (std::int64_t d : {4, 5}) {
    RingContext ring(d);
    for (const auto& [name, gate] : oracle::gate_library(ring)) {
      auto report = oracle::verify_encoding(gate.encoding, gate.unitary);
      c.expect(report.ok(), name + " fails oracle equivalence at d=" + std::to_string(d));
    }
  }
  // For odd d, every (d/2)k correction is identically zero: kappa, the
  // condensed-product correction, and the pow correction.
  RingContext d5(5);
  auto all5 = oracle::all_paulis(d5, 1);
  std::vector<CondensedEncoding> encodings = generators(d5);
  for (int i = 0; i < 5; ++i) encodings.push_back(random_word(d5, rng));
  for (const auto& enc : encodings) {
    for (const auto& p : all5) {
      c.expect(kappa(enc.psi, p.vector) == 0, "kappa nonzero at odd d");
    }
  }
  for (const auto& a : all5) {
    for (const auto& b : all5) {
      ExtendedVector ua = lift_vec(a.vector), ub = lift_vec(b.vector);
      std::int64_t k = d5.sgn(omega_prime(ua, ub)) + sgn_vec(ua.add(ub));
      c.expect(k == 0, "condensed-product correction nonzero at odd d");
    }
    for (ZdScalar r = 0; r < 5; ++r) {
      c.expect(sgn_vec(lift_vec(a.vector).scale(d5.lift(r))) == 0,
               "pow correction nonzero at odd d");
    }
  }
}

struct Criterion {
  int number;
  const char* description;
  double limit_seconds;
  std::function<void(Check&)> body;
};

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {1, "worked-example exactness (hadamard Y, cnot_2, S_2 inverse)", 1.0, criterion1},
      {2, "rejection exactness (ill_typed; hadamard side condition)", 1.0, criterion2},
      {3, "oracle equivalence, exhaustive, n=1, d in {2,3}", 5.0, criterion3},
      {4, "oracle equivalence, two qudits (d=2 exhaustive, d=3 sampled)", 10.0, criterion4},
      {5, "algebraic law suite, d in {2,3,4,5}", 30.0, criterion5},
      {6, "repX end-to-end against the 32x32 circuit unitary", 5.0, criterion6},
      {7, "lambda-C meta-theory as runtime properties", 60.0, criterion7},
      {8, "even/odd parity coverage (d=4, d=5)", 30.0, criterion8},
  };

  bool all_ok = true;
  for (const auto& crit : criteria) {
    Check check;
    auto start = std::chrono::steady_clock::now();
    std::string error;
    try {
      crit.body(check);
    } catch (const std::exception& e) {
      error = e.what();
    }
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool ok = error.empty() && check.failures.empty() && elapsed <= crit.limit_seconds;
    all_ok = all_ok && ok;
    std::cout << "criterion " << crit.number << ": " << (ok ? "PASS" : "FAIL") << " ("
              << check.total << " checks, " << static_cast<int>(elapsed * 1000) << " ms, limit "
              << static_cast<int>(crit.limit_seconds) << " s) - " << crit.description << "\n";
    if (!error.empty()) std::cout << "  exception: " << error << "\n";
    for (const auto& f : check.failures) std::cout << "  " << f << "\n";
    if (elapsed > crit.limit_seconds) std::cout << "  exceeded the time limit\n";
  }
  return all_ok ? 0 : 1;
}
