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

#include "pclif/encoding.hpp"

#include <random>

#include "doctest.h"
#include "pclif/oracle.hpp"

using namespace pclif;

namespace {

SymplecticMap map_of(const RingContext& ctx, int cod,
                     std::vector<std::vector<std::int64_t>> cols) {
  std::vector<PhaseVector> columns;
  for (auto& c : cols) columns.emplace_back(ctx, std::move(c));
  return SymplecticMap(ctx, cod, std::move(columns));
}

// Random products of library encodings, giving valid encodings without a
// group sampler.
std::vector<CondensedEncoding> generator_library(const RingContext& ctx) {
  std::vector<CondensedEncoding> out;
  for (const auto& [name, gate] : oracle::gate_library(ctx)) {
    if (gate.sites == 1) out.push_back(gate.encoding);
  }
  return out;
}

CondensedEncoding random_word(const RingContext& ctx, std::mt19937& rng, int max_len = 8) {
  auto gens = generator_library(ctx);
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  std::uniform_int_distribution<int> len(1, max_len);
  CondensedEncoding acc = identity_encoding(ctx, 1);
  int k = len(rng);
  for (int i = 0; i < k; ++i) acc = compose(gens[pick(rng)], acc);
  return acc;
}

}  // namespace

TEST_CASE("is_symplectic examples") {
  RingContext ctx(2);
  CHECK(is_symplectic(SymplecticMap::identity(ctx, 1)));
  CHECK(is_symplectic(SymplecticMap::identity(ctx, 3)));
  // X -> X, Z -> X collapses the form.
  CHECK_FALSE(is_symplectic(map_of(ctx, 1, {{1, 0}, {1, 0}})));
  // Hadamard: X -> Z, Z -> X.
  CHECK(is_symplectic(map_of(ctx, 1, {{0, 1}, {1, 0}})));
}

TEST_CASE("kappa vanishes on basis vectors for every library map") {
  for (std::int64_t d : {2, 3, 4, 5}) {
    RingContext ctx(d);
    for (const auto& [name, gate] : oracle::gate_library(ctx)) {
      CAPTURE(name);
      int n = gate.encoding.psi.dom_rank();
      for (const auto& b : basis(ctx, n)) {
        CHECK(kappa(gate.encoding.psi, b) == 0);
      }
      for (const auto& b : basis(ctx, n)) {
        CHECK(big_k(gate.encoding.psi, lift_vec(b)) == 0);
      }
    }
  }
}

TEST_CASE("kappa vanishes everywhere when the lifted map preserves omega'") {
  for (std::int64_t d : {2, 4}) {
    RingContext ctx(d);
    SymplecticMap id = SymplecticMap::identity(ctx, 2);
    for (std::int64_t trial = 0; trial < 50; ++trial) {
      std::mt19937 rng(static_cast<unsigned>(trial));
      std::uniform_int_distribution<std::int64_t> dist(0, d - 1);
      std::vector<std::int64_t> e(4);
      for (auto& x : e) x = dist(rng);
      CHECK(kappa(id, PhaseVector(ctx, std::move(e))) == 0);
    }
  }
}

TEST_CASE("kappa of the S map on [1,1] feeds the -X phase") {
  RingContext ctx(2);
  auto s = oracle::gate_library(ctx).at("s_gate");
  CHECK(kappa(s.encoding.psi, PhaseVector(ctx, {1, 1})) == 1);
  // Dense cross-check: S Y S^dag = -X.
  PauliElement y(0, PhaseVector(ctx, {1, 1}));
  CHECK(oracle::conjugate(s.unitary, y) == PauliElement(1, PhaseVector(ctx, {1, 0})));
  CHECK(evaluate(s.encoding, y) == PauliElement(1, PhaseVector(ctx, {1, 0})));
}

TEST_CASE("evaluate worked examples") {
  RingContext ctx(2);
  auto lib = oracle::gate_library(ctx);
  PauliElement y(0, PhaseVector(ctx, {1, 1}));
  CHECK(evaluate(lib.at("hadamard").encoding, y) == PauliElement(1, PhaseVector(ctx, {1, 1})));

  for (const auto& p : oracle::all_paulis(ctx, 1)) {
    CHECK(evaluate(identity_encoding(ctx, 1), p) == p);
  }

  PauliElement xy(0, PhaseVector(ctx, {1, 0, 1, 1}));
  CHECK(evaluate(lib.at("cnot").encoding, xy) == PauliElement(0, PhaseVector(ctx, {1, 1, 0, 1})));
}

TEST_CASE("input phase passes through evaluate additively") {
  RingContext ctx(2);
  auto lib = oracle::gate_library(ctx);
  for (const auto& [name, gate] : lib) {
    if (gate.sites != 1) continue;
    for (const auto& p : oracle::all_paulis(ctx, 1)) {
      PauliElement shifted = add_phase(1, p);
      CHECK(evaluate(gate.encoding, shifted) == add_phase(1, evaluate(gate.encoding, p)));
    }
  }
}

TEST_CASE("compose with the identity is the identity") {
  for (std::int64_t d : {2, 3}) {
    RingContext ctx(d);
    for (const auto& enc : generator_library(ctx)) {
      CondensedEncoding id = identity_encoding(ctx, 1);
      CHECK(compose(id, enc) == enc);
      CHECK(compose(enc, id) == enc);
    }
  }
}

TEST_CASE("compose(S, S) acts as conjugation by Z") {
  RingContext ctx(2);
  auto s = oracle::gate_library(ctx).at("s_gate");
  CondensedEncoding s2 = compose(s.encoding, s.encoding);
  PauliElement x(0, PhaseVector(ctx, {1, 0}));
  CHECK(evaluate(s2, x) == PauliElement(1, PhaseVector(ctx, {1, 0})));
  // Dense: (diag(1,i))^2 = Z and Z X Z = -X.
  oracle::ComplexMatrix zz = s.unitary * s.unitary;
  CHECK(oracle::conjugate(zz, x) == PauliElement(1, PhaseVector(ctx, {1, 0})));
}

TEST_CASE("compose evaluates as sequential evaluation (random words, d=2,3)") {
  std::mt19937 rng(123);
  for (std::int64_t d : {2, 3}) {
    RingContext ctx(d);
    for (int trial = 0; trial < 40; ++trial) {
      CondensedEncoding e1 = random_word(ctx, rng);
      CondensedEncoding e2 = random_word(ctx, rng);
      CondensedEncoding both = compose(e2, e1);
      for (const auto& p : oracle::all_paulis(ctx, 1)) {
        CHECK(evaluate(both, p) == evaluate(e2, evaluate(e1, p)));
      }
    }
  }
}

TEST_CASE("compose is associative through evaluate") {
  std::mt19937 rng(321);
  for (std::int64_t d : {2, 3, 4, 5}) {
    RingContext ctx(d);
    for (int trial = 0; trial < 10; ++trial) {
      CondensedEncoding e1 = random_word(ctx, rng);
      CondensedEncoding e2 = random_word(ctx, rng);
      CondensedEncoding e3 = random_word(ctx, rng);
      CondensedEncoding left = compose(compose(e3, e2), e1);
      CondensedEncoding right = compose(e3, compose(e2, e1));
      for (const auto& p : oracle::all_paulis(ctx, 1)) {
        CHECK(evaluate(left, p) == evaluate(right, p));
      }
    }
  }
}

TEST_CASE("invert worked examples") {
  RingContext ctx(2);
  CondensedEncoding id = identity_encoding(ctx, 1);
  CHECK(invert(id) == id);

  auto s = oracle::gate_library(ctx).at("s_gate");
  CondensedEncoding sinv = invert(s.encoding);
  PauliElement x(0, PhaseVector(ctx, {1, 0}));
  CHECK(evaluate(sinv, x) == PauliElement(1, PhaseVector(ctx, {1, 1})));  // <1> Y
  PauliElement z(0, PhaseVector(ctx, {0, 1}));
  CHECK(evaluate(sinv, z) == z);
}

TEST_CASE("invert round-trips to the identity encoding") {
  std::mt19937 rng(77);
  for (std::int64_t d : {2, 3}) {
    RingContext ctx(d);
    for (const auto& enc : generator_library(ctx)) {
      CHECK(compose(invert(enc), enc) == identity_encoding(ctx, 1));
      CHECK(compose(enc, invert(enc)) == identity_encoding(ctx, 1));
    }
    for (int trial = 0; trial < 25; ++trial) {
      CondensedEncoding enc = random_word(ctx, rng);
      CHECK(compose(invert(enc), enc) == identity_encoding(ctx, 1));
      CHECK(compose(enc, invert(enc)) == identity_encoding(ctx, 1));
    }
  }
}

TEST_CASE("invert requires a square map") {
  RingContext ctx(2);
  // Injection Pauli -> Pauli ** Pauli.
  SymplecticMap inj = map_of(ctx, 2, {{1, 0, 0, 0}, {0, 1, 0, 0}});
  CondensedEncoding enc({0, 0}, inj);
  CHECK_THROWS_AS(invert(enc), DimensionError);
}

TEST_CASE("rank mismatches raise dimension errors") {
  RingContext ctx(2);
  auto lib = oracle::gate_library(ctx);
  PauliElement two_site(0, PhaseVector(ctx, {1, 0, 0, 1}));
  CHECK_THROWS_AS(evaluate(lib.at("hadamard").encoding, two_site), DimensionError);
  CHECK_THROWS_AS(compose(lib.at("hadamard").encoding, lib.at("cnot").encoding),
                  DimensionError);
  PauliElement one_site(0, PhaseVector(ctx, {1, 0}));
  CHECK_THROWS_AS(cprod(one_site, two_site), DimensionError);
}

TEST_CASE("scalar_compose is pow") {
  RingContext ctx(3);
  for (const auto& p : oracle::all_paulis(ctx, 1)) {
    for (std::int64_t r = 0; r < 3; ++r) {
      CHECK(scalar_compose(p, r) == pauli_pow(p, r));
    }
  }
}

TEST_CASE("evaluate distributes over the condensed product") {
  std::mt19937 rng(5);
  for (std::int64_t d : {2, 3}) {
    RingContext ctx(d);
    auto all = oracle::all_paulis(ctx, 1);
    for (const auto& enc : generator_library(ctx)) {
      for (const auto& a : all) {
        for (const auto& b : all) {
          CHECK(evaluate(enc, cprod(a, b)) == cprod(evaluate(enc, a), evaluate(enc, b)));
        }
      }
    }
  }
  // Sampled at n=2, d=2.
  RingContext ctx(2);
  auto cnot = oracle::gate_library(ctx).at("cnot").encoding;
  auto all = oracle::all_paulis(ctx, 2);
  std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
  for (int trial = 0; trial < 300; ++trial) {
    const auto& a = all[pick(rng)];
    const auto& b = all[pick(rng)];
    CHECK(evaluate(cnot, cprod(a, b)) == cprod(evaluate(cnot, a), evaluate(cnot, b)));
  }
}

TEST_CASE("to_frame examples and well-formedness") {
  RingContext ctx(2);
  auto lib = oracle::gate_library(ctx);
  Frame h = to_frame(lib.at("hadamard").encoding);
  REQUIRE(h.rows.size() == 1);
  CHECK(h.rows[0].first == PauliElement(0, PhaseVector(ctx, {0, 1})));   // Z
  CHECK(h.rows[0].second == PauliElement(0, PhaseVector(ctx, {1, 0})));  // X
  CHECK(check_frame(h));

  Frame id2 = to_frame(identity_encoding(ctx, 2));
  REQUIRE(id2.rows.size() == 2);
  CHECK(id2.rows[0].first == PauliElement(0, PhaseVector(ctx, {1, 0, 0, 0})));
  CHECK(id2.rows[1].second == PauliElement(0, PhaseVector(ctx, {0, 0, 0, 1})));
  CHECK(check_frame(id2));

  for (const auto& [name, gate] : lib) {
    CHECK(check_frame(to_frame(gate.encoding)));
  }
}

TEST_CASE("check_frame rejects bad frames") {
  RingContext ctx(2);
  PauliElement x(0, PhaseVector(ctx, {1, 0}));
  Frame bad;
  bad.rows.emplace_back(x, x);  // omega(X, X) = 0 != 1
  CHECK_FALSE(check_frame(bad));

  // Valid single rows that overlap across rows.
  PauliElement z(0, PhaseVector(ctx, {0, 1}));
  Frame overlap;
  overlap.rows.emplace_back(inject(1, x, 1), inject(1, z, 1));
  overlap.rows.emplace_back(inject(1, x, 1), inject(1, z, 1));
  CHECK_FALSE(check_frame(overlap));
}

TEST_CASE("frame rendering and json") {
  RingContext ctx(2);
  Frame h = to_frame(oracle::gate_library(ctx).at("hadamard").encoding);
  CHECK(render_frame(h) == "X1 -> Z ; Z1 -> X\n");
  CHECK(frame_to_json(h) == "[[[0,[0,1]],[0,[1,0]]]]");
}

TEST_CASE("big_k on extended vectors satisfies the dense evaluation formula") {
  // U Delta_v U^dag = zeta^{mu(reduce v) + (d/2) K(v)} Delta_{lift psi(reduce v)}
  // for every v in Zd'^{2}, including entries >= d.
  for (std::int64_t d : {2, 3}) {
    RingContext ctx(d);
    for (const auto& [name, gate] : oracle::gate_library(ctx)) {
      if (gate.sites != 1) continue;
      std::int64_t dp = ctx.d_prime();
      for (std::int64_t x = 0; x < dp; ++x) {
        for (std::int64_t z = 0; z < dp; ++z) {
          ExtendedVector v(ctx, {x, z});
          PhaseVector reduced = reduce_vec(v);
          ZdScalar phase = ctx.add(gate.encoding.mu_of(reduced),
                                   ctx.half_d_times(big_k(gate.encoding.psi, v)));
          oracle::ComplexMatrix lhs =
              gate.unitary * oracle::dense_delta(v) * gate.unitary.adjoint();
          oracle::ComplexMatrix rhs =
              std::pow(oracle::zeta(ctx), static_cast<double>(phase)) *
              oracle::dense_delta(lift_vec(gate.encoding.psi.apply(reduced)));
          CAPTURE(name);
          CAPTURE(x);
          CAPTURE(z);
          CHECK(oracle::approx_equal(lhs, rhs));
        }
      }
    }
  }
}

TEST_CASE("odd d: every half-d correction is identically zero") {
  RingContext ctx(5);
  std::mt19937 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    CondensedEncoding enc = random_word(ctx, rng);
    for (const auto& p : oracle::all_paulis(ctx, 1)) {
      CHECK(kappa(enc.psi, p.vector) == 0);
    }
  }
}
