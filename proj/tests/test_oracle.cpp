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

#include "pclif/oracle.hpp"

#include "doctest.h"

using namespace pclif;
using oracle::ComplexMatrix;

namespace {
const std::complex<double> kI(0.0, 1.0);
}

TEST_CASE("qubit X and Z are the standard Paulis") {
  RingContext ctx(2);
  ComplexMatrix x = oracle::dense_x(ctx);
  ComplexMatrix z = oracle::dense_z(ctx);
  ComplexMatrix xe(2, 2), ze(2, 2);
  xe << 0, 1, 1, 0;
  ze << 1, 0, 0, -1;
  CHECK(oracle::approx_equal(x, xe));
  CHECK(oracle::approx_equal(z, ze));
}

TEST_CASE("qutrit clock and shift") {
  RingContext ctx(3);
  ComplexMatrix z = oracle::dense_z(ctx);
  auto zeta = oracle::zeta(ctx);
  CHECK(std::abs(z(1, 1) - zeta) < 1e-12);
  CHECK(std::abs(z(2, 2) - zeta * zeta) < 1e-12);
  ComplexMatrix x = oracle::dense_x(ctx);
  ComplexMatrix xd = ComplexMatrix::Identity(3, 3);
  for (int k = 0; k < 3; ++k) xd = x * xd;
  CHECK(oracle::approx_equal(xd, ComplexMatrix::Identity(3, 3)));
}

TEST_CASE("tau squares to zeta at all d") {
  for (std::int64_t d : {2, 3, 4, 5, 7}) {
    RingContext ctx(d);
    CHECK(std::abs(oracle::tau(ctx) * oracle::tau(ctx) - oracle::zeta(ctx)) < 1e-12);
  }
}

TEST_CASE("dense_delta worked examples at d=2") {
  RingContext ctx(2);
  ComplexMatrix y(2, 2);
  y << 0, -kI, kI, 0;
  CHECK(oracle::approx_equal(oracle::dense_delta(ExtendedVector(ctx, {1, 1})), y));
  CHECK(oracle::approx_equal(oracle::dense_delta(ExtendedVector(ctx, {0, 0})),
                             ComplexMatrix::Identity(2, 2)));
  CHECK(oracle::approx_equal(oracle::dense_delta(ExtendedVector(ctx, {1, 0})),
                             oracle::dense_x(ctx)));
}

TEST_CASE("dense_pauli worked examples") {
  RingContext ctx(2);
  ComplexMatrix minus_y(2, 2);
  minus_y << 0, kI, -kI, 0;
  PauliElement p(1, PhaseVector(ctx, {1, 1}));
  CHECK(oracle::approx_equal(oracle::dense_pauli(p), minus_y));
  CHECK(oracle::approx_equal(oracle::dense_pauli(identity_pauli(ctx, 1)),
                             ComplexMatrix::Identity(2, 2)));
}

TEST_CASE("dense_pauli is injective on Q_{d,1}") {
  for (std::int64_t d : {2, 3}) {
    RingContext ctx(d);
    auto all = oracle::all_paulis(ctx, 1);
    for (std::size_t i = 0; i < all.size(); ++i) {
      for (std::size_t j = i + 1; j < all.size(); ++j) {
        CHECK_FALSE(oracle::approx_equal(oracle::dense_pauli(all[i]),
                                         oracle::dense_pauli(all[j])));
      }
    }
  }
}

TEST_CASE("decode round-trips densely (exhaustive d=2,3 n=1; sampled n=2)") {
  for (std::int64_t d : {2, 3}) {
    RingContext ctx(d);
    for (const auto& p : oracle::all_paulis(ctx, 1)) {
      CHECK(oracle::decode_pauli(ctx, 1, oracle::dense_pauli(p)) == p);
    }
  }
  RingContext d2(2);
  auto all2 = oracle::all_paulis(d2, 2);
  for (std::size_t i = 0; i < all2.size(); i += 3) {
    CHECK(oracle::decode_pauli(d2, 2, oracle::dense_pauli(all2[i])) == all2[i]);
  }
}

TEST_CASE("decode rejects the bare product X * Z, which is not in Q_{2,1}") {
  RingContext ctx(2);
  // X Z = -iY carries an odd tau power: in the small Pauli group, not in Q.
  ComplexMatrix m = oracle::dense_x(ctx) * oracle::dense_z(ctx);
  CHECK_THROWS_AS(oracle::decode_pauli(ctx, 1, m), DecodeError);
  // tau X Z, by contrast, is exactly Y.
  CHECK(oracle::decode_pauli(ctx, 1, oracle::tau(ctx) * m) ==
        PauliElement(0, PhaseVector(ctx, {1, 1})));
  CHECK(oracle::decode_pauli(ctx, 1, ComplexMatrix::Identity(2, 2)) ==
        identity_pauli(ctx, 1));
}

TEST_CASE("conjugation worked examples") {
  RingContext ctx(2);
  auto lib = oracle::gate_library(ctx);
  PauliElement y(0, PhaseVector(ctx, {1, 1}));
  CHECK(oracle::conjugate(lib.at("hadamard").unitary, y) ==
        PauliElement(1, PhaseVector(ctx, {1, 1})));
  CHECK(oracle::conjugate(ComplexMatrix::Identity(2, 2), y) == y);

  // CNOT (X (x) Y) = Y (x) Z.
  PauliElement xy(0, PhaseVector(ctx, {1, 0, 1, 1}));
  CHECK(oracle::conjugate(lib.at("cnot").unitary, xy) ==
        PauliElement(0, PhaseVector(ctx, {1, 1, 0, 1})));
}

TEST_CASE("library gates are unitary and their encodings verify exhaustively") {
  for (std::int64_t d : {2, 3, 4, 5}) {
    RingContext ctx(d);
    for (const auto& [name, gate] : oracle::gate_library(ctx)) {
      CAPTURE(name);
      CAPTURE(d);
      CHECK(oracle::is_unitary(gate.unitary));
      auto report = oracle::verify_encoding(gate.encoding, gate.unitary);
      CHECK(report.ok());
      // d^{2n+1} elements of Q_{d,n}.
      std::int64_t expected = 1;
      for (int i = 0; i < 2 * gate.sites + 1; ++i) expected *= d;
      CHECK(report.checked == static_cast<std::size_t>(expected));
    }
  }
}

TEST_CASE("a corrupted mu is reported on exactly the affected orbit") {
  RingContext ctx(2);
  auto lib = oracle::gate_library(ctx);
  CondensedEncoding good = lib.at("hadamard").encoding;
  std::vector<ZdScalar> mu = good.mu;
  mu[0] = ctx.add(mu[0], 1);  // corrupt the X column
  CondensedEncoding bad(mu, good.psi);
  auto report = oracle::verify_encoding(bad, lib.at("hadamard").unitary);
  CHECK_FALSE(report.ok());
  // Mismatch exactly when the X coordinate is nonzero.
  for (const auto& p : oracle::all_paulis(ctx, 1)) {
    bool affected = false;
    for (const auto& mm : report.mismatches) {
      if (mm.input == p) affected = true;
    }
    CHECK(affected == (p.vector[0] != 0));
  }
}

TEST_CASE("conjugation by a library unitary is a star automorphism (d=2, n=1)") {
  RingContext ctx(2);
  auto lib = oracle::gate_library(ctx);
  auto all = oracle::all_paulis(ctx, 1);
  for (const auto& [name, gate] : lib) {
    if (gate.sites != 1) continue;
    for (const auto& a : all) {
      for (const auto& b : all) {
        CHECK(oracle::conjugate(gate.unitary, cprod(a, b)) ==
              cprod(oracle::conjugate(gate.unitary, a), oracle::conjugate(gate.unitary, b)));
      }
    }
  }
}

TEST_CASE("circuit builder") {
  RingContext ctx(2);
  CHECK(oracle::approx_equal(oracle::build_circuit(ctx, 2, {}),
                             ComplexMatrix::Identity(4, 4)));
  auto lib = oracle::gate_library(ctx);
  CHECK(oracle::approx_equal(oracle::build_circuit(ctx, 2, {{"cnot", {0, 1}}}),
                             lib.at("cnot").unitary));
  CHECK_THROWS_AS(oracle::build_circuit(ctx, 2, {{"cnot", {0, 5}}}), DimensionError);
  CHECK_THROWS_AS(oracle::build_circuit(ctx, 2, {{"nope", {0}}}), DimensionError);

  // Circuit order: X then Z on one wire applies Z * X as matrices.
  ComplexMatrix m = oracle::build_circuit(ctx, 1, {{"shift", {0}}, {"clock", {0}}});
  CHECK(oracle::approx_equal(m, oracle::dense_z(ctx) * oracle::dense_x(ctx)));

  // repX circuit: 32 x 32 unitary.
  std::vector<oracle::CircuitOp> repx = {{"shift", {0}}, {"shift", {1}}, {"shift", {2}},
                                         {"cnot", {0, 3}}, {"cnot", {1, 3}}, {"cnot", {1, 4}},
                                         {"cnot", {2, 4}}};
  ComplexMatrix u = oracle::build_circuit(ctx, 5, repx);
  CHECK(u.rows() == 32);
  CHECK(oracle::is_unitary(u));
}

TEST_CASE("tau conventions match the star law: squares of Deltas") {
  for (std::int64_t d : {2, 3, 4}) {
    RingContext ctx(d);
    for (std::int64_t x = 0; x < d; ++x) {
      for (std::int64_t z = 0; z < d; ++z) {
        PhaseVector v(ctx, {x, z});
        PauliElement p(0, v);
        PauliElement sq = cprod(p, p);
        ComplexMatrix lhs = oracle::dense_pauli(p) * oracle::dense_pauli(p);
        // Delta_u Delta_u = tau^{omega'} Delta_{2u} = Delta_{2u}; the star
        // law's phase must reproduce the dense square.
        CHECK(oracle::approx_equal(lhs, oracle::dense_pauli(sq)));
      }
    }
  }
}
