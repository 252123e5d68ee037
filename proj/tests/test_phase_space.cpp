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

#include "pclif/phase_space.hpp"

#include <random>

#include "doctest.h"
#include "pclif/oracle.hpp"

using namespace pclif;

namespace {

// Every vector of Zd'^{2n}, for exhaustive sweeps at tiny sizes.
std::vector<ExtendedVector> all_extended(const RingContext& ctx, int n) {
  std::vector<ExtendedVector> out;
  std::int64_t total = 1;
  for (int i = 0; i < 2 * n; ++i) total *= ctx.d_prime();
  for (std::int64_t code = 0; code < total; ++code) {
    std::int64_t rem = code;
    std::vector<std::int64_t> e(2 * static_cast<std::size_t>(n));
    for (auto& x : e) {
      x = rem % ctx.d_prime();
      rem /= ctx.d_prime();
    }
    out.emplace_back(ctx, std::move(e));
  }
  return out;
}

std::vector<PhaseVector> all_phase(const RingContext& ctx, int n) {
  std::vector<PhaseVector> out;
  std::int64_t total = 1;
  for (int i = 0; i < 2 * n; ++i) total *= ctx.d();
  for (std::int64_t code = 0; code < total; ++code) {
    std::int64_t rem = code;
    std::vector<std::int64_t> e(2 * static_cast<std::size_t>(n));
    for (auto& x : e) {
      x = rem % ctx.d();
      rem /= ctx.d();
    }
    out.emplace_back(ctx, std::move(e));
  }
  return out;
}

}  // namespace

TEST_CASE("omega worked examples") {
  RingContext d2(2);
  CHECK(omega(PhaseVector(d2, {1, 0}), PhaseVector(d2, {0, 1})) == 1);  // -1 mod 2
  RingContext d3(3);
  CHECK(omega(PhaseVector(d3, {1, 0}), PhaseVector(d3, {0, 1})) == 2);  // -1 mod 3
}

TEST_CASE("omega is alternating") {
  for (std::int64_t d : {2, 3, 4, 5}) {
    RingContext ctx(d);
    for (const auto& v : all_phase(ctx, 1)) CHECK(omega(v, v) == 0);
  }
}

TEST_CASE("omega_prime worked examples") {
  RingContext d2(2);
  CHECK(omega_prime(lift_vec(PhaseVector(d2, {1, 0})), lift_vec(PhaseVector(d2, {0, 1}))) == 3);
  CHECK(omega_prime(lift_vec(PhaseVector(d2, {1, 1})), lift_vec(PhaseVector(d2, {1, 1}))) == 0);
}

TEST_CASE("omega mismatched shapes raise") {
  RingContext d2(2), d3(3);
  CHECK_THROWS_AS(omega(PhaseVector(d2, {1, 0}), PhaseVector(d2, {1, 0, 0, 0})),
                  DimensionError);
  CHECK_THROWS_AS(omega(PhaseVector(d2, {1, 0}), PhaseVector(d3, {1, 0})), DimensionError);
}

TEST_CASE("bilinearity and antisymmetry on random vectors") {
  std::mt19937 rng(42);
  for (std::int64_t d : {2, 3, 4, 5}) {
    RingContext ctx(d);
    std::uniform_int_distribution<std::int64_t> dist(0, d - 1);
    for (int n = 1; n <= 3; ++n) {
      for (int trial = 0; trial < 50; ++trial) {
        auto rand_vec = [&] {
          std::vector<std::int64_t> e(2 * static_cast<std::size_t>(n));
          for (auto& x : e) x = dist(rng);
          return PhaseVector(ctx, std::move(e));
        };
        PhaseVector u = rand_vec(), w = rand_vec(), v = rand_vec();
        ZdScalar a = dist(rng), b = dist(rng);
        ZdScalar lhs = omega(u.scale(a).add(w.scale(b)), v);
        ZdScalar rhs = ctx.add(ctx.mul(a, omega(u, v)), ctx.mul(b, omega(w, v)));
        CHECK(lhs == rhs);
        CHECK(omega(u, v) == ctx.neg(omega(v, u)));
      }
    }
  }
}

TEST_CASE("omega agrees with reduced omega_prime on lifts (exhaustive d=2,3 n=1)") {
  for (std::int64_t d : {2, 3}) {
    RingContext ctx(d);
    for (const auto& u : all_phase(ctx, 1)) {
      for (const auto& v : all_phase(ctx, 1)) {
        CHECK(omega(u, v) == ctx.reduce(omega_prime(lift_vec(u), lift_vec(v))));
      }
    }
  }
}

TEST_CASE("componentwise lift and reduce round-trip") {
  for (std::int64_t d : {2, 3, 4}) {
    RingContext ctx(d);
    for (const auto& v : all_phase(ctx, 1)) {
      CHECK(reduce_vec(lift_vec(v)) == v);
    }
  }
}

TEST_CASE("sgn_vec vanishes on lifted vectors and for odd d") {
  RingContext d2(2);
  for (const auto& v : all_phase(d2, 2)) CHECK(sgn_vec(lift_vec(v)) == 0);
  RingContext d3(3);
  for (const auto& v : all_extended(d3, 1)) CHECK(sgn_vec(v) == 0);
}

TEST_CASE("vector sgn agrees with scalar sgn on single-entry probes") {
  for (std::int64_t d : {2, 3, 4}) {
    RingContext ctx(d);
    for (std::int64_t r = 0; r < ctx.d_prime(); ++r) {
      ExtendedVector vx(ctx, {r, 1});
      ExtendedVector vz(ctx, {1, r});
      CHECK(sgn_vec(vx) == ctx.sgn(r));
      CHECK(sgn_vec(vz) == ctx.sgn(r));
    }
  }
}

TEST_CASE("Delta sign law against the dense oracle (d=2,3, n=1, all extended v)") {
  for (std::int64_t d : {2, 3}) {
    RingContext ctx(d);
    for (const auto& v : all_extended(ctx, 1)) {
      oracle::ComplexMatrix lhs = oracle::dense_delta(v);
      oracle::ComplexMatrix rhs = oracle::dense_delta(lift_vec(reduce_vec(v)));
      double sign = sgn_vec(v) == 0 ? 1.0 : -1.0;
      CHECK(oracle::approx_equal(lhs, sign * rhs));
    }
  }
}

TEST_CASE("canonical basis") {
  RingContext ctx(3);
  auto b1 = basis(ctx, 1);
  REQUIRE(b1.size() == 2);
  CHECK(b1[0] == PhaseVector(ctx, {1, 0}));
  CHECK(b1[1] == PhaseVector(ctx, {0, 1}));

  auto b2 = basis(ctx, 2);
  REQUIRE(b2.size() == 4);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      CHECK(b2[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] == (i == j ? 1 : 0));
    }
  }
  for (int n : {1, 2, 3}) {
    for (int s = 0; s < n; ++s) {
      CHECK(omega(basis_z(ctx, n, s), basis_x(ctx, n, s)) == 1);
    }
  }
}

TEST_CASE("rendering") {
  RingContext ctx(2);
  CHECK(PhaseVector(ctx, {1, 0, 0, 1}).render() == "[1,0,0,1]");
}
