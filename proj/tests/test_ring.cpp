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

#include "pclif/ring.hpp"

#include "doctest.h"

using namespace pclif;

TEST_CASE("d_prime doubles for even d only") {
  CHECK(RingContext(2).d_prime() == 4);
  CHECK(RingContext(3).d_prime() == 3);
  CHECK(RingContext(4).d_prime() == 8);
  CHECK(RingContext(5).d_prime() == 5);
  CHECK_THROWS_AS(RingContext(1), DimensionError);
}

TEST_CASE("lift examples") {
  RingContext d2(2);
  CHECK(d2.lift(1) == 1);
  RingContext d3(3);
  CHECK(d3.lift(2) == 2);
}

TEST_CASE("lift is not a homomorphism at d=2") {
  RingContext ctx(2);
  // 1 + 1 in Z4 is 2, but lift(1 + 1 mod 2) is 0.
  CHECK(ctx.add_p(ctx.lift(1), ctx.lift(1)) == 2);
  CHECK(ctx.lift(ctx.add(1, 1)) == 0);
}

TEST_CASE("reduce examples") {
  CHECK(RingContext(2).reduce(3) == 1);
  CHECK(RingContext(3).reduce(2) == 2);
  CHECK(RingContext(4).reduce(5) == 1);
}

TEST_CASE("sgn examples") {
  RingContext d2(2);
  CHECK(d2.sgn(3) == 1);
  CHECK(d2.sgn(1) == 0);
  RingContext d5(5);
  CHECK(d5.sgn(4) == 0);
}

TEST_CASE("reduce after lift is the identity, d <= 8") {
  for (std::int64_t d = 2; d <= 8; ++d) {
    RingContext ctx(d);
    for (std::int64_t r = 0; r < d; ++r) {
      CHECK(ctx.reduce(ctx.lift(r)) == r);
    }
  }
}

TEST_CASE("reduce is a ring homomorphism, d <= 8") {
  for (std::int64_t d = 2; d <= 8; ++d) {
    RingContext ctx(d);
    for (std::int64_t a = 0; a < ctx.d_prime(); ++a) {
      for (std::int64_t b = 0; b < ctx.d_prime(); ++b) {
        CHECK(ctx.reduce(ctx.add_p(a, b)) == ctx.add(ctx.reduce(a), ctx.reduce(b)));
        CHECK(ctx.reduce(ctx.mul_p(a, b)) == ctx.mul(ctx.reduce(a), ctx.reduce(b)));
      }
    }
  }
}

TEST_CASE("odd d: lift is the identity and sgn vanishes") {
  for (std::int64_t d : {3, 5, 7}) {
    RingContext ctx(d);
    for (std::int64_t r = 0; r < d; ++r) {
      CHECK(ctx.lift(r) == r);
      CHECK(ctx.sgn(r) == 0);
    }
  }
}

TEST_CASE("sgn decomposition r = sgn(r)*d + lift(reduce(r))") {
  for (std::int64_t d = 2; d <= 8; ++d) {
    RingContext ctx(d);
    for (std::int64_t r = 0; r < ctx.d_prime(); ++r) {
      CHECK(ctx.sgn(r) * ctx.d() + ctx.lift(ctx.reduce(r)) == r);
    }
  }
}

TEST_CASE("half_d_times") {
  RingContext d4(4);
  CHECK(d4.half_d_times(0) == 0);
  CHECK(d4.half_d_times(1) == 2);
  RingContext d5(5);
  CHECK(d5.half_d_times(0) == 0);
  CHECK_THROWS_AS(d5.half_d_times(1), InternalError);
}
