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

#include <cstdint>

#include "pclif/errors.hpp"

namespace pclif {

// Scalars are least non-negative residues; ZdScalar lives in [0, d) and
// ZdPrimeScalar in [0, d'), where d' = d for odd d and 2d for even d.
using ZdScalar = std::int64_t;
using ZdPrimeScalar = std::int64_t;

// Exact modular arithmetic over Zd and Zd'. All values produced by these
// operations are canonical residues, so equality is structural.
class RingContext {
 public:
  explicit RingContext(std::int64_t d);

  std::int64_t d() const { return d_; }
  std::int64_t d_prime() const { return d_prime_; }
  bool even() const { return d_ % 2 == 0; }

  // Zd arithmetic.
  ZdScalar norm(std::int64_t x) const { return mod(x, d_); }
  ZdScalar add(ZdScalar a, ZdScalar b) const { return mod(a + b, d_); }
  ZdScalar sub(ZdScalar a, ZdScalar b) const { return mod(a - b, d_); }
  ZdScalar mul(ZdScalar a, ZdScalar b) const { return mod(a * b, d_); }
  ZdScalar neg(ZdScalar a) const { return mod(-a, d_); }

  // Zd' arithmetic.
  ZdPrimeScalar norm_p(std::int64_t x) const { return mod(x, d_prime_); }
  ZdPrimeScalar add_p(ZdPrimeScalar a, ZdPrimeScalar b) const { return mod(a + b, d_prime_); }
  ZdPrimeScalar sub_p(ZdPrimeScalar a, ZdPrimeScalar b) const { return mod(a - b, d_prime_); }
  ZdPrimeScalar mul_p(ZdPrimeScalar a, ZdPrimeScalar b) const { return mod(a * b, d_prime_); }
  ZdPrimeScalar neg_p(ZdPrimeScalar a) const { return mod(-a, d_prime_); }

  // Inclusion Zd -> Zd' on representatives. Not a ring homomorphism.
  ZdPrimeScalar lift(ZdScalar r) const;

  // Reduction Zd' -> Zd; a ring homomorphism.
  ZdScalar reduce(ZdPrimeScalar r) const { return mod(r, d_); }

  // 0 if r < d, 1 if d <= r < d'. Equals (r - lift(reduce(r))) / d.
  std::int64_t sgn(ZdPrimeScalar r) const;

  // (d/2)*k in Zd for k in Z_{d'/d}. For odd d the group Z_{d'/d} is
  // trivial, so k must be 0 and the product vanishes.
  ZdScalar half_d_times(std::int64_t k) const;

  bool operator==(const RingContext& o) const { return d_ == o.d_; }
  bool operator!=(const RingContext& o) const { return d_ != o.d_; }

 private:
  static std::int64_t mod(std::int64_t x, std::int64_t m) {
    std::int64_t r = x % m;
    return r < 0 ? r + m : r;
  }

  std::int64_t d_;
  std::int64_t d_prime_;
};

}  // namespace pclif
