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

#include <string>

namespace pclif {

RingContext::RingContext(std::int64_t d) : d_(d) {
  if (d < 2) {
    throw DimensionError("ring modulus must be >= 2, got " + std::to_string(d));
  }
  d_prime_ = (d % 2 == 0) ? 2 * d : d;
}

ZdPrimeScalar RingContext::lift(ZdScalar r) const {
  if (r < 0 || r >= d_) {
    throw InternalError("lift input " + std::to_string(r) + " is not a canonical Zd residue");
  }
  return r;
}

std::int64_t RingContext::sgn(ZdPrimeScalar r) const {
  if (r < 0 || r >= d_prime_) {
    throw InternalError("sgn input " + std::to_string(r) + " is not a canonical Zd' residue");
  }
  return r < d_ ? 0 : 1;
}

ZdScalar RingContext::half_d_times(std::int64_t k) const {
  if (k == 0) return 0;
  if (!even()) {
    throw InternalError("nonzero Z_{d'/d} element with odd d");
  }
  return mul(d_ / 2, k);
}

}  // namespace pclif
