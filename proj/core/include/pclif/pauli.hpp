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

#include "pclif/phase_space.hpp"

namespace pclif {

// Element zeta^t Delta_{lift(v)} of Q_{d,n}. The phase t is strictly a Zd
// residue; that is the defining property of Q_{d,n}. Equality is structural.
struct PauliElement {
  ZdScalar phase;
  PhaseVector vector;

  PauliElement(ZdScalar t, PhaseVector v) : phase(v.ctx().norm(t)), vector(std::move(v)) {}

  const RingContext& ctx() const { return vector.ctx(); }
  int rank() const { return vector.rank(); }

  bool operator==(const PauliElement& o) const {
    return phase == o.phase && vector == o.vector;
  }
  bool operator!=(const PauliElement& o) const { return !(*this == o); }
};

PauliElement identity_pauli(const RingContext& ctx, int rank);

// Condensed product. Phase correction
//   k = (d/2) * (sgn(omega'(lift u, lift v)) + sgn(lift u + lift v))
// keeps the result's phase in Zd.
PauliElement cprod(const PauliElement& a, const PauliElement& b);

// (zeta^t Delta_v)^r with k = (d/2) * sgn(lift(r) * lift(v)).
PauliElement pauli_pow(const PauliElement& a, ZdScalar r);

// zeta^r * P.
PauliElement add_phase(ZdScalar r, const PauliElement& a);

// Pads the vector with `other_rank` zero sites on the right (side 1) or
// left (side 2); the phase is unchanged.
PauliElement inject(int side, const PauliElement& a, int other_rank);

// Named single-qudit Paulis: I=[0,0], X=[1,0], Y=[1,1], Z=[0,1].
PauliElement named_pauli(const RingContext& ctx, const std::string& name);

// "<t> body" with "<0> " omitted. The body uses I/X/Y/Z site names joined
// by " ** " when every site matches one, and the raw vector otherwise.
std::string render_pauli(const PauliElement& p);

}  // namespace pclif
