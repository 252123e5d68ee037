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

#include "pclif/pauli.hpp"

#include <sstream>

namespace pclif {

PauliElement identity_pauli(const RingContext& ctx, int rank) {
  return PauliElement(0, PhaseVector::zero(ctx, rank));
}

PauliElement cprod(const PauliElement& a, const PauliElement& b) {
  const RingContext& ctx = a.ctx();
  ExtendedVector ua = lift_vec(a.vector);
  ExtendedVector ub = lift_vec(b.vector);
  std::int64_t k = ctx.sgn(omega_prime(ua, ub)) + sgn_vec(ua.add(ub));
  ZdScalar phase = ctx.add(ctx.add(a.phase, b.phase), ctx.half_d_times(k % 2));
  return PauliElement(phase, a.vector.add(b.vector));
}

PauliElement pauli_pow(const PauliElement& a, ZdScalar r) {
  const RingContext& ctx = a.ctx();
  r = ctx.norm(r);
  std::int64_t k = sgn_vec(lift_vec(a.vector).scale(ctx.lift(r)));
  ZdScalar phase = ctx.add(ctx.mul(r, a.phase), ctx.half_d_times(k));
  return PauliElement(phase, a.vector.scale(r));
}

PauliElement add_phase(ZdScalar r, const PauliElement& a) {
  return PauliElement(a.ctx().add(a.ctx().norm(r), a.phase), a.vector);
}

PauliElement inject(int side, const PauliElement& a, int other_rank) {
  if (side != 1 && side != 2) throw DimensionError("inject side must be 1 or 2");
  std::vector<std::int64_t> e;
  e.reserve(a.vector.size() + 2 * static_cast<std::size_t>(other_rank));
  std::vector<std::int64_t> pad(2 * static_cast<std::size_t>(other_rank), 0);
  if (side == 1) {
    e = a.vector.entries();
    e.insert(e.end(), pad.begin(), pad.end());
  } else {
    e = pad;
    e.insert(e.end(), a.vector.entries().begin(), a.vector.entries().end());
  }
  return PauliElement(a.phase, PhaseVector(a.ctx(), std::move(e)));
}

PauliElement named_pauli(const RingContext& ctx, const std::string& name) {
  if (name == "I") return PauliElement(0, PhaseVector(ctx, {0, 0}));
  if (name == "X") return PauliElement(0, PhaseVector(ctx, {1, 0}));
  if (name == "Y") return PauliElement(0, PhaseVector(ctx, {1, 1}));
  if (name == "Z") return PauliElement(0, PhaseVector(ctx, {0, 1}));
  throw ParseError("unknown Pauli name '" + name + "'", 0, 0);
}

namespace {

// Site name if (x, z) matches one of the four listed encodings.
const char* site_name(ZdScalar x, ZdScalar z) {
  if (x == 0 && z == 0) return "I";
  if (x == 1 && z == 0) return "X";
  if (x == 1 && z == 1) return "Y";
  if (x == 0 && z == 1) return "Z";
  return nullptr;
}

}  // namespace

std::string render_pauli(const PauliElement& p) {
  std::ostringstream out;
  if (p.phase != 0) out << "<" << p.phase << "> ";
  bool all_named = true;
  for (int s = 0; s < p.rank(); ++s) {
    if (!site_name(p.vector.x(s), p.vector.z(s))) {
      all_named = false;
      break;
    }
  }
  if (all_named && p.rank() >= 1) {
    for (int s = 0; s < p.rank(); ++s) {
      if (s) out << " ** ";
      out << site_name(p.vector.x(s), p.vector.z(s));
    }
  } else {
    out << p.vector.render();
  }
  return out.str();
}

}  // namespace pclif
