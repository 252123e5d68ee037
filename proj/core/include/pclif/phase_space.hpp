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

#include <cstddef>
#include <string>
#include <vector>

#include "pclif/ring.hpp"

namespace pclif {

// Vector in Zd^{2n}, interlaced layout (x1, z1, ..., xn, zn). The interlaced
// layout is the canonical one everywhere in this library, including the
// columns of symplectic maps.
class PhaseVector {
 public:
  PhaseVector(const RingContext& ctx, std::vector<std::int64_t> entries);
  static PhaseVector zero(const RingContext& ctx, int rank);

  const RingContext& ctx() const { return ctx_; }
  int rank() const { return static_cast<int>(e_.size() / 2); }
  std::size_t size() const { return e_.size(); }
  ZdScalar operator[](std::size_t i) const { return e_[i]; }
  const std::vector<std::int64_t>& entries() const { return e_; }

  ZdScalar x(int site) const { return e_[2 * static_cast<std::size_t>(site)]; }
  ZdScalar z(int site) const { return e_[2 * static_cast<std::size_t>(site) + 1]; }

  PhaseVector add(const PhaseVector& o) const;
  PhaseVector sub(const PhaseVector& o) const;
  PhaseVector scale(ZdScalar r) const;
  bool is_zero() const;

  // Renders as "[x1,z1,...,xn,zn]".
  std::string render() const;

  bool operator==(const PhaseVector& o) const { return ctx_ == o.ctx_ && e_ == o.e_; }
  bool operator!=(const PhaseVector& o) const { return !(*this == o); }

 private:
  RingContext ctx_;
  std::vector<std::int64_t> e_;
};

// Vector in Zd'^{2n}, interlaced. Only phase bookkeeping ever needs it.
class ExtendedVector {
 public:
  ExtendedVector(const RingContext& ctx, std::vector<std::int64_t> entries);
  static ExtendedVector zero(const RingContext& ctx, int rank);

  const RingContext& ctx() const { return ctx_; }
  int rank() const { return static_cast<int>(e_.size() / 2); }
  std::size_t size() const { return e_.size(); }
  ZdPrimeScalar operator[](std::size_t i) const { return e_[i]; }

  ZdPrimeScalar x(int site) const { return e_[2 * static_cast<std::size_t>(site)]; }
  ZdPrimeScalar z(int site) const { return e_[2 * static_cast<std::size_t>(site) + 1]; }

  ExtendedVector add(const ExtendedVector& o) const;
  ExtendedVector scale(ZdPrimeScalar r) const;

  std::string render() const;

  bool operator==(const ExtendedVector& o) const { return ctx_ == o.ctx_ && e_ == o.e_; }
  bool operator!=(const ExtendedVector& o) const { return !(*this == o); }

 private:
  RingContext ctx_;
  std::vector<std::int64_t> e_;
};

// Symplectic form sum_i (z1_i*x2_i - z2_i*x1_i) mod d. Bilinear, alternating.
ZdScalar omega(const PhaseVector& u, const PhaseVector& v);

// Same formula mod d'.
ZdPrimeScalar omega_prime(const ExtendedVector& u, const ExtendedVector& v);

ExtendedVector lift_vec(const PhaseVector& v);
PhaseVector reduce_vec(const ExtendedVector& v);

// (1/d) * omega'(v, lift(reduce(v))) as an exact integer division; in {0,1}.
// Divisibility failure means a formula transcription bug, not bad input.
std::int64_t sgn_vec(const ExtendedVector& v);

// Canonical ordered basis b1_x, b1_z, ..., bn_x, bn_z as unit vectors.
std::vector<PhaseVector> basis(const RingContext& ctx, int n);
PhaseVector basis_x(const RingContext& ctx, int n, int site);
PhaseVector basis_z(const RingContext& ctx, int n, int site);

}  // namespace pclif
