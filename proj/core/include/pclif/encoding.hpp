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

#include <vector>

#include "pclif/frame.hpp"
#include "pclif/pauli.hpp"

namespace pclif {

// Zd-linear map Zd^{2n} -> Zd^{2m} stored by columns in interlaced layout:
// column j is the image of the j-th canonical basis vector.
class SymplecticMap {
 public:
  SymplecticMap(const RingContext& ctx, int cod_rank, std::vector<PhaseVector> columns);
  static SymplecticMap identity(const RingContext& ctx, int n);

  const RingContext& ctx() const { return ctx_; }
  int dom_rank() const { return static_cast<int>(cols_.size() / 2); }
  int cod_rank() const { return cod_rank_; }
  const PhaseVector& column(int j) const { return cols_[static_cast<std::size_t>(j)]; }
  const std::vector<PhaseVector>& columns() const { return cols_; }

  PhaseVector apply(const PhaseVector& v) const;
  SymplecticMap then(const SymplecticMap& outer) const;  // outer * this

  bool operator==(const SymplecticMap& o) const {
    return ctx_ == o.ctx_ && cod_rank_ == o.cod_rank_ && cols_ == o.cols_;
  }

 private:
  RingContext ctx_;
  int cod_rank_;
  std::vector<PhaseVector> cols_;
};

// True iff omega(psi b_i, psi b_j) = omega(b_i, b_j) on all basis pairs,
// which suffices by bilinearity.
bool is_symplectic(const SymplecticMap& psi);

// Condensed encoding (mu, psi) of a projective Clifford. mu is stored by
// its basis-column values and applied only by linear extension; the
// composition and inversion formulas below are valid on basis vectors only.
struct CondensedEncoding {
  std::vector<ZdScalar> mu;  // one entry per column of psi
  SymplecticMap psi;

  CondensedEncoding(std::vector<ZdScalar> mu_, SymplecticMap psi_);

  const RingContext& ctx() const { return psi.ctx(); }
  ZdScalar mu_of(const PhaseVector& v) const;  // linear extension

  bool operator==(const CondensedEncoding& o) const { return mu == o.mu && psi == o.psi; }
};

CondensedEncoding identity_encoding(const RingContext& ctx, int n);

// Correction term K^psi : Zd'^{2n} -> Z_{d'/d}. Expanding Delta_v through
// the ordered basis product and conjugating term by term gives
//   d * K = sum_i x_i z_i + sum_{j<k} omega'(w_j, w_k) + omega'(W, lift psi(reduce v))
// over the ordered list w = (x_1 lift(psi b1_x), z_1 lift(psi b1_z), ...),
// W = sum w_j, everything mod d'. The sum is divisible by d (asserted) and
// never linear in v, so it is recomputed per call.
std::int64_t big_k(const SymplecticMap& psi, const ExtendedVector& v);

// kappa^psi(v) = K^psi(lift v).
std::int64_t kappa(const SymplecticMap& psi, const PhaseVector& v);

// U Delta_v U^dag = zeta^{mu(v) + (d/2) kappa^psi(v)} Delta_{lift psi(v)};
// the input phase passes through additively (the action fixes the center).
PauliElement evaluate(const CondensedEncoding& enc, const PauliElement& p);

// Encoding of [U2 U1] from e2 = (mu2, psi2), e1 = (mu1, psi1):
//   mu3(b) = mu1(b) + mu2(psi1 b) + (d/2) kappa^{psi2}(psi1 b) per basis b.
CondensedEncoding compose(const CondensedEncoding& e2, const CondensedEncoding& e1);

// Inverse (mu_inv, psi^{-1}) of a square encoding. psi^{-1} comes from the
// omega-adjoint closed form: site i of psi^{-1}(v) is
//   x = omega(psi(b_i^z), v),  z = omega(v, psi(b_i^x)).
// psi^{-1} psi = id is asserted on basis vectors at construction.
CondensedEncoding invert(const CondensedEncoding& enc);

// P_c composition (t, v) o r; identical to pauli_pow.
PauliElement scalar_compose(const PauliElement& p, ZdScalar r);

// Row i = (evaluate(enc, X_i), evaluate(enc, Z_i)).
Frame to_frame(const CondensedEncoding& enc);

}  // namespace pclif
