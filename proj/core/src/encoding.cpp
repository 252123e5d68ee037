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

#include <string>

namespace pclif {

SymplecticMap::SymplecticMap(const RingContext& ctx, int cod_rank,
                             std::vector<PhaseVector> columns)
    : ctx_(ctx), cod_rank_(cod_rank), cols_(std::move(columns)) {
  if (cols_.empty() || cols_.size() % 2 != 0) {
    throw DimensionError("symplectic map needs 2n columns, got " + std::to_string(cols_.size()));
  }
  for (const auto& c : cols_) {
    if (c.ctx() != ctx_ || c.rank() != cod_rank_) {
      throw DimensionError("symplectic map column has wrong shape");
    }
  }
  if (cod_rank_ < dom_rank()) {
    throw DimensionError("symplectic morphisms are injective: codomain rank " +
                         std::to_string(cod_rank_) + " < domain rank " +
                         std::to_string(dom_rank()));
  }
}

SymplecticMap SymplecticMap::identity(const RingContext& ctx, int n) {
  return SymplecticMap(ctx, n, basis(ctx, n));
}

PhaseVector SymplecticMap::apply(const PhaseVector& v) const {
  if (v.ctx() != ctx_ || v.rank() != dom_rank()) {
    throw DimensionError("symplectic map applied to vector of wrong shape");
  }
  PhaseVector acc = PhaseVector::zero(ctx_, cod_rank_);
  for (std::size_t j = 0; j < cols_.size(); ++j) {
    if (v[j] != 0) acc = acc.add(cols_[j].scale(v[j]));
  }
  return acc;
}

SymplecticMap SymplecticMap::then(const SymplecticMap& outer) const {
  if (outer.dom_rank() != cod_rank_) {
    throw DimensionError("symplectic map composition rank mismatch");
  }
  std::vector<PhaseVector> cols;
  cols.reserve(cols_.size());
  for (const auto& c : cols_) cols.push_back(outer.apply(c));
  return SymplecticMap(ctx_, outer.cod_rank(), std::move(cols));
}

bool is_symplectic(const SymplecticMap& psi) {
  int n = psi.dom_rank();
  auto dom = basis(psi.ctx(), n);
  for (int i = 0; i < 2 * n; ++i) {
    for (int j = i + 1; j < 2 * n; ++j) {
      if (omega(psi.column(i), psi.column(j)) != omega(dom[i], dom[j])) return false;
    }
  }
  return true;
}

CondensedEncoding::CondensedEncoding(std::vector<ZdScalar> mu_, SymplecticMap psi_)
    : mu(std::move(mu_)), psi(std::move(psi_)) {
  if (mu.size() != psi.columns().size()) {
    throw DimensionError("mu must have one entry per column of psi");
  }
  for (auto& m : mu) m = psi.ctx().norm(m);
  if (!is_symplectic(psi)) {
    throw DimensionError("encoding map does not respect the symplectic form");
  }
}

ZdScalar CondensedEncoding::mu_of(const PhaseVector& v) const {
  if (v.rank() != psi.dom_rank()) throw DimensionError("mu applied to wrong rank");
  ZdScalar acc = 0;
  for (std::size_t j = 0; j < mu.size(); ++j) {
    acc = ctx().add(acc, ctx().mul(mu[j], v[j]));
  }
  return acc;
}

CondensedEncoding identity_encoding(const RingContext& ctx, int n) {
  return CondensedEncoding(std::vector<ZdScalar>(2 * static_cast<std::size_t>(n), 0),
                           SymplecticMap::identity(ctx, n));
}

std::int64_t big_k(const SymplecticMap& psi, const ExtendedVector& v) {
  const RingContext& ctx = psi.ctx();
  if (v.ctx() != ctx || v.rank() != psi.dom_rank()) {
    throw DimensionError("big_k input rank mismatch");
  }
  const int n = psi.dom_rank();
  const int m = psi.cod_rank();

  // Ordered coefficient/column list (x_1 psi b1_x, z_1 psi b1_z, ...).
  std::vector<ZdPrimeScalar> coeff(2 * static_cast<std::size_t>(n));
  std::vector<ExtendedVector> col;
  col.reserve(coeff.size());
  for (int j = 0; j < 2 * n; ++j) {
    coeff[static_cast<std::size_t>(j)] = v[static_cast<std::size_t>(j)];
    col.push_back(lift_vec(psi.column(j)));
  }

  ZdPrimeScalar acc = 0;
  ExtendedVector total = ExtendedVector::zero(ctx, m);
  for (int i = 0; i < n; ++i) {
    acc = ctx.add_p(acc, ctx.mul_p(v.x(i), v.z(i)));
  }
  for (std::size_t j = 0; j < col.size(); ++j) {
    ExtendedVector wj = col[j].scale(coeff[j]);
    for (std::size_t k = j + 1; k < col.size(); ++k) {
      if (coeff[j] == 0 || coeff[k] == 0) continue;
      acc = ctx.add_p(acc, ctx.mul_p(ctx.mul_p(coeff[j], coeff[k]),
                                     omega_prime(col[j], col[k])));
    }
    total = total.add(wj);
  }
  acc = ctx.add_p(acc, omega_prime(total, lift_vec(reduce_vec(total))));

  if (acc % ctx.d() != 0) {
    throw InternalError("big_k sum " + std::to_string(acc) + " not divisible by d");
  }
  std::int64_t k = acc / ctx.d();
  if (k != 0 && k != 1) {
    throw InternalError("big_k value " + std::to_string(k) + " outside Z_{d'/d}");
  }
  return k;
}

std::int64_t kappa(const SymplecticMap& psi, const PhaseVector& v) {
  return big_k(psi, lift_vec(v));
}

PauliElement evaluate(const CondensedEncoding& enc, const PauliElement& p) {
  const RingContext& ctx = enc.ctx();
  if (p.ctx() != ctx || p.rank() != enc.psi.dom_rank()) {
    throw DimensionError("evaluate: Pauli rank does not match encoding domain");
  }
  ZdScalar phase = ctx.add(p.phase, enc.mu_of(p.vector));
  phase = ctx.add(phase, ctx.half_d_times(kappa(enc.psi, p.vector)));
  return PauliElement(phase, enc.psi.apply(p.vector));
}

CondensedEncoding compose(const CondensedEncoding& e2, const CondensedEncoding& e1) {
  const RingContext& ctx = e1.ctx();
  if (e2.psi.dom_rank() != e1.psi.cod_rank()) {
    throw DimensionError("compose: rank mismatch between encodings");
  }
  SymplecticMap psi3 = e1.psi.then(e2.psi);
  std::vector<ZdScalar> mu3;
  mu3.reserve(e1.mu.size());
  for (std::size_t j = 0; j < e1.mu.size(); ++j) {
    const PhaseVector& image = e1.psi.column(static_cast<int>(j));
    ZdScalar m = ctx.add(e1.mu[j], e2.mu_of(image));
    m = ctx.add(m, ctx.half_d_times(kappa(e2.psi, image)));
    mu3.push_back(m);
  }
  return CondensedEncoding(std::move(mu3), std::move(psi3));
}

namespace {

PhaseVector apply_omega_adjoint(const SymplecticMap& psi, const PhaseVector& v) {
  const RingContext& ctx = psi.ctx();
  int n = psi.dom_rank();
  std::vector<std::int64_t> e(2 * static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    e[2 * static_cast<std::size_t>(i)] = omega(psi.column(2 * i + 1), v);
    e[2 * static_cast<std::size_t>(i) + 1] = omega(v, psi.column(2 * i));
  }
  return PhaseVector(ctx, std::move(e));
}

}  // namespace

CondensedEncoding invert(const CondensedEncoding& enc) {
  const RingContext& ctx = enc.ctx();
  const SymplecticMap& psi = enc.psi;
  int n = psi.dom_rank();
  if (psi.cod_rank() != n) {
    throw DimensionError("invert: encoding map must be square");
  }

  std::vector<PhaseVector> inv_cols;
  inv_cols.reserve(2 * static_cast<std::size_t>(n));
  auto b = basis(ctx, n);
  for (int j = 0; j < 2 * n; ++j) {
    inv_cols.push_back(apply_omega_adjoint(psi, b[static_cast<std::size_t>(j)]));
  }
  SymplecticMap psi_inv(ctx, n, std::move(inv_cols));
  for (int j = 0; j < 2 * n; ++j) {
    if (psi_inv.apply(psi.column(j)) != b[static_cast<std::size_t>(j)]) {
      throw InternalError("invert: omega-adjoint is not a left inverse of psi");
    }
  }

  std::vector<ZdScalar> mu_inv;
  mu_inv.reserve(2 * static_cast<std::size_t>(n));
  for (int j = 0; j < 2 * n; ++j) {
    const PhaseVector w = psi_inv.column(j);
    ZdScalar m = ctx.sub(ctx.half_d_times(kappa(psi, w)), enc.mu_of(w));
    mu_inv.push_back(m);
  }
  return CondensedEncoding(std::move(mu_inv), std::move(psi_inv));
}

PauliElement scalar_compose(const PauliElement& p, ZdScalar r) { return pauli_pow(p, r); }

Frame to_frame(const CondensedEncoding& enc) {
  const RingContext& ctx = enc.ctx();
  int n = enc.psi.dom_rank();
  Frame f;
  f.rows.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    PauliElement xi(0, basis_x(ctx, n, i));
    PauliElement zi(0, basis_z(ctx, n, i));
    f.rows.emplace_back(evaluate(enc, xi), evaluate(enc, zi));
  }
  return f;
}

}  // namespace pclif
