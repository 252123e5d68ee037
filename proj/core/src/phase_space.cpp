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

#include <sstream>

namespace pclif {

namespace {

void require_even(std::size_t len) {
  if (len % 2 != 0) {
    throw DimensionError("phase-space vector length must be even, got " + std::to_string(len));
  }
}

void require_same_shape(const RingContext& a, std::size_t la, const RingContext& b,
                        std::size_t lb) {
  if (a != b) throw DimensionError("mismatched ring contexts");
  if (la != lb) {
    throw DimensionError("mismatched vector lengths " + std::to_string(la) + " vs " +
                         std::to_string(lb));
  }
}

std::string render_entries(const std::vector<std::int64_t>& e) {
  std::ostringstream out;
  out << "[";
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (i) out << ",";
    out << e[i];
  }
  out << "]";
  return out.str();
}

}  // namespace

PhaseVector::PhaseVector(const RingContext& ctx, std::vector<std::int64_t> entries)
    : ctx_(ctx), e_(std::move(entries)) {
  require_even(e_.size());
  for (auto& v : e_) v = ctx_.norm(v);
}

PhaseVector PhaseVector::zero(const RingContext& ctx, int rank) {
  return PhaseVector(ctx, std::vector<std::int64_t>(2 * static_cast<std::size_t>(rank), 0));
}

PhaseVector PhaseVector::add(const PhaseVector& o) const {
  require_same_shape(ctx_, e_.size(), o.ctx_, o.e_.size());
  std::vector<std::int64_t> r(e_.size());
  for (std::size_t i = 0; i < e_.size(); ++i) r[i] = ctx_.add(e_[i], o.e_[i]);
  return PhaseVector(ctx_, std::move(r));
}

PhaseVector PhaseVector::sub(const PhaseVector& o) const {
  require_same_shape(ctx_, e_.size(), o.ctx_, o.e_.size());
  std::vector<std::int64_t> r(e_.size());
  for (std::size_t i = 0; i < e_.size(); ++i) r[i] = ctx_.sub(e_[i], o.e_[i]);
  return PhaseVector(ctx_, std::move(r));
}

PhaseVector PhaseVector::scale(ZdScalar r) const {
  std::vector<std::int64_t> out(e_.size());
  for (std::size_t i = 0; i < e_.size(); ++i) out[i] = ctx_.mul(e_[i], r);
  return PhaseVector(ctx_, std::move(out));
}

bool PhaseVector::is_zero() const {
  for (auto v : e_)
    if (v != 0) return false;
  return true;
}

std::string PhaseVector::render() const { return render_entries(e_); }

ExtendedVector::ExtendedVector(const RingContext& ctx, std::vector<std::int64_t> entries)
    : ctx_(ctx), e_(std::move(entries)) {
  require_even(e_.size());
  for (auto& v : e_) v = ctx_.norm_p(v);
}

ExtendedVector ExtendedVector::zero(const RingContext& ctx, int rank) {
  return ExtendedVector(ctx, std::vector<std::int64_t>(2 * static_cast<std::size_t>(rank), 0));
}

ExtendedVector ExtendedVector::add(const ExtendedVector& o) const {
  require_same_shape(ctx_, e_.size(), o.ctx_, o.e_.size());
  std::vector<std::int64_t> r(e_.size());
  for (std::size_t i = 0; i < e_.size(); ++i) r[i] = ctx_.add_p(e_[i], o.e_[i]);
  return ExtendedVector(ctx_, std::move(r));
}

ExtendedVector ExtendedVector::scale(ZdPrimeScalar r) const {
  std::vector<std::int64_t> out(e_.size());
  for (std::size_t i = 0; i < e_.size(); ++i) out[i] = ctx_.mul_p(e_[i], r);
  return ExtendedVector(ctx_, std::move(out));
}

std::string ExtendedVector::render() const { return render_entries(e_); }

ZdScalar omega(const PhaseVector& u, const PhaseVector& v) {
  require_same_shape(u.ctx(), u.size(), v.ctx(), v.size());
  const RingContext& ctx = u.ctx();
  std::int64_t acc = 0;
  for (int s = 0; s < u.rank(); ++s) {
    acc += u.z(s) * v.x(s) - v.z(s) * u.x(s);
  }
  return ctx.norm(acc);
}

ZdPrimeScalar omega_prime(const ExtendedVector& u, const ExtendedVector& v) {
  require_same_shape(u.ctx(), u.size(), v.ctx(), v.size());
  const RingContext& ctx = u.ctx();
  std::int64_t acc = 0;
  for (int s = 0; s < u.rank(); ++s) {
    acc += u.z(s) * v.x(s) - v.z(s) * u.x(s);
  }
  return ctx.norm_p(acc);
}

ExtendedVector lift_vec(const PhaseVector& v) {
  std::vector<std::int64_t> e(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) e[i] = v.ctx().lift(v[i]);
  return ExtendedVector(v.ctx(), std::move(e));
}

PhaseVector reduce_vec(const ExtendedVector& v) {
  std::vector<std::int64_t> e(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) e[i] = v.ctx().reduce(v[i]);
  return PhaseVector(v.ctx(), std::move(e));
}

std::int64_t sgn_vec(const ExtendedVector& v) {
  const RingContext& ctx = v.ctx();
  ZdPrimeScalar w = omega_prime(v, lift_vec(reduce_vec(v)));
  if (w % ctx.d() != 0) {
    throw InternalError("sgn_vec: omega' value " + std::to_string(w) + " not divisible by d");
  }
  std::int64_t s = w / ctx.d();
  if (s != 0 && s != 1) {
    throw InternalError("sgn_vec: value " + std::to_string(s) + " outside Z_{d'/d}");
  }
  return s;
}

std::vector<PhaseVector> basis(const RingContext& ctx, int n) {
  if (n < 1) throw DimensionError("basis rank must be >= 1");
  std::vector<PhaseVector> out;
  out.reserve(2 * static_cast<std::size_t>(n));
  for (int j = 0; j < 2 * n; ++j) {
    std::vector<std::int64_t> e(2 * static_cast<std::size_t>(n), 0);
    e[static_cast<std::size_t>(j)] = 1;
    out.emplace_back(ctx, std::move(e));
  }
  return out;
}

PhaseVector basis_x(const RingContext& ctx, int n, int site) {
  std::vector<std::int64_t> e(2 * static_cast<std::size_t>(n), 0);
  e[2 * static_cast<std::size_t>(site)] = 1;
  return PhaseVector(ctx, std::move(e));
}

PhaseVector basis_z(const RingContext& ctx, int n, int site) {
  std::vector<std::int64_t> e(2 * static_cast<std::size_t>(n), 0);
  e[2 * static_cast<std::size_t>(site) + 1] = 1;
  return PhaseVector(ctx, std::move(e));
}

}  // namespace pclif
