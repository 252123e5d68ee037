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

#include "pclif/oracle.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace pclif::oracle {

namespace {

std::int64_t ipow(std::int64_t base, int exp) {
  std::int64_t r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

ComplexMatrix matrix_power(const ComplexMatrix& m, std::int64_t e) {
  ComplexMatrix acc = ComplexMatrix::Identity(m.rows(), m.cols());
  for (std::int64_t i = 0; i < e; ++i) acc = acc * m;
  return acc;
}

}  // namespace

std::complex<double> zeta(const RingContext& ctx) {
  return std::polar(1.0, 2.0 * std::numbers::pi / static_cast<double>(ctx.d()));
}

std::complex<double> tau(const RingContext& ctx) {
  std::complex<double> t;
  if (ctx.even()) {
    t = std::polar(1.0, std::numbers::pi / static_cast<double>(ctx.d()));
  } else {
    double k = static_cast<double>((ctx.d() + 1) / 2);
    t = std::polar(1.0, 2.0 * std::numbers::pi * k / static_cast<double>(ctx.d()));
  }
  if (std::abs(t * t - zeta(ctx)) > 1e-12) {
    throw InternalError("tau convention violates tau^2 = zeta");
  }
  return t;
}

ComplexMatrix dense_x(const RingContext& ctx) {
  const auto d = ctx.d();
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  for (std::int64_t r = 0; r < d; ++r) m((r + 1) % d, r) = 1.0;
  return m;
}

ComplexMatrix dense_z(const RingContext& ctx) {
  const auto d = ctx.d();
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  for (std::int64_t r = 0; r < d; ++r) m(r, r) = std::pow(zeta(ctx), static_cast<double>(r));
  return m;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix dense_delta(const ExtendedVector& v) {
  const RingContext& ctx = v.ctx();
  ComplexMatrix x1 = dense_x(ctx);
  ComplexMatrix z1 = dense_z(ctx);
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  std::int64_t dot = 0;
  for (int s = 0; s < v.rank(); ++s) {
    std::int64_t xs = ctx.reduce(v.x(s));
    std::int64_t zs = ctx.reduce(v.z(s));
    out = kron(out, matrix_power(x1, xs) * matrix_power(z1, zs));
    dot = ctx.add_p(dot, ctx.mul_p(v.z(s), v.x(s)));
  }
  return std::pow(tau(ctx), static_cast<double>(dot)) * out;
}

ComplexMatrix dense_pauli(const PauliElement& p) {
  return std::pow(zeta(p.ctx()), static_cast<double>(p.phase)) * dense_delta(lift_vec(p.vector));
}

bool is_unitary(const ComplexMatrix& u, double tol) {
  ComplexMatrix delta = u * u.adjoint() - ComplexMatrix::Identity(u.rows(), u.cols());
  return delta.norm() <= tol * std::sqrt(static_cast<double>(u.rows()));
}

bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return (a - b).cwiseAbs().maxCoeff() <= tol;
}

PauliElement decode_pauli(const RingContext& ctx, int n, const ComplexMatrix& m) {
  const std::int64_t d = ctx.d();
  const std::int64_t dim = ipow(d, n);
  if (m.rows() != dim || m.cols() != dim) {
    throw DecodeError("decode: matrix dimension does not match d^n");
  }

  // M |0..0> = c |x>; the row index of the single nonzero entry encodes x
  // base d, site 1 most significant.
  Eigen::Index row = -1;
  for (Eigen::Index r = 0; r < dim; ++r) {
    if (std::abs(m(r, 0)) > kDecodeTol) {
      if (row >= 0) throw DecodeError("decode: column 0 has multiple nonzero entries");
      row = r;
    }
  }
  if (row < 0) throw DecodeError("decode: column 0 is zero");
  std::vector<std::int64_t> xs(static_cast<std::size_t>(n));
  std::int64_t rem = row;
  for (int s = n - 1; s >= 0; --s) {
    xs[static_cast<std::size_t>(s)] = rem % d;
    rem /= d;
  }

  // X^{-x} M is proportional to Z^z; diagonal ratios at unit basis states
  // recover each z_i as a zeta power.
  ComplexMatrix xinv = ComplexMatrix::Identity(1, 1);
  ComplexMatrix x1 = dense_x(ctx);
  for (int s = 0; s < n; ++s) {
    xinv = kron(xinv, matrix_power(x1, (d - xs[static_cast<std::size_t>(s)]) % d));
  }
  ComplexMatrix diag = xinv * m;
  std::complex<double> base = diag(0, 0);
  if (std::abs(base) < kDecodeTol) throw DecodeError("decode: vanishing diagonal");
  std::vector<std::int64_t> zs(static_cast<std::size_t>(n));
  for (int s = 0; s < n; ++s) {
    Eigen::Index idx = ipow(d, n - 1 - s);  // |e_s> basis state
    std::complex<double> ratio = diag(idx, idx) / base;
    std::int64_t found = -1;
    for (std::int64_t cand = 0; cand < d; ++cand) {
      if (std::abs(ratio - std::pow(zeta(ctx), static_cast<double>(cand))) < kDecodeTol) {
        found = cand;
        break;
      }
    }
    if (found < 0) throw DecodeError("decode: diagonal ratio is not a zeta power");
    zs[static_cast<std::size_t>(s)] = found;
  }

  std::vector<std::int64_t> entries(2 * static_cast<std::size_t>(n));
  for (int s = 0; s < n; ++s) {
    entries[2 * static_cast<std::size_t>(s)] = xs[static_cast<std::size_t>(s)];
    entries[2 * static_cast<std::size_t>(s) + 1] = zs[static_cast<std::size_t>(s)];
  }
  PhaseVector v(ctx, std::move(entries));

  ComplexMatrix delta = dense_delta(lift_vec(v));
  for (std::int64_t t = 0; t < d; ++t) {
    if (approx_equal(m, std::pow(zeta(ctx), static_cast<double>(t)) * delta)) {
      return PauliElement(t, v);
    }
  }
  throw DecodeError("decode: matrix is not in Q_{d,n} (phase outside zeta powers)");
}

PauliElement conjugate(const ComplexMatrix& u, const PauliElement& p) {
  ComplexMatrix m = u * dense_pauli(p) * u.adjoint();
  return decode_pauli(p.ctx(), p.rank(), m);
}

namespace {

CondensedEncoding make_encoding(const RingContext& ctx, std::vector<ZdScalar> mu,
                                std::vector<std::vector<std::int64_t>> cols, int cod_rank) {
  std::vector<PhaseVector> columns;
  columns.reserve(cols.size());
  for (auto& c : cols) columns.emplace_back(ctx, std::move(c));
  return CondensedEncoding(std::move(mu), SymplecticMap(ctx, cod_rank, std::move(columns)));
}

}  // namespace

std::map<std::string, GateInfo> gate_library(const RingContext& ctx) {
  const std::int64_t d = ctx.d();
  std::map<std::string, GateInfo> lib;

  // Fourier F|j> = (1/sqrt d) sum_k zeta^{jk} |k>: X -> Z, Z -> X^{-1}.
  ComplexMatrix f(d, d);
  for (std::int64_t j = 0; j < d; ++j) {
    for (std::int64_t k = 0; k < d; ++k) {
      f(k, j) = std::pow(zeta(ctx), static_cast<double>((j * k) % d)) /
                std::sqrt(static_cast<double>(d));
    }
  }
  lib.emplace("fourier", GateInfo{f, make_encoding(ctx, {0, 0}, {{0, 1}, {d - 1, 0}}, 1), 1});

  // Conjugation by the shift X: mu = omega([1,0], -), psi = id.
  lib.emplace("shift",
              GateInfo{dense_x(ctx), make_encoding(ctx, {0, d - 1}, {{1, 0}, {0, 1}}, 1), 1});
  // Conjugation by the clock Z: mu = omega([0,1], -).
  lib.emplace("clock",
              GateInfo{dense_z(ctx), make_encoding(ctx, {1, 0}, {{1, 0}, {0, 1}}, 1), 1});

  if (d == 2) {
    ComplexMatrix h(2, 2);
    h << 1, 1, 1, -1;
    h /= std::sqrt(2.0);
    lib.emplace("hadamard", GateInfo{h, make_encoding(ctx, {0, 0}, {{0, 1}, {1, 0}}, 1), 1});

    ComplexMatrix s = ComplexMatrix::Zero(2, 2);
    s(0, 0) = 1.0;
    s(1, 1) = std::complex<double>(0.0, 1.0);
    lib.emplace("s_gate", GateInfo{s, make_encoding(ctx, {0, 0}, {{1, 1}, {0, 1}}, 1), 1});

    ComplexMatrix cnot = ComplexMatrix::Zero(4, 4);
    cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1.0;
    lib.emplace("cnot", GateInfo{cnot,
                                 make_encoding(ctx, {0, 0, 0, 0},
                                               {{1, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 1, 0},
                                                {0, 1, 0, 1}},
                                               2),
                                 2});

    ComplexMatrix cz = ComplexMatrix::Identity(4, 4);
    cz(3, 3) = -1.0;
    lib.emplace("cz", GateInfo{cz,
                               make_encoding(ctx, {0, 0, 0, 0},
                                             {{1, 0, 0, 1}, {0, 1, 0, 0}, {0, 1, 1, 0},
                                              {0, 0, 0, 1}},
                                             2),
                               2});

    ComplexMatrix swap = ComplexMatrix::Zero(4, 4);
    swap(0, 0) = swap(1, 2) = swap(2, 1) = swap(3, 3) = 1.0;
    lib.emplace("swap", GateInfo{swap,
                                 make_encoding(ctx, {0, 0, 0, 0},
                                               {{0, 0, 1, 0}, {0, 0, 0, 1}, {1, 0, 0, 0},
                                                {0, 1, 0, 0}},
                                               2),
                                 2});
  }
  return lib;
}

std::vector<PauliElement> all_paulis(const RingContext& ctx, int n) {
  const std::int64_t d = ctx.d();
  std::vector<PauliElement> out;
  std::int64_t count = ipow(d, 2 * n + 1);
  out.reserve(static_cast<std::size_t>(count));
  for (std::int64_t code = 0; code < count; ++code) {
    std::int64_t rem = code;
    ZdScalar t = rem % d;
    rem /= d;
    std::vector<std::int64_t> e(2 * static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < e.size(); ++i) {
      e[i] = rem % d;
      rem /= d;
    }
    out.emplace_back(t, PhaseVector(ctx, std::move(e)));
  }
  return out;
}

VerifyReport verify_encoding(const CondensedEncoding& enc, const ComplexMatrix& u,
                             std::size_t samples, unsigned seed) {
  const RingContext& ctx = enc.ctx();
  int n = enc.psi.dom_rank();
  if (enc.psi.cod_rank() != n) throw DimensionError("verify_encoding: encoding must be square");

  VerifyReport report;
  auto run_one = [&](const PauliElement& p) {
    PauliElement lhs = evaluate(enc, p);
    PauliElement rhs = conjugate(u, p);
    ++report.checked;
    if (!(lhs == rhs)) report.mismatches.push_back({p, lhs, rhs});
  };

  if (samples == 0) {
    for (const auto& p : all_paulis(ctx, n)) run_one(p);
  } else {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<std::int64_t> dist(0, ctx.d() - 1);
    for (std::size_t i = 0; i < samples; ++i) {
      std::vector<std::int64_t> e(2 * static_cast<std::size_t>(n));
      for (auto& x : e) x = dist(rng);
      run_one(PauliElement(dist(rng), PhaseVector(ctx, std::move(e))));
    }
  }
  return report;
}

ComplexMatrix build_circuit(const RingContext& ctx, int n, const std::vector<CircuitOp>& ops) {
  const std::int64_t d = ctx.d();
  const std::int64_t dim = ipow(d, n);
  auto lib = gate_library(ctx);
  ComplexMatrix total = ComplexMatrix::Identity(dim, dim);

  for (const auto& op : ops) {
    auto it = lib.find(op.gate);
    if (it == lib.end()) throw DimensionError("unknown gate '" + op.gate + "'");
    const GateInfo& gate = it->second;
    if (static_cast<int>(op.wires.size()) != gate.sites) {
      throw DimensionError("gate '" + op.gate + "' expects " + std::to_string(gate.sites) +
                           " wires");
    }
    for (int w : op.wires) {
      if (w < 0 || w >= n) throw DimensionError("wire index out of range");
    }

    // Embed by index arithmetic: entry (r, c) of the embedded unitary is the
    // gate entry at the digits on op.wires, with all other digits equal.
    ComplexMatrix embedded = ComplexMatrix::Zero(dim, dim);
    std::vector<std::int64_t> rdig(static_cast<std::size_t>(n));
    for (std::int64_t r = 0; r < dim; ++r) {
      std::int64_t rem = r;
      for (int s = n - 1; s >= 0; --s) {
        rdig[static_cast<std::size_t>(s)] = rem % d;
        rem /= d;
      }
      std::int64_t gr = 0;
      for (int w : op.wires) gr = gr * d + rdig[static_cast<std::size_t>(w)];
      std::int64_t gdim = ipow(d, gate.sites);
      for (std::int64_t gc = 0; gc < gdim; ++gc) {
        if (std::abs(gate.unitary(gr, gc)) == 0.0) continue;
        auto cdig = rdig;
        std::int64_t rem2 = gc;
        for (int s = gate.sites - 1; s >= 0; --s) {
          cdig[static_cast<std::size_t>(op.wires[static_cast<std::size_t>(s)])] = rem2 % d;
          rem2 /= d;
        }
        std::int64_t c = 0;
        for (int s = 0; s < n; ++s) c = c * d + cdig[static_cast<std::size_t>(s)];
        embedded(r, c) = gate.unitary(gr, gc);
      }
    }
    total = embedded * total;  // later circuit layers multiply on the left
  }
  return total;
}

}  // namespace pclif::oracle
