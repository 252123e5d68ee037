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

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <string>
#include <vector>

#include "pclif/encoding.hpp"

namespace pclif::oracle {

using ComplexMatrix = Eigen::MatrixXcd;

constexpr double kUnitaryTol = 1e-9;
constexpr double kDecodeTol = 1e-8;

// zeta = exp(2 pi i / d). tau is the square root of zeta that is a
// principal d'-th root of unity: exp(pi i / d) for even d and
// zeta^{(d+1)/2} for odd d. tau^2 == zeta is asserted numerically.
std::complex<double> zeta(const RingContext& ctx);
std::complex<double> tau(const RingContext& ctx);

// Shift X|r> = |r+1 mod d> and clock Z|r> = zeta^r |r>.
ComplexMatrix dense_x(const RingContext& ctx);
ComplexMatrix dense_z(const RingContext& ctx);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Delta_v = tau^{z.x} X^x Z^z, the dot product taken mod d'.
ComplexMatrix dense_delta(const ExtendedVector& v);

// zeta^t Delta_{lift v}.
ComplexMatrix dense_pauli(const PauliElement& p);

bool is_unitary(const ComplexMatrix& u, double tol = kUnitaryTol);
bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol = kDecodeTol);

// Inverse of dense_pauli on its image. Throws DecodeError when the matrix
// is not in Q_{d,n} (e.g. tau * X * Z for d = 2).
PauliElement decode_pauli(const RingContext& ctx, int n, const ComplexMatrix& m);

// Decode of U * dense_pauli(p) * U^dag.
PauliElement conjugate(const ComplexMatrix& u, const PauliElement& p);

struct GateInfo {
  ComplexMatrix unitary;
  CondensedEncoding encoding;  // paper-derived, cross-checked in tests
  int sites;
};

// d-dependent library: fourier, shift, clock at every d; hadamard and
// s_gate at d = 2; cnot, cz, swap at d = 2 on two sites.
std::map<std::string, GateInfo> gate_library(const RingContext& ctx);

struct VerifyMismatch {
  PauliElement input;
  PauliElement via_encoding;
  PauliElement via_conjugation;
};

struct VerifyReport {
  std::size_t checked = 0;
  std::vector<VerifyMismatch> mismatches;
  bool ok() const { return mismatches.empty(); }
};

// Compares evaluate(enc, p) against conjugate(u, p) over every element of
// Q_{d,n} when exhaustive (n = 1), otherwise over `samples` random ones.
VerifyReport verify_encoding(const CondensedEncoding& enc, const ComplexMatrix& u,
                             std::size_t samples = 0, unsigned seed = 12345);

struct CircuitOp {
  std::string gate;
  std::vector<int> wires;
};

// Product of embedded gate unitaries; the first listed op is applied first,
// so it is the rightmost factor of the matrix product.
ComplexMatrix build_circuit(const RingContext& ctx, int n, const std::vector<CircuitOp>& ops);

// All d^{2n+1} elements of Q_{d,n} in lexicographic order.
std::vector<PauliElement> all_paulis(const RingContext& ctx, int n);

}  // namespace pclif::oracle
