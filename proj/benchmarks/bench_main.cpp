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

#include <benchmark/benchmark.h>

#include "pclif/oracle.hpp"
#include "pclif/parser.hpp"

namespace {

const char* kCnotProgram = R"(dim 2;
cnot_2 :: |^ Pauli ** Pauli -o Pauli ** Pauli ^|
cnot_2 |^ in1 X = X ** X ^|
cnot_2 |^ in1 Z = in1 Z ^|
cnot_2 |^ in2 X = in2 X ^|
cnot_2 |^ in2 Z = Z ** Z ^|
)";

void bench_cprod(benchmark::State& state) {
  pclif::RingContext ctx(state.range(0));
  auto paulis = pclif::oracle::all_paulis(ctx, 2);
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& a = paulis[i % paulis.size()];
    const auto& b = paulis[(i * 7 + 3) % paulis.size()];
    benchmark::DoNotOptimize(pclif::cprod(a, b));
    ++i;
  }
}
BENCHMARK(bench_cprod)->Arg(2)->Arg(3)->Arg(5);

void bench_evaluate(benchmark::State& state) {
  pclif::RingContext ctx(2);
  auto lib = pclif::oracle::gate_library(ctx);
  const auto& enc = lib.at("cnot").encoding;
  auto paulis = pclif::oracle::all_paulis(ctx, 2);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(pclif::evaluate(enc, paulis[i % paulis.size()]));
    ++i;
  }
}
BENCHMARK(bench_evaluate);

void bench_typecheck_cnot(benchmark::State& state) {
  for (auto _ : state) {
    auto prog = pclif::load_program(kCnotProgram);
    benchmark::DoNotOptimize(prog.concrete.size());
  }
}
BENCHMARK(bench_typecheck_cnot);

void bench_eval_program(benchmark::State& state) {
  auto prog = pclif::load_program(kCnotProgram);
  auto [expr, q] = pclif::parse_expr_in(prog, "cnot_2 (X ** Y)");
  for (auto _ : state) {
    benchmark::DoNotOptimize(pclif::eval_p(prog.ctx, expr));
  }
}
BENCHMARK(bench_eval_program);

void bench_repx_frame(benchmark::State& state) {
  auto prog = pclif::load_program(R"(dim 2;
repX :: |^ Pauli^3 ** Pauli^2 -o Pauli^3 ** Pauli^2 ^|
repX |^ in1 Z.i = <1> in1 Z.i ^|
repX |^ in1 X.1 = X.1 ** X.1 ^|
repX |^ in1 X.2 = X.2 ** (X.1 *.* X.2) ^|
repX |^ in1 X.3 = X.3 ** X.2 ^|
repX |^ in2 Z.i = (Z.i *.* Z.(i+1)) ** Z.i ^|
repX |^ in2 X.i = in2 X.i ^|
)");
  auto repx = pclif::resolve_def(prog, "repX");
  for (auto _ : state) {
    benchmark::DoNotOptimize(pclif::compile_frame(prog.ctx, *repx));
  }
}
BENCHMARK(bench_repx_frame);

void bench_oracle_conjugate(benchmark::State& state) {
  pclif::RingContext ctx(2);
  auto lib = pclif::oracle::gate_library(ctx);
  const auto& u = lib.at("cnot").unitary;
  auto paulis = pclif::oracle::all_paulis(ctx, 2);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(pclif::oracle::conjugate(u, paulis[i % paulis.size()]));
    ++i;
  }
}
BENCHMARK(bench_oracle_conjugate);

}  // namespace

int main(int argc, char** argv) {
  benchmark::Initialize(&argc, argv);
  benchmark::RunSpecifiedBenchmarks();
  return 0;
}
