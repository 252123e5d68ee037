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

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pclif/phase_space.hpp"

namespace pclif {

// ---------------------------------------------------------------------------
// Types: alpha ::= Unit | alpha (+) alpha | alpha -o alpha
// ---------------------------------------------------------------------------

struct CType;
using CTypePtr = std::shared_ptr<const CType>;

struct CType {
  enum class Tag { Unit, Sum, Arrow };
  Tag tag;
  CTypePtr left;
  CTypePtr right;
};

CTypePtr unit_type();
CTypePtr sum_type(CTypePtr a, CTypePtr b);
CTypePtr arrow_type(CTypePtr a, CTypePtr b);

bool type_equal(const CTypePtr& a, const CTypePtr& b);
bool is_first_order(const CTypePtr& t);
// Built from Unit (+) Unit by (+); these carry the canonical symplectic form.
bool is_symplectic_type(const CTypePtr& t);
int type_rank(const CTypePtr& t);  // number of Unit leaves; first-order only
std::string render_type(const CTypePtr& t);

// ---------------------------------------------------------------------------
// Expressions and values
// ---------------------------------------------------------------------------

struct CExpr;
using CExprPtr = std::shared_ptr<const CExpr>;

struct CExpr {
  enum class Tag { Var, Let, Const, ScalarMul, Zero, Add, Pair, Case, Lam, App };
  Tag tag;
  std::string name;   // Var; Let/Lam binder; Case left binder
  std::string name2;  // Case right binder
  std::int64_t value = 0;
  CTypePtr type;  // Zero annotation; Lam argument type
  CExprPtr a;
  CExprPtr b;
  CExprPtr c;
};

CExprPtr c_var(std::string name);
CExprPtr c_let(std::string x, CExprPtr bound, CExprPtr body);
CExprPtr c_const(std::int64_t r);
CExprPtr c_mul(CExprPtr scalar, CExprPtr vec);
CExprPtr c_zero(CTypePtr type);
CExprPtr c_add(CExprPtr a, CExprPtr b);
CExprPtr c_pair(CExprPtr a, CExprPtr b);
CExprPtr c_case(CExprPtr scrut, std::string x1, CExprPtr b1, std::string x2, CExprPtr b2);
CExprPtr c_lam(std::string x, CTypePtr arg, CExprPtr body);
CExprPtr c_app(CExprPtr fn, CExprPtr arg);

std::string render_expr(const CExprPtr& e);

struct CValue;
using CValuePtr = std::shared_ptr<const CValue>;

struct CValue {
  enum class Tag { Const, Pair, Lam };
  Tag tag;
  std::int64_t r = 0;
  CValuePtr v1;
  CValuePtr v2;
  std::string var;  // Lam
  CTypePtr arg_type;
  CExprPtr body;
};

CValuePtr v_const(std::int64_t r);
CValuePtr v_pair(CValuePtr a, CValuePtr b);
CValuePtr v_lam(std::string var, CTypePtr arg_type, CExprPtr body);

CExprPtr value_to_expr(const CValuePtr& v);
// Null when e is not a normal form.
CValuePtr expr_to_value(const CExprPtr& e);
bool value_equal(const CValuePtr& a, const CValuePtr& b);  // Lam: alpha-equality
std::string render_value(const CValuePtr& v);

// Fresh-name supply for capture-avoiding lambda merges; monotone counter.
std::string fresh_var();

// Capture-avoiding substitution of a closed expression.
CExprPtr subst(const CExprPtr& e, const std::string& x, const CExprPtr& closed);

// ---------------------------------------------------------------------------
// Typing: ordered linear context with disjoint-union splitting
// ---------------------------------------------------------------------------

class LinearCtx {
 public:
  LinearCtx() = default;
  LinearCtx(std::initializer_list<std::pair<std::string, CTypePtr>> items);

  void push(std::string name, CTypePtr type);
  bool empty() const { return items_.empty(); }
  std::size_t size() const { return items_.size(); }
  const std::vector<std::pair<std::string, CTypePtr>>& items() const { return items_; }

 private:
  std::vector<std::pair<std::string, CTypePtr>> items_;
};

// Returns the type of e under ctx, or throws TypeError. Context splitting is
// inferred from the free variables of subterms; a context variable used by
// neither side of a multiplicative split is rejected unless one side is a
// zero form, which may absorb it.
CTypePtr typecheck_c(const RingContext& ring, const LinearCtx& ctx, const CExprPtr& e);

// ---------------------------------------------------------------------------
// Call-by-value small-step semantics
// ---------------------------------------------------------------------------

inline constexpr std::int64_t kDefaultStepBudget = 1000000;

// Exactly one of `next`, `value` is set.
struct CStep {
  CExprPtr next;
  CValuePtr value;
};

// One leftmost-innermost CBV step of a closed, well-typed expression.
CStep step_c(const RingContext& ring, const CExprPtr& e);

CValuePtr eval_c(const RingContext& ring, const CExprPtr& e,
                 std::int64_t budget = kDefaultStepBudget);

// ---------------------------------------------------------------------------
// Basis machinery and the equivalence decision procedure (first-order only)
// ---------------------------------------------------------------------------

// Values lifting each basis element of the denotation of alpha; for Unit the
// single value 1, for sums the padded injections, recursively.
std::vector<CValuePtr> basis_values(const CTypePtr& alpha);
CValuePtr zero_value(const CTypePtr& alpha);

// In-order Unit-leaf coordinates of a first-order value.
std::vector<std::int64_t> flatten_value(const CValuePtr& v);
CValuePtr unflatten_value(const CTypePtr& alpha, const std::vector<std::int64_t>& coords);
// Flattened coordinates as a phase-space vector; alpha must be symplectic.
PhaseVector value_to_phase_vector(const RingContext& ring, const CValuePtr& v);
CValuePtr phase_vector_to_value(const CTypePtr& sigma, const PhaseVector& v);

struct EquivWitness {
  std::vector<std::pair<std::string, CValuePtr>> substitution;
  CValuePtr lhs;
  CValuePtr rhs;
};

// Basis-substitution counterexample search: null when e1 and e2 agree on
// every tuple of basis values for ctx. Sound and complete for first-order
// types because both denotations are linear and basis substitutions span
// the context's module.
std::optional<EquivWitness> equiv_counterexample(const RingContext& ring, const LinearCtx& ctx,
                                                 const CExprPtr& e1, const CExprPtr& e2);

bool equiv_c(const RingContext& ring, const LinearCtx& ctx, const CExprPtr& e1,
             const CExprPtr& e2, const CTypePtr& alpha);

// Closed expression of type sigma -o sigma -o Unit computing the symplectic
// form by the nested-case construction.
CExprPtr build_omega(const CTypePtr& sigma);

// Value-level shortcut, equal to evaluating build_omega on both arguments.
ZdScalar omega_value(const RingContext& ring, const CValuePtr& v1, const CValuePtr& v2);

}  // namespace pclif
