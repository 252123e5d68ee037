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

#include <optional>

#include "pclif/encoding.hpp"
#include "pclif/lambda_c.hpp"

namespace pclif {

// ---------------------------------------------------------------------------
// Pauli types: Q ::= Pauli | Q1 (*) Q2
// ---------------------------------------------------------------------------

struct QType;
using QTypePtr = std::shared_ptr<const QType>;

struct QType {
  enum class Tag { Pauli, Prod };
  Tag tag;
  QTypePtr left;
  QTypePtr right;
};

QTypePtr q_pauli();
QTypePtr q_prod(QTypePtr a, QTypePtr b);
QTypePtr q_pow(int n);  // right-nested Pauli ** ... ** Pauli
bool q_equal(const QTypePtr& a, const QTypePtr& b);
int q_rank(const QTypePtr& q);
std::string render_qtype(const QTypePtr& q);

// The translation overline(Q): Pauli -> I (+) I, products componentwise.
CTypePtr q_to_ctype(const QTypePtr& q);
// Inverse on symplectic types.
QTypePtr q_of_ctype(const CTypePtr& t);

// ---------------------------------------------------------------------------
// Expressions, values, definitions
// ---------------------------------------------------------------------------

// Normal form <r> v: a phase paired with a value of type overline(Q).
struct PValue {
  ZdScalar phase;
  CValuePtr value;
};

struct PExpr;
using PExprPtr = std::shared_ptr<const PExpr>;
struct NLDef;
using NLDefPtr = std::shared_ptr<const NLDef>;

struct PExpr {
  enum class Tag {
    Var,       // linear variable
    Let,       // let name = p1 in p2
    Embed,     // a C-expression used as a Pauli literal
    Phase,     // <cexpr> p1
    CProd,     // p1 * p2 (condensed product)
    Pow,       // p1 ^ scalar
    CaseXZ,    // case p1 of X -> p2 | Z -> p3
    Inj,       // in_side p1, other component type `other`
    CaseProd,  // case p1 of inl name -> p2 | inr name2 -> p3
    Force,     // force def (lifted Pauli)
    Apply,     // def p1 (lifted Clifford application)
    Lit        // runtime normal form <r> v
  };
  Tag tag;
  std::string name;
  std::string name2;
  CExprPtr cexpr;
  PExprPtr p1;
  PExprPtr p2;
  PExprPtr p3;
  std::int64_t scalar = 0;
  int side = 0;
  QTypePtr other;
  NLDefPtr def;
  std::shared_ptr<const PValue> lit;
};

// Non-linear definition: a lifted Pauli (closed body) or a lifted Clifford
// function (body with exactly one free linear variable `var`). Bodies only
// reference previously built definitions, so the table is acyclic.
struct NLDef {
  enum class Kind { LiftedPauli, CliffordFn };
  std::string name;
  Kind kind;
  QTypePtr q_in;  // CliffordFn only
  QTypePtr q_out;
  std::string var;  // CliffordFn only
  PExprPtr body;
};

PExprPtr p_var(std::string name);
PExprPtr p_let(std::string x, PExprPtr bound, PExprPtr body);
PExprPtr p_embed(CExprPtr a);
PExprPtr p_phase(CExprPtr a, PExprPtr e);
PExprPtr p_cprod(PExprPtr a, PExprPtr b);
PExprPtr p_pow(PExprPtr e, std::int64_t r);
PExprPtr p_case_xz(PExprPtr scrut, PExprPtr ex, PExprPtr ez);
PExprPtr p_inj(int side, PExprPtr e, QTypePtr other);
PExprPtr p_case_prod(PExprPtr scrut, std::string x1, PExprPtr e1, std::string x2, PExprPtr e2);
PExprPtr p_force(NLDefPtr def);
PExprPtr p_apply(NLDefPtr def, PExprPtr arg);
PExprPtr p_lit(ZdScalar phase, CValuePtr value);

// ---------------------------------------------------------------------------
// psi-projection, type checking
// ---------------------------------------------------------------------------

// Drops phases and rebuilds the underlying Zd-linear map as a C-expression;
// definition references unfold their bodies.
CExprPtr psi_of(const PExprPtr& e);

struct SideConditionReport {
  std::string where;
  ZdScalar required;
  ZdScalar computed;
  bool ok;
  std::string basis_pair;  // failing basis substitution, if any
};

struct CheckTrace {
  std::vector<SideConditionReport> conditions;
};

using Theta = std::optional<std::pair<std::string, QTypePtr>>;

// Fig-style typing with symplectic side conditions, decided by evaluating
// omega on basis substitutions (sufficient: psi-projections denote linear
// maps and omega is bilinear, so agreement on basis pairs is agreement).
QTypePtr typecheck_p(const RingContext& ring, const Theta& theta, const PExprPtr& e,
                     CheckTrace* trace = nullptr);

// Checks a definition against its declared signature.
void typecheck_def(const RingContext& ring, const NLDef& def, CheckTrace* trace = nullptr);

// ---------------------------------------------------------------------------
// Operational semantics
// ---------------------------------------------------------------------------

struct PStep {
  PExprPtr next;
  std::optional<PValue> value;
};

// One CBV step with the phase corrections k of the condensed algebra.
PStep step_p(const RingContext& ring, const PExprPtr& e);

PValue eval_p(const RingContext& ring, const PExprPtr& e,
              std::int64_t budget = kDefaultStepBudget);

// Substitutes a closed value for the linear variable, both in Pauli
// positions and inside hosted C-expressions (phases).
PExprPtr subst_p(const PExprPtr& e, const std::string& x, const CValuePtr& v);

PauliElement pvalue_to_pauli(const RingContext& ring, const PValue& pv);
PValue pauli_to_pvalue(const QTypePtr& q, const PauliElement& p);
std::string render_pvalue(const RingContext& ring, const PValue& pv);

// Basis Pauli values: column j of the identity as a value of type
// overline(q).
CValuePtr basis_value(const QTypePtr& q, int j);

// ---------------------------------------------------------------------------
// Bridges to condensed encodings
// ---------------------------------------------------------------------------

// Runs the body on every basis Pauli; mu from the phases, psi from the
// vectors. The result is asserted symplectic (the checker guarantees it).
CondensedEncoding to_encoding(const RingContext& ring, const NLDef& def);

// Frame by structural recursion on the domain type: at Pauli the pair
// (body X, body Z); at a product, recurse on both injections. Agrees with
// to_frame(to_encoding(def)).
Frame compile_frame(const RingContext& ring, const NLDef& def);

// Operational inverse: w = psi^{-1}(v), then a forward run fixes the phase:
// f^{-1}(<r>v) = <r-s> w where f(w) evaluates to <s> v.
PValue apply_inverse(const RingContext& ring, const NLDef& def, const PValue& pv);

// One-clause conjugation-by-Pauli definition: q maps to <omega(p,q)> q.
NLDefPtr pauli_to_clifford(const PauliElement& p);

// Sequential and parallel composition as programs, not matrix products.
NLDefPtr compose_clifford(const NLDefPtr& f, const NLDefPtr& g);
NLDefPtr parallel_clifford(const NLDefPtr& f, const NLDefPtr& g);

}  // namespace pclif
