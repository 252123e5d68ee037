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

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pclif/lambda_pc.hpp"

namespace pclif {

// Surface syntax of .pc files:
//
//   program  := "dim" INT ";" (signature | defline)*
//   signature:= IDENT "::" liftty ("->" liftty)*
//   liftty   := "|^" qtype ("-o" qtype)? "^|"
//   qtype    := qatom ("**" qtype)?            -- right associative
//   qatom    := "Pauli" ("^" INT)? | TYVAR | "(" qtype ")"
//   defline  := IDENT param* "|^" pattern "=" pexpr "^|"    -- clause
//             | IDENT param* "=" "|^" pexpr "^|"            -- lifted Pauli
//   pattern  := ("in1"|"in2")* ( ("X"|"Z") ("." index)? | IDENT )
//   pexpr    := tensor ("*.*" tensor)*         -- `*.*` is the condensed product
//   tensor   := prefix ("**" tensor)?          -- e1 ** e2 = in1 e1 *.* in2 e2
//   prefix   := "<" cexpr ">" prefix | ("in1"|"in2") prefix | postfix
//   postfix  := applic ("^" INT)*
//   applic   := atom+                          -- definition application
//   atom     := "[" cexpr "," cexpr "]" | "(" pexpr ")"
//             | IDENT ("@(" qtype ("," qtype)* ")")? ("." index)?
//   cexpr    := cterm (("+"|"-") cterm)* ; cterm := cfac ("*" cfac)*
//   cfac     := INT | IDENT | "omega" atom atom | "(" cexpr ")"
//   index    := INT | IDENT | "(" IDENT (("+"|"-") INT)? ")"
//
// Clauses with a symbolic index (`Z.i`) expand to one clause per site of the
// matched block, binding the index for the right-hand side. Comments run
// from "--" to end of line.

struct SType;
using STypePtr = std::shared_ptr<const SType>;
struct SType {
  enum class Tag { Pauli, Var, Prod };
  Tag tag;
  std::string var;
  STypePtr left, right;
};

struct SIndex {
  bool literal = true;
  std::int64_t value = 0;  // literal
  std::string var;         // symbolic
  std::int64_t offset = 0;
};

struct SCExpr;
using SCExprPtr = std::shared_ptr<const SCExpr>;

struct SExpr;
using SExprPtr = std::shared_ptr<const SExpr>;
struct SExpr {
  enum class Tag { Name, PairLit, PhaseE, Star, Tensor, In, PowE, App };
  Tag tag;
  std::string name;                   // Name / App head
  std::optional<SIndex> index;        // Name with ".i"
  std::vector<STypePtr> ty_args;      // explicit "@(...)" instantiation
  SCExprPtr c1, c2;                   // PairLit components; PhaseE phase
  SExprPtr e1, e2;
  std::vector<SExprPtr> args;         // App arguments
  std::int64_t power = 0;             // PowE
  int side = 0;                       // In
  int line = 0, col = 0;
};

struct SCExpr {
  enum class Tag { Int, Ident, Omega, Add, Sub, Mul };
  Tag tag;
  std::int64_t value = 0;
  std::string name;
  SCExprPtr a, b;
  SExprPtr p1, p2;  // omega operands
  int line = 0, col = 0;
};

struct SPattern {
  std::vector<int> prefixes;  // 1 = in1, 2 = in2
  enum class Leaf { X, Z, Var } leaf = Leaf::Var;
  std::string binder;          // Var leaf
  std::optional<SIndex> index; // X.i / Z.i
  int line = 0, col = 0;
};

struct SParam {
  std::string name;
  bool is_clifford = false;
  STypePtr dom, cod;  // Pauli param: dom only
};

struct SClause {
  SPattern pattern;
  SExprPtr rhs;
};

struct SurfaceDef {
  std::string name;
  std::vector<SParam> params;
  bool is_clifford = false;  // declared type has "-o"
  STypePtr dom, cod;         // dom null for lifted Paulis
  std::vector<SClause> clauses;
  SExprPtr simple_body;
  int line = 0;
  bool parametric() const;  // has params or type variables
};

struct ParsedProgram {
  std::int64_t dim = 2;
  std::vector<SurfaceDef> defs;
};

ParsedProgram parse_program(const std::string& source);

// A program with every concrete definition elaborated and type checked.
// Parametric definitions stay as templates and are instantiated (and
// checked) at use sites.
struct LoadedProgram {
  RingContext ctx{2};
  std::vector<SurfaceDef> defs;
  std::map<std::string, std::size_t> def_index;
  std::map<std::string, NLDefPtr> concrete;
  std::map<std::string, CheckTrace> traces;
  std::vector<std::pair<std::string, std::string>> failures;  // name -> error
  std::set<std::string> instantiating;  // cycle detection
};

LoadedProgram load_program(const std::string& source);

// Closed Pauli expression in the program's scope; returns the core term and
// its checked type.
std::pair<PExprPtr, QTypePtr> parse_expr_in(LoadedProgram& prog, const std::string& text);

// Like parse_expr_in but elaborated against an expected type.
PExprPtr parse_expr_expecting(LoadedProgram& prog, const std::string& text, const QTypePtr& q);

// A definition reference: bare name, explicit instantiation name@(...), or
// an application supplying non-linear arguments (e.g. "compose S_2 S_2").
NLDefPtr resolve_def(LoadedProgram& prog, const std::string& text);

}  // namespace pclif
