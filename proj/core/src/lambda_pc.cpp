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

#include "pclif/lambda_pc.hpp"

#include <sstream>

namespace pclif {

// ---------------------------------------------------------------------------
// Types
// ---------------------------------------------------------------------------

QTypePtr q_pauli() {
  static const QTypePtr q = std::make_shared<QType>(QType{QType::Tag::Pauli, nullptr, nullptr});
  return q;
}

QTypePtr q_prod(QTypePtr a, QTypePtr b) {
  return std::make_shared<QType>(QType{QType::Tag::Prod, std::move(a), std::move(b)});
}

QTypePtr q_pow(int n) {
  if (n < 1) throw DimensionError("Pauli^n needs n >= 1");
  QTypePtr q = q_pauli();
  for (int i = 1; i < n; ++i) q = q_prod(q_pauli(), q);
  return q;
}

bool q_equal(const QTypePtr& a, const QTypePtr& b) {
  if (a.get() == b.get()) return true;
  if (a->tag != b->tag) return false;
  if (a->tag == QType::Tag::Pauli) return true;
  return q_equal(a->left, b->left) && q_equal(a->right, b->right);
}

int q_rank(const QTypePtr& q) {
  return q->tag == QType::Tag::Pauli ? 1 : q_rank(q->left) + q_rank(q->right);
}

std::string render_qtype(const QTypePtr& q) {
  if (q->tag == QType::Tag::Pauli) return "Pauli";
  std::string l = render_qtype(q->left);
  std::string r = render_qtype(q->right);
  if (q->left->tag == QType::Tag::Prod) l = "(" + l + ")";
  if (q->right->tag == QType::Tag::Prod) r = "(" + r + ")";
  return l + " ** " + r;
}

CTypePtr q_to_ctype(const QTypePtr& q) {
  if (q->tag == QType::Tag::Pauli) return sum_type(unit_type(), unit_type());
  return sum_type(q_to_ctype(q->left), q_to_ctype(q->right));
}

QTypePtr q_of_ctype(const CTypePtr& t) {
  if (t->tag != CType::Tag::Sum) throw TypeError("not a Pauli-shaped type");
  if (t->left->tag == CType::Tag::Unit && t->right->tag == CType::Tag::Unit) return q_pauli();
  return q_prod(q_of_ctype(t->left), q_of_ctype(t->right));
}

// ---------------------------------------------------------------------------
// Builders
// ---------------------------------------------------------------------------

namespace {
PExprPtr mk(PExpr e) { return std::make_shared<PExpr>(std::move(e)); }
}  // namespace

PExprPtr p_var(std::string name) {
  PExpr e{};
  e.tag = PExpr::Tag::Var;
  e.name = std::move(name);
  return mk(std::move(e));
}
PExprPtr p_let(std::string x, PExprPtr bound, PExprPtr body) {
  PExpr e{};
  e.tag = PExpr::Tag::Let;
  e.name = std::move(x);
  e.p1 = std::move(bound);
  e.p2 = std::move(body);
  return mk(std::move(e));
}
PExprPtr p_embed(CExprPtr a) {
  PExpr e{};
  e.tag = PExpr::Tag::Embed;
  e.cexpr = std::move(a);
  return mk(std::move(e));
}
PExprPtr p_phase(CExprPtr a, PExprPtr inner) {
  PExpr e{};
  e.tag = PExpr::Tag::Phase;
  e.cexpr = std::move(a);
  e.p1 = std::move(inner);
  return mk(std::move(e));
}
PExprPtr p_cprod(PExprPtr a, PExprPtr b) {
  PExpr e{};
  e.tag = PExpr::Tag::CProd;
  e.p1 = std::move(a);
  e.p2 = std::move(b);
  return mk(std::move(e));
}
PExprPtr p_pow(PExprPtr inner, std::int64_t r) {
  PExpr e{};
  e.tag = PExpr::Tag::Pow;
  e.p1 = std::move(inner);
  e.scalar = r;
  return mk(std::move(e));
}
PExprPtr p_case_xz(PExprPtr scrut, PExprPtr ex, PExprPtr ez) {
  PExpr e{};
  e.tag = PExpr::Tag::CaseXZ;
  e.p1 = std::move(scrut);
  e.p2 = std::move(ex);
  e.p3 = std::move(ez);
  return mk(std::move(e));
}
PExprPtr p_inj(int side, PExprPtr inner, QTypePtr other) {
  if (side != 1 && side != 2) throw DimensionError("injection side must be 1 or 2");
  PExpr e{};
  e.tag = PExpr::Tag::Inj;
  e.side = side;
  e.p1 = std::move(inner);
  e.other = std::move(other);
  return mk(std::move(e));
}
PExprPtr p_case_prod(PExprPtr scrut, std::string x1, PExprPtr e1, std::string x2, PExprPtr e2) {
  PExpr e{};
  e.tag = PExpr::Tag::CaseProd;
  e.p1 = std::move(scrut);
  e.name = std::move(x1);
  e.p2 = std::move(e1);
  e.name2 = std::move(x2);
  e.p3 = std::move(e2);
  return mk(std::move(e));
}
PExprPtr p_force(NLDefPtr def) {
  PExpr e{};
  e.tag = PExpr::Tag::Force;
  e.def = std::move(def);
  return mk(std::move(e));
}
PExprPtr p_apply(NLDefPtr def, PExprPtr arg) {
  PExpr e{};
  e.tag = PExpr::Tag::Apply;
  e.def = std::move(def);
  e.p1 = std::move(arg);
  return mk(std::move(e));
}
PExprPtr p_lit(ZdScalar phase, CValuePtr value) {
  PExpr e{};
  e.tag = PExpr::Tag::Lit;
  e.lit = std::make_shared<PValue>(PValue{phase, std::move(value)});
  return mk(std::move(e));
}

// ---------------------------------------------------------------------------
// psi projection
// ---------------------------------------------------------------------------

namespace {

CExprPtr c_inj(int side, CExprPtr inner, const CTypePtr& other) {
  if (side == 1) return c_pair(std::move(inner), c_zero(other));
  return c_pair(c_zero(other), std::move(inner));
}

CExprPtr rename_var(const CExprPtr& e, const std::string& from, const std::string& to) {
  return subst(e, from, c_var(to));
}

}  // namespace

CExprPtr psi_of(const PExprPtr& e) {
  switch (e->tag) {
    case PExpr::Tag::Var:
      return c_var(e->name);
    case PExpr::Tag::Let:
      return c_let(e->name, psi_of(e->p1), psi_of(e->p2));
    case PExpr::Tag::Embed:
      return e->cexpr;
    case PExpr::Tag::Phase:
      return psi_of(e->p1);
    case PExpr::Tag::CProd:
      return c_add(psi_of(e->p1), psi_of(e->p2));
    case PExpr::Tag::Pow:
      return c_mul(c_const(e->scalar), psi_of(e->p1));
    case PExpr::Tag::CaseXZ: {
      std::string x1 = fresh_var();
      std::string x2 = fresh_var();
      return c_case(psi_of(e->p1), x1, c_mul(c_var(x1), psi_of(e->p2)), x2,
                    c_mul(c_var(x2), psi_of(e->p3)));
    }
    case PExpr::Tag::Inj:
      return c_inj(e->side, psi_of(e->p1), q_to_ctype(e->other));
    case PExpr::Tag::CaseProd:
      return c_case(psi_of(e->p1), e->name, psi_of(e->p2), e->name2, psi_of(e->p3));
    case PExpr::Tag::Force:
      return psi_of(e->def->body);
    case PExpr::Tag::Apply: {
      // Unfold the definition body on the translated argument.
      std::string x = fresh_var();
      return c_let(x, psi_of(e->p1), rename_var(psi_of(e->def->body), e->def->var, x));
    }
    case PExpr::Tag::Lit:
      return value_to_expr(e->lit->value);
  }
  throw InternalError("psi_of: bad tag");
}

// ---------------------------------------------------------------------------
// Type checking
// ---------------------------------------------------------------------------

namespace {

LinearCtx ctype_ctx(const Theta& theta) {
  LinearCtx ctx;
  if (theta) ctx.push(theta->first, q_to_ctype(theta->second));
  return ctx;
}

std::string render_basis_pair(const EquivWitness& w) {
  std::ostringstream o;
  for (std::size_t i = 0; i < w.substitution.size(); ++i) {
    if (i) o << ", ";
    o << w.substitution[i].first << " := " << render_value(w.substitution[i].second);
  }
  return o.str();
}

// Decides <lhs_z, lhs_x>_Q == required by basis enumeration over ctx, and
// records the outcome. Throws TypeError on violation.
void side_condition(const RingContext& ring, const LinearCtx& ctx, const QTypePtr& q,
                    const CExprPtr& psi_first, const CExprPtr& psi_second, ZdScalar required,
                    const std::string& where, CheckTrace* trace) {
  CExprPtr lhs = c_app(c_app(build_omega(q_to_ctype(q)), psi_first), psi_second);
  auto witness = equiv_counterexample(ring, ctx, lhs, c_const(required));
  SideConditionReport report;
  report.where = where;
  report.required = required;
  report.ok = !witness.has_value();
  if (witness) {
    report.computed = witness->lhs->tag == CValue::Tag::Const ? witness->lhs->r : -1;
    report.basis_pair = render_basis_pair(*witness);
  } else {
    report.computed = required;
  }
  if (trace) trace->conditions.push_back(report);
  if (!report.ok) {
    std::ostringstream msg;
    msg << where << ": symplectic side condition violated: omega = " << report.computed
        << ", required " << required;
    if (!report.basis_pair.empty()) {
      msg << " (at basis substitution " << report.basis_pair << ")";
    } else if (ctx.empty()) {
      // Closed branches: name the offending pair of branch images.
      msg << " (pair " << render_value(eval_c(ring, psi_first)) << ", "
          << render_value(eval_c(ring, psi_second)) << ")";
    }
    throw TypeError(msg.str());
  }
}

QTypePtr value_qtype(const CValuePtr& v) {
  if (v->tag != CValue::Tag::Pair) throw TypeError("runtime literal with non-Pauli shape");
  if (v->v1->tag == CValue::Tag::Const && v->v2->tag == CValue::Tag::Const) return q_pauli();
  return q_prod(value_qtype(v->v1), value_qtype(v->v2));
}

}  // namespace

QTypePtr typecheck_p(const RingContext& ring, const Theta& theta, const PExprPtr& e,
                     CheckTrace* trace) {
  switch (e->tag) {
    case PExpr::Tag::Var: {
      if (!theta || theta->first != e->name) {
        throw TypeError("linear variable '" + e->name + "' is not the one in scope");
      }
      return theta->second;
    }
    case PExpr::Tag::Let: {
      QTypePtr q = typecheck_p(ring, theta, e->p1, trace);
      return typecheck_p(ring, Theta{{e->name, q}}, e->p2, trace);
    }
    case PExpr::Tag::Embed: {
      if (theta) {
        throw TypeError("embedded Pauli literal discards the linear variable '" +
                        theta->first + "'");
      }
      CTypePtr alpha = typecheck_c(ring, LinearCtx{}, e->cexpr);
      return q_of_ctype(alpha);
    }
    case PExpr::Tag::Phase: {
      CTypePtr pt = typecheck_c(ring, ctype_ctx(theta), e->cexpr);
      if (pt->tag != CType::Tag::Unit) throw TypeError("phase expression must have type I");
      return typecheck_p(ring, theta, e->p1, trace);
    }
    case PExpr::Tag::CProd: {
      if (theta) throw TypeError("condensed product requires closed operands");
      QTypePtr a = typecheck_p(ring, std::nullopt, e->p1, trace);
      QTypePtr b = typecheck_p(ring, std::nullopt, e->p2, trace);
      if (!q_equal(a, b)) throw TypeError("condensed product of different Pauli types");
      return a;
    }
    case PExpr::Tag::Pow: {
      if (theta) throw TypeError("pow requires a closed operand");
      return typecheck_p(ring, std::nullopt, e->p1, trace);
    }
    case PExpr::Tag::CaseXZ: {
      QTypePtr qs = typecheck_p(ring, theta, e->p1, trace);
      if (qs->tag != QType::Tag::Pauli) throw TypeError("case X/Z scrutinee must be Pauli");
      QTypePtr qx = typecheck_p(ring, std::nullopt, e->p2, trace);
      QTypePtr qz = typecheck_p(ring, std::nullopt, e->p3, trace);
      if (!q_equal(qx, qz)) throw TypeError("case X/Z branches have different types");
      side_condition(ring, LinearCtx{}, qx, psi_of(e->p3), psi_of(e->p2), 1, "case X/Z", trace);
      return qx;
    }
    case PExpr::Tag::Inj: {
      QTypePtr q = typecheck_p(ring, theta, e->p1, trace);
      return e->side == 1 ? q_prod(q, e->other) : q_prod(e->other, q);
    }
    case PExpr::Tag::CaseProd: {
      QTypePtr qs = typecheck_p(ring, theta, e->p1, trace);
      if (qs->tag != QType::Tag::Prod) throw TypeError("case in1/in2 scrutinee must be a product");
      if (e->name == e->name2) throw TypeError("case in1/in2 binders must be distinct");
      QTypePtr q1 = typecheck_p(ring, Theta{{e->name, qs->left}}, e->p2, trace);
      QTypePtr q2 = typecheck_p(ring, Theta{{e->name2, qs->right}}, e->p3, trace);
      if (!q_equal(q1, q2)) throw TypeError("case in1/in2 branches have different types");
      LinearCtx two;
      two.push(e->name, q_to_ctype(qs->left));
      two.push(e->name2, q_to_ctype(qs->right));
      side_condition(ring, two, q1, psi_of(e->p2), psi_of(e->p3), 0, "case in1/in2", trace);
      return q1;
    }
    case PExpr::Tag::Force: {
      if (theta) throw TypeError("force requires an empty linear context");
      if (e->def->kind != NLDef::Kind::LiftedPauli) {
        throw TypeError("force of a non-Pauli definition '" + e->def->name + "'");
      }
      return e->def->q_out;
    }
    case PExpr::Tag::Apply: {
      if (e->def->kind != NLDef::Kind::CliffordFn) {
        throw TypeError("application of a non-Clifford definition '" + e->def->name + "'");
      }
      QTypePtr arg = typecheck_p(ring, theta, e->p1, trace);
      if (!q_equal(arg, e->def->q_in)) {
        throw TypeError("argument of '" + e->def->name + "' has type " + render_qtype(arg) +
                        ", expected " + render_qtype(e->def->q_in));
      }
      return e->def->q_out;
    }
    case PExpr::Tag::Lit: {
      if (theta) throw TypeError("literal under nonempty linear context");
      return value_qtype(e->lit->value);
    }
  }
  throw InternalError("typecheck_p: bad tag");
}

void typecheck_def(const RingContext& ring, const NLDef& def, CheckTrace* trace) {
  if (def.kind == NLDef::Kind::LiftedPauli) {
    QTypePtr q = typecheck_p(ring, std::nullopt, def.body, trace);
    if (!q_equal(q, def.q_out)) {
      throw TypeError("definition '" + def.name + "' has type " + render_qtype(q) +
                      ", declared " + render_qtype(def.q_out));
    }
    return;
  }
  QTypePtr q = typecheck_p(ring, Theta{{def.var, def.q_in}}, def.body, trace);
  if (!q_equal(q, def.q_out)) {
    throw TypeError("definition '" + def.name + "' has result type " + render_qtype(q) +
                    ", declared " + render_qtype(def.q_out));
  }
}

// ---------------------------------------------------------------------------
// Substitution and stepping
// ---------------------------------------------------------------------------

PExprPtr subst_p(const PExprPtr& e, const std::string& x, const CValuePtr& v) {
  CExprPtr ve = value_to_expr(v);
  switch (e->tag) {
    case PExpr::Tag::Var:
      return e->name == x ? p_lit(0, v) : e;
    case PExpr::Tag::Let: {
      PExprPtr bound = subst_p(e->p1, x, v);
      PExprPtr body = e->name == x ? e->p2 : subst_p(e->p2, x, v);
      return p_let(e->name, std::move(bound), std::move(body));
    }
    case PExpr::Tag::Embed:
      return p_embed(subst(e->cexpr, x, ve));
    case PExpr::Tag::Phase:
      return p_phase(subst(e->cexpr, x, ve), subst_p(e->p1, x, v));
    case PExpr::Tag::CProd:
      return p_cprod(subst_p(e->p1, x, v), subst_p(e->p2, x, v));
    case PExpr::Tag::Pow:
      return p_pow(subst_p(e->p1, x, v), e->scalar);
    case PExpr::Tag::CaseXZ:
      return p_case_xz(subst_p(e->p1, x, v), subst_p(e->p2, x, v), subst_p(e->p3, x, v));
    case PExpr::Tag::Inj:
      return p_inj(e->side, subst_p(e->p1, x, v), e->other);
    case PExpr::Tag::CaseProd: {
      PExprPtr scrut = subst_p(e->p1, x, v);
      PExprPtr b1 = e->name == x ? e->p2 : subst_p(e->p2, x, v);
      PExprPtr b2 = e->name2 == x ? e->p3 : subst_p(e->p3, x, v);
      return p_case_prod(std::move(scrut), e->name, std::move(b1), e->name2, std::move(b2));
    }
    case PExpr::Tag::Force:
      return e;
    case PExpr::Tag::Apply:
      return p_apply(e->def, subst_p(e->p1, x, v));
    case PExpr::Tag::Lit:
      return e;
  }
  throw InternalError("subst_p: bad tag");
}

namespace {

// Structural add / scale on first-order values; shapes match by typing.
CValuePtr add_values(const RingContext& ring, const CValuePtr& a, const CValuePtr& b) {
  if (a->tag == CValue::Tag::Const && b->tag == CValue::Tag::Const) {
    return v_const(ring.add(ring.norm(a->r), ring.norm(b->r)));
  }
  if (a->tag == CValue::Tag::Pair && b->tag == CValue::Tag::Pair) {
    return v_pair(add_values(ring, a->v1, b->v1), add_values(ring, a->v2, b->v2));
  }
  throw InternalError("value addition with mismatched shapes");
}

CValuePtr scale_value(const RingContext& ring, ZdScalar r, const CValuePtr& v) {
  if (v->tag == CValue::Tag::Const) return v_const(ring.mul(r, ring.norm(v->r)));
  if (v->tag == CValue::Tag::Pair) {
    return v_pair(scale_value(ring, r, v->v1), scale_value(ring, r, v->v2));
  }
  throw InternalError("value scaling of a function value");
}

CValuePtr zero_like(const CValuePtr& v) {
  if (v->tag == CValue::Tag::Const) return v_const(0);
  return v_pair(zero_like(v->v1), zero_like(v->v2));
}

}  // namespace

PStep step_p(const RingContext& ring, const PExprPtr& e) {
  switch (e->tag) {
    case PExpr::Tag::Lit:
      return {nullptr, *e->lit};
    case PExpr::Tag::Var:
      throw EvalError("free Pauli variable '" + e->name + "' in a closed evaluation");
    case PExpr::Tag::Embed: {
      CStep s = step_c(ring, e->cexpr);
      if (s.value) return {p_lit(0, s.value), std::nullopt};  // eta: v -> <0> v
      return {p_embed(s.next), std::nullopt};
    }
    case PExpr::Tag::Phase: {
      if (e->cexpr->tag != CExpr::Tag::Const) {
        CStep s = step_c(ring, e->cexpr);
        CExprPtr phase = s.value ? value_to_expr(s.value) : s.next;
        return {p_phase(phase, e->p1), std::nullopt};
      }
      if (e->p1->tag != PExpr::Tag::Lit) {
        PStep s = step_p(ring, e->p1);
        return {p_phase(e->cexpr, s.next), std::nullopt};
      }
      const PValue& pv = *e->p1->lit;
      return {p_lit(ring.add(ring.norm(e->cexpr->value), pv.phase), pv.value), std::nullopt};
    }
    case PExpr::Tag::Let: {
      if (e->p1->tag != PExpr::Tag::Lit) {
        PStep s = step_p(ring, e->p1);
        return {p_let(e->name, s.next, e->p2), std::nullopt};
      }
      const PValue& pv = *e->p1->lit;
      return {p_phase(c_const(pv.phase), subst_p(e->p2, e->name, pv.value)), std::nullopt};
    }
    case PExpr::Tag::CProd: {
      if (e->p1->tag != PExpr::Tag::Lit) {
        PStep s = step_p(ring, e->p1);
        return {p_cprod(s.next, e->p2), std::nullopt};
      }
      if (e->p2->tag != PExpr::Tag::Lit) {
        PStep s = step_p(ring, e->p2);
        return {p_cprod(e->p1, s.next), std::nullopt};
      }
      const PValue& a = *e->p1->lit;
      const PValue& b = *e->p2->lit;
      PauliElement pa(a.phase, value_to_phase_vector(ring, a.value));
      PauliElement pb(b.phase, value_to_phase_vector(ring, b.value));
      PauliElement prod = cprod(pa, pb);
      return {p_lit(prod.phase, add_values(ring, a.value, b.value)), std::nullopt};
    }
    case PExpr::Tag::Pow: {
      if (e->p1->tag != PExpr::Tag::Lit) {
        PStep s = step_p(ring, e->p1);
        return {p_pow(s.next, e->scalar), std::nullopt};
      }
      const PValue& a = *e->p1->lit;
      ZdScalar r = ring.norm(e->scalar);
      PauliElement pa(a.phase, value_to_phase_vector(ring, a.value));
      PauliElement powed = pauli_pow(pa, r);
      return {p_lit(powed.phase, scale_value(ring, r, a.value)), std::nullopt};
    }
    case PExpr::Tag::CaseXZ: {
      if (e->p1->tag != PExpr::Tag::Lit) {
        PStep s = step_p(ring, e->p1);
        return {p_case_xz(s.next, e->p2, e->p3), std::nullopt};
      }
      const PValue& pv = *e->p1->lit;
      if (pv.value->tag != CValue::Tag::Pair || pv.value->v1->tag != CValue::Tag::Const ||
          pv.value->v2->tag != CValue::Tag::Const) {
        throw InternalError("case X/Z scrutinee is not a single-site Pauli value");
      }
      ZdScalar rx = ring.norm(pv.value->v1->r);
      ZdScalar rz = ring.norm(pv.value->v2->r);
      std::int64_t k = ring.sgn(ring.mul_p(ring.lift(rx), ring.lift(rz)));
      ZdScalar phase = ring.add(pv.phase, ring.half_d_times(k));
      return {p_phase(c_const(phase), p_cprod(p_pow(e->p3, rz), p_pow(e->p2, rx))),
              std::nullopt};
    }
    case PExpr::Tag::Inj: {
      if (e->p1->tag != PExpr::Tag::Lit) {
        PStep s = step_p(ring, e->p1);
        return {p_inj(e->side, s.next, e->other), std::nullopt};
      }
      const PValue& pv = *e->p1->lit;
      CValuePtr padded = e->side == 1
                             ? v_pair(pv.value, zero_value(q_to_ctype(e->other)))
                             : v_pair(zero_value(q_to_ctype(e->other)), pv.value);
      return {p_lit(pv.phase, std::move(padded)), std::nullopt};
    }
    case PExpr::Tag::CaseProd: {
      if (e->p1->tag != PExpr::Tag::Lit) {
        PStep s = step_p(ring, e->p1);
        return {p_case_prod(s.next, e->name, e->p2, e->name2, e->p3), std::nullopt};
      }
      const PValue& pv = *e->p1->lit;
      if (pv.value->tag != CValue::Tag::Pair) {
        throw InternalError("case in1/in2 scrutinee is not a pair value");
      }
      PExprPtr body = p_cprod(subst_p(e->p2, e->name, pv.value->v1),
                              subst_p(e->p3, e->name2, pv.value->v2));
      return {p_phase(c_const(pv.phase), std::move(body)), std::nullopt};
    }
    case PExpr::Tag::Force:
      return {e->def->body, std::nullopt};
    case PExpr::Tag::Apply: {
      if (e->p1->tag != PExpr::Tag::Lit) {
        PStep s = step_p(ring, e->p1);
        return {p_apply(e->def, s.next), std::nullopt};
      }
      const PValue& pv = *e->p1->lit;
      return {p_phase(c_const(pv.phase), subst_p(e->def->body, e->def->var, pv.value)),
              std::nullopt};
    }
  }
  throw InternalError("step_p: bad tag");
}

PValue eval_p(const RingContext& ring, const PExprPtr& e, std::int64_t budget) {
  PExprPtr cur = e;
  for (std::int64_t i = 0; i <= budget; ++i) {
    PStep s = step_p(ring, cur);
    if (s.value) return *s.value;
    cur = s.next;
  }
  throw EvalError("Pauli step budget exceeded after " + std::to_string(budget) + " steps");
}

PauliElement pvalue_to_pauli(const RingContext& ring, const PValue& pv) {
  return PauliElement(pv.phase, value_to_phase_vector(ring, pv.value));
}

PValue pauli_to_pvalue(const QTypePtr& q, const PauliElement& p) {
  return PValue{p.phase, unflatten_value(q_to_ctype(q), p.vector.entries())};
}

std::string render_pvalue(const RingContext& ring, const PValue& pv) {
  return render_pauli(pvalue_to_pauli(ring, pv));
}

CValuePtr basis_value(const QTypePtr& q, int j) {
  int n = q_rank(q);
  std::vector<std::int64_t> coords(2 * static_cast<std::size_t>(n), 0);
  coords[static_cast<std::size_t>(j)] = 1;
  return unflatten_value(q_to_ctype(q), coords);
}

// ---------------------------------------------------------------------------
// Encoding bridges
// ---------------------------------------------------------------------------

CondensedEncoding to_encoding(const RingContext& ring, const NLDef& def) {
  if (def.kind != NLDef::Kind::CliffordFn) {
    throw TypeError("to_encoding needs a Clifford definition");
  }
  int n = q_rank(def.q_in);
  int m = q_rank(def.q_out);
  std::vector<ZdScalar> mu;
  std::vector<PhaseVector> cols;
  for (int j = 0; j < 2 * n; ++j) {
    PValue out = eval_p(ring, subst_p(def.body, def.var, basis_value(def.q_in, j)));
    mu.push_back(out.phase);
    cols.push_back(value_to_phase_vector(ring, out.value));
  }
  return CondensedEncoding(std::move(mu), SymplecticMap(ring, m, std::move(cols)));
}

namespace {

// Replaces the linear variable by an open expression (an injection of a new
// variable); C-level occurrences get the psi projection of the replacement.
PExprPtr graft(const PExprPtr& e, const std::string& x, const PExprPtr& rep,
               const CExprPtr& crep) {
  switch (e->tag) {
    case PExpr::Tag::Var:
      return e->name == x ? rep : e;
    case PExpr::Tag::Let: {
      PExprPtr bound = graft(e->p1, x, rep, crep);
      PExprPtr body = e->name == x ? e->p2 : graft(e->p2, x, rep, crep);
      return p_let(e->name, std::move(bound), std::move(body));
    }
    case PExpr::Tag::Embed:
      return p_embed(subst(e->cexpr, x, crep));
    case PExpr::Tag::Phase:
      return p_phase(subst(e->cexpr, x, crep), graft(e->p1, x, rep, crep));
    case PExpr::Tag::CProd:
      return p_cprod(graft(e->p1, x, rep, crep), graft(e->p2, x, rep, crep));
    case PExpr::Tag::Pow:
      return p_pow(graft(e->p1, x, rep, crep), e->scalar);
    case PExpr::Tag::CaseXZ:
      return p_case_xz(graft(e->p1, x, rep, crep), graft(e->p2, x, rep, crep),
                       graft(e->p3, x, rep, crep));
    case PExpr::Tag::Inj:
      return p_inj(e->side, graft(e->p1, x, rep, crep), e->other);
    case PExpr::Tag::CaseProd: {
      PExprPtr scrut = graft(e->p1, x, rep, crep);
      PExprPtr b1 = e->name == x ? e->p2 : graft(e->p2, x, rep, crep);
      PExprPtr b2 = e->name2 == x ? e->p3 : graft(e->p3, x, rep, crep);
      return p_case_prod(std::move(scrut), e->name, std::move(b1), e->name2, std::move(b2));
    }
    case PExpr::Tag::Force:
    case PExpr::Tag::Lit:
      return e;
    case PExpr::Tag::Apply:
      return p_apply(e->def, graft(e->p1, x, rep, crep));
  }
  throw InternalError("graft: bad tag");
}

void compile_frame_rec(const RingContext& ring, const NLDef& def, Frame& out) {
  if (def.q_in->tag == QType::Tag::Pauli) {
    auto run = [&](const char* name) {
      CValuePtr v = phase_vector_to_value(q_to_ctype(q_pauli()),
                                          named_pauli(ring, name).vector);
      PValue res = eval_p(ring, subst_p(def.body, def.var, v));
      return pvalue_to_pauli(ring, res);
    };
    out.rows.emplace_back(run("X"), run("Z"));
    return;
  }
  const QTypePtr& q1 = def.q_in->left;
  const QTypePtr& q2 = def.q_in->right;
  std::string x1 = fresh_var();
  PExprPtr rep1 = p_inj(1, p_var(x1), q2);
  NLDef left{def.name + ".in1", NLDef::Kind::CliffordFn, q1, def.q_out, x1,
             graft(def.body, def.var, rep1, psi_of(rep1))};
  compile_frame_rec(ring, left, out);

  std::string x2 = fresh_var();
  PExprPtr rep2 = p_inj(2, p_var(x2), q1);
  NLDef right{def.name + ".in2", NLDef::Kind::CliffordFn, q2, def.q_out, x2,
              graft(def.body, def.var, rep2, psi_of(rep2))};
  compile_frame_rec(ring, right, out);
}

}  // namespace

Frame compile_frame(const RingContext& ring, const NLDef& def) {
  if (def.kind != NLDef::Kind::CliffordFn) {
    throw TypeError("compile_frame needs a Clifford definition");
  }
  Frame f;
  compile_frame_rec(ring, def, f);
  return f;
}

PValue apply_inverse(const RingContext& ring, const NLDef& def, const PValue& pv) {
  if (q_rank(def.q_in) != q_rank(def.q_out)) {
    throw DimensionError("inverse requires equal input and output ranks");
  }
  CondensedEncoding inv = invert(to_encoding(ring, def));
  PhaseVector w = inv.psi.apply(value_to_phase_vector(ring, pv.value));
  CValuePtr wv = unflatten_value(q_to_ctype(def.q_in), w.entries());
  PValue forward = eval_p(ring, p_apply(std::make_shared<NLDef>(def), p_lit(0, wv)));
  return PValue{ring.sub(pv.phase, forward.phase), wv};
}

NLDefPtr pauli_to_clifford(const PauliElement& p) {
  QTypePtr q = q_pow(p.rank());
  CTypePtr sigma = q_to_ctype(q);
  std::string x = fresh_var();
  CExprPtr pv = value_to_expr(unflatten_value(sigma, p.vector.entries()));
  CExprPtr phase = c_app(c_app(build_omega(sigma), pv), c_var(x));
  PExprPtr body = p_phase(std::move(phase), p_var(x));
  return std::make_shared<NLDef>(
      NLDef{"pauliToClifford", NLDef::Kind::CliffordFn, q, q, x, std::move(body)});
}

NLDefPtr compose_clifford(const NLDefPtr& f, const NLDefPtr& g) {
  if (f->kind != NLDef::Kind::CliffordFn || g->kind != NLDef::Kind::CliffordFn) {
    throw TypeError("compose needs Clifford definitions");
  }
  if (!q_equal(f->q_out, g->q_in)) {
    throw DimensionError("compose: intermediate types differ");
  }
  std::string x = fresh_var();
  PExprPtr body = p_apply(g, p_apply(f, p_var(x)));
  return std::make_shared<NLDef>(NLDef{"compose(" + f->name + "," + g->name + ")",
                                       NLDef::Kind::CliffordFn, f->q_in, g->q_out, x,
                                       std::move(body)});
}

NLDefPtr parallel_clifford(const NLDefPtr& f, const NLDefPtr& g) {
  if (f->kind != NLDef::Kind::CliffordFn || g->kind != NLDef::Kind::CliffordFn) {
    throw TypeError("parallel needs Clifford definitions");
  }
  std::string x = fresh_var();
  std::string q1 = fresh_var();
  std::string q2 = fresh_var();
  PExprPtr body = p_case_prod(p_var(x), q1, p_inj(1, p_apply(f, p_var(q1)), g->q_out), q2,
                              p_inj(2, p_apply(g, p_var(q2)), f->q_out));
  return std::make_shared<NLDef>(NLDef{"parallel(" + f->name + "," + g->name + ")",
                                       NLDef::Kind::CliffordFn, q_prod(f->q_in, g->q_in),
                                       q_prod(f->q_out, g->q_out), x, std::move(body)});
}

}  // namespace pclif
