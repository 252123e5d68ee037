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

#include "pclif/lambda_c.hpp"

#include <atomic>
#include <map>
#include <set>
#include <sstream>

namespace pclif {

// ---------------------------------------------------------------------------
// Types
// ---------------------------------------------------------------------------

CTypePtr unit_type() {
  static const CTypePtr t = std::make_shared<CType>(CType{CType::Tag::Unit, nullptr, nullptr});
  return t;
}

CTypePtr sum_type(CTypePtr a, CTypePtr b) {
  return std::make_shared<CType>(CType{CType::Tag::Sum, std::move(a), std::move(b)});
}

CTypePtr arrow_type(CTypePtr a, CTypePtr b) {
  return std::make_shared<CType>(CType{CType::Tag::Arrow, std::move(a), std::move(b)});
}

bool type_equal(const CTypePtr& a, const CTypePtr& b) {
  if (a.get() == b.get()) return true;
  if (a->tag != b->tag) return false;
  if (a->tag == CType::Tag::Unit) return true;
  return type_equal(a->left, b->left) && type_equal(a->right, b->right);
}

bool is_first_order(const CTypePtr& t) {
  switch (t->tag) {
    case CType::Tag::Unit:
      return true;
    case CType::Tag::Sum:
      return is_first_order(t->left) && is_first_order(t->right);
    case CType::Tag::Arrow:
      return false;
  }
  return false;
}

bool is_symplectic_type(const CTypePtr& t) {
  if (t->tag != CType::Tag::Sum) return false;
  if (t->left->tag == CType::Tag::Unit && t->right->tag == CType::Tag::Unit) return true;
  return is_symplectic_type(t->left) && is_symplectic_type(t->right);
}

int type_rank(const CTypePtr& t) {
  switch (t->tag) {
    case CType::Tag::Unit:
      return 1;
    case CType::Tag::Sum:
      return type_rank(t->left) + type_rank(t->right);
    case CType::Tag::Arrow:
      throw TypeError("rank of a function type");
  }
  return 0;
}

std::string render_type(const CTypePtr& t) {
  switch (t->tag) {
    case CType::Tag::Unit:
      return "I";
    case CType::Tag::Sum:
      return "(" + render_type(t->left) + " (+) " + render_type(t->right) + ")";
    case CType::Tag::Arrow:
      return "(" + render_type(t->left) + " -o " + render_type(t->right) + ")";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Expression builders
// ---------------------------------------------------------------------------

namespace {
CExprPtr mk(CExpr e) { return std::make_shared<CExpr>(std::move(e)); }
}  // namespace

CExprPtr c_var(std::string name) {
  return mk({CExpr::Tag::Var, std::move(name), "", 0, nullptr, nullptr, nullptr, nullptr});
}
CExprPtr c_let(std::string x, CExprPtr bound, CExprPtr body) {
  return mk({CExpr::Tag::Let, std::move(x), "", 0, nullptr, std::move(bound), std::move(body),
             nullptr});
}
CExprPtr c_const(std::int64_t r) {
  return mk({CExpr::Tag::Const, "", "", r, nullptr, nullptr, nullptr, nullptr});
}
CExprPtr c_mul(CExprPtr scalar, CExprPtr vec) {
  return mk({CExpr::Tag::ScalarMul, "", "", 0, nullptr, std::move(scalar), std::move(vec),
             nullptr});
}
CExprPtr c_zero(CTypePtr type) {
  return mk({CExpr::Tag::Zero, "", "", 0, std::move(type), nullptr, nullptr, nullptr});
}
CExprPtr c_add(CExprPtr a, CExprPtr b) {
  return mk({CExpr::Tag::Add, "", "", 0, nullptr, std::move(a), std::move(b), nullptr});
}
CExprPtr c_pair(CExprPtr a, CExprPtr b) {
  return mk({CExpr::Tag::Pair, "", "", 0, nullptr, std::move(a), std::move(b), nullptr});
}
CExprPtr c_case(CExprPtr scrut, std::string x1, CExprPtr b1, std::string x2, CExprPtr b2) {
  return mk({CExpr::Tag::Case, std::move(x1), std::move(x2), 0, nullptr, std::move(scrut),
             std::move(b1), std::move(b2)});
}
CExprPtr c_lam(std::string x, CTypePtr arg, CExprPtr body) {
  return mk({CExpr::Tag::Lam, std::move(x), "", 0, std::move(arg), std::move(body), nullptr,
             nullptr});
}
CExprPtr c_app(CExprPtr fn, CExprPtr arg) {
  return mk({CExpr::Tag::App, "", "", 0, nullptr, std::move(fn), std::move(arg), nullptr});
}

std::string render_expr(const CExprPtr& e) {
  std::ostringstream o;
  switch (e->tag) {
    case CExpr::Tag::Var:
      o << e->name;
      break;
    case CExpr::Tag::Let:
      o << "(let " << e->name << " = " << render_expr(e->a) << " in " << render_expr(e->b) << ")";
      break;
    case CExpr::Tag::Const:
      o << e->value;
      break;
    case CExpr::Tag::ScalarMul:
      o << "(" << render_expr(e->a) << " . " << render_expr(e->b) << ")";
      break;
    case CExpr::Tag::Zero:
      o << "0_" << render_type(e->type);
      break;
    case CExpr::Tag::Add:
      o << "(" << render_expr(e->a) << " + " << render_expr(e->b) << ")";
      break;
    case CExpr::Tag::Pair:
      o << "[" << render_expr(e->a) << "," << render_expr(e->b) << "]";
      break;
    case CExpr::Tag::Case:
      o << "(case " << render_expr(e->a) << " of inl " << e->name << " -> " << render_expr(e->b)
        << " | inr " << e->name2 << " -> " << render_expr(e->c) << ")";
      break;
    case CExpr::Tag::Lam:
      o << "(\\" << e->name << ":" << render_type(e->type) << ". " << render_expr(e->a) << ")";
      break;
    case CExpr::Tag::App:
      o << "(" << render_expr(e->a) << " " << render_expr(e->b) << ")";
      break;
  }
  return o.str();
}

// ---------------------------------------------------------------------------
// Values
// ---------------------------------------------------------------------------

CValuePtr v_const(std::int64_t r) {
  return std::make_shared<CValue>(CValue{CValue::Tag::Const, r, nullptr, nullptr, "", nullptr,
                                         nullptr});
}
CValuePtr v_pair(CValuePtr a, CValuePtr b) {
  return std::make_shared<CValue>(CValue{CValue::Tag::Pair, 0, std::move(a), std::move(b), "",
                                         nullptr, nullptr});
}
CValuePtr v_lam(std::string var, CTypePtr arg_type, CExprPtr body) {
  return std::make_shared<CValue>(CValue{CValue::Tag::Lam, 0, nullptr, nullptr, std::move(var),
                                         std::move(arg_type), std::move(body)});
}

CExprPtr value_to_expr(const CValuePtr& v) {
  switch (v->tag) {
    case CValue::Tag::Const:
      return c_const(v->r);
    case CValue::Tag::Pair:
      return c_pair(value_to_expr(v->v1), value_to_expr(v->v2));
    case CValue::Tag::Lam:
      return c_lam(v->var, v->arg_type, v->body);
  }
  throw InternalError("value_to_expr: bad tag");
}

CValuePtr expr_to_value(const CExprPtr& e) {
  switch (e->tag) {
    case CExpr::Tag::Const:
      return v_const(e->value);
    case CExpr::Tag::Pair: {
      CValuePtr a = expr_to_value(e->a);
      if (!a) return nullptr;
      CValuePtr b = expr_to_value(e->b);
      if (!b) return nullptr;
      return v_pair(std::move(a), std::move(b));
    }
    case CExpr::Tag::Lam:
      return v_lam(e->name, e->type, e->a);
    default:
      return nullptr;
  }
}

namespace {

bool alpha_equal(const CExprPtr& a, const CExprPtr& b,
                 std::map<std::string, std::string>& ab) {
  if (a->tag != b->tag) return false;
  switch (a->tag) {
    case CExpr::Tag::Var: {
      auto it = ab.find(a->name);
      return it != ab.end() ? it->second == b->name : a->name == b->name;
    }
    case CExpr::Tag::Const:
      return a->value == b->value;
    case CExpr::Tag::Zero:
      return type_equal(a->type, b->type);
    case CExpr::Tag::ScalarMul:
    case CExpr::Tag::Add:
    case CExpr::Tag::Pair:
    case CExpr::Tag::App:
      return alpha_equal(a->a, b->a, ab) && alpha_equal(a->b, b->b, ab);
    case CExpr::Tag::Let: {
      if (!alpha_equal(a->a, b->a, ab)) return false;
      auto saved = ab;
      ab[a->name] = b->name;
      bool ok = alpha_equal(a->b, b->b, ab);
      ab = saved;
      return ok;
    }
    case CExpr::Tag::Lam: {
      if (!type_equal(a->type, b->type)) return false;
      auto saved = ab;
      ab[a->name] = b->name;
      bool ok = alpha_equal(a->a, b->a, ab);
      ab = saved;
      return ok;
    }
    case CExpr::Tag::Case: {
      if (!alpha_equal(a->a, b->a, ab)) return false;
      auto saved = ab;
      ab[a->name] = b->name;
      bool ok = alpha_equal(a->b, b->b, ab);
      ab = saved;
      if (!ok) return false;
      ab[a->name2] = b->name2;
      ok = alpha_equal(a->c, b->c, ab);
      ab = saved;
      return ok;
    }
  }
  return false;
}

}  // namespace

bool value_equal(const CValuePtr& a, const CValuePtr& b) {
  if (a->tag != b->tag) return false;
  switch (a->tag) {
    case CValue::Tag::Const:
      return a->r == b->r;
    case CValue::Tag::Pair:
      return value_equal(a->v1, b->v1) && value_equal(a->v2, b->v2);
    case CValue::Tag::Lam: {
      std::map<std::string, std::string> ab{{a->var, b->var}};
      return alpha_equal(a->body, b->body, ab);
    }
  }
  return false;
}

std::string render_value(const CValuePtr& v) { return render_expr(value_to_expr(v)); }

std::string fresh_var() {
  static std::atomic<std::uint64_t> counter{0};
  return "%v" + std::to_string(counter.fetch_add(1));
}

CExprPtr subst(const CExprPtr& e, const std::string& x, const CExprPtr& closed) {
  switch (e->tag) {
    case CExpr::Tag::Var:
      return e->name == x ? closed : e;
    case CExpr::Tag::Const:
    case CExpr::Tag::Zero:
      return e;
    case CExpr::Tag::Let: {
      CExprPtr bound = subst(e->a, x, closed);
      CExprPtr body = e->name == x ? e->b : subst(e->b, x, closed);
      return c_let(e->name, std::move(bound), std::move(body));
    }
    case CExpr::Tag::ScalarMul:
      return c_mul(subst(e->a, x, closed), subst(e->b, x, closed));
    case CExpr::Tag::Add:
      return c_add(subst(e->a, x, closed), subst(e->b, x, closed));
    case CExpr::Tag::Pair:
      return c_pair(subst(e->a, x, closed), subst(e->b, x, closed));
    case CExpr::Tag::Case: {
      CExprPtr scrut = subst(e->a, x, closed);
      CExprPtr b1 = e->name == x ? e->b : subst(e->b, x, closed);
      CExprPtr b2 = e->name2 == x ? e->c : subst(e->c, x, closed);
      return c_case(std::move(scrut), e->name, std::move(b1), e->name2, std::move(b2));
    }
    case CExpr::Tag::Lam:
      if (e->name == x) return e;
      return c_lam(e->name, e->type, subst(e->a, x, closed));
    case CExpr::Tag::App:
      return c_app(subst(e->a, x, closed), subst(e->b, x, closed));
  }
  throw InternalError("subst: bad tag");
}

// ---------------------------------------------------------------------------
// Typing
// ---------------------------------------------------------------------------

LinearCtx::LinearCtx(std::initializer_list<std::pair<std::string, CTypePtr>> items) {
  for (auto& it : items) items_.push_back(it);
}

void LinearCtx::push(std::string name, CTypePtr type) {
  items_.emplace_back(std::move(name), std::move(type));
}

namespace {

void free_vars(const CExprPtr& e, std::set<std::string>& bound, std::set<std::string>& out) {
  switch (e->tag) {
    case CExpr::Tag::Var:
      if (!bound.count(e->name)) out.insert(e->name);
      return;
    case CExpr::Tag::Const:
    case CExpr::Tag::Zero:
      return;
    case CExpr::Tag::Let: {
      free_vars(e->a, bound, out);
      bool fresh = bound.insert(e->name).second;
      free_vars(e->b, bound, out);
      if (fresh) bound.erase(e->name);
      return;
    }
    case CExpr::Tag::ScalarMul:
    case CExpr::Tag::Add:
    case CExpr::Tag::Pair:
    case CExpr::Tag::App:
      free_vars(e->a, bound, out);
      free_vars(e->b, bound, out);
      return;
    case CExpr::Tag::Case: {
      free_vars(e->a, bound, out);
      bool f1 = bound.insert(e->name).second;
      free_vars(e->b, bound, out);
      if (f1) bound.erase(e->name);
      bool f2 = bound.insert(e->name2).second;
      free_vars(e->c, bound, out);
      if (f2) bound.erase(e->name2);
      return;
    }
    case CExpr::Tag::Lam: {
      bool fresh = bound.insert(e->name).second;
      free_vars(e->a, bound, out);
      if (fresh) bound.erase(e->name);
      return;
    }
  }
}

std::set<std::string> free_vars(const CExprPtr& e) {
  std::set<std::string> bound, out;
  free_vars(e, bound, out);
  return out;
}

// A form that types under any context and may absorb leftover variables:
// the zero vector, or the literal constant 0 (= 0 at Unit).
bool absorbs_context(const CExprPtr& e) {
  return e->tag == CExpr::Tag::Zero ||
         (e->tag == CExpr::Tag::Const && e->value == 0);
}

using CtxItems = std::vector<std::pair<std::string, CTypePtr>>;

// Splits ctx between two multiplicative children by their free variables.
// A variable free in both is a duplication error; one free in neither may
// only be absorbed by a zero form.
std::pair<CtxItems, CtxItems> split_ctx(const CtxItems& ctx, const CExprPtr& e1,
                                        const std::set<std::string>& fv1, const CExprPtr& e2,
                                        const std::set<std::string>& fv2) {
  CtxItems left, right, leftover;
  for (const auto& item : ctx) {
    bool in1 = fv1.count(item.first) > 0;
    bool in2 = fv2.count(item.first) > 0;
    if (in1 && in2) {
      throw TypeError("linear variable '" + item.first + "' used on both sides of a split");
    }
    if (in1) {
      left.push_back(item);
    } else if (in2) {
      right.push_back(item);
    } else {
      leftover.push_back(item);
    }
  }
  if (!leftover.empty()) {
    if (absorbs_context(e2)) {
      for (auto& it : leftover) right.push_back(std::move(it));
    } else if (absorbs_context(e1)) {
      for (auto& it : leftover) left.push_back(std::move(it));
    } else {
      throw TypeError("linear variable '" + leftover.front().first +
                      "' is not used by either side of a split");
    }
  }
  return {std::move(left), std::move(right)};
}

CTypePtr check(const RingContext& ring, const CtxItems& ctx, const CExprPtr& e) {
  switch (e->tag) {
    case CExpr::Tag::Var: {
      if (ctx.size() != 1 || ctx.front().first != e->name) {
        throw TypeError("variable '" + e->name + "' must be exactly the context");
      }
      return ctx.front().second;
    }
    case CExpr::Tag::Const: {
      if (!ctx.empty() && !absorbs_context(e)) {
        throw TypeError("nonzero constant under nonempty linear context");
      }
      return unit_type();
    }
    case CExpr::Tag::Zero:
      return e->type;
    case CExpr::Tag::Let: {
      auto fv1 = free_vars(e->a);
      auto fv2 = free_vars(e->b);
      fv2.erase(e->name);
      auto [c1, c2] = split_ctx(ctx, e->a, fv1, e->b, fv2);
      CTypePtr bound = check(ring, c1, e->a);
      c2.emplace_back(e->name, bound);
      return check(ring, c2, e->b);
    }
    case CExpr::Tag::ScalarMul: {
      auto [c1, c2] = split_ctx(ctx, e->a, free_vars(e->a), e->b, free_vars(e->b));
      CTypePtr s = check(ring, c1, e->a);
      if (s->tag != CType::Tag::Unit) throw TypeError("scalar factor must have type I");
      return check(ring, c2, e->b);
    }
    case CExpr::Tag::Add: {
      CTypePtr t1 = check(ring, ctx, e->a);
      CTypePtr t2 = check(ring, ctx, e->b);
      if (!type_equal(t1, t2)) throw TypeError("added branches have different types");
      return t1;
    }
    case CExpr::Tag::Pair: {
      CTypePtr t1 = check(ring, ctx, e->a);
      CTypePtr t2 = check(ring, ctx, e->b);
      return sum_type(std::move(t1), std::move(t2));
    }
    case CExpr::Tag::Case: {
      auto fvs = free_vars(e->a);
      auto fvb = free_vars(e->b);
      fvb.erase(e->name);
      auto fvc = free_vars(e->c);
      fvc.erase(e->name2);
      for (const auto& v : fvc) fvb.insert(v);
      // Branches share the residual context; a two-branch pseudo-expression
      // stands in for them when deciding who absorbs leftovers.
      CExprPtr branches = c_add(e->b, e->c);
      CExprPtr branch_probe =
          (absorbs_context(e->b) && absorbs_context(e->c)) ? c_zero(unit_type()) : branches;
      auto [cs, cshared] = split_ctx(ctx, e->a, fvs, branch_probe, fvb);
      CTypePtr scrut = check(ring, cs, e->a);
      if (scrut->tag != CType::Tag::Sum) throw TypeError("case scrutinee must have a sum type");
      CtxItems cb1 = cshared;
      cb1.emplace_back(e->name, scrut->left);
      CTypePtr t1 = check(ring, cb1, e->b);
      CtxItems cb2 = cshared;
      cb2.emplace_back(e->name2, scrut->right);
      CTypePtr t2 = check(ring, cb2, e->c);
      if (!type_equal(t1, t2)) throw TypeError("case branches have different types");
      return t1;
    }
    case CExpr::Tag::Lam: {
      CtxItems inner = ctx;
      inner.emplace_back(e->name, e->type);
      CTypePtr body = check(ring, inner, e->a);
      return arrow_type(e->type, std::move(body));
    }
    case CExpr::Tag::App: {
      auto [c1, c2] = split_ctx(ctx, e->a, free_vars(e->a), e->b, free_vars(e->b));
      CTypePtr fn = check(ring, c1, e->a);
      if (fn->tag != CType::Tag::Arrow) throw TypeError("application of a non-function");
      CTypePtr arg = check(ring, c2, e->b);
      if (!type_equal(fn->left, arg)) {
        throw TypeError("argument type " + render_type(arg) + " does not match " +
                        render_type(fn->left));
      }
      return fn->right;
    }
  }
  throw InternalError("typecheck: bad tag");
}

}  // namespace

CTypePtr typecheck_c(const RingContext& ring, const LinearCtx& ctx, const CExprPtr& e) {
  return check(ring, ctx.items(), e);
}

// ---------------------------------------------------------------------------
// Small-step CBV interpreter
// ---------------------------------------------------------------------------

namespace {

bool is_value_expr(const CExprPtr& e) {
  switch (e->tag) {
    case CExpr::Tag::Const:
    case CExpr::Tag::Lam:
      return true;
    case CExpr::Tag::Pair:
      return is_value_expr(e->a) && is_value_expr(e->b);
    default:
      return false;
  }
}

// One beta step of `e`, all relevant children already values.
CExprPtr beta(const RingContext& ring, const CExprPtr& e) {
  switch (e->tag) {
    case CExpr::Tag::Let:
      return subst(e->b, e->name, e->a);
    case CExpr::Tag::Zero:
      switch (e->type->tag) {
        case CType::Tag::Unit:
          return c_const(0);
        case CType::Tag::Sum:
          return c_pair(c_zero(e->type->left), c_zero(e->type->right));
        case CType::Tag::Arrow:
          return c_lam(fresh_var(), e->type->left, c_zero(e->type->right));
      }
      throw InternalError("zero expansion: bad type");
    case CExpr::Tag::ScalarMul: {
      const CExprPtr& r = e->a;
      const CExprPtr& v = e->b;
      if (r->tag != CExpr::Tag::Const) throw InternalError("scalar position is not a constant");
      switch (v->tag) {
        case CExpr::Tag::Const:
          return c_const(ring.mul(ring.norm(r->value), ring.norm(v->value)));
        case CExpr::Tag::Pair:
          return c_pair(c_mul(r, v->a), c_mul(r, v->b));
        case CExpr::Tag::Lam:
          return c_lam(v->name, v->type, c_mul(r, v->a));
        default:
          throw InternalError("scalar multiplication of a non-value");
      }
    }
    case CExpr::Tag::Add: {
      const CExprPtr& l = e->a;
      const CExprPtr& r = e->b;
      if (l->tag == CExpr::Tag::Const && r->tag == CExpr::Tag::Const) {
        return c_const(ring.add(ring.norm(l->value), ring.norm(r->value)));
      }
      if (l->tag == CExpr::Tag::Pair && r->tag == CExpr::Tag::Pair) {
        return c_pair(c_add(l->a, r->a), c_add(l->b, r->b));
      }
      if (l->tag == CExpr::Tag::Lam && r->tag == CExpr::Tag::Lam) {
        std::string x = fresh_var();
        return c_lam(x, l->type,
                     c_add(subst(l->a, l->name, c_var(x)), subst(r->a, r->name, c_var(x))));
      }
      throw InternalError("addition of values with mismatched shapes");
    }
    case CExpr::Tag::Case: {
      const CExprPtr& s = e->a;
      if (s->tag != CExpr::Tag::Pair) throw InternalError("case scrutinee is not a pair value");
      return c_add(subst(e->b, e->name, s->a), subst(e->c, e->name2, s->b));
    }
    case CExpr::Tag::App: {
      const CExprPtr& f = e->a;
      if (f->tag != CExpr::Tag::Lam) throw InternalError("application head is not a lambda");
      return subst(f->a, f->name, e->b);
    }
    default:
      throw InternalError("beta: no rule for this form");
  }
}

// Lambda addition produces a lambda whose body still contains the merge
// redex, so values with Lam inside need no internal stepping; only the
// outermost non-value position steps.
CExprPtr step_expr(const RingContext& ring, const CExprPtr& e) {
  switch (e->tag) {
    case CExpr::Tag::Var:
      throw EvalError("free variable '" + e->name + "' in a closed evaluation");
    case CExpr::Tag::Const:
    case CExpr::Tag::Lam:
      throw InternalError("step on a value");
    case CExpr::Tag::Zero:
      return beta(ring, e);
    case CExpr::Tag::Let:
      if (!is_value_expr(e->a)) return c_let(e->name, step_expr(ring, e->a), e->b);
      return beta(ring, e);
    case CExpr::Tag::ScalarMul:
      if (!is_value_expr(e->a)) return c_mul(step_expr(ring, e->a), e->b);
      if (!is_value_expr(e->b)) return c_mul(e->a, step_expr(ring, e->b));
      return beta(ring, e);
    case CExpr::Tag::Add:
      if (!is_value_expr(e->a)) return c_add(step_expr(ring, e->a), e->b);
      if (!is_value_expr(e->b)) return c_add(e->a, step_expr(ring, e->b));
      return beta(ring, e);
    case CExpr::Tag::Pair:
      if (!is_value_expr(e->a)) return c_pair(step_expr(ring, e->a), e->b);
      return c_pair(e->a, step_expr(ring, e->b));
    case CExpr::Tag::Case:
      if (!is_value_expr(e->a)) return c_case(step_expr(ring, e->a), e->name, e->b, e->name2, e->c);
      return beta(ring, e);
    case CExpr::Tag::App:
      if (!is_value_expr(e->a)) return c_app(step_expr(ring, e->a), e->b);
      if (!is_value_expr(e->b)) return c_app(e->a, step_expr(ring, e->b));
      return beta(ring, e);
  }
  throw InternalError("step: bad tag");
}

CValuePtr normalize_value(const RingContext& ring, const CValuePtr& v) {
  switch (v->tag) {
    case CValue::Tag::Const:
      return v_const(ring.norm(v->r));
    case CValue::Tag::Pair:
      return v_pair(normalize_value(ring, v->v1), normalize_value(ring, v->v2));
    case CValue::Tag::Lam:
      return v;
  }
  throw InternalError("normalize_value: bad tag");
}

}  // namespace

CStep step_c(const RingContext& ring, const CExprPtr& e) {
  if (is_value_expr(e)) {
    return {nullptr, normalize_value(ring, expr_to_value(e))};
  }
  return {step_expr(ring, e), nullptr};
}

CValuePtr eval_c(const RingContext& ring, const CExprPtr& e, std::int64_t budget) {
  CExprPtr cur = e;
  for (std::int64_t i = 0; i <= budget; ++i) {
    CStep s = step_c(ring, cur);
    if (s.value) return s.value;
    cur = s.next;
  }
  throw EvalError("step budget exceeded after " + std::to_string(budget) + " steps");
}

// ---------------------------------------------------------------------------
// Basis values and equivalence
// ---------------------------------------------------------------------------

CValuePtr zero_value(const CTypePtr& alpha) {
  switch (alpha->tag) {
    case CType::Tag::Unit:
      return v_const(0);
    case CType::Tag::Sum:
      return v_pair(zero_value(alpha->left), zero_value(alpha->right));
    case CType::Tag::Arrow:
      throw TypeError("zero_value at a function type");
  }
  throw InternalError("zero_value: bad tag");
}

std::vector<CValuePtr> basis_values(const CTypePtr& alpha) {
  switch (alpha->tag) {
    case CType::Tag::Unit:
      return {v_const(1)};
    case CType::Tag::Sum: {
      std::vector<CValuePtr> out;
      for (const auto& b : basis_values(alpha->left)) {
        out.push_back(v_pair(b, zero_value(alpha->right)));
      }
      for (const auto& b : basis_values(alpha->right)) {
        out.push_back(v_pair(zero_value(alpha->left), b));
      }
      return out;
    }
    case CType::Tag::Arrow:
      throw TypeError("basis_values at a function type");
  }
  throw InternalError("basis_values: bad tag");
}

std::vector<std::int64_t> flatten_value(const CValuePtr& v) {
  switch (v->tag) {
    case CValue::Tag::Const:
      return {v->r};
    case CValue::Tag::Pair: {
      auto l = flatten_value(v->v1);
      auto r = flatten_value(v->v2);
      l.insert(l.end(), r.begin(), r.end());
      return l;
    }
    case CValue::Tag::Lam:
      throw TypeError("flatten of a function value");
  }
  throw InternalError("flatten_value: bad tag");
}

namespace {
CValuePtr unflatten_rec(const CTypePtr& alpha, const std::vector<std::int64_t>& coords,
                        std::size_t& pos) {
  switch (alpha->tag) {
    case CType::Tag::Unit:
      if (pos >= coords.size()) throw DimensionError("unflatten: not enough coordinates");
      return v_const(coords[pos++]);
    case CType::Tag::Sum: {
      CValuePtr l = unflatten_rec(alpha->left, coords, pos);
      CValuePtr r = unflatten_rec(alpha->right, coords, pos);
      return v_pair(std::move(l), std::move(r));
    }
    case CType::Tag::Arrow:
      throw TypeError("unflatten at a function type");
  }
  throw InternalError("unflatten: bad tag");
}
}  // namespace

CValuePtr unflatten_value(const CTypePtr& alpha, const std::vector<std::int64_t>& coords) {
  std::size_t pos = 0;
  CValuePtr v = unflatten_rec(alpha, coords, pos);
  if (pos != coords.size()) throw DimensionError("unflatten: too many coordinates");
  return v;
}

PhaseVector value_to_phase_vector(const RingContext& ring, const CValuePtr& v) {
  return PhaseVector(ring, flatten_value(v));
}

CValuePtr phase_vector_to_value(const CTypePtr& sigma, const PhaseVector& v) {
  return unflatten_value(sigma, v.entries());
}

std::optional<EquivWitness> equiv_counterexample(const RingContext& ring, const LinearCtx& ctx,
                                                 const CExprPtr& e1, const CExprPtr& e2) {
  const auto& items = ctx.items();
  std::vector<std::vector<CValuePtr>> choices;
  for (const auto& [name, type] : items) {
    if (!is_first_order(type)) {
      throw TypeError("equivalence checking restricted to first-order contexts");
    }
    choices.push_back(basis_values(type));
  }

  std::vector<std::size_t> idx(items.size(), 0);
  while (true) {
    CExprPtr s1 = e1;
    CExprPtr s2 = e2;
    std::vector<std::pair<std::string, CValuePtr>> substitution;
    for (std::size_t i = 0; i < items.size(); ++i) {
      CValuePtr v = choices[i][idx[i]];
      substitution.emplace_back(items[i].first, v);
      CExprPtr ve = value_to_expr(v);
      s1 = subst(s1, items[i].first, ve);
      s2 = subst(s2, items[i].first, ve);
    }
    CValuePtr r1 = eval_c(ring, s1);
    CValuePtr r2 = eval_c(ring, s2);
    if (!value_equal(r1, r2)) {
      return EquivWitness{std::move(substitution), std::move(r1), std::move(r2)};
    }
    // Advance the mixed-radix tuple index.
    std::size_t i = 0;
    for (; i < idx.size(); ++i) {
      if (++idx[i] < choices[i].size()) break;
      idx[i] = 0;
    }
    if (i == idx.size()) break;
    if (idx.empty()) break;
  }
  return std::nullopt;
}

bool equiv_c(const RingContext& ring, const LinearCtx& ctx, const CExprPtr& e1,
             const CExprPtr& e2, const CTypePtr& alpha) {
  if (!is_first_order(alpha)) {
    throw TypeError("equivalence checking restricted to first-order types");
  }
  return !equiv_counterexample(ring, ctx, e1, e2).has_value();
}

CExprPtr build_omega(const CTypePtr& sigma) {
  if (!is_symplectic_type(sigma)) {
    throw TypeError("omega construction requires a symplectic type");
  }
  std::string x = fresh_var();
  std::string xp = fresh_var();
  if (sigma->left->tag == CType::Tag::Unit) {
    // Base case I (+) I: omega [rx,rz] [rx',rz'] = rx' rz - rx rz'.
    std::string xx = fresh_var(), xz = fresh_var(), xxp = fresh_var(), xzp = fresh_var();
    std::string xxp2 = fresh_var(), xzp2 = fresh_var();
    CExprPtr minus_one = c_const(-1);  // normalized to d-1 during evaluation
    CExprPtr inl_branch = c_case(c_var(xp), xxp, c_zero(unit_type()), xzp,
                                 c_mul(minus_one, c_mul(c_var(xx), c_var(xzp))));
    CExprPtr inr_branch = c_case(c_var(xp), xxp2, c_mul(c_var(xz), c_var(xxp2)), xzp2,
                                 c_zero(unit_type()));
    CExprPtr body = c_case(c_var(x), xx, inl_branch, xz, inr_branch);
    return c_lam(x, sigma, c_lam(xp, sigma, body));
  }
  CExprPtr omega1 = build_omega(sigma->left);
  CExprPtr omega2 = build_omega(sigma->right);
  std::string x1 = fresh_var(), x2 = fresh_var(), x1p = fresh_var(), x2p = fresh_var();
  std::string x1p2 = fresh_var(), x2p2 = fresh_var();
  CExprPtr inl_branch =
      c_case(c_var(xp), x1p, c_app(c_app(omega1, c_var(x1)), c_var(x1p)), x2p,
             c_zero(unit_type()));
  CExprPtr inr_branch =
      c_case(c_var(xp), x1p2, c_zero(unit_type()), x2p2,
             c_app(c_app(omega2, c_var(x2)), c_var(x2p2)));
  CExprPtr body = c_case(c_var(x), x1, inl_branch, x2, inr_branch);
  return c_lam(x, sigma, c_lam(xp, sigma, body));
}

ZdScalar omega_value(const RingContext& ring, const CValuePtr& v1, const CValuePtr& v2) {
  return omega(value_to_phase_vector(ring, v1), value_to_phase_vector(ring, v2));
}

}  // namespace pclif
