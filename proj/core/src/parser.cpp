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

#include "pclif/parser.hpp"

#include <algorithm>
#include <tuple>
#include <cctype>
#include <set>
#include <sstream>

namespace pclif {

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

namespace {

enum class Tok {
  Ident, Int, DColon, OpenLift, CloseLift, Arrow, Lolli, StarDot, DStar, Star,
  Caret, At, LParen, RParen, LBrack, RBrack, Comma, Semi, Eq, Lt, Gt, Dot,
  Plus, Minus, End
};

struct Token {
  Tok kind;
  std::string text;
  std::int64_t value = 0;
  int line = 1, col = 1;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_cont(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto push = [&](Tok k, std::string text, std::int64_t v = 0) {
    out.push_back({k, std::move(text), v, line, col});
  };
  auto advance = [&](std::size_t n) {
    for (std::size_t j = 0; j < n; ++j) {
      if (src[i + j] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    i += n;
  };
  while (i < src.size()) {
    char c = src[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    if (c == '-' && i + 1 < src.size() && src[i + 1] == '-') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    auto two = src.substr(i, 2);
    auto three = src.substr(i, 3);
    if (three == "*.*") {
      push(Tok::StarDot, three);
      advance(3);
      continue;
    }
    if (two == "::") {
      push(Tok::DColon, two);
      advance(2);
      continue;
    }
    if (two == "|^") {
      push(Tok::OpenLift, two);
      advance(2);
      continue;
    }
    if (two == "^|") {
      push(Tok::CloseLift, two);
      advance(2);
      continue;
    }
    if (two == "->") {
      push(Tok::Arrow, two);
      advance(2);
      continue;
    }
    if (two == "-o" && (i + 2 >= src.size() || !ident_cont(src[i + 2]))) {
      push(Tok::Lolli, two);
      advance(2);
      continue;
    }
    if (two == "**") {
      push(Tok::DStar, two);
      advance(2);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      push(Tok::Int, src.substr(i, j - i), std::stoll(src.substr(i, j - i)));
      advance(j - i);
      continue;
    }
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < src.size() && ident_cont(src[j])) ++j;
      push(Tok::Ident, src.substr(i, j - i));
      advance(j - i);
      continue;
    }
    switch (c) {
      case '*': push(Tok::Star, "*"); break;
      case '^': push(Tok::Caret, "^"); break;
      case '@': push(Tok::At, "@"); break;
      case '(': push(Tok::LParen, "("); break;
      case ')': push(Tok::RParen, ")"); break;
      case '[': push(Tok::LBrack, "["); break;
      case ']': push(Tok::RBrack, "]"); break;
      case ',': push(Tok::Comma, ","); break;
      case ';': push(Tok::Semi, ";"); break;
      case '=': push(Tok::Eq, "="); break;
      case '<': push(Tok::Lt, "<"); break;
      case '>': push(Tok::Gt, ">"); break;
      case '.': push(Tok::Dot, "."); break;
      case '+': push(Tok::Plus, "+"); break;
      case '-': push(Tok::Minus, "-"); break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }
    advance(1);
  }
  out.push_back({Tok::End, "", 0, line, col});
  return out;
}

// ---------------------------------------------------------------------------
// Recursive-descent parser
// ---------------------------------------------------------------------------

const std::set<std::string> kKeywords = {"dim", "in1", "in2", "omega", "Pauli"};

class Parser {
 public:
  explicit Parser(const std::string& src) : toks_(lex(src)) {}

  ParsedProgram program() {
    ParsedProgram prog;
    expect_keyword("dim");
    prog.dim = expect(Tok::Int).value;
    expect(Tok::Semi);

    std::map<std::string, std::vector<std::pair<STypePtr, STypePtr>>> sig_parts;

    while (peek().kind != Tok::End) {
      Token name = expect(Tok::Ident);
      if (kKeywords.count(name.text)) {
        throw ParseError("'" + name.text + "' is reserved", name.line, name.col);
      }
      if (peek().kind == Tok::DColon) {
        next();
        std::vector<std::pair<STypePtr, STypePtr>> parts;  // (dom or null, cod)
        parts.push_back(lift_type());
        while (peek().kind == Tok::Arrow) {
          next();
          parts.push_back(lift_type());
        }
        sig_parts[name.text] = std::move(parts);
        continue;
      }
      // Definition line: optional parameter names, then clause or simple body.
      std::vector<std::string> param_names;
      while (peek().kind == Tok::Ident) {
        param_names.push_back(next().text);
      }
      SurfaceDef* def =
          find_or_create_def(prog, name, param_names, sig_parts, peek().kind == Tok::Eq);
      if (peek().kind == Tok::Eq) {
        next();
        expect(Tok::OpenLift);
        def->simple_body = expr();
        expect(Tok::CloseLift);
        if (!def->clauses.empty()) {
          throw ParseError("definition '" + name.text + "' mixes clause and simple forms",
                           name.line, name.col);
        }
      } else if (peek().kind == Tok::OpenLift) {
        next();
        SClause clause;
        clause.pattern = pattern();
        expect(Tok::Eq);
        clause.rhs = expr();
        expect(Tok::CloseLift);
        if (def->simple_body) {
          throw ParseError("definition '" + name.text + "' mixes clause and simple forms",
                           name.line, name.col);
        }
        def->clauses.push_back(std::move(clause));
      } else {
        throw ParseError("expected '=' or '|^' in definition of '" + name.text + "'",
                         peek().line, peek().col);
      }
    }
    return prog;
  }

  SExprPtr parse_single_expr() {
    SExprPtr e = expr();
    if (peek().kind != Tok::End) {
      throw ParseError("trailing input after expression", peek().line, peek().col);
    }
    return e;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    std::size_t idx = pos_ + ahead;
    return idx < toks_.size() ? toks_[idx] : toks_.back();
  }
  Token next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  Token expect(Tok k) {
    if (peek().kind != k) {
      throw ParseError("unexpected token '" + peek().text + "'", peek().line, peek().col);
    }
    return next();
  }
  void expect_keyword(const std::string& kw) {
    Token t = expect(Tok::Ident);
    if (t.text != kw) throw ParseError("expected '" + kw + "'", t.line, t.col);
  }

  SurfaceDef* find_or_create_def(
      ParsedProgram& prog, const Token& name, const std::vector<std::string>& param_names,
      const std::map<std::string, std::vector<std::pair<STypePtr, STypePtr>>>& sigs,
      bool simple_form) {
    for (auto& d : prog.defs) {
      if (d.name == name.text) {
        std::vector<std::string> existing;
        for (const auto& p : d.params) existing.push_back(p.name);
        if (existing != param_names) {
          throw ParseError("inconsistent parameter names for '" + name.text + "'", name.line,
                           name.col);
        }
        return &d;
      }
    }
    auto sig = sigs.find(name.text);
    if (sig == sigs.end()) {
      // A simple definition may omit its signature; the type is inferred
      // from the body. Clause definitions always need one.
      if (simple_form && param_names.empty()) {
        SurfaceDef def;
        def.name = name.text;
        def.line = name.line;
        prog.defs.push_back(std::move(def));
        return &prog.defs.back();
      }
      throw ParseError("definition '" + name.text + "' has no '::' signature", name.line,
                       name.col);
    }
    const auto& parts = sig->second;
    if (parts.size() != param_names.size() + 1) {
      throw ParseError("definition '" + name.text + "' has " +
                           std::to_string(param_names.size()) + " parameters but signature has " +
                           std::to_string(parts.size() - 1),
                       name.line, name.col);
    }
    SurfaceDef def;
    def.name = name.text;
    def.line = name.line;
    for (std::size_t i = 0; i < param_names.size(); ++i) {
      SParam p;
      p.name = param_names[i];
      p.dom = parts[i].first ? parts[i].first : parts[i].second;
      if (parts[i].first) {
        p.is_clifford = true;
        p.dom = parts[i].first;
        p.cod = parts[i].second;
      }
      def.params.push_back(std::move(p));
    }
    const auto& fin = parts.back();
    if (fin.first) {
      def.is_clifford = true;
      def.dom = fin.first;
      def.cod = fin.second;
    } else {
      def.cod = fin.second;
    }
    prog.defs.push_back(std::move(def));
    return &prog.defs.back();
  }

  // Returns (dom or null, cod) for "|^ T (-o T)? ^|".
  std::pair<STypePtr, STypePtr> lift_type() {
    expect(Tok::OpenLift);
    STypePtr first = qtype();
    STypePtr dom, cod;
    if (peek().kind == Tok::Lolli) {
      next();
      dom = first;
      cod = qtype();
    } else {
      cod = first;
    }
    expect(Tok::CloseLift);
    return {dom, cod};
  }

  STypePtr qtype() {
    STypePtr left = qatom();
    if (peek().kind == Tok::DStar) {
      next();
      STypePtr right = qtype();
      return std::make_shared<SType>(SType{SType::Tag::Prod, "", left, right});
    }
    return left;
  }

  STypePtr qatom() {
    if (peek().kind == Tok::LParen) {
      next();
      STypePtr t = qtype();
      expect(Tok::RParen);
      return t;
    }
    Token id = expect(Tok::Ident);
    STypePtr base;
    if (id.text == "Pauli") {
      base = std::make_shared<SType>(SType{SType::Tag::Pauli, "", nullptr, nullptr});
    } else {
      base = std::make_shared<SType>(SType{SType::Tag::Var, id.text, nullptr, nullptr});
    }
    if (peek().kind == Tok::Caret) {
      next();
      Token n = expect(Tok::Int);
      if (base->tag != SType::Tag::Pauli) {
        throw ParseError("powers only apply to Pauli", id.line, id.col);
      }
      if (n.value < 1) throw ParseError("Pauli^n needs n >= 1", n.line, n.col);
      STypePtr t = base;
      for (std::int64_t i = 1; i < n.value; ++i) {
        t = std::make_shared<SType>(SType{SType::Tag::Prod, "", base, t});
      }
      return t;
    }
    return base;
  }

  SIndex index_expr() {
    SIndex idx;
    if (peek().kind == Tok::Int) {
      idx.literal = true;
      idx.value = next().value;
      return idx;
    }
    if (peek().kind == Tok::Ident) {
      idx.literal = false;
      idx.var = next().text;
      return idx;
    }
    expect(Tok::LParen);
    if (peek().kind == Tok::Int) {
      idx.literal = true;
      idx.value = next().value;
    } else {
      idx.literal = false;
      idx.var = expect(Tok::Ident).text;
      if (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
        bool minus = next().kind == Tok::Minus;
        std::int64_t off = expect(Tok::Int).value;
        idx.offset = minus ? -off : off;
      }
    }
    expect(Tok::RParen);
    return idx;
  }

  SPattern pattern() {
    SPattern p;
    p.line = peek().line;
    p.col = peek().col;
    while (peek().kind == Tok::Ident && (peek().text == "in1" || peek().text == "in2")) {
      p.prefixes.push_back(next().text == "in1" ? 1 : 2);
    }
    Token leaf = expect(Tok::Ident);
    if (leaf.text == "X" || leaf.text == "Z") {
      p.leaf = leaf.text == "X" ? SPattern::Leaf::X : SPattern::Leaf::Z;
      if (peek().kind == Tok::Dot) {
        next();
        p.index = index_expr();
      }
    } else if (leaf.text == "Y" || leaf.text == "I") {
      throw ParseError("patterns match only the X and Z basis", leaf.line, leaf.col);
    } else {
      p.leaf = SPattern::Leaf::Var;
      p.binder = leaf.text;
    }
    return p;
  }

  SExprPtr expr() { return star_expr(); }

  SExprPtr star_expr() {
    SExprPtr e = tensor_expr();
    while (peek().kind == Tok::StarDot) {
      Token t = next();
      SExprPtr rhs = tensor_expr();
      auto node = std::make_shared<SExpr>();
      node->tag = SExpr::Tag::Star;
      node->e1 = e;
      node->e2 = rhs;
      node->line = t.line;
      node->col = t.col;
      e = node;
    }
    return e;
  }

  SExprPtr tensor_expr() {
    SExprPtr e = prefix_expr();
    if (peek().kind == Tok::DStar) {
      Token t = next();
      SExprPtr rhs = tensor_expr();
      auto node = std::make_shared<SExpr>();
      node->tag = SExpr::Tag::Tensor;
      node->e1 = e;
      node->e2 = rhs;
      node->line = t.line;
      node->col = t.col;
      return node;
    }
    return e;
  }

  SExprPtr prefix_expr() {
    if (peek().kind == Tok::Lt) {
      Token t = next();
      SCExprPtr phase = cexpr();
      expect(Tok::Gt);
      SExprPtr inner = prefix_expr();
      auto node = std::make_shared<SExpr>();
      node->tag = SExpr::Tag::PhaseE;
      node->c1 = phase;
      node->e1 = inner;
      node->line = t.line;
      node->col = t.col;
      return node;
    }
    if (peek().kind == Tok::Ident && (peek().text == "in1" || peek().text == "in2")) {
      Token t = next();
      SExprPtr inner = prefix_expr();
      auto node = std::make_shared<SExpr>();
      node->tag = SExpr::Tag::In;
      node->side = t.text == "in1" ? 1 : 2;
      node->e1 = inner;
      node->line = t.line;
      node->col = t.col;
      return node;
    }
    return postfix_expr();
  }

  SExprPtr postfix_expr() {
    SExprPtr e = app_expr();
    while (peek().kind == Tok::Caret) {
      Token t = next();
      std::int64_t p = expect(Tok::Int).value;
      auto node = std::make_shared<SExpr>();
      node->tag = SExpr::Tag::PowE;
      node->e1 = e;
      node->power = p;
      node->line = t.line;
      node->col = t.col;
      e = node;
    }
    return e;
  }

  bool starts_atom() const {
    const Token& t = peek();
    if (t.kind == Tok::LBrack || t.kind == Tok::LParen) return true;
    return t.kind == Tok::Ident && t.text != "in1" && t.text != "in2" && t.text != "omega";
  }

  SExprPtr app_expr() {
    SExprPtr head = atom();
    if (head->tag == SExpr::Tag::Name && !head->index && starts_atom()) {
      auto node = std::make_shared<SExpr>();
      node->tag = SExpr::Tag::App;
      node->name = head->name;
      node->ty_args = head->ty_args;
      node->line = head->line;
      node->col = head->col;
      while (starts_atom()) node->args.push_back(atom());
      return node;
    }
    return head;
  }

  SExprPtr atom() {
    const Token& t = peek();
    if (t.kind == Tok::LBrack) {
      Token open = next();
      SCExprPtr a = cexpr();
      expect(Tok::Comma);
      SCExprPtr b = cexpr();
      expect(Tok::RBrack);
      auto node = std::make_shared<SExpr>();
      node->tag = SExpr::Tag::PairLit;
      node->c1 = a;
      node->c2 = b;
      node->line = open.line;
      node->col = open.col;
      return node;
    }
    if (t.kind == Tok::LParen) {
      next();
      SExprPtr inner = expr();
      expect(Tok::RParen);
      return inner;
    }
    Token id = expect(Tok::Ident);
    auto node = std::make_shared<SExpr>();
    node->tag = SExpr::Tag::Name;
    node->name = id.text;
    node->line = id.line;
    node->col = id.col;
    if (peek().kind == Tok::At) {
      next();
      expect(Tok::LParen);
      node->ty_args.push_back(qtype());
      while (peek().kind == Tok::Comma) {
        next();
        node->ty_args.push_back(qtype());
      }
      expect(Tok::RParen);
    }
    if (peek().kind == Tok::Dot) {
      next();
      node->index = index_expr();
    }
    return node;
  }

  SCExprPtr cexpr() {
    SCExprPtr e = cterm();
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      Token t = next();
      SCExprPtr rhs = cterm();
      auto node = std::make_shared<SCExpr>();
      node->tag = t.kind == Tok::Plus ? SCExpr::Tag::Add : SCExpr::Tag::Sub;
      node->a = e;
      node->b = rhs;
      node->line = t.line;
      node->col = t.col;
      e = node;
    }
    return e;
  }

  SCExprPtr cterm() {
    SCExprPtr e = cfactor();
    while (peek().kind == Tok::Star) {
      Token t = next();
      SCExprPtr rhs = cfactor();
      auto node = std::make_shared<SCExpr>();
      node->tag = SCExpr::Tag::Mul;
      node->a = e;
      node->b = rhs;
      node->line = t.line;
      node->col = t.col;
      e = node;
    }
    return e;
  }

  SCExprPtr cfactor() {
    const Token& t = peek();
    if (t.kind == Tok::Int) {
      Token v = next();
      auto node = std::make_shared<SCExpr>();
      node->tag = SCExpr::Tag::Int;
      node->value = v.value;
      node->line = v.line;
      node->col = v.col;
      return node;
    }
    if (t.kind == Tok::LParen) {
      next();
      SCExprPtr inner = cexpr();
      expect(Tok::RParen);
      return inner;
    }
    Token id = expect(Tok::Ident);
    if (id.text == "omega") {
      auto node = std::make_shared<SCExpr>();
      node->tag = SCExpr::Tag::Omega;
      node->p1 = atom();
      node->p2 = atom();
      node->line = id.line;
      node->col = id.col;
      return node;
    }
    auto node = std::make_shared<SCExpr>();
    node->tag = SCExpr::Tag::Ident;
    node->name = id.text;
    node->line = id.line;
    node->col = id.col;
    return node;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

bool stype_has_vars(const STypePtr& t) {
  if (!t) return false;
  if (t->tag == SType::Tag::Var) return true;
  if (t->tag == SType::Tag::Prod) return stype_has_vars(t->left) || stype_has_vars(t->right);
  return false;
}

void collect_vars(const STypePtr& t, std::vector<std::string>& out) {
  if (!t) return;
  if (t->tag == SType::Tag::Var) {
    for (const auto& v : out)
      if (v == t->var) return;
    out.push_back(t->var);
  } else if (t->tag == SType::Tag::Prod) {
    collect_vars(t->left, out);
    collect_vars(t->right, out);
  }
}

using TypeBindings = std::map<std::string, QTypePtr>;

QTypePtr resolve_stype(const STypePtr& t, const TypeBindings& b) {
  switch (t->tag) {
    case SType::Tag::Pauli:
      return q_pauli();
    case SType::Tag::Var: {
      auto it = b.find(t->var);
      if (it == b.end()) {
        throw TypeError("unresolved type variable '" + t->var +
                        "'; instantiate explicitly with name@(...)");
      }
      return it->second;
    }
    case SType::Tag::Prod:
      return q_prod(resolve_stype(t->left, b), resolve_stype(t->right, b));
  }
  throw InternalError("resolve_stype: bad tag");
}

void unify_stype(const STypePtr& pat, const QTypePtr& q, TypeBindings& b) {
  switch (pat->tag) {
    case SType::Tag::Pauli:
      if (q->tag != QType::Tag::Pauli) throw TypeError("type mismatch: expected Pauli");
      return;
    case SType::Tag::Var: {
      auto it = b.find(pat->var);
      if (it == b.end()) {
        b.emplace(pat->var, q);
      } else if (!q_equal(it->second, q)) {
        throw TypeError("type variable '" + pat->var + "' bound to conflicting types");
      }
      return;
    }
    case SType::Tag::Prod:
      if (q->tag != QType::Tag::Prod) throw TypeError("type mismatch: expected a product");
      unify_stype(pat->left, q->left, b);
      unify_stype(pat->right, q->right, b);
      return;
  }
}

// ---------------------------------------------------------------------------
// Elaboration
// ---------------------------------------------------------------------------

struct PauliArg {
  PExprPtr expr;
  QTypePtr type;
};

struct ElabEnv {
  LoadedProgram* prog = nullptr;
  std::map<std::string, NLDefPtr> clifford_params;
  std::map<std::string, PauliArg> pauli_params;
  std::optional<std::pair<std::string, QTypePtr>> linear;
  std::map<std::string, std::int64_t> index_vars;
};

PExprPtr subst_rename(const PExprPtr& e, const std::string& from, const std::string& to);

NLDefPtr instantiate(LoadedProgram& prog, const SurfaceDef& def,
                     const std::vector<SExprPtr>& arg_exprs,
                     const std::vector<STypePtr>& ty_args, const ElabEnv& caller_env);

PExprPtr elab_expr(const ElabEnv& env, const SExprPtr& e, const QTypePtr& expected);
std::pair<PExprPtr, QTypePtr> elab_infer(const ElabEnv& env, const SExprPtr& e);

std::int64_t resolve_index(const ElabEnv& env, const SIndex& idx, int line, int col) {
  if (idx.literal) return idx.value;
  auto it = env.index_vars.find(idx.var);
  if (it == env.index_vars.end()) {
    throw ParseError("unknown index variable '" + idx.var + "'", line, col);
  }
  return it->second + idx.offset;
}

// Path of in1/in2 choices leading to 1-based leaf `i` of q.
std::vector<int> leaf_path(const QTypePtr& q, std::int64_t i, int line, int col) {
  if (i < 1 || i > q_rank(q)) {
    throw ParseError("site index " + std::to_string(i) + " out of range for " + render_qtype(q),
                     line, col);
  }
  std::vector<int> path;
  QTypePtr cur = q;
  while (cur->tag == QType::Tag::Prod) {
    int left = q_rank(cur->left);
    if (i <= left) {
      path.push_back(1);
      cur = cur->left;
    } else {
      path.push_back(2);
      i -= left;
      cur = cur->right;
    }
  }
  return path;
}

const QTypePtr& navigate(const QTypePtr& q, const std::vector<int>& path, int line, int col) {
  const QTypePtr* cur = &q;
  for (int step : path) {
    if ((*cur)->tag != QType::Tag::Prod) {
      throw ParseError("in1/in2 pattern applied to a single Pauli", line, col);
    }
    cur = step == 1 ? &(*cur)->left : &(*cur)->right;
  }
  return *cur;
}

// Wraps `leafExpr` (of the leaf's Pauli type) into injections along `path`.
PExprPtr inject_along(const QTypePtr& q, const std::vector<int>& path, std::size_t at,
                      const PExprPtr& leaf) {
  if (at == path.size()) return leaf;
  if (path[at] == 1) {
    return p_inj(1, inject_along(q->left, path, at + 1, leaf), q->right);
  }
  return p_inj(2, inject_along(q->right, path, at + 1, leaf), q->left);
}

CExprPtr elab_cexpr(const ElabEnv& env, const SCExprPtr& e);

PExprPtr builtin_pauli(const RingContext& ring, const std::string& name) {
  PauliElement p = named_pauli(ring, name);
  return p_embed(c_pair(c_const(p.vector[0]), c_const(p.vector[1])));
}

bool is_builtin_pauli(const std::string& name) {
  return name == "I" || name == "X" || name == "Y" || name == "Z";
}

struct Resolved {
  // Exactly one of these three is meaningful.
  NLDefPtr clifford;      // a Clifford definition (not yet applied)
  PExprPtr pauli;         // a Pauli-valued expression
  QTypePtr pauli_type;
};

Resolved resolve_app(const ElabEnv& env, const std::string& name,
                     const std::vector<STypePtr>& ty_args, const std::vector<SExprPtr>& args,
                     int line, int col);

std::pair<PExprPtr, QTypePtr> elab_infer(const ElabEnv& env, const SExprPtr& e) {
  const RingContext& ring = env.prog->ctx;
  switch (e->tag) {
    case SExpr::Tag::Name: {
      if (e->index) {
        throw ParseError("cannot infer the block type of an indexed Pauli; add context",
                         e->line, e->col);
      }
      Resolved r = resolve_app(env, e->name, e->ty_args, {}, e->line, e->col);
      if (r.clifford) {
        throw ParseError("'" + e->name + "' is a Clifford, not a Pauli expression", e->line,
                         e->col);
      }
      return {r.pauli, r.pauli_type};
    }
    case SExpr::Tag::PairLit:
      return {p_embed(c_pair(elab_cexpr(env, e->c1), elab_cexpr(env, e->c2))), q_pauli()};
    case SExpr::Tag::PhaseE: {
      auto [inner, q] = elab_infer(env, e->e1);
      return {p_phase(elab_cexpr(env, e->c1), inner), q};
    }
    case SExpr::Tag::Star: {
      auto [l, q] = elab_infer(env, e->e1);
      PExprPtr rexpr = elab_expr(env, e->e2, q);
      return {p_cprod(l, rexpr), q};
    }
    case SExpr::Tag::Tensor: {
      auto [l, ql] = elab_infer(env, e->e1);
      auto [r, qr] = elab_infer(env, e->e2);
      return {p_cprod(p_inj(1, l, qr), p_inj(2, r, ql)), q_prod(ql, qr)};
    }
    case SExpr::Tag::In:
      throw ParseError("cannot infer the type of a bare in1/in2; add context", e->line, e->col);
    case SExpr::Tag::PowE: {
      auto [inner, q] = elab_infer(env, e->e1);
      return {p_pow(inner, ring.norm(e->power)), q};
    }
    case SExpr::Tag::App: {
      Resolved r = resolve_app(env, e->name, e->ty_args, e->args, e->line, e->col);
      if (r.clifford) {
        throw ParseError("'" + e->name + "' is missing its Pauli argument", e->line, e->col);
      }
      return {r.pauli, r.pauli_type};
    }
  }
  throw InternalError("elab_infer: bad tag");
}

PExprPtr elab_expr(const ElabEnv& env, const SExprPtr& e, const QTypePtr& expected) {
  const RingContext& ring = env.prog->ctx;
  switch (e->tag) {
    case SExpr::Tag::Name: {
      if (e->index) {
        if (!is_builtin_pauli(e->name)) {
          throw ParseError("site index on '" + e->name + "'; only named Paulis take sites",
                           e->line, e->col);
        }
        std::int64_t i = resolve_index(env, *e->index, e->line, e->col);
        auto path = leaf_path(expected, i, e->line, e->col);
        return inject_along(expected, path, 0, builtin_pauli(ring, e->name));
      }
      auto [p, q] = elab_infer(env, e);
      if (!q_equal(q, expected)) {
        throw ParseError("expression has type " + render_qtype(q) + ", expected " +
                             render_qtype(expected),
                         e->line, e->col);
      }
      return p;
    }
    case SExpr::Tag::PairLit: {
      if (expected->tag != QType::Tag::Pauli) {
        throw ParseError("[x,z] literal where " + render_qtype(expected) + " was expected",
                         e->line, e->col);
      }
      return p_embed(c_pair(elab_cexpr(env, e->c1), elab_cexpr(env, e->c2)));
    }
    case SExpr::Tag::PhaseE:
      return p_phase(elab_cexpr(env, e->c1), elab_expr(env, e->e1, expected));
    case SExpr::Tag::Star:
      return p_cprod(elab_expr(env, e->e1, expected), elab_expr(env, e->e2, expected));
    case SExpr::Tag::Tensor: {
      if (expected->tag != QType::Tag::Prod) {
        throw ParseError("'**' builds a product, but " + render_qtype(expected) +
                             " was expected",
                         e->line, e->col);
      }
      PExprPtr l = elab_expr(env, e->e1, expected->left);
      PExprPtr r = elab_expr(env, e->e2, expected->right);
      return p_cprod(p_inj(1, l, expected->right), p_inj(2, r, expected->left));
    }
    case SExpr::Tag::In: {
      if (expected->tag != QType::Tag::Prod) {
        throw ParseError("in1/in2 where " + render_qtype(expected) + " was expected", e->line,
                         e->col);
      }
      if (e->side == 1) {
        return p_inj(1, elab_expr(env, e->e1, expected->left), expected->right);
      }
      return p_inj(2, elab_expr(env, e->e1, expected->right), expected->left);
    }
    case SExpr::Tag::PowE:
      return p_pow(elab_expr(env, e->e1, expected), ring.norm(e->power));
    case SExpr::Tag::App: {
      Resolved r = resolve_app(env, e->name, e->ty_args, e->args, e->line, e->col);
      if (r.clifford) {
        throw ParseError("'" + e->name + "' is missing its Pauli argument", e->line, e->col);
      }
      if (!q_equal(r.pauli_type, expected)) {
        throw ParseError("expression has type " + render_qtype(r.pauli_type) + ", expected " +
                             render_qtype(expected),
                         e->line, e->col);
      }
      return r.pauli;
    }
  }
  throw InternalError("elab_expr: bad tag");
}

CExprPtr elab_cexpr(const ElabEnv& env, const SCExprPtr& e) {
  const RingContext& ring = env.prog->ctx;
  switch (e->tag) {
    case SCExpr::Tag::Int:
      return c_const(ring.norm(e->value));
    case SCExpr::Tag::Ident: {
      auto it = env.index_vars.find(e->name);
      if (it != env.index_vars.end()) return c_const(ring.norm(it->second));
      // A variable of Unit type in the surrounding linear context.
      return c_var(e->name);
    }
    case SCExpr::Tag::Omega: {
      auto [p1, q1] = elab_infer(env, e->p1);
      auto [p2, q2] = elab_infer(env, e->p2);
      if (!q_equal(q1, q2)) {
        throw ParseError("omega operands have different Pauli types", e->line, e->col);
      }
      CExprPtr om = build_omega(q_to_ctype(q1));
      return c_app(c_app(om, psi_of(p1)), psi_of(p2));
    }
    case SCExpr::Tag::Add:
      return c_add(elab_cexpr(env, e->a), elab_cexpr(env, e->b));
    case SCExpr::Tag::Sub:
      return c_add(elab_cexpr(env, e->a),
                   c_mul(c_const(ring.norm(-1)), elab_cexpr(env, e->b)));
    case SCExpr::Tag::Mul:
      return c_mul(elab_cexpr(env, e->a), elab_cexpr(env, e->b));
  }
  throw InternalError("elab_cexpr: bad tag");
}

// `omega q1 q2` and Pauli arguments mention the linear variable; elab_infer
// handles it through resolve_app.
Resolved resolve_app(const ElabEnv& env, const std::string& name,
                     const std::vector<STypePtr>& ty_args, const std::vector<SExprPtr>& args,
                     int line, int col) {
  const RingContext& ring = env.prog->ctx;
  Resolved out;

  // Linear variable in scope.
  if (env.linear && env.linear->first == name) {
    if (!args.empty()) throw ParseError("'" + name + "' is a Pauli, not a function", line, col);
    out.pauli = p_var(name);
    out.pauli_type = env.linear->second;
    return out;
  }
  // Clifford parameter.
  if (auto it = env.clifford_params.find(name); it != env.clifford_params.end()) {
    if (args.empty()) {
      out.clifford = it->second;
      return out;
    }
    if (args.size() != 1) {
      throw ParseError("'" + name + "' takes one Pauli argument", line, col);
    }
    out.pauli = p_apply(it->second, elab_expr(env, args[0], it->second->q_in));
    out.pauli_type = it->second->q_out;
    return out;
  }
  // Pauli parameter.
  if (auto it = env.pauli_params.find(name); it != env.pauli_params.end()) {
    if (!args.empty()) throw ParseError("'" + name + "' is a Pauli, not a function", line, col);
    out.pauli = it->second.expr;
    out.pauli_type = it->second.type;
    return out;
  }

  // Program definitions.
  auto idx = env.prog->def_index.find(name);
  if (idx != env.prog->def_index.end()) {
    const SurfaceDef& def = env.prog->defs[idx->second];
    std::size_t nparams = def.params.size();
    if (args.size() < nparams) {
      throw ParseError("'" + name + "' expects " + std::to_string(nparams) + " arguments", line,
                       col);
    }
    std::vector<SExprPtr> param_args(args.begin(), args.begin() + static_cast<long>(nparams));
    NLDefPtr inst;
    if (auto ready = env.prog->concrete.find(name);
        ready != env.prog->concrete.end() && nparams == 0 && ty_args.empty()) {
      inst = ready->second;
    } else {
      inst = instantiate(*env.prog, def, param_args, ty_args, env);
    }
    std::size_t extra = args.size() - nparams;
    if (inst->kind == NLDef::Kind::LiftedPauli) {
      if (extra != 0) throw ParseError("'" + name + "' is not a function", line, col);
      out.pauli = p_force(inst);
      out.pauli_type = inst->q_out;
      return out;
    }
    if (extra == 0) {
      out.clifford = inst;
      return out;
    }
    if (extra != 1) {
      throw ParseError("'" + name + "' applied to too many arguments", line, col);
    }
    out.pauli = p_apply(inst, elab_expr(env, args.back(), inst->q_in));
    out.pauli_type = inst->q_out;
    return out;
  }

  // Built-in single-qudit Paulis.
  if (is_builtin_pauli(name)) {
    if (!args.empty()) throw ParseError("'" + name + "' is a Pauli, not a function", line, col);
    out.pauli = builtin_pauli(ring, name);
    out.pauli_type = q_pauli();
    return out;
  }
  throw ParseError("unknown identifier '" + name + "'", line, col);
}

// ---------------------------------------------------------------------------
// Clause elaboration
// ---------------------------------------------------------------------------

struct ExpandedClause {
  std::vector<int> path;  // to a subtree
  enum class Kind { X, Z, Bind } kind;
  std::string binder;
  std::map<std::string, std::int64_t> index_binding;
  SExprPtr rhs;
  int line = 0, col = 0;
};

std::vector<ExpandedClause> expand_clauses(const SurfaceDef& def, const QTypePtr& dom) {
  std::vector<ExpandedClause> out;
  for (const auto& clause : def.clauses) {
    const SPattern& pat = clause.pattern;
    const QTypePtr& sub = navigate(dom, pat.prefixes, pat.line, pat.col);
    if (pat.leaf == SPattern::Leaf::Var) {
      ExpandedClause c;
      c.path = pat.prefixes;
      c.kind = ExpandedClause::Kind::Bind;
      c.binder = pat.binder;
      c.rhs = clause.rhs;
      c.line = pat.line;
      c.col = pat.col;
      out.push_back(std::move(c));
      continue;
    }
    auto kind = pat.leaf == SPattern::Leaf::X ? ExpandedClause::Kind::X : ExpandedClause::Kind::Z;
    if (!pat.index) {
      if (sub->tag != QType::Tag::Pauli) {
        throw ParseError("pattern matches a single Pauli but the block is " + render_qtype(sub),
                         pat.line, pat.col);
      }
      out.push_back({pat.prefixes, kind, "", {}, clause.rhs, pat.line, pat.col});
      continue;
    }
    if (pat.index->literal) {
      auto path = pat.prefixes;
      auto leaf = leaf_path(sub, pat.index->value, pat.line, pat.col);
      path.insert(path.end(), leaf.begin(), leaf.end());
      out.push_back({std::move(path), kind, "", {}, clause.rhs, pat.line, pat.col});
      continue;
    }
    // Symbolic index: one clause per site of the block.
    for (int i = 1; i <= q_rank(sub); ++i) {
      auto path = pat.prefixes;
      auto leaf = leaf_path(sub, i, pat.line, pat.col);
      path.insert(path.end(), leaf.begin(), leaf.end());
      ExpandedClause c;
      c.path = std::move(path);
      c.kind = kind;
      c.index_binding[pat.index->var] = i;
      c.rhs = clause.rhs;
      c.line = pat.line;
      c.col = pat.col;
      out.push_back(std::move(c));
    }
  }
  return out;
}

PExprPtr build_case_tree(const ElabEnv& env, const std::vector<ExpandedClause>& clauses,
                         const QTypePtr& q, const QTypePtr& cod, std::vector<int>& path,
                         const std::string& scrut, int defline) {
  // A whole-block binder must be the only clause covering this subtree.
  const ExpandedClause* binder = nullptr;
  bool deeper = false;
  for (const auto& c : clauses) {
    if (c.path.size() < path.size()) continue;
    if (!std::equal(path.begin(), path.end(), c.path.begin())) continue;
    if (c.path.size() == path.size() && c.kind == ExpandedClause::Kind::Bind) {
      if (binder) {
        throw ParseError("duplicate clause for the same block", c.line, c.col);
      }
      binder = &c;
    } else {
      deeper = true;
    }
  }
  if (binder) {
    if (deeper) {
      throw ParseError("block bound by a variable also matched by deeper clauses", binder->line,
                       binder->col);
    }
    ElabEnv inner = env;
    inner.linear = {{scrut, q}};
    for (const auto& [k, v] : binder->index_binding) inner.index_vars[k] = v;
    // Patterns bind the scrutinee variable under the clause's name.
    if (binder->binder != scrut) {
      inner.linear = {{binder->binder, q}};
      PExprPtr body = elab_expr(inner, binder->rhs, cod);
      // Rename the bound variable to the generated scrutinee name.
      return subst_rename(body, binder->binder, scrut);
    }
    return elab_expr(inner, binder->rhs, cod);
  }
  if (q->tag == QType::Tag::Pauli) {
    const ExpandedClause* cx = nullptr;
    const ExpandedClause* cz = nullptr;
    for (const auto& c : clauses) {
      if (c.path != path) continue;
      if (c.kind == ExpandedClause::Kind::X) {
        if (cx) throw ParseError("duplicate X clause for the same site", c.line, c.col);
        cx = &c;
      } else if (c.kind == ExpandedClause::Kind::Z) {
        if (cz) throw ParseError("duplicate Z clause for the same site", c.line, c.col);
        cz = &c;
      }
    }
    if (!cx || !cz) {
      throw ParseError("missing " + std::string(!cx ? "X" : "Z") + " clause for a site",
                       defline, 1);
    }
    ElabEnv env_x = env;
    env_x.linear.reset();
    for (const auto& [k, v] : cx->index_binding) env_x.index_vars[k] = v;
    PExprPtr ex = elab_expr(env_x, cx->rhs, cod);
    ElabEnv env_z = env;
    env_z.linear.reset();
    for (const auto& [k, v] : cz->index_binding) env_z.index_vars[k] = v;
    PExprPtr ez = elab_expr(env_z, cz->rhs, cod);
    return p_case_xz(p_var(scrut), ex, ez);
  }
  std::string x1 = fresh_var();
  std::string x2 = fresh_var();
  path.push_back(1);
  PExprPtr t1 = build_case_tree(env, clauses, q->left, cod, path, x1, defline);
  path.back() = 2;
  PExprPtr t2 = build_case_tree(env, clauses, q->right, cod, path, x2, defline);
  path.pop_back();
  return p_case_prod(p_var(scrut), x1, t1, x2, t2);
}

NLDefPtr instantiate(LoadedProgram& prog, const SurfaceDef& def,
                     const std::vector<SExprPtr>& arg_exprs, const std::vector<STypePtr>& ty_args,
                     const ElabEnv& caller_env) {
  if (!prog.instantiating.insert(def.name).second) {
    throw ParseError("definition '" + def.name + "' refers to itself", def.line, 1);
  }
  struct Guard {
    LoadedProgram& p;
    const std::string& n;
    ~Guard() { p.instantiating.erase(n); }
  } guard{prog, def.name};

  TypeBindings bindings;

  if (!ty_args.empty()) {
    std::vector<std::string> vars;
    for (const auto& p : def.params) {
      collect_vars(p.dom, vars);
      collect_vars(p.cod, vars);
    }
    collect_vars(def.dom, vars);
    collect_vars(def.cod, vars);
    if (ty_args.size() != vars.size()) {
      throw TypeError("'" + def.name + "' has " + std::to_string(vars.size()) +
                      " type variables, got " + std::to_string(ty_args.size()));
    }
    for (std::size_t i = 0; i < vars.size(); ++i) {
      bindings[vars[i]] = resolve_stype(ty_args[i], bindings);
    }
  }

  ElabEnv env;
  env.prog = &prog;
  std::string display = def.name;
  for (std::size_t i = 0; i < def.params.size(); ++i) {
    const SParam& p = def.params[i];
    const SExprPtr& arg = arg_exprs[i];
    if (p.is_clifford) {
      if (arg->tag != SExpr::Tag::Name && arg->tag != SExpr::Tag::App) {
        throw ParseError("argument for '" + p.name + "' must name a Clifford", arg->line,
                         arg->col);
      }
      Resolved r = resolve_app(caller_env, arg->name, arg->ty_args, arg->args, arg->line,
                               arg->col);
      if (!r.clifford) {
        throw ParseError("argument for '" + p.name + "' is not a Clifford", arg->line, arg->col);
      }
      unify_stype(p.dom, r.clifford->q_in, bindings);
      unify_stype(p.cod, r.clifford->q_out, bindings);
      env.clifford_params[p.name] = r.clifford;
      display += " " + r.clifford->name;
    } else {
      auto [pe, q] = elab_infer(caller_env, arg);
      unify_stype(p.dom, q, bindings);
      env.pauli_params[p.name] = {pe, q};
      display += " <pauli>";
    }
  }

  QTypePtr cod = def.cod ? resolve_stype(def.cod, bindings) : nullptr;
  QTypePtr dom = def.dom ? resolve_stype(def.dom, bindings) : nullptr;

  NLDefPtr result;
  if (def.simple_body) {
    if (def.is_clifford) {
      throw ParseError("a '-o' definition needs pattern clauses", def.line, 1);
    }
    PExprPtr body;
    QTypePtr out = cod;
    if (out) {
      body = elab_expr(env, def.simple_body, out);
    } else {
      std::tie(body, out) = elab_infer(env, def.simple_body);
    }
    result = std::make_shared<NLDef>(
        NLDef{display, NLDef::Kind::LiftedPauli, nullptr, std::move(out), "", std::move(body)});
  } else {
    if (!cod) {
      throw ParseError("clause definitions need a '|^ Q -o Q' signature", def.line, 1);
    }
    if (!def.is_clifford || !dom) {
      throw ParseError("clause definitions need a '-o' type", def.line, 1);
    }
    auto expanded = expand_clauses(def, dom);
    std::string top = fresh_var();
    std::vector<int> path;
    PExprPtr body = build_case_tree(env, expanded, dom, cod, path, top, def.line);
    result = std::make_shared<NLDef>(
        NLDef{display, NLDef::Kind::CliffordFn, dom, cod, top, std::move(body)});
  }

  CheckTrace trace;
  typecheck_def(prog.ctx, *result, &trace);
  prog.traces[display] = std::move(trace);
  return result;
}

// Renames a free Pauli variable; used when a clause binder differs from the
// generated scrutinee name.
PExprPtr subst_rename(const PExprPtr& e, const std::string& from, const std::string& to) {
  switch (e->tag) {
    case PExpr::Tag::Var:
      return e->name == from ? p_var(to) : e;
    case PExpr::Tag::Let: {
      PExprPtr bound = subst_rename(e->p1, from, to);
      PExprPtr body = e->name == from ? e->p2 : subst_rename(e->p2, from, to);
      return p_let(e->name, std::move(bound), std::move(body));
    }
    case PExpr::Tag::Embed:
      return p_embed(subst(e->cexpr, from, c_var(to)));
    case PExpr::Tag::Phase:
      return p_phase(subst(e->cexpr, from, c_var(to)), subst_rename(e->p1, from, to));
    case PExpr::Tag::CProd:
      return p_cprod(subst_rename(e->p1, from, to), subst_rename(e->p2, from, to));
    case PExpr::Tag::Pow:
      return p_pow(subst_rename(e->p1, from, to), e->scalar);
    case PExpr::Tag::CaseXZ:
      return p_case_xz(subst_rename(e->p1, from, to), subst_rename(e->p2, from, to),
                       subst_rename(e->p3, from, to));
    case PExpr::Tag::Inj:
      return p_inj(e->side, subst_rename(e->p1, from, to), e->other);
    case PExpr::Tag::CaseProd: {
      PExprPtr scrut = subst_rename(e->p1, from, to);
      PExprPtr b1 = e->name == from ? e->p2 : subst_rename(e->p2, from, to);
      PExprPtr b2 = e->name2 == from ? e->p3 : subst_rename(e->p3, from, to);
      return p_case_prod(std::move(scrut), e->name, std::move(b1), e->name2, std::move(b2));
    }
    case PExpr::Tag::Force:
    case PExpr::Tag::Lit:
      return e;
    case PExpr::Tag::Apply:
      return p_apply(e->def, subst_rename(e->p1, from, to));
  }
  throw InternalError("subst_rename: bad tag");
}
}  // namespace

bool SurfaceDef::parametric() const {
  if (!params.empty()) return true;
  return stype_has_vars(dom) || stype_has_vars(cod);
}

ParsedProgram parse_program(const std::string& source) {
  Parser p(source);
  return p.program();
}

LoadedProgram load_program(const std::string& source) {
  ParsedProgram parsed = parse_program(source);
  LoadedProgram prog;
  if (parsed.dim < 2) {
    throw ParseError("dim must be >= 2, got " + std::to_string(parsed.dim), 1, 1);
  }
  prog.ctx = RingContext(parsed.dim);
  prog.defs = std::move(parsed.defs);
  for (std::size_t i = 0; i < prog.defs.size(); ++i) {
    if (prog.def_index.count(prog.defs[i].name)) {
      throw ParseError("duplicate definition '" + prog.defs[i].name + "'", prog.defs[i].line, 1);
    }
    prog.def_index[prog.defs[i].name] = i;
  }
  for (const auto& def : prog.defs) {
    if (def.parametric()) continue;
    ElabEnv env;
    env.prog = &prog;
    try {
      NLDefPtr inst = instantiate(prog, def, {}, {}, env);
      prog.concrete[def.name] = inst;
    } catch (const TypeError& err) {
      prog.failures.emplace_back(def.name, err.what());
    }
  }
  return prog;
}

std::pair<PExprPtr, QTypePtr> parse_expr_in(LoadedProgram& prog, const std::string& text) {
  Parser p(text);
  SExprPtr surface = p.parse_single_expr();
  ElabEnv env;
  env.prog = &prog;
  auto [expr, q] = elab_infer(env, surface);
  typecheck_p(prog.ctx, std::nullopt, expr);
  return {expr, q};
}

PExprPtr parse_expr_expecting(LoadedProgram& prog, const std::string& text, const QTypePtr& q) {
  Parser p(text);
  SExprPtr surface = p.parse_single_expr();
  ElabEnv env;
  env.prog = &prog;
  PExprPtr expr = elab_expr(env, surface, q);
  typecheck_p(prog.ctx, std::nullopt, expr);
  return expr;
}

NLDefPtr resolve_def(LoadedProgram& prog, const std::string& text) {
  Parser p(text);
  SExprPtr surface = p.parse_single_expr();
  if (surface->tag != SExpr::Tag::Name && surface->tag != SExpr::Tag::App) {
    throw ParseError("expected a definition name or application", 1, 1);
  }
  ElabEnv env;
  env.prog = &prog;
  Resolved r = resolve_app(env, surface->name, surface->ty_args, surface->args, surface->line,
                           surface->col);
  if (!r.clifford) {
    throw TypeError("'" + text + "' does not name a Clifford definition");
  }
  return r.clifford;
}

}  // namespace pclif
