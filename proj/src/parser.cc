// Copyright 2026 The bvterm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bvterm/parser.h"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <map>
#include <optional>
#include <sstream>

namespace bvterm {

std::string code_name(ErrorCode code) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "E%03d", static_cast<int>(code));
  return buf;
}

ParseError::ParseError(ErrorCode code, SourceLocation where, const std::string& message)
    : std::runtime_error(std::to_string(where.line) + ":" + std::to_string(where.column) + ": error[" +
                         code_name(code) + "]: " + message),
      code_(code),
      where_(where),
      detail_(message) {}

namespace {

struct SExpr {
  bool is_list = false;
  std::string atom;
  std::vector<SExpr> items;
  SourceLocation loc;
};

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  std::vector<SExpr> read_all() {
    std::vector<SExpr> out;
    skip_space();
    while (pos_ < text_.size()) {
      out.push_back(read());
      skip_space();
    }
    return out;
  }

 private:
  SExpr read() {
    skip_space();
    SourceLocation loc = here();
    if (pos_ >= text_.size()) throw ParseError(ErrorCode::Syntax, loc, "unexpected end of input");
    char c = text_[pos_];
    if (c == ')') throw ParseError(ErrorCode::Syntax, loc, "unexpected ')'");
    if (c == '(') {
      bump();
      SExpr list{true, {}, {}, loc};
      while (true) {
        skip_space();
        if (pos_ >= text_.size()) throw ParseError(ErrorCode::Syntax, loc, "unterminated '('");
        if (text_[pos_] == ')') {
          bump();
          return list;
        }
        list.items.push_back(read());
      }
    }
    std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) && text_[pos_] != '(' &&
           text_[pos_] != ')' && text_[pos_] != ';') {
      bump();
    }
    return SExpr{false, std::string(text_.substr(start, pos_ - start)), {}, loc};
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') bump();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        bump();
      } else {
        return;
      }
    }
  }

  void bump() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  SourceLocation here() const { return {line_, col_}; }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

const std::map<std::string, TheoryOp, std::less<>>& theory_table() {
  static const std::map<std::string, TheoryOp, std::less<>> table = {
      {"bvadd", TheoryOp::Add}, {"bvsub", TheoryOp::Sub}, {"bvslt", TheoryOp::Slt}, {"bvult", TheoryOp::Ult},
      {"bvsge", TheoryOp::Sge}, {"bvuge", TheoryOp::Uge}, {"bvsle", TheoryOp::Sle}, {"bvule", TheoryOp::Ule},
      {"=", TheoryOp::Eq},      {"and", TheoryOp::And},   {"or", TheoryOp::Or},     {"not", TheoryOp::Not},
  };
  return table;
}

std::optional<TheoryOp> theory_op(std::string_view name) {
  auto it = theory_table().find(name);
  if (it == theory_table().end()) return std::nullopt;
  return it->second;
}

bool is_reserved(std::string_view name) {
  return theory_op(name) || name == "true" || name == "false" || name.starts_with("#") || name.starts_with(":");
}

bool is_literal(const SExpr& e) { return !e.is_list && (e.atom.starts_with("#b") || e.atom == "true" || e.atom == "false"); }

const std::string& expect_atom(const SExpr& e, const char* what) {
  if (e.is_list) throw ParseError(ErrorCode::Syntax, e.loc, std::string("expected ") + what);
  return e.atom;
}

Sort parse_sort(const SExpr& e, const Lctrs& sig) {
  if (!e.is_list) {
    if (e.atom == "Bool") return Sort::boolean();
    if (sig.has_sort(e.atom)) return Sort::named(e.atom);
    throw ParseError(ErrorCode::UnknownSymbol, e.loc, "unknown sort " + e.atom);
  }
  if (e.items.size() == 2 && !e.items[0].is_list && e.items[0].atom == "bv" && !e.items[1].is_list) {
    const std::string& n = e.items[1].atom;
    unsigned width = 0;
    auto [end, ec] = std::from_chars(n.data(), n.data() + n.size(), width);
    if (ec == std::errc() && end == n.data() + n.size() && width >= 1) return Sort::bv(width);
    throw ParseError(ErrorCode::Syntax, e.items[1].loc, "bit-vector width must be a positive integer");
  }
  throw ParseError(ErrorCode::Syntax, e.loc, "malformed sort");
}

/// Infers variable sorts by propagation to a fixpoint, then builds terms.
class Elaborator {
 public:
  Elaborator(const Lctrs& sig, bool allow_variables) : sig_(sig), allow_variables_(allow_variables) {}

  /// Propagation pass; returns the sort of `e` when known.
  std::optional<Sort> visit(const SExpr& e, const std::optional<Sort>& expected) {
    if (!e.is_list) return visit_atom(e, expected);
    if (e.items.empty()) throw ParseError(ErrorCode::Syntax, e.loc, "empty application");
    const SExpr& head = e.items[0];
    const std::string& name = expect_atom(head, "function symbol");
    std::span<const SExpr> args(e.items.data() + 1, e.items.size() - 1);

    if (const Symbol* f = sig_.find_function(name)) {
      if (args.size() != f->arity()) {
        throw ParseError(ErrorCode::Arity, e.loc,
                         name + " expects " + std::to_string(f->arity()) + " argument(s), got " +
                             std::to_string(args.size()));
      }
      for (std::size_t k = 0; k < args.size(); ++k) visit(args[k], f->arg_sorts()[k]);
      check(e, f->result_sort(), expected);
      return f->result_sort();
    }
    auto op = theory_op(name);
    if (!op) throw ParseError(ErrorCode::UnknownSymbol, head.loc, "undeclared symbol " + name);

    switch (*op) {
      case TheoryOp::Add:
      case TheoryOp::Sub: {
        need_arity(e, args, 2);
        std::optional<Sort> operand = expected;
        if (operand && !operand->is_bv()) {
          throw ParseError(ErrorCode::SortMismatch, e.loc,
                           name + " has a bit-vector result, expected " + operand->to_string());
        }
        if (!operand) operand = operand_sort(args);
        if (operand && !operand->is_bv()) {
          throw ParseError(ErrorCode::SortMismatch, e.loc, name + " needs bit-vector operands");
        }
        for (const SExpr& a : args) visit(a, operand);
        return operand;
      }
      case TheoryOp::Eq:
      case TheoryOp::Ult:
      case TheoryOp::Slt:
      case TheoryOp::Uge:
      case TheoryOp::Sge:
      case TheoryOp::Ule:
      case TheoryOp::Sle: {
        need_arity(e, args, 2);
        std::optional<Sort> operand = operand_sort(args);
        if (operand && (*op == TheoryOp::Eq ? !operand->enumerable() : !operand->is_bv())) {
          throw ParseError(ErrorCode::SortMismatch, e.loc, name + " cannot compare values of sort " + operand->to_string());
        }
        for (const SExpr& a : args) visit(a, operand);
        check(e, Sort::boolean(), expected);
        return Sort::boolean();
      }
      case TheoryOp::And:
      case TheoryOp::Or:
        if (args.size() < 2) {
          throw ParseError(ErrorCode::Arity, e.loc, name + " expects at least 2 arguments");
        }
        for (const SExpr& a : args) visit(a, Sort::boolean());
        check(e, Sort::boolean(), expected);
        return Sort::boolean();
      case TheoryOp::Not:
        need_arity(e, args, 1);
        visit(args[0], Sort::boolean());
        check(e, Sort::boolean(), expected);
        return Sort::boolean();
      case TheoryOp::None:
      case TheoryOp::Literal:
        break;
    }
    throw ParseError(ErrorCode::UnknownSymbol, head.loc, "undeclared symbol " + name);
  }

  bool take_changed() {
    bool c = changed_;
    changed_ = false;
    return c;
  }

  Term build(const SExpr& e, const std::optional<Sort>& expected) {
    if (!e.is_list) return build_atom(e);
    const std::string& name = e.items[0].atom;
    std::span<const SExpr> args(e.items.data() + 1, e.items.size() - 1);
    if (const Symbol* f = sig_.find_function(name)) {
      std::vector<Term> built;
      for (std::size_t k = 0; k < args.size(); ++k) built.push_back(build(args[k], f->arg_sorts()[k]));
      return make(e, *f, std::move(built));
    }
    TheoryOp op = *theory_op(name);
    if (op == TheoryOp::And || op == TheoryOp::Or) {
      Term acc = build(args[0], Sort::boolean());
      for (std::size_t k = 1; k < args.size(); ++k) {
        acc = make(e, Symbol::theory(op, Sort::boolean()), {acc, build(args[k], Sort::boolean())});
      }
      return acc;
    }
    if (op == TheoryOp::Not) return make(e, Symbol::theory(op, Sort::boolean()), {build(args[0], Sort::boolean())});
    std::optional<Sort> operand = (op == TheoryOp::Add || op == TheoryOp::Sub) ? expected : std::nullopt;
    if (!operand) operand = operand_sort(args);
    if (!operand) {
      // Every operand is a variable of unknown sort.
      throw ParseError(ErrorCode::UnresolvedSort, e.loc, "cannot infer operand sort of " + name);
    }
    std::vector<Term> built;
    for (const SExpr& a : args) built.push_back(build(a, operand));
    return make(e, Symbol::theory(op, *operand), std::move(built));
  }

 private:
  std::optional<Sort> visit_atom(const SExpr& e, const std::optional<Sort>& expected) {
    const std::string& name = e.atom;
    if (name.starts_with("#b")) {
      Sort s = Sort::bv(static_cast<unsigned>(literal(e).width()));
      if (expected && *expected != s) {
        if (expected->is_bv()) {
          throw ParseError(ErrorCode::LiteralWidth, e.loc,
                           "literal " + name + " has width " + std::to_string(s.width()) + ", expected " +
                               std::to_string(expected->width()));
        }
        throw ParseError(ErrorCode::SortMismatch, e.loc, "literal " + name + " used where " + expected->to_string() + " is expected");
      }
      return s;
    }
    if (name == "true" || name == "false") {
      check(e, Sort::boolean(), expected);
      return Sort::boolean();
    }
    if (const Symbol* f = sig_.find_function(name)) {
      if (f->arity() != 0) {
        throw ParseError(ErrorCode::Arity, e.loc, name + " expects " + std::to_string(f->arity()) + " argument(s)");
      }
      check(e, f->result_sort(), expected);
      return f->result_sort();
    }
    if (theory_op(name)) throw ParseError(ErrorCode::Arity, e.loc, "operator " + name + " used without arguments");
    if (!allow_variables_ || is_reserved(name)) {
      throw ParseError(ErrorCode::UnknownSymbol, e.loc, "undeclared symbol " + name);
    }
    auto [it, inserted] = env_.try_emplace(name, std::nullopt);
    if (inserted) first_use_.emplace(name, e.loc);
    if (it->second) {
      check(e, *it->second, expected);
    } else if (expected) {
      if (expected->kind() == SortKind::Dp) throw ParseError(ErrorCode::SortMismatch, e.loc, "variable of sort dpsort");
      it->second = expected;
      changed_ = true;
    }
    return it->second;
  }

  Term build_atom(const SExpr& e) {
    const std::string& name = e.atom;
    if (name.starts_with("#b")) return Term::value(literal(e));
    if (name == "true" || name == "false") return bool_literal(name == "true");
    if (const Symbol* f = sig_.find_function(name)) return make(e, *f, {});
    const auto& sort = env_.at(name);
    if (!sort) {
      throw ParseError(ErrorCode::UnresolvedSort, first_use_.at(name), "cannot infer the sort of variable " + name);
    }
    return Term::var(name, *sort);
  }

  BitVec literal(const SExpr& e) const {
    try {
      return BitVec::from_smtlib(e.atom);
    } catch (const std::invalid_argument&) {
      throw ParseError(ErrorCode::Syntax, e.loc, "malformed bit-vector literal " + e.atom);
    }
  }

  std::optional<Sort> operand_sort(std::span<const SExpr> args) {
    // Non-literal operands decide first so a bad literal is reported as such.
    for (bool literals : {false, true}) {
      for (const SExpr& a : args) {
        if (is_literal(a) != literals) continue;
        if (auto s = visit(a, std::nullopt)) return s;
      }
    }
    return std::nullopt;
  }

  void need_arity(const SExpr& e, std::span<const SExpr> args, std::size_t n) const {
    if (args.size() != n) {
      throw ParseError(ErrorCode::Arity, e.loc,
                       e.items[0].atom + " expects " + std::to_string(n) + " argument(s), got " +
                           std::to_string(args.size()));
    }
  }

  static void check(const SExpr& e, const Sort& actual, const std::optional<Sort>& expected) {
    if (expected && *expected != actual) {
      throw ParseError(ErrorCode::SortMismatch, e.loc,
                       "expected sort " + expected->to_string() + ", found " + actual.to_string());
    }
  }

  static Term make(const SExpr& e, const Symbol& f, std::vector<Term> args) {
    try {
      return Term::app(f, std::move(args));
    } catch (const SortError& err) {
      throw ParseError(ErrorCode::SortMismatch, e.loc, err.what());
    }
  }

  const Lctrs& sig_;
  bool allow_variables_;
  bool changed_ = false;
  std::map<std::string, std::optional<Sort>> env_;
  std::map<std::string, SourceLocation> first_use_;
};

bool names_function(const SExpr& e, const Lctrs& sig) {
  if (e.is_list) return !e.items.empty() && !e.items[0].is_list && sig.find_function(e.items[0].atom);
  return sig.find_function(e.atom) != nullptr;
}

void parse_sort_decl(const SExpr& e, Lctrs& sys) {
  if (e.items.size() != 2) throw ParseError(ErrorCode::Syntax, e.loc, "expected (sort <name>)");
  const std::string& name = expect_atom(e.items[1], "sort name");
  if (name == "Bool" || name == "bv" || name == "dpsort" || is_reserved(name) || sys.has_sort(name)) {
    throw ParseError(ErrorCode::DuplicateDeclaration, e.items[1].loc, "sort " + name + " is already declared");
  }
  sys.add_sort(name);
}

void parse_fun_decl(const SExpr& e, Lctrs& sys) {
  if (e.items.size() != 4 || !e.items[2].is_list) {
    throw ParseError(ErrorCode::Syntax, e.loc, "expected (fun <name> (<sort>...) <sort>)");
  }
  const std::string& name = expect_atom(e.items[1], "function name");
  if (is_reserved(name) || sys.find_function(name)) {
    throw ParseError(ErrorCode::DuplicateDeclaration, e.items[1].loc, "function " + name + " is already declared");
  }
  if (name.ends_with("#")) throw ParseError(ErrorCode::Syntax, e.items[1].loc, "'#' suffix is reserved for marked symbols");
  std::vector<Sort> args;
  for (const SExpr& s : e.items[2].items) args.push_back(parse_sort(s, sys));
  sys.add_function(Symbol::function(name, std::move(args), parse_sort(e.items[3], sys)));
}

void parse_rule(const SExpr& e, Lctrs& sys) {
  if (e.items.size() < 3) throw ParseError(ErrorCode::Syntax, e.loc, "expected (rule <lhs> <rhs> ...)");
  const SExpr& lhs = e.items[1];
  const SExpr& rhs = e.items[2];
  std::optional<SExpr> guard;
  std::string name;
  for (std::size_t k = 3; k < e.items.size(); k += 2) {
    const std::string& key = expect_atom(e.items[k], "rule attribute");
    if (k + 1 >= e.items.size()) throw ParseError(ErrorCode::Syntax, e.items[k].loc, "attribute " + key + " needs a value");
    if (key == ":guard" && !guard) {
      guard = e.items[k + 1];
    } else if (key == ":name" && name.empty()) {
      name = expect_atom(e.items[k + 1], "rule name");
    } else {
      throw ParseError(ErrorCode::Syntax, e.items[k].loc, "unexpected rule attribute " + key);
    }
  }
  if (!names_function(lhs, sys)) {
    throw ParseError(ErrorCode::InvalidRule, lhs.loc, "rule lhs must be rooted by a declared function symbol");
  }

  Elaborator elab(sys, true);
  std::optional<Sort> lhs_sort;
  do {
    lhs_sort = elab.visit(lhs, std::nullopt);
    elab.visit(rhs, lhs_sort);
    if (guard) elab.visit(*guard, Sort::boolean());
  } while (elab.take_changed());

  Term l = elab.build(lhs, std::nullopt);
  Term r = elab.build(rhs, lhs_sort);
  Term g = guard ? elab.build(*guard, Sort::boolean()) : bool_literal(true);
  try {
    sys.add_rule(Rule(std::move(l), std::move(r), std::move(g), std::move(name)));
  } catch (const SortError& err) {
    throw ParseError(ErrorCode::InvalidRule, e.loc, err.what());
  }
}

}  // namespace

Lctrs parse(std::string_view text) {
  Lctrs sys;
  for (const SExpr& decl : Reader(text).read_all()) {
    if (!decl.is_list || decl.items.empty() || decl.items[0].is_list) {
      throw ParseError(ErrorCode::Syntax, decl.loc, "expected a (sort ...), (fun ...) or (rule ...) declaration");
    }
    const std::string& kw = decl.items[0].atom;
    if (kw == "sort") {
      parse_sort_decl(decl, sys);
    } else if (kw == "fun") {
      parse_fun_decl(decl, sys);
    } else if (kw == "rule") {
      parse_rule(decl, sys);
    } else {
      throw ParseError(ErrorCode::Syntax, decl.items[0].loc, "unknown declaration " + kw);
    }
  }
  return sys;
}

Term parse_term(std::string_view text, const Lctrs& system, bool allow_variables) {
  auto exprs = Reader(text).read_all();
  if (exprs.size() != 1) throw ParseError(ErrorCode::Syntax, {}, "expected exactly one term");
  Elaborator elab(system, allow_variables);
  std::optional<Sort> sort;
  do {
    sort = elab.visit(exprs[0], std::nullopt);
  } while (elab.take_changed());
  return elab.build(exprs[0], sort);
}

std::string print(const Term& t) { return to_string(t); }

std::string print(const Rule& r) { return to_string(r); }

std::string print(const Lctrs& system) {
  std::ostringstream os;
  for (const std::string& s : system.sorts()) os << "(sort " << s << ")\n";
  for (const Symbol& f : system.functions()) {
    os << "(fun " << f.name() << " (";
    for (std::size_t k = 0; k < f.arity(); ++k) os << (k ? " " : "") << f.arg_sorts()[k].to_string();
    os << ") " << f.result_sort().to_string() << ")\n";
  }
  for (const Rule& r : system.rules()) os << print(r) << '\n';
  return os.str();
}

}  // namespace bvterm
