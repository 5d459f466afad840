#include "nltl/speclang/parser.hpp"

#include "lexer.hpp"

#include <map>
#include <optional>
#include <set>

namespace nltl::spec {

using bernstein::PolyConstraint;
using bernstein::Polynomial;
using bernstein::Relation;
using namespace detail;

std::string to_string(const Diagnostic& d) {
  std::string sev = d.severity == Diagnostic::Severity::Error ? "error" : "warning";
  if (d.line == 0) return sev + ": " + d.message;
  return std::to_string(d.line) + ":" + std::to_string(d.column) + ": " + sev + ": " + d.message;
}

namespace {

std::string join_messages(const std::vector<Diagnostic>& ds) {
  std::string out;
  for (const auto& d : ds) {
    if (!out.empty()) out += '\n';
    out += to_string(d);
  }
  return out;
}

}  // namespace

SpecError::SpecError(std::vector<Diagnostic> diagnostics)
    : std::runtime_error(join_messages(diagnostics)), diagnostics_(std::move(diagnostics)) {}

namespace {

constexpr unsigned kMaxExponent = 64;

class TokenStream {
 public:
  explicit TokenStream(const std::vector<Token>& toks) : toks_(toks) {}

  const Token& peek() const { return toks_[pos_]; }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (t.kind != Tok::End) ++pos_;
    return t;
  }
  bool accept(Tok kind) {
    if (peek().kind != kind) return false;
    next();
    return true;
  }
  const Token& expect(Tok kind, const char* what) {
    if (peek().kind != kind) fail(std::string("expected ") + what + ", found " + describe(peek()));
    return next();
  }
  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(peek().line, peek().column, msg); }
  void expect_end() {
    if (peek().kind != Tok::End) fail("unexpected " + describe(peek()));
  }

 private:
  const std::vector<Token>& toks_;
  std::size_t pos_ = 0;
};

struct AtomUse {
  std::string name;
  std::size_t line;
  std::size_t column;
};

class FormulaParser {
 public:
  FormulaParser(TokenStream& ts, std::vector<AtomUse>* uses) : ts_(ts), uses_(uses) {}

  Formula parse() {
    Formula f = implication();
    if (ts_.peek().kind == Tok::RParen) ts_.fail("unbalanced ')'");
    return f;
  }

 private:
  void reject_iff() {
    if (ts_.peek().kind == Tok::Iff)
      ts_.fail("'<->' is not supported; rewrite 'a <-> b' as the two guarantees 'a -> b' and 'b -> a'");
  }

  Formula implication() {
    Formula lhs = disjunction_();
    reject_iff();
    if (ts_.accept(Tok::Implies)) return Formula::implies(lhs, implication());
    return lhs;
  }

  Formula disjunction_() {
    Formula f = conjunction_();
    while (ts_.accept(Tok::Or)) f = f || conjunction_();
    return f;
  }

  Formula conjunction_() {
    Formula f = until();
    while (ts_.accept(Tok::And)) f = f && until();
    return f;
  }

  Formula until() {
    Formula lhs = unary();
    if (ts_.accept(Tok::KwUntil)) return Formula::until(lhs, until());
    return lhs;
  }

  Formula unary() {
    if (ts_.accept(Tok::Not)) return !unary();
    if (ts_.accept(Tok::KwNext)) return Formula::next(unary());
    if (ts_.accept(Tok::KwAlways)) return Formula::always(unary());
    if (ts_.accept(Tok::KwEventually)) return Formula::eventually(unary());
    return primary();
  }

  Formula primary() {
    const Token& t = ts_.peek();
    switch (t.kind) {
      case Tok::Ident: {
        if (uses_) uses_->push_back({t.text, t.line, t.column});
        return Formula::atom(ts_.next().text);
      }
      case Tok::KwTrue: ts_.next(); return Formula::tt();
      case Tok::KwFalse: ts_.next(); return Formula::ff();
      case Tok::LParen: {
        ts_.next();
        Formula f = implication();
        ts_.expect(Tok::RParen, "')'");
        return f;
      }
      default: break;
    }
    reject_iff();
    ts_.fail("expected a formula, found " + describe(t));
  }

  TokenStream& ts_;
  std::vector<AtomUse>* uses_;
};

class PolyParser {
 public:
  PolyParser(TokenStream& ts, const std::vector<std::string>& vars) : ts_(ts), vars_(vars) {}

  PolyConstraint constraint() {
    Polynomial lhs = sum();
    Relation rel;
    switch (ts_.peek().kind) {
      case Tok::Less: rel = Relation::Less; break;
      case Tok::LessEq: rel = Relation::LessEq; break;
      case Tok::Greater: rel = Relation::Greater; break;
      case Tok::GreaterEq: rel = Relation::GreaterEq; break;
      case Tok::Equal: ts_.fail("equality constraints are not supported; use two inequalities");
      default: ts_.fail("expected one of < <= > >=, found " + describe(ts_.peek()));
    }
    ts_.next();
    Polynomial rhs = sum();
    return {lhs - rhs, rel};
  }

 private:
  std::size_t n() const { return vars_.size(); }

  Polynomial sum() {
    Polynomial p = product();
    for (;;) {
      if (ts_.accept(Tok::Plus)) {
        p += product();
      } else if (ts_.accept(Tok::Minus)) {
        p -= product();
      } else {
        return p;
      }
    }
  }

  Polynomial product() {
    Polynomial p = signed_factor();
    for (;;) {
      if (ts_.accept(Tok::Star)) {
        p = p * signed_factor();
      } else if (ts_.peek().kind == Tok::Slash) {
        ts_.next();
        Polynomial d = signed_factor();
        if (!d.variables_used().empty()) ts_.fail("division by a non-constant expression");
        Rational c = d.coefficient(bernstein::Exponent(n(), 0));
        if (c == 0) ts_.fail("division by zero");
        p *= Rational(1) / c;
      } else {
        return p;
      }
    }
  }

  Polynomial signed_factor() {
    if (ts_.accept(Tok::Minus)) return -signed_factor();
    if (ts_.accept(Tok::Plus)) return signed_factor();
    return power();
  }

  Polynomial power() {
    Polynomial base = primary();
    if (!ts_.accept(Tok::Caret)) return base;
    const Token& e = ts_.peek();
    if (e.kind != Tok::Number || e.text.find('.') != std::string::npos)
      ts_.fail("exponent must be a nonnegative integer, found " + describe(e));
    unsigned long k = std::stoul(e.text);
    if (k > kMaxExponent) ts_.fail("exponent " + e.text + " exceeds the limit of " + std::to_string(kMaxExponent));
    ts_.next();
    return base.pow(static_cast<unsigned>(k));
  }

  Polynomial primary() {
    const Token& t = ts_.peek();
    if (t.kind == Tok::Number) {
      ts_.next();
      return Polynomial::constant(n(), parse_rational(t.text));
    }
    if (t.kind == Tok::Ident) {
      for (std::size_t i = 0; i < n(); ++i) {
        if (vars_[i] == t.text) {
          ts_.next();
          return Polynomial::variable(n(), i);
        }
      }
      ts_.fail("undeclared real variable '" + t.text + "'");
    }
    if (ts_.accept(Tok::LParen)) {
      Polynomial p = sum();
      ts_.expect(Tok::RParen, "')'");
      return p;
    }
    ts_.fail("expected a polynomial term, found " + describe(t));
  }

  TokenStream& ts_;
  const std::vector<std::string>& vars_;
};

Rational parse_bound(TokenStream& ts) {
  bool negative = ts.accept(Tok::Minus);
  if (!negative) ts.accept(Tok::Plus);
  std::string text = ts.expect(Tok::Number, "a number").text;
  if (ts.accept(Tok::Slash)) text += "/" + ts.expect(Tok::Number, "a denominator").text;
  try {
    Rational r = parse_rational(text);
    return negative ? Rational(-r) : r;
  } catch (const std::invalid_argument& e) {
    ts.fail(e.what());
  }
}

std::optional<Side> parse_side(TokenStream& ts) {
  if (ts.accept(Tok::KwInput)) return Side::Input;
  if (ts.accept(Tok::KwOutput)) return Side::Output;
  return std::nullopt;
}

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    std::string line(text.substr(start, nl - start));
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
    start = nl + 1;
  }
  return lines;
}

struct Located {
  std::string name;
  std::size_t line;
  std::size_t column;
};

struct PendingPred {
  Located atom;
  std::optional<Side> side;
  std::vector<Token> tokens;  // the constraint, End-terminated
};

struct ListedAtom {
  Located where;
  Side side;
};

struct PendingReal {
  Located where;
  RealVarDecl decl;
};

class SpecParser {
 public:
  SpecDocument run(std::string_view text) {
    auto lines = split_lines(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
      std::string_view line = lines[i];
      if (auto c = line.find("##"); c != std::string_view::npos) line = line.substr(0, c);
      try {
        statement(tokenize(line, i + 1));
      } catch (const SyntaxError& e) {
        error(e.line, e.column, e.what());
      }
    }
    resolve();
    return std::move(doc_);
  }

  std::vector<Diagnostic> errors;
  std::vector<Diagnostic> warnings;

 private:
  void error(std::size_t line, std::size_t column, std::string msg) {
    errors.push_back({Diagnostic::Severity::Error, line, column, std::move(msg)});
  }
  void warn(std::size_t line, std::size_t column, std::string msg) {
    warnings.push_back({Diagnostic::Severity::Warning, line, column, std::move(msg)});
  }

  void statement(const std::vector<Token>& toks) {
    TokenStream ts(toks);
    const Token& first = ts.peek();
    switch (first.kind) {
      case Tok::End: return;
      case Tok::KwInput:
      case Tok::KwOutput: {
        Side side = first.kind == Tok::KwInput ? Side::Input : Side::Output;
        ts.next();
        do {
          const Token& id = ts.expect(Tok::Ident, "an atom name");
          listed_.push_back({{id.text, id.line, id.column}, side});
        } while (ts.accept(Tok::Comma));
        ts.expect_end();
        return;
      }
      case Tok::KwReal: {
        ts.next();
        RealVarDecl decl;
        decl.side = parse_side(ts).value_or(Side::Input);
        const Token& id = ts.expect(Tok::Ident, "a variable name");
        decl.name = id.text;
        ts.expect(Tok::KwIn, "'IN'");
        const Token& open = ts.expect(Tok::LBracket, "'['");
        decl.lower = parse_bound(ts);
        ts.expect(Tok::Comma, "','");
        decl.upper = parse_bound(ts);
        ts.expect(Tok::RBracket, "']'");
        ts.expect_end();
        if (decl.lower > decl.upper)
          throw SyntaxError(open.line, open.column,
                            "empty interval for '" + decl.name + "': lower bound exceeds upper bound");
        reals_.push_back({{id.text, id.line, id.column}, std::move(decl)});
        return;
      }
      case Tok::KwPred: {
        ts.next();
        PendingPred p;
        p.side = parse_side(ts);
        const Token& id = ts.expect(Tok::Ident, "a predicate name");
        p.atom = {id.text, id.line, id.column};
        ts.expect(Tok::Define, "':='");
        while (ts.peek().kind != Tok::End) p.tokens.push_back(ts.next());
        p.tokens.push_back(ts.peek());
        if (p.tokens.size() == 1) ts.fail("expected a constraint after ':='");
        preds_.push_back(std::move(p));
        return;
      }
      case Tok::KwAssume: {
        ts.next();
        FormulaParser fp(ts, &uses_);
        doc_.assumptions.push_back(fp.parse());
        ts.expect_end();
        return;
      }
      default: {
        FormulaParser fp(ts, &uses_);
        doc_.guarantees.push_back(fp.parse());
        ts.expect_end();
        return;
      }
    }
  }

  enum class Kind { Real, Pred, Input, Output };

  static const char* kind_name(Kind k) {
    switch (k) {
      case Kind::Real: return "real variable";
      case Kind::Pred: return "predicate";
      case Kind::Input: return "input";
      case Kind::Output: return "output";
    }
    return "";
  }

  // Claims `name` for a namespace; reports a duplicate otherwise.
  bool claim(const Located& at, Kind kind) {
    auto [it, fresh] = names_.try_emplace(at.name, kind, at);
    if (!fresh) {
      const auto& [prev_kind, prev] = it->second;
      error(at.line, at.column,
            "duplicate declaration of '" + at.name + "' (already declared as " + kind_name(prev_kind) +
                " at line " + std::to_string(prev.line) + ")");
    }
    return fresh;
  }

  void resolve() {
    for (auto& r : reals_)
      if (claim(r.where, Kind::Real)) doc_.real_vars.push_back(r.decl);
    auto var_names = doc_.real_var_names();

    std::map<std::string, std::vector<const ListedAtom*>> listed_preds;
    std::set<std::string> pred_names;
    for (const auto& p : preds_) pred_names.insert(p.atom.name);
    for (const auto& l : listed_)
      if (pred_names.count(l.where.name)) listed_preds[l.where.name].push_back(&l);

    for (const auto& p : preds_) {
      if (!claim(p.atom, Kind::Pred)) continue;
      PolyConstraint c;
      try {
        TokenStream ts(p.tokens);
        c = PolyParser(ts, var_names).constraint();
        ts.expect_end();
      } catch (const SyntaxError& e) {
        error(e.line, e.column, e.what());
        continue;
      }
      std::optional<Side> side = p.side;
      std::set<std::string> in_vars, out_vars;
      for (auto v : c.poly.variables_used()) {
        (doc_.real_vars[v].side == Side::Input ? in_vars : out_vars).insert(doc_.real_vars[v].name);
      }
      if (!in_vars.empty() && !out_vars.empty()) {
        error(p.atom.line, p.atom.column,
              "predicate '" + p.atom.name + "' mixes input-side variables (" + join(in_vars) +
                  ") and output-side variables (" + join(out_vars) + ")");
        continue;
      }
      std::optional<Side> var_side;
      if (!in_vars.empty()) var_side = Side::Input;
      if (!out_vars.empty()) var_side = Side::Output;
      if (side && var_side && *side != *var_side) {
        error(p.atom.line, p.atom.column,
              "predicate '" + p.atom.name + "' is declared " + std::string(to_string(*side)) + "-side but ranges over " +
                  std::string(to_string(*var_side)) + "-side variables");
        continue;
      }
      if (!side) side = var_side;
      bool ok = true;
      for (const ListedAtom* l : listed_preds[p.atom.name]) {
        if (side && *side != l->side) {
          error(l->where.line, l->where.column,
                "predicate '" + p.atom.name + "' is " + std::string(to_string(*side)) + "-side but listed under " +
                    (l->side == Side::Input ? "INPUT" : "OUTPUT"));
          ok = false;
        } else {
          side = l->side;
          warn(l->where.line, l->where.column,
               "predicate atom '" + p.atom.name + "' is declared by PRED; listing it under " +
                   (l->side == Side::Input ? "INPUT" : "OUTPUT") + " is redundant");
        }
      }
      if (!ok) continue;
      doc_.predicates.push_back({p.atom.name, std::move(c), side.value_or(Side::Input)});
    }

    for (const auto& l : listed_) {
      if (pred_names.count(l.where.name)) continue;
      if (!claim(l.where, l.side == Side::Input ? Kind::Input : Kind::Output)) continue;
      (l.side == Side::Input ? doc_.boolean_inputs : doc_.boolean_outputs).push_back(l.where.name);
    }

    for (const auto& u : uses_) {
      auto it = names_.find(u.name);
      if (it == names_.end()) {
        error(u.line, u.column, "undeclared atom '" + u.name + "'");
      } else if (it->second.first == Kind::Real) {
        error(u.line, u.column, "real variable '" + u.name + "' cannot be used as an atom; declare a PRED over it");
      }
    }

    if (doc_.guarantees.empty()) error(0, 0, "no guarantees: a specification needs at least one guarantee");
  }

  static std::string join(const std::set<std::string>& names) {
    std::string out;
    for (const auto& n : names) out += (out.empty() ? "" : ", ") + n;
    return out;
  }

  SpecDocument doc_;
  std::vector<PendingReal> reals_;
  std::vector<PendingPred> preds_;
  std::vector<ListedAtom> listed_;
  std::vector<AtomUse> uses_;
  std::map<std::string, std::pair<Kind, Located>> names_;
};

}  // namespace

SpecDocument parse_spec(std::string_view text, std::vector<Diagnostic>* warnings) {
  SpecParser p;
  SpecDocument doc = p.run(text);
  if (warnings) warnings->insert(warnings->end(), p.warnings.begin(), p.warnings.end());
  if (!p.errors.empty()) throw SpecError(std::move(p.errors));
  return doc;
}

Formula parse_formula(std::string_view text) {
  try {
    auto toks = tokenize(text, 1);
    TokenStream ts(toks);
    Formula f = FormulaParser(ts, nullptr).parse();
    ts.expect_end();
    return f;
  } catch (const SyntaxError& e) {
    throw SpecError({{Diagnostic::Severity::Error, e.line, e.column, e.what()}});
  }
}

PolyConstraint parse_constraint(std::string_view text, const std::vector<std::string>& variables) {
  try {
    auto toks = tokenize(text, 1);
    TokenStream ts(toks);
    PolyConstraint c = PolyParser(ts, variables).constraint();
    ts.expect_end();
    return c;
  } catch (const SyntaxError& e) {
    throw SpecError({{Diagnostic::Severity::Error, e.line, e.column, e.what()}});
  }
}

}  // namespace nltl::spec
