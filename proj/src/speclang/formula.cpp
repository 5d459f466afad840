#include "nltl/speclang/formula.hpp"

#include <stdexcept>

namespace nltl::spec {

struct Formula::Node {
  Op op;
  std::string name;
  // Null handles for children an operator does not have.
  Formula lhs{std::shared_ptr<const Node>()};
  Formula rhs{std::shared_ptr<const Node>()};
  std::size_t size = 1;
};

namespace {

const std::shared_ptr<const Formula>& empty_child() {
  static const auto f = std::make_shared<const Formula>();
  return f;
}

}  // namespace

Formula::Formula() : node_(tt().node_) {}

Formula Formula::make(Op op, std::string name, Formula lhs, Formula rhs) {
  auto node = std::make_shared<Node>();
  node->op = op;
  node->name = std::move(name);
  bool unary = op == Op::Not || op == Op::Next || op == Op::Always || op == Op::Eventually;
  bool binary = op == Op::And || op == Op::Or || op == Op::Implies || op == Op::Until;
  if (unary || binary) node->size += lhs.size();
  if (binary) node->size += rhs.size();
  node->lhs = std::move(lhs);
  node->rhs = std::move(rhs);
  return Formula(std::move(node));
}

Formula Formula::tt() {
  static const Formula t = make(Op::True, {}, Formula(nullptr), Formula(nullptr));
  return t;
}

Formula Formula::ff() {
  static const Formula f = make(Op::False, {}, Formula(nullptr), Formula(nullptr));
  return f;
}

Formula Formula::atom(std::string name) {
  if (name.empty()) throw std::invalid_argument("atom name must be nonempty");
  return make(Op::Atom, std::move(name), Formula(nullptr), Formula(nullptr));
}

Formula Formula::negation(Formula f) { return make(Op::Not, {}, std::move(f), Formula(nullptr)); }
Formula Formula::conj(Formula a, Formula b) { return make(Op::And, {}, std::move(a), std::move(b)); }
Formula Formula::disj(Formula a, Formula b) { return make(Op::Or, {}, std::move(a), std::move(b)); }
Formula Formula::implies(Formula a, Formula b) { return make(Op::Implies, {}, std::move(a), std::move(b)); }
Formula Formula::next(Formula f) { return make(Op::Next, {}, std::move(f), Formula(nullptr)); }
Formula Formula::always(Formula f) { return make(Op::Always, {}, std::move(f), Formula(nullptr)); }
Formula Formula::eventually(Formula f) { return make(Op::Eventually, {}, std::move(f), Formula(nullptr)); }
Formula Formula::until(Formula a, Formula b) { return make(Op::Until, {}, std::move(a), std::move(b)); }

Op Formula::op() const { return node_->op; }
const std::string& Formula::name() const { return node_->name; }
const Formula& Formula::lhs() const {
  if (!is_unary() && !is_binary()) return *empty_child();
  return node_->lhs;
}
const Formula& Formula::rhs() const {
  if (!is_binary()) return *empty_child();
  return node_->rhs;
}
std::size_t Formula::size() const { return node_->size; }

bool Formula::is_unary() const {
  auto o = op();
  return o == Op::Not || o == Op::Next || o == Op::Always || o == Op::Eventually;
}

bool Formula::is_binary() const {
  auto o = op();
  return o == Op::And || o == Op::Or || o == Op::Implies || o == Op::Until;
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.op() != b.op() || a.size() != b.size() || a.name() != b.name()) return false;
  if (a.is_unary()) return a.lhs() == b.lhs();
  if (a.is_binary()) return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  return true;
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.op() <=> b.op(); c != 0) return c;
  if (auto c = a.name() <=> b.name(); c != 0) return c;
  if (a.is_unary() || a.is_binary())
    if (auto c = a.lhs() <=> b.lhs(); c != 0) return c;
  if (a.is_binary()) return a.rhs() <=> b.rhs();
  return std::strong_ordering::equal;
}

Formula operator!(Formula f) { return Formula::negation(std::move(f)); }
Formula operator&&(Formula a, Formula b) { return Formula::conj(std::move(a), std::move(b)); }
Formula operator||(Formula a, Formula b) { return Formula::disj(std::move(a), std::move(b)); }

Formula conjunction(const std::vector<Formula>& fs) {
  if (fs.empty()) return Formula::tt();
  Formula out = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) out = out && fs[i];
  return out;
}

Formula disjunction(const std::vector<Formula>& fs) {
  if (fs.empty()) return Formula::ff();
  Formula out = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) out = out || fs[i];
  return out;
}

namespace {

void collect_atoms(const Formula& f, std::set<std::string>& out) {
  if (f.op() == Op::Atom) out.insert(f.name());
  if (f.is_unary() || f.is_binary()) collect_atoms(f.lhs(), out);
  if (f.is_binary()) collect_atoms(f.rhs(), out);
}

}  // namespace

std::set<std::string> atoms(const Formula& f) {
  std::set<std::string> out;
  collect_atoms(f, out);
  return out;
}

bool is_propositional(const Formula& f) {
  switch (f.op()) {
    case Op::Next:
    case Op::Always:
    case Op::Eventually:
    case Op::Until: return false;
    default: break;
  }
  if (f.is_unary()) return is_propositional(f.lhs());
  if (f.is_binary()) return is_propositional(f.lhs()) && is_propositional(f.rhs());
  return true;
}

Formula substitute(const Formula& f, const std::map<std::string, Formula>& replacement) {
  switch (f.op()) {
    case Op::True:
    case Op::False: return f;
    case Op::Atom: {
      auto it = replacement.find(f.name());
      return it == replacement.end() ? f : it->second;
    }
    case Op::Not: return Formula::negation(substitute(f.lhs(), replacement));
    case Op::Next: return Formula::next(substitute(f.lhs(), replacement));
    case Op::Always: return Formula::always(substitute(f.lhs(), replacement));
    case Op::Eventually: return Formula::eventually(substitute(f.lhs(), replacement));
    case Op::And: return Formula::conj(substitute(f.lhs(), replacement), substitute(f.rhs(), replacement));
    case Op::Or: return Formula::disj(substitute(f.lhs(), replacement), substitute(f.rhs(), replacement));
    case Op::Implies: return Formula::implies(substitute(f.lhs(), replacement), substitute(f.rhs(), replacement));
    case Op::Until: return Formula::until(substitute(f.lhs(), replacement), substitute(f.rhs(), replacement));
  }
  return f;
}

namespace {

int precedence(Op op) {
  switch (op) {
    case Op::Implies: return 1;
    case Op::Or: return 2;
    case Op::And: return 3;
    case Op::Until: return 4;
    case Op::Not:
    case Op::Next:
    case Op::Always:
    case Op::Eventually: return 5;
    default: return 6;
  }
}

bool right_associative(Op op) { return op == Op::Implies || op == Op::Until; }

const char* keyword(Op op) {
  switch (op) {
    case Op::True: return "TRUE";
    case Op::False: return "FALSE";
    case Op::Not: return "!";
    case Op::And: return " && ";
    case Op::Or: return " || ";
    case Op::Implies: return " -> ";
    case Op::Next: return "NEXT ";
    case Op::Always: return "ALWAYS ";
    case Op::Eventually: return "EVENTUALLY ";
    case Op::Until: return " UNTIL ";
    case Op::Atom: break;
  }
  return "";
}

void print(const Formula& f, std::string& out);

void print_operand(const Formula& f, bool parens, std::string& out) {
  if (parens) out += '(';
  print(f, out);
  if (parens) out += ')';
}

void print(const Formula& f, std::string& out) {
  const Op op = f.op();
  if (op == Op::Atom) {
    out += f.name();
  } else if (f.is_unary()) {
    out += keyword(op);
    print_operand(f.lhs(), precedence(f.lhs().op()) < precedence(op), out);
  } else if (f.is_binary()) {
    int p = precedence(op);
    int pl = precedence(f.lhs().op()), pr = precedence(f.rhs().op());
    bool right = right_associative(op);
    print_operand(f.lhs(), right ? pl <= p : pl < p, out);
    out += keyword(op);
    print_operand(f.rhs(), right ? pr < p : pr <= p, out);
  } else {
    out += keyword(op);
  }
}

void print_full(const Formula& f, std::string& out) {
  const Op op = f.op();
  if (op == Op::Atom) {
    out += f.name();
  } else if (f.is_unary()) {
    out += keyword(op);
    out += '(';
    print_full(f.lhs(), out);
    out += ')';
  } else if (f.is_binary()) {
    out += '(';
    print_full(f.lhs(), out);
    out += keyword(op);
    print_full(f.rhs(), out);
    out += ')';
  } else {
    out += keyword(op);
  }
}

}  // namespace

std::string to_string(const Formula& f) {
  std::string out;
  print(f, out);
  return out;
}

std::string to_string_parenthesized(const Formula& f) {
  std::string out;
  print_full(f, out);
  return out;
}

std::ostream& operator<<(std::ostream& os, const Formula& f) { return os << to_string(f); }

}  // namespace nltl::spec
