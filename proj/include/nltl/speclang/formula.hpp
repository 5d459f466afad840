#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <ostream>
#include <set>
#include <string>
#include <vector>

namespace nltl::spec {

enum class Op : unsigned char { True, False, Atom, Not, And, Or, Implies, Next, Always, Eventually, Until };

/// Immutable LTL formula. Copies share structure; equality and ordering are
/// structural.
class Formula {
 public:
  /// The constant true.
  Formula();

  static Formula atom(std::string name);
  static Formula tt();
  static Formula ff();
  static Formula negation(Formula f);
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula implies(Formula a, Formula b);
  static Formula next(Formula f);
  static Formula always(Formula f);
  static Formula eventually(Formula f);
  static Formula until(Formula a, Formula b);

  Op op() const;
  /// Atom name; empty for other operators.
  const std::string& name() const;
  /// Operand of a unary operator, or left operand of a binary one.
  const Formula& lhs() const;
  const Formula& rhs() const;

  bool is_unary() const;
  bool is_binary() const;
  /// Number of nodes in the tree.
  std::size_t size() const;

  friend bool operator==(const Formula& a, const Formula& b);
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula make(Op op, std::string name, Formula lhs, Formula rhs);

  std::shared_ptr<const Node> node_;
};

Formula operator!(Formula f);
Formula operator&&(Formula a, Formula b);
Formula operator||(Formula a, Formula b);

/// Left-nested conjunction; true for an empty list.
Formula conjunction(const std::vector<Formula>& fs);
Formula disjunction(const std::vector<Formula>& fs);

std::set<std::string> atoms(const Formula& f);
/// No temporal operators.
bool is_propositional(const Formula& f);
/// Replaces atoms by formulas; atoms absent from the map are kept.
Formula substitute(const Formula& f, const std::map<std::string, Formula>& replacement);

/// Evaluates a propositional formula under a valuation given as a predicate
/// on atom names. Throws std::invalid_argument on temporal operators.
template <class Lookup>
bool evaluate_propositional(const Formula& f, const Lookup& value);

/// Concrete syntax with minimal parentheses. Binding strength, tightest
/// first: ! NEXT ALWAYS EVENTUALLY, then UNTIL, &&, ||, ->. UNTIL and -> are
/// right associative.
std::string to_string(const Formula& f);
/// Every binary node wrapped in parentheses, every unary operand too.
std::string to_string_parenthesized(const Formula& f);
std::ostream& operator<<(std::ostream& os, const Formula& f);

template <class Lookup>
bool evaluate_propositional(const Formula& f, const Lookup& value) {
  switch (f.op()) {
    case Op::True: return true;
    case Op::False: return false;
    case Op::Atom: return value(f.name());
    case Op::Not: return !evaluate_propositional(f.lhs(), value);
    case Op::And: return evaluate_propositional(f.lhs(), value) && evaluate_propositional(f.rhs(), value);
    case Op::Or: return evaluate_propositional(f.lhs(), value) || evaluate_propositional(f.rhs(), value);
    case Op::Implies: return !evaluate_propositional(f.lhs(), value) || evaluate_propositional(f.rhs(), value);
    default: break;
  }
  throw std::invalid_argument("evaluate_propositional: temporal operator in " + to_string(f));
}

}  // namespace nltl::spec
