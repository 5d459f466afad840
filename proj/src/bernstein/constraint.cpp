#include "nltl/bernstein/constraint.hpp"

namespace nltl::bernstein {

Relation negate(Relation r) {
  switch (r) {
    case Relation::Less: return Relation::GreaterEq;
    case Relation::LessEq: return Relation::Greater;
    case Relation::Greater: return Relation::LessEq;
    case Relation::GreaterEq: return Relation::Less;
  }
  return r;
}

std::string_view to_string(Relation r) {
  switch (r) {
    case Relation::Less: return "<";
    case Relation::LessEq: return "<=";
    case Relation::Greater: return ">";
    case Relation::GreaterEq: return ">=";
  }
  return "?";
}

bool holds(Relation r, const Rational& value) {
  switch (r) {
    case Relation::Less: return value < 0;
    case Relation::LessEq: return value <= 0;
    case Relation::Greater: return value > 0;
    case Relation::GreaterEq: return value >= 0;
  }
  return false;
}

bool PolyConstraint::holds_at(std::span<const Rational> point) const {
  return holds(relation, evaluate(poly, point));
}

std::string to_string(const PolyConstraint& c, std::span<const std::string> names) {
  return to_string(c.poly, names) + " " + std::string(to_string(c.relation)) + " 0";
}

}  // namespace nltl::bernstein
