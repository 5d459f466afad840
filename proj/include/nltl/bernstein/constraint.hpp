#pragma once

#include "nltl/bernstein/polynomial.hpp"

#include <string>
#include <string_view>

namespace nltl::bernstein {

enum class Relation { Less, LessEq, Greater, GreaterEq };

/// The complementary relation: < and >= swap, > and <= swap.
Relation negate(Relation r);
std::string_view to_string(Relation r);

/// poly(x) <relation> 0.
struct PolyConstraint {
  Polynomial poly;
  Relation relation = Relation::Greater;

  bool holds_at(std::span<const Rational> point) const;
  PolyConstraint negated() const { return {poly, negate(relation)}; }
  bool operator==(const PolyConstraint&) const = default;
};

bool holds(Relation r, const Rational& value);

/// "x + y - 3 > 0".
std::string to_string(const PolyConstraint& c, std::span<const std::string> names);

}  // namespace nltl::bernstein
