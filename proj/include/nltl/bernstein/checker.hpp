#pragma once

#include "nltl/bernstein/box.hpp"
#include "nltl/bernstein/constraint.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace nltl::bernstein {

struct CheckConfig {
  /// Maximum number of bisections along any branch of the subdivision tree.
  unsigned max_depth = 24;
  /// Hard cap on explored subboxes; exceeding it yields Unknown.
  std::size_t max_subboxes = 2'000'000;
};

struct FeasibilityVerdict {
  enum class Kind { Feasible, Infeasible, Unknown };

  Kind kind = Kind::Unknown;
  std::vector<Rational> witness;  // Feasible only
  std::string reason;             // Unknown only
  std::size_t subboxes = 0;

  bool feasible() const { return kind == Kind::Feasible; }
  bool infeasible() const { return kind == Kind::Infeasible; }
};

struct ValidityVerdict {
  enum class Kind { Valid, Invalid, Unknown };

  Kind kind = Kind::Unknown;
  std::vector<Rational> witness;  // Invalid only: a counterexample point
  std::string reason;
  std::size_t subboxes = 0;
};

/// forall x in box: (premise_1 && ... && premise_k) -> conclusion.
/// An empty premise list asks for plain validity of the conclusion.
struct ValidityQuery {
  std::vector<PolyConstraint> premises;
  PolyConstraint conclusion;
};

/// Decides whether the conjunction has a solution in the box. Witnesses are
/// subbox centers or vertices and are re-verified exactly before being
/// returned. Throws std::invalid_argument on an empty constraint list or an
/// arity mismatch.
FeasibilityVerdict check_feasibility(const std::vector<PolyConstraint>& constraints, const Box& box,
                                     const CheckConfig& cfg = {});

/// Throws std::invalid_argument on arity mismatch.
ValidityVerdict check_validity(const ValidityQuery& query, const Box& box, const CheckConfig& cfg = {});
ValidityVerdict check_validity(const PolyConstraint& constraint, const Box& box, const CheckConfig& cfg = {});

std::string_view to_string(FeasibilityVerdict::Kind k);
std::string_view to_string(ValidityVerdict::Kind k);

}  // namespace nltl::bernstein
