#pragma once

#include "nltl/bernstein/constraint.hpp"
#include "nltl/rational.hpp"
#include "nltl/speclang/formula.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nltl::spec {

/// Which player owns a real variable, and with it every predicate over it.
enum class Side { Input, Output };

std::string_view to_string(Side side);

struct RealVarDecl {
  std::string name;
  Rational lower;
  Rational upper;
  Side side = Side::Input;

  bool operator==(const RealVarDecl&) const = default;
};

/// A named polynomial constraint used as an atom. The polynomial ranges over
/// all real variables of the document, in declaration order; only variables
/// of `side` may occur in it.
struct PredicateDef {
  std::string atom;
  bernstein::PolyConstraint constraint;
  Side side = Side::Input;

  bool operator==(const PredicateDef&) const = default;
};

struct SpecDocument {
  std::vector<std::string> boolean_inputs;
  std::vector<std::string> boolean_outputs;
  std::vector<RealVarDecl> real_vars;
  std::vector<PredicateDef> predicates;
  std::vector<Formula> assumptions;
  std::vector<Formula> guarantees;

  /// Boolean inputs followed by input-side predicate atoms, declaration order.
  std::vector<std::string> input_atoms() const;
  std::vector<std::string> output_atoms() const;
  std::vector<std::string> real_var_names() const;

  const PredicateDef* find_predicate(std::string_view atom) const;
  const RealVarDecl* find_real_var(std::string_view name) const;

  /// The conjunction of the assumptions implies the conjunction of the
  /// guarantees. Without assumptions, just the guarantee conjunction.
  Formula as_formula() const;

  bool operator==(const SpecDocument&) const = default;
};

}  // namespace nltl::spec
