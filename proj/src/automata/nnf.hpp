#pragma once

#include "nltl/speclang/formula.hpp"

#include <map>
#include <string>
#include <tuple>
#include <vector>

namespace nltl::automata::detail {

enum class NOp { True, False, Lit, And, Or, Next, Until, Release };

struct NNode {
  NOp op;
  int atom = -1;         // Lit: index into the alphabet
  bool positive = true;  // Lit
  int lhs = -1;
  int rhs = -1;
};

/// Hash-consed negation normal form. Equal subformulas share one id, so
/// formula sets are sets of ints.
class NnfTable {
 public:
  explicit NnfTable(const std::vector<std::string>& alphabet);

  /// Interns f (negated when `negate`), pushing negations to the literals.
  int build(const spec::Formula& f, bool negate = false);

  const NNode& operator[](int id) const { return nodes_[static_cast<std::size_t>(id)]; }
  std::size_t size() const { return nodes_.size(); }

  int tt();
  int ff();
  int lit(int atom, bool positive);
  int make(NOp op, int lhs, int rhs = -1);

 private:
  std::vector<NNode> nodes_;
  std::map<std::tuple<NOp, int, bool, int, int>, int> index_;
  std::map<std::string, int> atom_index_;
};

}  // namespace nltl::automata::detail
