#pragma once

#include "nltl/speclang/formula.hpp"
#include "nltl/valuation.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace nltl::automata {

using State = std::size_t;

struct Edge {
  Cube guard;
  State to = 0;

  bool operator==(const Edge&) const = default;
  auto operator<=>(const Edge&) const = default;
};

/// Nondeterministic Büchi automaton with cube-labelled edges. Letters are
/// valuations of `alphabet`, atom i at bit i.
struct BuchiAutomaton {
  std::vector<std::string> alphabet;
  State initial = 0;
  std::vector<bool> accepting;
  std::vector<std::vector<Edge>> edges;  // outgoing, per state

  std::size_t size() const { return accepting.size(); }
  std::size_t edge_count() const;
  State add_state(bool is_accepting);
  void add_edge(State from, Cube guard, State to);

  /// Targets of all edges from `q` whose guard admits `letter`, sorted and
  /// without duplicates.
  std::vector<State> successors(State q, Letter letter) const;
};

/// Translation by tableau expansion of the negation normal form into a
/// generalized Büchi automaton, then degeneralization with a round-robin
/// counter. States that are unreachable or cannot reach an accepting cycle
/// are removed and states with identical rows merged. The alphabet is the
/// sorted atom set of `f`.
BuchiAutomaton ltl_to_buchi(const spec::Formula& f);

/// Same, over an explicit alphabet that must contain every atom of `f`.
/// Throws std::invalid_argument otherwise.
BuchiAutomaton ltl_to_buchi(const spec::Formula& f, const std::vector<std::string>& alphabet);

/// ltl_to_buchi(!f), named for the safety-game pipeline.
BuchiAutomaton negate_and_translate(const spec::Formula& f);
BuchiAutomaton negate_and_translate(const spec::Formula& f, const std::vector<std::string>& alphabet);

/// Automaton for the union of the languages: a fresh non-accepting initial
/// state takes over the initial edges of every part. The alphabet is the
/// sorted union of the parts' alphabets.
BuchiAutomaton disjoint_union(const std::vector<BuchiAutomaton>& parts);

/// Ultimately periodic word prefix . loop^omega over `atoms`.
struct LassoWord {
  std::vector<std::string> atoms;
  std::vector<Letter> prefix;
  std::vector<Letter> loop;

  std::size_t length() const { return prefix.size() + loop.size(); }
  /// Letter at position i < length().
  Letter at(std::size_t i) const { return i < prefix.size() ? prefix[i] : loop[i - prefix.size()]; }
  /// Position following i in the folded word.
  std::size_t succ(std::size_t i) const { return i + 1 < length() ? i + 1 : prefix.size(); }
};

/// Nonemptiness of the product of the automaton with the lasso: some
/// reachable product cycle passes through an accepting state. Throws
/// std::invalid_argument if the loop is empty or an automaton atom is
/// missing from the word's atoms.
bool accepts_lasso(const BuchiAutomaton& a, const LassoWord& w);

/// Direct LTL semantics on the lasso, by least/greatest fixpoints over the
/// folded positions. Atoms missing from the word read as false.
bool evaluate_ltl_on_lasso(const spec::Formula& f, const LassoWord& w);

/// Graphviz rendering.
std::string to_dot(const BuchiAutomaton& a, const std::string& name = "buchi");
/// Plain listing: one "state" line per state, one "edge" line per edge.
std::string to_text(const BuchiAutomaton& a);

/// "a & !b", or "true" for the empty cube.
std::string format_cube(const Cube& c, const std::vector<std::string>& atoms);

}  // namespace nltl::automata
