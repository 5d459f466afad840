#pragma once

#include "nltl/automata/buchi.hpp"
#include "nltl/valuation.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace nltl::games {

using Node = std::size_t;

enum class Player { Env, Ctrl };
enum class Objective { Buchi, Safety };

struct EnvMove {
  Letter input = 0;  // full valuation of the arena inputs
  Node to = 0;
  bool present = true;
};

struct CtrlMove {
  Letter output = 0;  // full valuation of the arena outputs
  Node to = 0;
};

/// Bipartite game graph. The environment moves first from env nodes by
/// choosing an input valuation; the controller answers from ctrl nodes with an
/// output valuation. A node without a present outgoing move loses for its
/// owner. `target` holds the accepting nodes of a Büchi objective or the
/// unsafe nodes of a safety objective.
struct GameArena {
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::vector<Player> owner;
  std::vector<std::vector<EnvMove>> env_moves;    // empty for ctrl nodes
  std::vector<std::vector<CtrlMove>> ctrl_moves;  // empty for env nodes
  std::vector<bool> target;
  std::vector<std::string> labels;
  Node initial = 0;
  Objective objective = Objective::Buchi;

  std::size_t size() const { return owner.size(); }
  std::size_t count(Player p) const;
  /// Present env moves plus ctrl moves.
  std::size_t edge_count() const;

  Node add_node(Player p, bool is_target = false, std::string label = {});
  void add_env_move(Node from, Letter input, Node to);
  void add_ctrl_move(Node from, Letter output, Node to);

  /// Targets of the present moves of `v`, in move order.
  std::vector<Node> successors(Node v) const;
};

/// Input letters the environment may play, indexed by letter. Empty means
/// every input valuation is allowed.
using InputFilter = std::vector<bool>;

struct BuildLimits {
  std::size_t max_nodes = std::size_t{1} << 21;
  std::size_t max_atoms = 20;  // |inputs| + |outputs|, enumerated explicitly
};

/// Algorithm 1 style arena. Env nodes are the automaton states, with the
/// accepting states as Büchi targets. From state q the environment picks an
/// input i and reaches ctrl node (q, i); the controller then picks an output o
/// together with a successor of q on the letter i|o, which resolves the
/// automaton's nondeterminism. Only nodes reachable from the initial state are
/// built. The automaton alphabet must be a subset of inputs ∪ outputs.
/// Throws std::invalid_argument on alphabet mismatch and std::length_error
/// past the limits.
GameArena build_buchi_game(const automata::BuchiAutomaton& aut, const std::vector<std::string>& inputs,
                           const std::vector<std::string>& outputs, const InputFilter& allowed = {},
                           const BuildLimits& limits = {});

/// Bounded unroll of the universal co-Büchi reading of `neg`, the automaton of
/// the negated specification. An env node maps every state of `neg` to the
/// largest number of accepting visits over runs reaching it (or marks it
/// unreached), saturating at k + 1. Nodes where some count exceeds k are
/// unsafe and have no moves. Requires k >= 1.
GameArena build_safety_game(const automata::BuchiAutomaton& neg, std::size_t k,
                            const std::vector<std::string>& inputs, const std::vector<std::string>& outputs,
                            const InputFilter& allowed = {}, const BuildLimits& limits = {});

/// Marks absent every present env move whose input the cube admits. Returns
/// the number of moves changed. The cube is over the arena inputs.
std::size_t mark_edges_absent(GameArena& g, const Cube& inputs);

/// Graphviz rendering; env nodes are boxes, ctrl nodes ellipses, absent moves dashed.
std::string to_dot(const GameArena& g, const std::string& name = "arena");

}  // namespace nltl::games
