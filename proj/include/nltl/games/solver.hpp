#pragma once

#include "nltl/games/arena.hpp"

#include <cstddef>
#include <vector>

namespace nltl::games {

inline constexpr std::size_t kNoChoice = static_cast<std::size_t>(-1);

/// Winning regions, progress measures and positional strategies.
///
/// For env-won nodes, `level` is the round of the outer fixpoint in which the
/// node was decided and `rank` its attractor distance within that round
/// (rank 0 marks the trap part of a Büchi round, or the unsafe nodes of a
/// safety game). For ctrl-won nodes of a Büchi game, `rank` is the distance to
/// the accepting set. `choice[v]` indexes the move of the owner of v in the
/// owner's winning region, or is kNoChoice elsewhere and at dead ends.
struct Solution {
  std::vector<bool> ctrl_wins;
  std::vector<std::size_t> level;
  std::vector<std::size_t> rank;
  std::vector<std::size_t> choice;
  std::size_t rounds = 0;

  bool ctrl_wins_initial(const GameArena& g) const { return ctrl_wins[g.initial]; }
};

/// Attractor of `target` for `player`, restricted to nodes in `domain`
/// (moves leaving the domain are ignored). Nodes of the other player with no
/// move inside the domain are attracted at distance 1. Returns the distance
/// per node, kNoChoice for nodes outside the attractor.
std::vector<std::size_t> attractor(const GameArena& g, Player player, const std::vector<bool>& domain,
                                   const std::vector<bool>& target);

/// Recurrence-set iteration: repeatedly removes the env attractor of the
/// nodes from which the controller cannot force a visit to the accepting set.
Solution solve_buchi(const GameArena& g);

/// The environment wins exactly its attractor of the unsafe set.
Solution solve_safety(const GameArena& g);

/// Dispatches on the arena objective.
Solution solve(const GameArena& g);

/// Whether the env move from `from` to ctrl node `to` keeps the environment's
/// progress measure: it stays in the env region and lowers the level, or keeps
/// the level and lowers the rank, or stays inside a Büchi trap (rank 0).
bool is_env_progress(const GameArena& g, const Solution& s, Node from, Node to);

}  // namespace nltl::games
