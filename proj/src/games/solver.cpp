#include "nltl/games/solver.hpp"

#include <stdexcept>

namespace nltl::games {

namespace {

using Preds = std::vector<std::vector<Node>>;

Preds predecessors(const GameArena& g) {
  Preds preds(g.size());
  for (Node v = 0; v < g.size(); ++v)
    for (Node u : g.successors(v)) preds[u].push_back(v);
  return preds;
}

std::vector<std::size_t> attract(const GameArena& g, const Preds& preds, Player player,
                                 const std::vector<bool>& domain, const std::vector<bool>& target) {
  const std::size_t n = g.size();
  std::vector<std::size_t> dist(n, kNoChoice);
  std::vector<std::size_t> pending(n, 0);
  std::vector<Node> layer, next;
  for (Node v = 0; v < n; ++v) {
    if (!domain[v]) continue;
    if (target[v]) {
      dist[v] = 0;
      layer.push_back(v);
    } else if (g.owner[v] != player) {
      for (Node u : g.successors(v)) pending[v] += domain[u];
      if (pending[v] == 0) {
        dist[v] = 1;
        next.push_back(v);
      }
    }
  }
  for (std::size_t r = 0; !layer.empty() || !next.empty(); ++r) {
    for (Node v : layer)
      for (Node u : preds[v]) {
        if (!domain[u] || dist[u] != kNoChoice) continue;
        if (g.owner[u] == player || --pending[u] == 0) {
          dist[u] = r + 1;
          next.push_back(u);
        }
      }
    layer.swap(next);
    next.clear();
  }
  return dist;
}

// Smallest-letter move of `v` whose target satisfies `ok`.
template <class Ok>
std::size_t pick(const GameArena& g, Node v, Ok ok) {
  std::size_t best = kNoChoice;
  Letter best_letter = 0;
  if (g.owner[v] == Player::Env) {
    const auto& moves = g.env_moves[v];
    for (std::size_t j = 0; j < moves.size(); ++j)
      if (moves[j].present && ok(moves[j].to) && (best == kNoChoice || moves[j].input < best_letter)) {
        best = j;
        best_letter = moves[j].input;
      }
  } else {
    const auto& moves = g.ctrl_moves[v];
    for (std::size_t j = 0; j < moves.size(); ++j)
      if (ok(moves[j].to) && (best == kNoChoice || moves[j].output < best_letter)) {
        best = j;
        best_letter = moves[j].output;
      }
  }
  return best;
}

void pick_env_choices(const GameArena& g, Solution& s) {
  for (Node v = 0; v < g.size(); ++v)
    if (g.owner[v] == Player::Env && !s.ctrl_wins[v])
      s.choice[v] = pick(g, v, [&](Node u) { return is_env_progress(g, s, v, u); });
}

}  // namespace

std::vector<std::size_t> attractor(const GameArena& g, Player player, const std::vector<bool>& domain,
                                   const std::vector<bool>& target) {
  if (domain.size() != g.size() || target.size() != g.size()) throw std::invalid_argument("node set size mismatch");
  return attract(g, predecessors(g), player, domain, target);
}

Solution solve_buchi(const GameArena& g) {
  if (g.objective != Objective::Buchi) throw std::invalid_argument("solve_buchi needs a Büchi objective");
  const std::size_t n = g.size();
  const Preds preds = predecessors(g);
  const std::vector<bool> all(n, true);

  Solution s;
  s.ctrl_wins.assign(n, true);
  s.level.assign(n, 0);
  s.rank.assign(n, 0);
  s.choice.assign(n, kNoChoice);

  std::vector<bool> env_won(n, false), goal(n);
  std::vector<std::size_t> ctrl_rank;
  for (;; ++s.rounds) {
    for (Node v = 0; v < n; ++v) goal[v] = g.target[v] && s.ctrl_wins[v];
    ctrl_rank = attract(g, preds, Player::Ctrl, s.ctrl_wins, goal);
    for (Node v = 0; v < n; ++v) goal[v] = env_won[v] || (s.ctrl_wins[v] && ctrl_rank[v] == kNoChoice);
    auto env_rank = attract(g, preds, Player::Env, all, goal);
    bool grew = false;
    for (Node v = 0; v < n; ++v)
      if (env_rank[v] != kNoChoice && !env_won[v]) {
        env_won[v] = true;
        s.ctrl_wins[v] = false;
        s.level[v] = s.rounds;
        s.rank[v] = env_rank[v];
        grew = true;
      }
    if (!grew) break;
  }

  for (Node v = 0; v < n; ++v) {
    if (!s.ctrl_wins[v]) continue;
    s.rank[v] = ctrl_rank[v];
    if (g.owner[v] == Player::Ctrl)
      s.choice[v] = pick(g, v, [&](Node u) {
        return s.ctrl_wins[u] && (ctrl_rank[v] == 0 || ctrl_rank[u] < ctrl_rank[v]);
      });
  }
  pick_env_choices(g, s);
  return s;
}

Solution solve_safety(const GameArena& g) {
  if (g.objective != Objective::Safety) throw std::invalid_argument("solve_safety needs a safety objective");
  const std::size_t n = g.size();
  Solution s;
  s.level.assign(n, 0);
  s.rank = attractor(g, Player::Env, std::vector<bool>(n, true), g.target);
  s.ctrl_wins.assign(n, false);
  s.choice.assign(n, kNoChoice);
  for (Node v = 0; v < n; ++v) {
    s.ctrl_wins[v] = s.rank[v] == kNoChoice;
    if (s.ctrl_wins[v]) s.rank[v] = 0;
  }
  for (Node v = 0; v < n; ++v)
    if (s.ctrl_wins[v] && g.owner[v] == Player::Ctrl)
      s.choice[v] = pick(g, v, [&](Node u) { return s.ctrl_wins[u]; });
  pick_env_choices(g, s);
  s.rounds = 1;
  return s;
}

Solution solve(const GameArena& g) {
  return g.objective == Objective::Buchi ? solve_buchi(g) : solve_safety(g);
}

bool is_env_progress(const GameArena& g, const Solution& s, Node from, Node to) {
  if (s.ctrl_wins[from] || s.ctrl_wins[to]) return false;
  if (s.level[to] != s.level[from]) return s.level[to] < s.level[from];
  if (s.rank[to] < s.rank[from]) return true;
  return g.objective == Objective::Buchi && s.rank[from] == 0 && s.rank[to] == 0;
}

}  // namespace nltl::games
