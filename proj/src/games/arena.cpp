#include "nltl/games/arena.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace nltl::games {

using automata::BuchiAutomaton;
using automata::State;

std::size_t GameArena::count(Player p) const { return static_cast<std::size_t>(std::count(owner.begin(), owner.end(), p)); }

std::size_t GameArena::edge_count() const {
  std::size_t n = 0;
  for (const auto& moves : env_moves)
    for (const auto& m : moves) n += m.present;
  for (const auto& moves : ctrl_moves) n += moves.size();
  return n;
}

Node GameArena::add_node(Player p, bool is_target, std::string label) {
  owner.push_back(p);
  target.push_back(is_target);
  labels.push_back(std::move(label));
  env_moves.emplace_back();
  ctrl_moves.emplace_back();
  return owner.size() - 1;
}

void GameArena::add_env_move(Node from, Letter input, Node to) {
  if (owner.at(from) != Player::Env || owner.at(to) != Player::Ctrl)
    throw std::invalid_argument("env moves go from env to ctrl nodes");
  env_moves[from].push_back({input, to, true});
}

void GameArena::add_ctrl_move(Node from, Letter output, Node to) {
  if (owner.at(from) != Player::Ctrl || owner.at(to) != Player::Env)
    throw std::invalid_argument("ctrl moves go from ctrl to env nodes");
  ctrl_moves[from].push_back({output, to});
}

std::vector<Node> GameArena::successors(Node v) const {
  std::vector<Node> out;
  if (owner[v] == Player::Env) {
    for (const auto& m : env_moves[v])
      if (m.present) out.push_back(m.to);
  } else {
    for (const auto& m : ctrl_moves[v]) out.push_back(m.to);
  }
  return out;
}

namespace {

// Gathers the bits of a combined input|output letter into automaton order.
class LetterMap {
 public:
  LetterMap(const std::vector<std::string>& alphabet, const std::vector<std::string>& inputs,
            const std::vector<std::string>& outputs, const BuildLimits& limits)
      : shift_(inputs.size()) {
    if (inputs.size() + outputs.size() > limits.max_atoms)
      throw std::length_error("too many atoms for explicit game construction");
    std::vector<std::string> combined = inputs;
    combined.insert(combined.end(), outputs.begin(), outputs.end());
    for (const auto& atom : alphabet) {
      auto it = std::find(combined.begin(), combined.end(), atom);
      if (it == combined.end()) throw std::invalid_argument("automaton atom '" + atom + "' is neither input nor output");
      source_.push_back(static_cast<std::size_t>(it - combined.begin()));
    }
  }

  Letter operator()(Letter input, Letter output) const {
    Letter full = input | (output << shift_);
    Letter out = 0;
    for (std::size_t j = 0; j < source_.size(); ++j)
      if ((full >> source_[j]) & 1U) out |= Letter{1} << j;
    return out;
  }

 private:
  std::size_t shift_;
  std::vector<std::size_t> source_;
};

bool input_allowed(const InputFilter& allowed, Letter i) { return allowed.empty() || allowed[i]; }

void check_filter(const InputFilter& allowed, std::size_t inputs) {
  if (!allowed.empty() && allowed.size() != (std::size_t{1} << inputs))
    throw std::invalid_argument("input filter size does not match the input alphabet");
}

void check_size(const GameArena& g, const BuildLimits& limits) {
  if (g.size() > limits.max_nodes) throw std::length_error("game arena exceeds the node limit");
}

}  // namespace

GameArena build_buchi_game(const BuchiAutomaton& aut, const std::vector<std::string>& inputs,
                           const std::vector<std::string>& outputs, const InputFilter& allowed,
                           const BuildLimits& limits) {
  LetterMap letter(aut.alphabet, inputs, outputs, limits);
  check_filter(allowed, inputs.size());
  const Letter n_in = Letter{1} << inputs.size();
  const Letter n_out = Letter{1} << outputs.size();

  GameArena g;
  g.inputs = inputs;
  g.outputs = outputs;
  g.objective = Objective::Buchi;

  std::vector<Node> env_of(aut.size(), SIZE_MAX);
  std::deque<State> work;
  auto env_node = [&](State q) {
    if (env_of[q] == SIZE_MAX) {
      env_of[q] = g.add_node(Player::Env, aut.accepting[q], "q" + std::to_string(q));
      work.push_back(q);
    }
    return env_of[q];
  };
  g.initial = env_node(aut.initial);

  while (!work.empty()) {
    State q = work.front();
    work.pop_front();
    const Node v = env_of[q];
    for (Letter i = 0; i < n_in; ++i) {
      if (!input_allowed(allowed, i)) continue;
      Node c = g.add_node(Player::Ctrl, false, g.labels[v] + "/" + to_bits(i, inputs.size()));
      g.add_env_move(v, i, c);
      for (Letter o = 0; o < n_out; ++o)
        for (State r : aut.successors(q, letter(i, o))) g.add_ctrl_move(c, o, env_node(r));
    }
    check_size(g, limits);
  }
  return g;
}

namespace {

constexpr signed char kUnreached = -1;

signed char count_at(const std::string& counts, std::size_t q) { return static_cast<signed char>(counts[q]); }

std::string format_counts(const std::string& counts) {
  std::string out = "[";
  for (std::size_t q = 0; q < counts.size(); ++q) {
    if (q) out += ',';
    out += count_at(counts, q) == kUnreached ? std::string("-") : std::to_string(count_at(counts, q));
  }
  return out + "]";
}

}  // namespace

GameArena build_safety_game(const BuchiAutomaton& neg, std::size_t k, const std::vector<std::string>& inputs,
                            const std::vector<std::string>& outputs, const InputFilter& allowed,
                            const BuildLimits& limits) {
  if (k < 1) throw std::invalid_argument("unroll bound must be at least 1");
  if (k > 100) throw std::invalid_argument("unroll bound too large");
  LetterMap letter(neg.alphabet, inputs, outputs, limits);
  check_filter(allowed, inputs.size());
  const Letter n_in = Letter{1} << inputs.size();
  const Letter n_out = Letter{1} << outputs.size();
  const int cap = static_cast<int>(k) + 1;

  GameArena g;
  g.inputs = inputs;
  g.outputs = outputs;
  g.objective = Objective::Safety;

  // Counting functions are stored as strings, one char per state of `neg`.
  std::unordered_map<std::string, Node> node_of;
  std::unordered_map<Node, const std::string*> counts_of;  // keys of node_of stay put
  std::deque<Node> work;
  auto env_node = [&](const std::string& counts) {
    auto [it, fresh] = node_of.emplace(counts, 0);
    if (fresh) {
      bool unsafe = std::any_of(counts.begin(), counts.end(), [&](char c) { return static_cast<signed char>(c) > static_cast<int>(k); });
      it->second = g.add_node(Player::Env, unsafe, format_counts(counts));
      counts_of.emplace(it->second, &it->first);
      if (!unsafe) work.push_back(it->second);
    }
    return it->second;
  };

  std::string start(neg.size(), static_cast<char>(kUnreached));
  start[neg.initial] = neg.accepting[neg.initial] ? 1 : 0;
  g.initial = env_node(start);

  std::string next(neg.size(), static_cast<char>(kUnreached));
  while (!work.empty()) {
    const Node v = work.front();
    work.pop_front();
    const std::string counts = *counts_of.at(v);
    for (Letter i = 0; i < n_in; ++i) {
      if (!input_allowed(allowed, i)) continue;
      Node c = g.add_node(Player::Ctrl, false, g.labels[v] + "/" + to_bits(i, inputs.size()));
      g.add_env_move(v, i, c);
      for (Letter o = 0; o < n_out; ++o) {
        const Letter l = letter(i, o);
        std::fill(next.begin(), next.end(), static_cast<char>(kUnreached));
        for (State q = 0; q < neg.size(); ++q) {
          if (count_at(counts, q) == kUnreached) continue;
          for (State r : neg.successors(q, l)) {
            int value = std::min<int>(cap, count_at(counts, q) + (neg.accepting[r] ? 1 : 0));
            if (value > count_at(next, r)) next[r] = static_cast<char>(value);
          }
        }
        g.add_ctrl_move(c, o, env_node(next));
      }
      check_size(g, limits);
    }
  }
  return g;
}

std::size_t mark_edges_absent(GameArena& g, const Cube& inputs) {
  std::size_t changed = 0;
  for (auto& moves : g.env_moves)
    for (auto& m : moves)
      if (m.present && inputs.admits(m.input)) {
        m.present = false;
        ++changed;
      }
  return changed;
}

std::string to_dot(const GameArena& g, const std::string& name) {
  std::ostringstream os;
  os << "digraph " << name << " {\n  init [shape=point];\n";
  for (Node v = 0; v < g.size(); ++v) {
    os << "  n" << v << " [shape=" << (g.owner[v] == Player::Env ? "box" : "ellipse");
    if (g.target[v]) os << ", peripheries=2";
    os << ", label=\"" << g.labels[v] << "\"];\n";
  }
  os << "  init -> n" << g.initial << ";\n";
  for (Node v = 0; v < g.size(); ++v) {
    for (const auto& m : g.env_moves[v]) {
      os << "  n" << v << " -> n" << m.to << " [label=\"" << to_bits(m.input, g.inputs.size()) << "\"";
      if (!m.present) os << ", style=dashed";
      os << "];\n";
    }
    for (const auto& m : g.ctrl_moves[v])
      os << "  n" << v << " -> n" << m.to << " [label=\"" << to_bits(m.output, g.outputs.size()) << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace nltl::games
