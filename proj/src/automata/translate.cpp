#include "nltl/automata/buchi.hpp"

#include "nnf.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

namespace nltl::automata {

using detail::NnfTable;
using detail::NOp;

std::size_t BuchiAutomaton::edge_count() const {
  std::size_t n = 0;
  for (const auto& row : edges) n += row.size();
  return n;
}

State BuchiAutomaton::add_state(bool is_accepting) {
  accepting.push_back(is_accepting);
  edges.emplace_back();
  return accepting.size() - 1;
}

void BuchiAutomaton::add_edge(State from, Cube guard, State to) {
  if (from >= size() || to >= size()) throw std::out_of_range("add_edge: state out of range");
  edges[from].push_back({guard, to});
}

std::vector<State> BuchiAutomaton::successors(State q, Letter letter) const {
  std::vector<State> out;
  for (const auto& e : edges[q])
    if (e.guard.admits(letter)) out.push_back(e.to);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

constexpr std::size_t kInit = 0;

struct TableauNode {
  std::set<std::size_t> incoming;
  std::set<int> pending;
  std::set<int> old;
  std::set<int> next;
};

struct Tableau {
  // nodes[0] is the virtual initial node; its sets are unused.
  std::vector<TableauNode> nodes;
};

void add_pending(TableauNode& n, int f) {
  if (!n.old.count(f)) n.pending.insert(f);
}

Tableau expand(NnfTable& table, int root) {
  Tableau t;
  t.nodes.emplace_back();
  std::map<std::pair<std::set<int>, std::set<int>>, std::size_t> seen;

  std::vector<TableauNode> work;
  TableauNode start;
  start.incoming = {kInit};
  start.pending = {root};
  work.push_back(std::move(start));

  while (!work.empty()) {
    TableauNode n = std::move(work.back());
    work.pop_back();

    if (n.pending.empty()) {
      auto key = std::make_pair(n.old, n.next);
      if (auto it = seen.find(key); it != seen.end()) {
        t.nodes[it->second].incoming.insert(n.incoming.begin(), n.incoming.end());
        continue;
      }
      std::size_t id = t.nodes.size();
      seen.emplace(std::move(key), id);
      TableauNode succ;
      succ.incoming = {id};
      succ.pending = n.next;
      t.nodes.push_back(std::move(n));
      work.push_back(std::move(succ));
      continue;
    }

    int eta = *n.pending.begin();
    n.pending.erase(n.pending.begin());
    if (n.old.count(eta)) {
      work.push_back(std::move(n));
      continue;
    }
    const auto node = table[eta];
    switch (node.op) {
      case NOp::False: break;  // contradiction, drop the node
      case NOp::True:
        n.old.insert(eta);
        work.push_back(std::move(n));
        break;
      case NOp::Lit:
        if (n.old.count(table.lit(node.atom, !node.positive))) break;
        n.old.insert(eta);
        work.push_back(std::move(n));
        break;
      case NOp::And:
        n.old.insert(eta);
        add_pending(n, node.lhs);
        add_pending(n, node.rhs);
        work.push_back(std::move(n));
        break;
      case NOp::Next:
        n.old.insert(eta);
        n.next.insert(node.lhs);
        work.push_back(std::move(n));
        break;
      case NOp::Or:
      case NOp::Until:
      case NOp::Release: {
        TableauNode a = n, b = std::move(n);
        a.old.insert(eta);
        b.old.insert(eta);
        if (node.op == NOp::Or) {
          add_pending(a, node.lhs);
          add_pending(b, node.rhs);
        } else if (node.op == NOp::Until) {
          add_pending(a, node.lhs);
          a.next.insert(eta);
          add_pending(b, node.rhs);
        } else {
          add_pending(a, node.rhs);
          a.next.insert(eta);
          add_pending(b, node.lhs);
          add_pending(b, node.rhs);
        }
        // b is pushed last so it is expanded first; either order is correct.
        work.push_back(std::move(a));
        work.push_back(std::move(b));
        break;
      }
    }
  }
  return t;
}

Cube guard_of(const NnfTable& table, const std::set<int>& old) {
  Cube c;
  for (int f : old) {
    const auto& n = table[f];
    if (n.op != NOp::Lit) continue;
    Letter bit = Letter{1} << n.atom;
    c.care |= bit;
    if (n.positive) c.value |= bit;
  }
  return c;
}

// Tarjan's algorithm; returns the SCC index of every state.
std::vector<std::size_t> scc_ids(const BuchiAutomaton& a, std::size_t& count) {
  const std::size_t n = a.size();
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, kUnset), low(n, 0), comp(n, kUnset);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::size_t next_index = 0;
  count = 0;

  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    index[v] = low[v] = next_index++;
    stack.push_back(v);
    on_stack[v] = true;
    for (const auto& e : a.edges[v]) {
      if (index[e.to] == kUnset) {
        visit(e.to);
        low[v] = std::min(low[v], low[e.to]);
      } else if (on_stack[e.to]) {
        low[v] = std::min(low[v], index[e.to]);
      }
    }
    if (low[v] == index[v]) {
      std::size_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp[w] = count;
      } while (w != v);
      ++count;
    }
  };
  for (std::size_t v = 0; v < n; ++v)
    if (index[v] == kUnset) visit(v);
  return comp;
}

// Keeps the states listed in `keep` (initial must be among them), renumbered
// in increasing order.
BuchiAutomaton restrict_to(const BuchiAutomaton& a, const std::vector<bool>& keep) {
  std::vector<State> map(a.size(), 0);
  BuchiAutomaton out;
  out.alphabet = a.alphabet;
  for (State q = 0; q < a.size(); ++q)
    if (keep[q]) map[q] = out.add_state(a.accepting[q]);
  for (State q = 0; q < a.size(); ++q) {
    if (!keep[q]) continue;
    for (const auto& e : a.edges[q])
      if (keep[e.to]) out.edges[map[q]].push_back({e.guard, map[e.to]});
  }
  out.initial = map[a.initial];
  return out;
}

BuchiAutomaton trim(const BuchiAutomaton& a) {
  const std::size_t n = a.size();
  std::vector<bool> reach(n, false);
  std::vector<State> stack{a.initial};
  reach[a.initial] = true;
  while (!stack.empty()) {
    State q = stack.back();
    stack.pop_back();
    for (const auto& e : a.edges[q])
      if (!reach[e.to]) {
        reach[e.to] = true;
        stack.push_back(e.to);
      }
  }

  std::size_t count = 0;
  auto comp = scc_ids(a, count);
  std::vector<std::size_t> comp_size(count, 0);
  for (State q = 0; q < n; ++q) ++comp_size[comp[q]];
  std::vector<bool> productive(n, false);
  std::vector<std::vector<State>> preds(n);
  for (State q = 0; q < n; ++q)
    for (const auto& e : a.edges[q]) preds[e.to].push_back(q);
  for (State q = 0; q < n; ++q) {
    if (!a.accepting[q]) continue;
    bool cyclic = comp_size[comp[q]] > 1;
    for (const auto& e : a.edges[q]) cyclic = cyclic || e.to == q;
    if (cyclic && !productive[q]) {
      productive[q] = true;
      stack.push_back(q);
    }
  }
  while (!stack.empty()) {
    State q = stack.back();
    stack.pop_back();
    for (State p : preds[q])
      if (!productive[p]) {
        productive[p] = true;
        stack.push_back(p);
      }
  }

  std::vector<bool> keep(n);
  for (State q = 0; q < n; ++q) keep[q] = reach[q] && productive[q];
  keep[a.initial] = true;
  return restrict_to(a, keep);
}

void normalize_rows(BuchiAutomaton& a) {
  for (auto& row : a.edges) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }
}

BuchiAutomaton merge_identical_rows(BuchiAutomaton a) {
  for (;;) {
    normalize_rows(a);
    std::map<std::pair<bool, std::vector<Edge>>, State> rep;
    std::vector<State> target(a.size());
    bool merged = false;
    for (State q = 0; q < a.size(); ++q) {
      auto [it, fresh] = rep.try_emplace({a.accepting[q], a.edges[q]}, q);
      target[q] = it->second;
      merged = merged || !fresh;
    }
    if (!merged) return a;
    std::vector<bool> keep(a.size());
    for (State q = 0; q < a.size(); ++q) {
      keep[q] = target[q] == q;
      for (auto& e : a.edges[q]) e.to = target[e.to];
    }
    a.initial = target[a.initial];
    a = restrict_to(a, keep);
  }
}

BuchiAutomaton translate(const spec::Formula& f, const std::vector<std::string>& alphabet, bool negate) {
  if (alphabet.size() > kMaxAtoms) throw std::invalid_argument("alphabet too large");
  NnfTable table(alphabet);
  int root = table.build(f, negate);
  Tableau t = expand(table, root);

  // Acceptance sets: one per Until in the closure.
  std::set<int> untils;
  for (std::size_t i = 1; i < t.nodes.size(); ++i)
    for (int g : t.nodes[i].old)
      if (table[g].op == NOp::Until) untils.insert(g);
  std::vector<int> us(untils.begin(), untils.end());
  const std::size_t k = us.size();
  auto in_set = [&](std::size_t node, std::size_t i) {
    if (node == kInit) return false;
    const auto& old = t.nodes[node].old;
    return !old.count(us[i]) || old.count(table[us[i]].rhs);
  };

  // Predecessor lists become forward edges: entering node r reads r's guard.
  std::vector<std::vector<std::size_t>> succ(t.nodes.size());
  std::vector<Cube> guard(t.nodes.size());
  for (std::size_t r = 1; r < t.nodes.size(); ++r) {
    guard[r] = guard_of(table, t.nodes[r].old);
    for (std::size_t p : t.nodes[r].incoming) succ[p].push_back(r);
  }

  BuchiAutomaton a;
  a.alphabet = alphabet;
  const std::size_t levels = std::max<std::size_t>(k, 1);
  std::map<std::pair<std::size_t, std::size_t>, State> id;
  std::vector<std::pair<std::size_t, std::size_t>> todo;
  auto state_of = [&](std::size_t node, std::size_t level) {
    auto [it, fresh] = id.try_emplace({node, level}, a.size());
    if (fresh) {
      bool acc = node != kInit && (k == 0 || (level == 0 && in_set(node, 0)));
      a.add_state(acc);
      todo.emplace_back(node, level);
    }
    return it->second;
  };
  a.initial = state_of(kInit, 0);
  while (!todo.empty()) {
    auto [node, level] = todo.back();
    todo.pop_back();
    State from = id.at({node, level});
    std::size_t next_level = (k > 0 && in_set(node, level)) ? (level + 1) % levels : level;
    for (std::size_t r : succ[node]) {
      State to = state_of(r, next_level);
      a.edges[from].push_back({guard[r], to});
    }
  }
  return merge_identical_rows(trim(a));
}

std::vector<std::string> sorted_atoms(const spec::Formula& f) {
  auto s = spec::atoms(f);
  return {s.begin(), s.end()};
}

void check_alphabet(const spec::Formula& f, const std::vector<std::string>& alphabet) {
  for (const auto& atom : spec::atoms(f))
    if (std::find(alphabet.begin(), alphabet.end(), atom) == alphabet.end())
      throw std::invalid_argument("atom '" + atom + "' is not in the alphabet");
}

}  // namespace

BuchiAutomaton ltl_to_buchi(const spec::Formula& f) { return translate(f, sorted_atoms(f), false); }

BuchiAutomaton ltl_to_buchi(const spec::Formula& f, const std::vector<std::string>& alphabet) {
  check_alphabet(f, alphabet);
  return translate(f, alphabet, false);
}

BuchiAutomaton negate_and_translate(const spec::Formula& f) { return translate(f, sorted_atoms(f), true); }

BuchiAutomaton negate_and_translate(const spec::Formula& f, const std::vector<std::string>& alphabet) {
  check_alphabet(f, alphabet);
  return translate(f, alphabet, true);
}

BuchiAutomaton disjoint_union(const std::vector<BuchiAutomaton>& parts) {
  std::set<std::string> atoms;
  for (const auto& p : parts) atoms.insert(p.alphabet.begin(), p.alphabet.end());
  BuchiAutomaton out;
  out.alphabet.assign(atoms.begin(), atoms.end());
  out.initial = out.add_state(false);
  for (const auto& p : parts) {
    std::vector<std::size_t> bit(p.alphabet.size());
    for (std::size_t i = 0; i < bit.size(); ++i)
      bit[i] = std::lower_bound(out.alphabet.begin(), out.alphabet.end(), p.alphabet[i]) - out.alphabet.begin();
    auto remap = [&](Letter l) {
      Letter r = 0;
      for (std::size_t i = 0; i < bit.size(); ++i)
        if ((l >> i) & 1U) r |= Letter{1} << bit[i];
      return r;
    };
    const State offset = out.size();
    for (State q = 0; q < p.size(); ++q) out.add_state(p.accepting[q]);
    for (State q = 0; q < p.size(); ++q)
      for (const auto& e : p.edges[q]) {
        Cube g{remap(e.guard.care), remap(e.guard.value)};
        out.add_edge(offset + q, g, offset + e.to);
        if (q == p.initial) out.add_edge(out.initial, g, offset + e.to);
      }
  }
  return out;
}

}  // namespace nltl::automata
