#include "nltl/automata/buchi.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace nltl::automata {

using spec::Formula;
using spec::Op;

namespace {

void check_word(const LassoWord& w) {
  if (w.loop.empty()) throw std::invalid_argument("lasso loop must be nonempty");
}

}  // namespace

bool accepts_lasso(const BuchiAutomaton& a, const LassoWord& w) {
  check_word(w);
  for (const auto& atom : a.alphabet)
    if (std::find(w.atoms.begin(), w.atoms.end(), atom) == w.atoms.end())
      throw std::invalid_argument("lasso word does not assign automaton atom '" + atom + "'");

  const std::size_t len = w.length();
  std::vector<Letter> letters(len);
  for (std::size_t i = 0; i < len; ++i) letters[i] = project(w.at(i), w.atoms, a.alphabet);

  // Product node (q, i): in state q about to read position i.
  const std::size_t n = a.size() * len;
  auto node = [&](State q, std::size_t i) { return q * len + i; };
  std::vector<std::vector<std::size_t>> succ(n);
  for (State q = 0; q < a.size(); ++q)
    for (std::size_t i = 0; i < len; ++i)
      for (State r : a.successors(q, letters[i])) succ[node(q, i)].push_back(node(r, w.succ(i)));

  std::vector<bool> reach(n, false);
  std::vector<std::size_t> stack{node(a.initial, 0)};
  reach[stack.front()] = true;
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    for (auto u : succ[v])
      if (!reach[u]) {
        reach[u] = true;
        stack.push_back(u);
      }
  }

  // An accepting reachable node that lies on a cycle.
  std::vector<bool> seen(n);
  for (std::size_t v = 0; v < n; ++v) {
    if (!reach[v] || !a.accepting[v / len]) continue;
    std::fill(seen.begin(), seen.end(), false);
    stack.assign(succ[v].begin(), succ[v].end());
    for (auto u : stack) seen[u] = true;
    while (!stack.empty()) {
      auto u = stack.back();
      stack.pop_back();
      if (u == v) return true;
      for (auto x : succ[u])
        if (!seen[x]) {
          seen[x] = true;
          stack.push_back(x);
        }
    }
  }
  return false;
}

namespace {

class LassoEvaluator {
 public:
  explicit LassoEvaluator(const LassoWord& w) : w_(w), len_(w.length()) {}

  // Truth value at every folded position.
  const std::vector<bool>& eval(const Formula& f) {
    if (auto it = memo_.find(f); it != memo_.end()) return it->second;
    std::vector<bool> v(len_);
    switch (f.op()) {
      case Op::True: v.assign(len_, true); break;
      case Op::False: v.assign(len_, false); break;
      case Op::Atom: {
        auto it = std::find(w_.atoms.begin(), w_.atoms.end(), f.name());
        if (it != w_.atoms.end()) {
          auto bit = static_cast<std::size_t>(it - w_.atoms.begin());
          for (std::size_t i = 0; i < len_; ++i) v[i] = (w_.at(i) >> bit) & 1U;
        }
        break;
      }
      case Op::Not: {
        const auto& a = eval(f.lhs());
        for (std::size_t i = 0; i < len_; ++i) v[i] = !a[i];
        break;
      }
      case Op::And:
      case Op::Or:
      case Op::Implies: {
        auto a = eval(f.lhs());
        const auto& b = eval(f.rhs());
        for (std::size_t i = 0; i < len_; ++i)
          v[i] = f.op() == Op::And ? a[i] && b[i] : f.op() == Op::Or ? a[i] || b[i] : !a[i] || b[i];
        break;
      }
      case Op::Next: {
        const auto& a = eval(f.lhs());
        for (std::size_t i = 0; i < len_; ++i) v[i] = a[w_.succ(i)];
        break;
      }
      case Op::Always: {
        // Greatest fixpoint of G[i] = a[i] && G[succ i].
        const auto& a = eval(f.lhs());
        v.assign(len_, true);
        fixpoint(v, [&](std::size_t i, const std::vector<bool>& cur) { return a[i] && cur[w_.succ(i)]; });
        break;
      }
      case Op::Eventually: {
        const auto& a = eval(f.lhs());
        v.assign(len_, false);
        fixpoint(v, [&](std::size_t i, const std::vector<bool>& cur) { return a[i] || cur[w_.succ(i)]; });
        break;
      }
      case Op::Until: {
        // Least fixpoint of U[i] = b[i] || (a[i] && U[succ i]).
        auto a = eval(f.lhs());
        const auto& b = eval(f.rhs());
        v.assign(len_, false);
        fixpoint(v, [&](std::size_t i, const std::vector<bool>& cur) { return b[i] || (a[i] && cur[w_.succ(i)]); });
        break;
      }
    }
    return memo_.emplace(f, std::move(v)).first->second;
  }

 private:
  template <class Step>
  void fixpoint(std::vector<bool>& v, Step step) {
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t i = len_; i-- > 0;) {
        bool nv = step(i, v);
        if (nv != v[i]) {
          v[i] = nv;
          changed = true;
        }
      }
    }
  }

  const LassoWord& w_;
  std::size_t len_;
  std::map<Formula, std::vector<bool>> memo_;
};

}  // namespace

bool evaluate_ltl_on_lasso(const Formula& f, const LassoWord& w) {
  check_word(w);
  LassoEvaluator ev(w);
  return ev.eval(f)[0];
}

}  // namespace nltl::automata
