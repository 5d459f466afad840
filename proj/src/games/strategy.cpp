#include "nltl/games/strategy.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace nltl::games {

const MealyStep* MealyController::step(std::size_t state, Letter input) const {
  const auto& row = table.at(state);
  auto it = row.find(input);
  return it == row.end() ? nullptr : &it->second;
}

std::vector<Letter> MealyController::reachable_outputs() const {
  std::set<Letter> out;
  std::vector<bool> seen(size(), false);
  std::vector<std::size_t> stack{initial};
  seen[initial] = true;
  while (!stack.empty()) {
    auto q = stack.back();
    stack.pop_back();
    for (const auto& [input, st] : table[q]) {
      out.insert(st.output);
      if (!seen[st.next]) {
        seen[st.next] = true;
        stack.push_back(st.next);
      }
    }
  }
  return {out.begin(), out.end()};
}

MealyController extract_controller(const GameArena& g, const Solution& s) {
  if (!s.ctrl_wins[g.initial]) throw std::invalid_argument("initial node is not winning for the controller");
  MealyController m;
  m.inputs = g.inputs;
  m.outputs = g.outputs;

  std::unordered_map<Node, std::size_t> state_of;
  std::deque<Node> work;
  auto state = [&](Node v) {
    auto [it, fresh] = state_of.emplace(v, m.table.size());
    if (fresh) {
      m.table.emplace_back();
      m.labels.push_back(g.labels[v]);
      work.push_back(v);
    }
    return it->second;
  };
  m.initial = state(g.initial);
  while (!work.empty()) {
    Node v = work.front();
    work.pop_front();
    const std::size_t q = state_of.at(v);
    for (const auto& mv : g.env_moves[v]) {
      if (!mv.present || m.table[q].count(mv.input)) continue;
      const Node c = mv.to;
      if (!s.ctrl_wins[c] || s.choice[c] == kNoChoice)
        throw std::logic_error("controller strategy leaves its winning region");
      const CtrlMove& answer = g.ctrl_moves[c][s.choice[c]];
      std::size_t next = state(answer.to);
      m.table[q][mv.input] = {answer.output, next};
    }
  }
  return m;
}

CounterStrategy extract_counter_strategy(const GameArena& g, const Solution& s) {
  if (s.ctrl_wins[g.initial]) throw std::invalid_argument("initial node is not winning for the environment");
  CounterStrategy cs;
  cs.inputs = g.inputs;
  cs.outputs = g.outputs;

  std::unordered_map<Node, std::size_t> state_of;
  std::deque<Node> work;
  auto state = [&](Node v) {
    auto [it, fresh] = state_of.emplace(v, cs.states.size());
    if (fresh) {
      CounterState st;
      st.node = v;
      st.label = g.labels[v];
      st.won = g.objective == Objective::Safety && g.target[v];
      cs.states.push_back(std::move(st));
      work.push_back(v);
    }
    return it->second;
  };
  cs.initial = state(g.initial);
  while (!work.empty()) {
    Node v = work.front();
    work.pop_front();
    const std::size_t q = state_of.at(v);
    if (cs.states[q].won) continue;
    std::vector<CounterCandidate> candidates;
    for (const auto& mv : g.env_moves[v]) {
      if (!mv.present || !is_env_progress(g, s, v, mv.to)) continue;
      CounterCandidate cand;
      cand.input = mv.input;
      // An unsafe ctrl node ends the play just like a controller dead end.
      if (!(g.objective == Objective::Safety && g.target[mv.to]))
        for (const auto& answer : g.ctrl_moves[mv.to]) cand.responses.push_back({answer.output, state(answer.to)});
      candidates.push_back(std::move(cand));
    }
    if (candidates.empty()) throw std::logic_error("environment strategy has no progress move");
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const auto& a, const auto& b) { return a.input < b.input; });
    cs.states[q].candidates = std::move(candidates);
  }
  return cs;
}

namespace {

// Keeps the candidates accepted by `keep`, drops states that become
// unreachable, and renumbers.
template <class Keep>
CounterStrategy restrict(const CounterStrategy& cs, Keep keep) {
  std::vector<std::size_t> index(cs.size(), kNoChoice);
  std::vector<std::size_t> order;
  std::deque<std::size_t> work{cs.initial};
  index[cs.initial] = 0;
  order.push_back(cs.initial);
  while (!work.empty()) {
    auto q = work.front();
    work.pop_front();
    for (const auto& cand : cs.states[q].candidates) {
      if (!keep(cand.input)) continue;
      for (const auto& r : cand.responses)
        if (index[r.next] == kNoChoice) {
          index[r.next] = order.size();
          order.push_back(r.next);
          work.push_back(r.next);
        }
    }
  }
  CounterStrategy out;
  out.inputs = cs.inputs;
  out.outputs = cs.outputs;
  out.initial = 0;
  for (auto q : order) {
    CounterState st = cs.states[q];
    st.candidates.clear();
    for (const auto& cand : cs.states[q].candidates) {
      if (!keep(cand.input)) continue;
      CounterCandidate c = cand;
      for (auto& r : c.responses) r.next = index[r.next];
      st.candidates.push_back(std::move(c));
    }
    out.states.push_back(std::move(st));
  }
  return out;
}

}  // namespace

CounterSelection select_counter_inputs(const CounterStrategy& cs, Letter predicate_mask,
                                       const std::function<TheoryStatus(Letter)>& status) {
  std::map<Letter, TheoryStatus> known;
  auto status_of = [&](Letter projection) {
    auto it = known.find(projection);
    if (it == known.end()) it = known.emplace(projection, status(projection)).first;
    return it->second;
  };

  std::vector<std::size_t> uncovered;
  for (std::size_t q = 0; q < cs.size(); ++q) {
    const auto& st = cs.states[q];
    if (st.won) continue;
    bool covered = std::any_of(st.candidates.begin(), st.candidates.end(), [&](const auto& c) {
      return status_of(c.input & predicate_mask) == TheoryStatus::Feasible;
    });
    if (!covered) uncovered.push_back(q);
  }

  std::set<Letter> chosen;
  while (!uncovered.empty()) {
    std::map<Letter, std::size_t> cover;
    for (auto q : uncovered) {
      std::set<Letter> offered;
      for (const auto& c : cs.states[q].candidates) {
        Letter p = c.input & predicate_mask;
        if (status_of(p) == TheoryStatus::Unchecked) offered.insert(p);
      }
      for (Letter p : offered) ++cover[p];
    }
    if (cover.empty()) throw std::logic_error("counter-strategy state offers only infeasible inputs");
    // std::map iterates in ascending order, so the first maximum is the smallest letter.
    auto best = std::max_element(cover.begin(), cover.end(),
                                 [](const auto& a, const auto& b) { return a.second < b.second; });
    const Letter pick = best->first;
    chosen.insert(pick);
    std::erase_if(uncovered, [&](std::size_t q) {
      const auto& cands = cs.states[q].candidates;
      return std::any_of(cands.begin(), cands.end(), [&](const auto& c) { return (c.input & predicate_mask) == pick; });
    });
  }

  CounterSelection sel;
  sel.unproven.assign(chosen.begin(), chosen.end());
  sel.restricted = restrict(cs, [&](Letter input) {
    Letter p = input & predicate_mask;
    return chosen.count(p) > 0 || status_of(p) == TheoryStatus::Feasible;
  });
  return sel;
}

}  // namespace nltl::games
