#include "doctest.h"

#include "game_oracles.hpp"
#include "nltl/automata/buchi.hpp"
#include "nltl/games/strategy.hpp"
#include "nltl/speclang/parser.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <set>

using namespace nltl;
using namespace nltl::games;
using automata::BuchiAutomaton;
using spec::parse_formula;

namespace {

const std::vector<std::string> kReqs{"req1", "req2"};
const std::vector<std::string> kGrants{"grant1", "grant2"};
const char* kArbiter = "ALWAYS (req1 -> NEXT grant1) && ALWAYS (req2 -> NEXT grant2) && ALWAYS !(grant1 && grant2)";

// Env may not raise both requests at once.
InputFilter no_double_request() { return {true, true, true, false}; }

// Runs the controller against random inputs and checks G(req_i -> X grant_i)
// and mutual exclusion on the produced trace.
bool arbiter_trace_ok(const MealyController& m, std::mt19937_64& rng, int steps) {
  std::size_t q = m.initial;
  Letter pending = 0;
  for (int t = 0; t < steps; ++t) {
    std::vector<Letter> allowed;
    for (const auto& [input, st] : m.table[q]) allowed.push_back(input);
    if (allowed.empty()) return false;
    Letter in = allowed[std::uniform_int_distribution<std::size_t>(0, allowed.size() - 1)(rng)];
    const MealyStep* st = m.step(q, in);
    if ((st->output & pending) != pending || st->output == 0b11) return false;
    pending = in;
    q = st->next;
  }
  return true;
}

}  // namespace

TEST_CASE("Büchi and safety regions match the brute-force fixpoints on 200 random arenas") {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 200; ++i) {
    auto gb = testing::random_arena(rng, 50, Objective::Buchi);
    auto sb = solve_buchi(gb);
    CHECK(sb.ctrl_wins == testing::brute_force_buchi(gb));
    CHECK(testing::strategies_sound(gb, sb));

    auto gs = testing::random_arena(rng, 50, Objective::Safety);
    auto ss = solve_safety(gs);
    CHECK(ss.ctrl_wins == testing::brute_force_safety(gs));
    CHECK(testing::strategies_sound(gs, ss));
  }
}

TEST_CASE("attractor ranks are consistent and bounded by the node count") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    auto g = testing::random_arena(rng, 30, Objective::Safety);
    std::vector<bool> all(g.size(), true);
    auto rank = attractor(g, Player::Env, all, g.target);
    for (Node v = 0; v < g.size(); ++v) {
      if (rank[v] == kNoChoice || rank[v] == 0) continue;
      CHECK(rank[v] <= g.size());
      auto succ = g.successors(v);
      if (g.owner[v] == Player::Env) {
        CHECK(std::any_of(succ.begin(), succ.end(), [&](Node u) { return rank[u] < rank[v]; }));
      } else {
        CHECK(std::all_of(succ.begin(), succ.end(), [&](Node u) { return rank[u] < rank[v]; }));
      }
    }
  }
}

TEST_CASE("hand-built corner cases") {
  GameArena g;
  g.inputs = {"i"};
  g.objective = Objective::Buchi;
  Node e = g.add_node(Player::Env, true);
  Node c = g.add_node(Player::Ctrl);
  g.add_env_move(e, 0, c);
  g.add_ctrl_move(c, 0, e);
  auto s = solve_buchi(g);
  CHECK(s.ctrl_wins[e]);
  CHECK(s.ctrl_wins[c]);

  // Ctrl dead end loses for the controller; env dead end loses for the environment.
  GameArena h;
  h.objective = Objective::Buchi;
  Node e1 = h.add_node(Player::Env, true);
  Node c1 = h.add_node(Player::Ctrl, true);
  Node e2 = h.add_node(Player::Env);
  h.add_env_move(e1, 0, c1);
  auto sh = solve_buchi(h);
  CHECK_FALSE(sh.ctrl_wins[c1]);
  CHECK_FALSE(sh.ctrl_wins[e1]);
  CHECK(sh.ctrl_wins[e2]);

  GameArena safe;
  safe.objective = Objective::Safety;
  Node a = safe.add_node(Player::Env);
  Node b = safe.add_node(Player::Ctrl);
  safe.add_env_move(a, 1, b);
  safe.add_ctrl_move(b, 0, a);
  CHECK(solve_safety(safe).ctrl_wins_initial(safe));
  safe.target[a] = true;
  CHECK_FALSE(solve_safety(safe).ctrl_wins_initial(safe));
  CHECK_THROWS_AS(solve_buchi(safe), std::invalid_argument);
}

TEST_CASE("Büchi game arena for a two-state automaton") {
  // q0 --(!r)--> q0, q0 --(r)--> q1, q1 --(g)--> q0; q0 accepting.
  BuchiAutomaton a;
  a.alphabet = {"r", "g"};
  a.add_state(true);
  a.add_state(false);
  a.add_edge(0, {0b01, 0b00}, 0);
  a.add_edge(0, {0b01, 0b01}, 1);
  a.add_edge(1, {0b10, 0b10}, 0);
  auto g = build_buchi_game(a, {"r"}, {"g"});
  // 2 env nodes, 2 ctrl nodes each; q0 answers with any output (2 moves per
  // ctrl node), q1 needs g (1 move per ctrl node).
  CHECK(g.count(Player::Env) == 2);
  CHECK(g.count(Player::Ctrl) == 4);
  CHECK(g.edge_count() == 4 + 2 * 2 + 2 * 1);
  CHECK(g.target[g.initial]);
  auto s = solve_buchi(g);
  CHECK(s.ctrl_wins_initial(g));
  auto m = extract_controller(g, s);
  CHECK(m.size() == 2);
  // After r the controller must answer g in the next round.
  const MealyStep* first = m.step(m.initial, 1);
  REQUIRE(first != nullptr);
  CHECK(m.step(first->next, 0)->output == 1);
  CHECK(m.step(first->next, 1)->output == 1);

  CHECK_THROWS_AS(build_buchi_game(a, {"r"}, {}), std::invalid_argument);
}

TEST_CASE("Büchi game examples") {
  auto first = automata::ltl_to_buchi(parse_formula("ALWAYS (req1 -> NEXT grant1)"));
  auto g = build_buchi_game(first, {"req1"}, {"grant1"});
  auto s = solve_buchi(g);
  REQUIRE(s.ctrl_wins_initial(g));
  auto m = extract_controller(g, s);
  std::mt19937_64 rng(1);
  std::size_t q = m.initial;
  bool pending = false;
  for (int t = 0; t < 200; ++t) {
    Letter in = rng() & 1U;
    auto st = m.step(q, in);
    REQUIRE(st != nullptr);
    if (pending) CHECK(st->output == 1);
    pending = in;
    q = st->next;
  }

  auto never = automata::ltl_to_buchi(parse_formula("ALWAYS FALSE"));
  auto gf = build_buchi_game(never, {}, {"o"});
  auto sf = solve_buchi(gf);
  CHECK(std::none_of(sf.ctrl_wins.begin(), sf.ctrl_wins.end(), [](bool b) { return b; }));
  CHECK_THROWS_AS(extract_controller(gf, sf), std::invalid_argument);

  // The unrefined arbiter is lost through the double request.
  auto arb = automata::ltl_to_buchi(parse_formula(kArbiter));
  auto ga = build_buchi_game(arb, kReqs, kGrants);
  auto sa = solve_buchi(ga);
  REQUIRE_FALSE(sa.ctrl_wins_initial(ga));
  auto cs = extract_counter_strategy(ga, sa);
  const auto& init = cs.states[cs.initial].candidates;
  CHECK(std::any_of(init.begin(), init.end(), [](const auto& c) { return c.input == 0b11; }));
  CHECK_THROWS_AS(extract_counter_strategy(g, s), std::invalid_argument);

  // Removing the double request makes it winnable, by filter or by marking.
  auto gr = build_buchi_game(arb, kReqs, kGrants, no_double_request());
  auto sr = solve_buchi(gr);
  REQUIRE(sr.ctrl_wins_initial(gr));
  auto ctrl = extract_controller(gr, sr);
  CHECK(arbiter_trace_ok(ctrl, rng, 1000));

  CHECK(mark_edges_absent(ga, Cube{0b11, 0b11}) > 0);
  auto sm = solve_buchi(ga);
  CHECK(sm.ctrl_wins_initial(ga));
  CHECK(arbiter_trace_ok(extract_controller(ga, sm), rng, 1000));
}

TEST_CASE("bounded safety game examples") {
  auto f = parse_formula(kArbiter);
  auto neg = automata::negate_and_translate(f);
  auto g1 = build_safety_game(neg, 1, kReqs, kGrants);
  auto s1 = solve_safety(g1);
  REQUIRE_FALSE(s1.ctrl_wins_initial(g1));
  auto cs = extract_counter_strategy(g1, s1);
  const auto& init = cs.states[cs.initial].candidates;
  CHECK(std::any_of(init.begin(), init.end(), [](const auto& c) { return c.input == 0b11; }));

  bool won = false;
  for (std::size_t k : {1, 2, 3}) {
    auto g = build_safety_game(neg, k, kReqs, kGrants, no_double_request());
    auto s = solve_safety(g);
    if (!s.ctrl_wins_initial(g)) continue;
    won = true;
    std::mt19937_64 rng(k);
    CHECK(arbiter_trace_ok(extract_controller(g, s), rng, 1000));
    break;
  }
  CHECK(won);

  auto taut = parse_formula("ALWAYS a -> ALWAYS a");
  auto gt = build_safety_game(automata::negate_and_translate(taut), 1, {"a"}, {});
  CHECK(solve_safety(gt).ctrl_wins_initial(gt));

  CHECK_THROWS_AS(build_safety_game(neg, 0, kReqs, kGrants), std::invalid_argument);
}

TEST_CASE("marking edges matches rebuilding with a filter") {
  auto arb = automata::ltl_to_buchi(parse_formula(kArbiter));
  auto marked = build_buchi_game(arb, kReqs, kGrants);
  auto before = marked.edge_count();
  auto removed = mark_edges_absent(marked, Cube{0b11, 0b01});
  CHECK(removed > 0);
  CHECK(marked.edge_count() == before - removed);

  auto g = build_buchi_game(arb, kReqs, kGrants);
  auto unchanged = g.edge_count();
  // A cube that no input letter satisfies leaves the arena alone.
  CHECK(mark_edges_absent(g, Cube{0b100, 0b100}) == 0);
  CHECK(g.edge_count() == unchanged);

  std::mt19937_64 rng(8);
  for (int i = 0; i < 40; ++i) {
    Letter care = rng() & 0b11, value = rng() & care;
    InputFilter filter(4);
    for (Letter l = 0; l < 4; ++l) filter[l] = (l & care) != value;
    auto rebuilt = build_buchi_game(arb, kReqs, kGrants, filter);
    auto edited = build_buchi_game(arb, kReqs, kGrants);
    mark_edges_absent(edited, Cube{care, value});
    CHECK(solve_buchi(rebuilt).ctrl_wins_initial(rebuilt) == solve_buchi(edited).ctrl_wins_initial(edited));
  }
}

TEST_CASE("single-choice restrictions of counter-strategies still win") {
  std::mt19937_64 rng(77);
  int tested = 0;
  for (int i = 0; i < 300 && tested < 120; ++i) {
    auto g = testing::random_arena(rng, 40, i % 2 ? Objective::Buchi : Objective::Safety);
    auto s = solve(g);
    if (s.ctrl_wins_initial(g)) continue;
    ++tested;
    auto cs = extract_counter_strategy(g, s);
    GameArena restricted = g;
    for (const auto& st : cs.states) {
      if (st.won) continue;
      REQUIRE_FALSE(st.candidates.empty());
      const auto& keep = st.candidates[std::uniform_int_distribution<std::size_t>(0, st.candidates.size() - 1)(rng)];
      // Keep one move carrying the chosen input that is itself a progress move.
      bool kept = false;
      for (auto& m : restricted.env_moves[st.node]) {
        bool ok = !kept && m.present && m.input == keep.input && is_env_progress(g, s, st.node, m.to);
        if (ok) kept = true;
        else m.present = false;
      }
      CHECK(kept);
    }
    CHECK_FALSE(solve(restricted).ctrl_wins_initial(restricted));
  }
  CHECK(tested >= 50);
}

namespace {

CounterStrategy random_counter_strategy(std::mt19937_64& rng, std::size_t max_states) {
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  CounterStrategy cs;
  cs.inputs = {"a", "b", "c"};
  const std::size_t n = 1 + pick(max_states);
  cs.states.resize(n);
  for (std::size_t q = 0; q < n; ++q) {
    cs.states[q].node = q;
    std::set<Letter> inputs;
    for (std::size_t j = 0, k = 1 + pick(4); j < k; ++j) inputs.insert(pick(8));
    for (Letter in : inputs) {
      CounterCandidate c;
      c.input = in;
      // Make every state reachable: chain through q + 1.
      c.responses.push_back({0, q + 1 < n ? q + 1 : pick(n)});
      cs.states[q].candidates.push_back(c);
    }
  }
  return cs;
}

// Smallest number of Unchecked projections hitting every state that has no
// Feasible candidate.
std::size_t minimum_cover(const CounterStrategy& cs, Letter mask, const std::map<Letter, TheoryStatus>& status) {
  std::vector<Letter> options;
  std::vector<std::size_t> needy;
  for (const auto& [p, st] : status)
    if (st == TheoryStatus::Unchecked) options.push_back(p);
  for (std::size_t q = 0; q < cs.size(); ++q) {
    bool fine = false;
    for (const auto& c : cs.states[q].candidates) fine = fine || status.at(c.input & mask) == TheoryStatus::Feasible;
    if (!fine) needy.push_back(q);
  }
  std::size_t best = options.size() + 1;
  for (std::uint32_t subset = 0; subset < (1U << options.size()); ++subset) {
    auto size = static_cast<std::size_t>(std::popcount(subset));
    if (size >= best) continue;
    bool ok = std::all_of(needy.begin(), needy.end(), [&](std::size_t q) {
      for (const auto& c : cs.states[q].candidates)
        for (std::size_t j = 0; j < options.size(); ++j)
          if ((subset >> j & 1U) && (c.input & mask) == options[j]) return true;
      return false;
    });
    if (ok) best = size;
  }
  return best;
}

}  // namespace

TEST_CASE("greedy input selection against the exhaustive minimum cover") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 300; ++i) {
    auto cs = random_counter_strategy(rng, 8);
    const Letter mask = 1 + (rng() % 7);
    std::map<Letter, TheoryStatus> status;
    for (Letter p = 0; p < 8; ++p)
      if ((p & mask) == p) status[p] = rng() % 3 == 0 ? TheoryStatus::Feasible : TheoryStatus::Unchecked;
    std::size_t calls = 0;
    auto sel = select_counter_inputs(cs, mask, [&](Letter p) {
      ++calls;
      return status.at(p);
    });
    const std::size_t opt = minimum_cover(cs, mask, status);
    REQUIRE(opt <= status.size());
    CHECK(sel.unproven.size() >= opt);
    // Greedy set cover is within the harmonic factor of the optimum.
    double harmonic = 0;
    for (std::size_t j = 1; j <= cs.size(); ++j) harmonic += 1.0 / static_cast<double>(j);
    CHECK(static_cast<double>(sel.unproven.size()) <= std::floor(static_cast<double>(opt) * harmonic + 1e-9));
    CHECK(std::is_sorted(sel.unproven.begin(), sel.unproven.end()));
    for (Letter p : sel.unproven) CHECK(status.at(p) == TheoryStatus::Unchecked);
    CHECK(calls <= status.size());
    // Every remaining state keeps at least one candidate.
    for (const auto& st : sel.restricted.states) CHECK_FALSE(st.candidates.empty());
    if (opt == 0) CHECK(sel.unproven.empty());
  }
}

TEST_CASE("selection on the running example") {
  auto arb = automata::ltl_to_buchi(parse_formula(kArbiter));
  for (auto objective : {Objective::Buchi, Objective::Safety}) {
    GameArena g = objective == Objective::Buchi
                      ? build_buchi_game(arb, kReqs, kGrants)
                      : build_safety_game(automata::negate_and_translate(parse_formula(kArbiter)), 1, kReqs, kGrants);
    auto s = solve(g);
    REQUIRE_FALSE(s.ctrl_wins_initial(g));
    auto cs = extract_counter_strategy(g, s);
    auto sel = select_counter_inputs(cs, 0b11, [](Letter) { return TheoryStatus::Unchecked; });
    CHECK(sel.unproven == std::vector<Letter>{0b11});

    // Already known feasible: genuine, nothing left to check.
    auto known = select_counter_inputs(cs, 0b11, [](Letter p) {
      return p == 0b11 ? TheoryStatus::Feasible : TheoryStatus::Unchecked;
    });
    CHECK(known.unproven.empty());
    for (const auto& st : known.restricted.states)
      for (const auto& c : st.candidates) CHECK(c.input == 0b11);
  }
}

TEST_CASE("controller file helpers") {
  MealyController m;
  m.inputs = {"i"};
  m.outputs = {"o"};
  m.table.resize(2);
  m.labels = {"a", "b"};
  m.table[0][0] = {1, 1};
  m.table[0][1] = {0, 0};
  m.table[1][0] = {1, 0};
  CHECK(m.reachable_outputs() == std::vector<Letter>{0, 1});
  CHECK(m.step(1, 1) == nullptr);
  auto dot = to_dot(build_buchi_game(automata::ltl_to_buchi(parse_formula("ALWAYS o")), {}, {"o"}));
  CHECK(dot.find("digraph arena") == 0);
}
