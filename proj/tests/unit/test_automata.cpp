#include "doctest.h"

#include "nltl/automata/buchi.hpp"
#include "nltl/speclang/parser.hpp"
#include "spec_gen.hpp"

#include <algorithm>
#include <random>
#include <set>

using namespace nltl;
using namespace nltl::automata;
using spec::Formula;
using spec::parse_formula;

namespace {

// All lassos over `atoms` with |prefix| <= max_prefix and 1 <= |loop| <= max_loop.
std::vector<LassoWord> all_lassos(const std::vector<std::string>& atoms, std::size_t max_prefix, std::size_t max_loop) {
  const Letter letters = Letter{1} << atoms.size();
  std::vector<LassoWord> out;
  std::vector<std::vector<Letter>> by_len[8];
  by_len[0] = {{}};
  for (std::size_t len = 1; len <= std::max(max_prefix, max_loop); ++len)
    for (const auto& s : by_len[len - 1])
      for (Letter l = 0; l < letters; ++l) {
        auto t = s;
        t.push_back(l);
        by_len[len].push_back(t);
      }
  for (std::size_t p = 0; p <= max_prefix; ++p)
    for (std::size_t l = 1; l <= max_loop; ++l)
      for (const auto& pre : by_len[p])
        for (const auto& loop : by_len[l]) out.push_back({atoms, pre, loop});
  return out;
}

LassoWord word(std::vector<std::string> atoms, std::vector<Letter> prefix, std::vector<Letter> loop) {
  return {std::move(atoms), std::move(prefix), std::move(loop)};
}

std::size_t distinct_subformulas(const Formula& f) {
  std::set<Formula> seen;
  std::vector<Formula> stack{f};
  while (!stack.empty()) {
    Formula g = stack.back();
    stack.pop_back();
    if (!seen.insert(g).second) continue;
    if (g.is_unary() || g.is_binary()) stack.push_back(g.lhs());
    if (g.is_binary()) stack.push_back(g.rhs());
  }
  return seen.size();
}

// Independent acceptance check. One loop iteration induces a relation on
// states (with a flag recording an accepting visit); the word is accepted iff
// some state reachable at a loop boundary returns to itself through a
// flagged path of iterations.
bool run_dag_accepts(const BuchiAutomaton& a, const LassoWord& w) {
  const std::size_t n = a.size();
  auto letter = [&](std::size_t i) { return project(w.at(i), w.atoms, a.alphabet); };
  auto post = [&](State q, Letter l) {
    std::vector<State> out;
    for (const auto& e : a.edges[q])
      if (e.guard.admits(l)) out.push_back(e.to);
    return out;
  };

  std::vector<bool> start(n, false);
  start[a.initial] = true;
  for (std::size_t i = 0; i < w.prefix.size(); ++i) {
    std::vector<bool> nxt(n, false);
    for (State q = 0; q < n; ++q)
      if (start[q])
        for (State r : post(q, letter(i))) nxt[r] = true;
    start = nxt;
  }

  // rel[q][r]: 0 unreachable, 1 reachable, 2 reachable through an accepting state.
  std::vector<std::vector<int>> rel(n, std::vector<int>(n, 0));
  for (State q = 0; q < n; ++q) {
    std::vector<int> cur(n, 0);
    cur[q] = 1;
    for (std::size_t j = 0; j < w.loop.size(); ++j) {
      std::vector<int> nxt(n, 0);
      Letter l = letter(w.prefix.size() + j);
      for (State s = 0; s < n; ++s) {
        if (!cur[s]) continue;
        int flag = (cur[s] == 2 || a.accepting[s]) ? 2 : 1;
        for (State r : post(s, l)) nxt[r] = std::max(nxt[r], flag);
      }
      cur = nxt;
    }
    rel[q] = cur;
  }
  // Transitive closure keeping the best flag.
  for (State m = 0; m < n; ++m)
    for (State q = 0; q < n; ++q) {
      if (!rel[q][m]) continue;
      for (State r = 0; r < n; ++r) {
        if (!rel[m][r]) continue;
        int flag = std::max(rel[q][m], rel[m][r]);
        rel[q][r] = std::max(rel[q][r], flag);
      }
    }
  for (State q = 0; q < n; ++q) {
    bool reachable = start[q];
    for (State s = 0; s < n && !reachable; ++s) reachable = start[s] && rel[s][q];
    if (reachable && rel[q][q] == 2) return true;
  }
  return false;
}

BuchiAutomaton random_automaton(std::mt19937_64& rng, const std::vector<std::string>& atoms) {
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  BuchiAutomaton a;
  a.alphabet = atoms;
  std::size_t n = 1 + pick(6);
  for (std::size_t i = 0; i < n; ++i) a.add_state(pick(3) == 0);
  std::size_t m = pick(3 * n + 1);
  const Letter full = (Letter{1} << atoms.size()) - 1;
  for (std::size_t i = 0; i < m; ++i) {
    Cube c;
    c.care = std::uniform_int_distribution<Letter>(0, full)(rng);
    c.value = std::uniform_int_distribution<Letter>(0, full)(rng) & c.care;
    a.add_edge(pick(n), c, pick(n));
  }
  return a;
}

}  // namespace

TEST_CASE("G a and F a agree with the lasso semantics on every small lasso") {
  std::vector<std::string> atoms{"a"};
  auto ga = ltl_to_buchi(parse_formula("ALWAYS a"));
  auto fa = ltl_to_buchi(parse_formula("EVENTUALLY a"));
  CHECK(ga.alphabet == atoms);
  for (const auto& w : all_lassos(atoms, 3, 3)) {
    bool all = true, some = false;
    for (std::size_t i = 0; i < w.length(); ++i) {
      all = all && (w.at(i) & 1U);
      some = some || (w.at(i) & 1U);
    }
    CHECK(accepts_lasso(ga, w) == all);
    CHECK(accepts_lasso(fa, w) == some);
    CHECK(evaluate_ltl_on_lasso(parse_formula("ALWAYS a"), w) == all);
    CHECK(evaluate_ltl_on_lasso(parse_formula("EVENTUALLY a"), w) == some);
  }
}

TEST_CASE("until on hand-picked words") {
  auto f = parse_formula("a UNTIL b");
  auto aut = ltl_to_buchi(f);
  REQUIRE(aut.alphabet == std::vector<std::string>{"a", "b"});
  // bit 0 = a, bit 1 = b
  auto accepted = word({"a", "b"}, {0b01, 0b10}, {0b00});
  auto never = word({"a", "b"}, {}, {0b01});
  CHECK(accepts_lasso(aut, accepted));
  CHECK_FALSE(accepts_lasso(aut, never));
  CHECK(evaluate_ltl_on_lasso(f, accepted));
  CHECK_FALSE(evaluate_ltl_on_lasso(f, never));
}

TEST_CASE("lasso semantics basics") {
  CHECK(evaluate_ltl_on_lasso(parse_formula("ALWAYS a"), word({"a"}, {}, {1})));
  CHECK(evaluate_ltl_on_lasso(parse_formula("NEXT a"), word({"a"}, {0}, {1})));
  CHECK_FALSE(evaluate_ltl_on_lasso(parse_formula("a"), word({"a"}, {0}, {1})));
  CHECK(evaluate_ltl_on_lasso(parse_formula("ALWAYS EVENTUALLY a"), word({"a"}, {1, 1}, {0, 0, 1})));
  CHECK_FALSE(evaluate_ltl_on_lasso(parse_formula("EVENTUALLY ALWAYS a"), word({"a"}, {1, 1}, {0, 1})));
  // Missing atoms read as false.
  CHECK(evaluate_ltl_on_lasso(parse_formula("ALWAYS !zz"), word({"a"}, {}, {1})));
  CHECK_THROWS_AS(evaluate_ltl_on_lasso(parse_formula("a"), word({"a"}, {1}, {})), std::invalid_argument);
}

TEST_CASE("accepts_lasso basics") {
  auto ga = ltl_to_buchi(parse_formula("ALWAYS a"));
  CHECK(accepts_lasso(ga, word({"a"}, {}, {1})));
  CHECK_FALSE(accepts_lasso(ga, word({"a"}, {0}, {1})));
  CHECK_FALSE(accepts_lasso(ga, word({"a"}, {0}, {0, 1})));
  // Extra atoms in the word are projected away; missing ones are an error.
  CHECK(accepts_lasso(ga, word({"b", "a"}, {}, {0b10})));
  CHECK_THROWS_AS(accepts_lasso(ga, word({"b"}, {}, {1})), std::invalid_argument);
  CHECK(accepts_lasso(ltl_to_buchi(Formula::tt()), word({}, {}, {0})));
  CHECK_FALSE(accepts_lasso(ltl_to_buchi(Formula::ff()), word({}, {}, {0})));
}

TEST_CASE("explicit alphabet") {
  auto f = parse_formula("ALWAYS (req1 -> NEXT grant1)");
  std::vector<std::string> alphabet{"req1", "req2", "grant1", "grant2"};
  auto aut = ltl_to_buchi(f, alphabet);
  CHECK(aut.alphabet == alphabet);
  CHECK(accepts_lasso(aut, word(alphabet, {0b0001}, {0b0100})));
  CHECK_FALSE(accepts_lasso(aut, word(alphabet, {0b0001}, {0b0000})));
  CHECK_THROWS_AS(ltl_to_buchi(f, {"req1"}), std::invalid_argument);
  CHECK_THROWS_AS(negate_and_translate(f, {"grant1"}), std::invalid_argument);
}

TEST_CASE("negation duality") {
  CHECK(ltl_to_buchi(parse_formula("ALWAYS a")).size() >= 1);
  auto not_ga = negate_and_translate(parse_formula("ALWAYS a"));
  auto f_not_a = ltl_to_buchi(parse_formula("EVENTUALLY !a"));
  for (const auto& w : all_lassos({"a"}, 3, 3)) CHECK(accepts_lasso(not_ga, w) == accepts_lasso(f_not_a, w));

  // The running example's pseudo-Boolean guarantee and its negation.
  auto eq2 = parse_formula("ALWAYS (req1 -> NEXT grant1) && ALWAYS (req2 -> NEXT grant2) && ALWAYS !(grant1 && grant2)");
  auto pos = ltl_to_buchi(eq2);
  auto neg = negate_and_translate(eq2);
  CHECK(neg.alphabet == pos.alphabet);
  std::mt19937_64 rng(17);
  for (int i = 0; i < 300; ++i) {
    auto w = testing::random_lasso(rng, pos.alphabet, 3, 3);
    CHECK(accepts_lasso(pos, w) != accepts_lasso(neg, w));
  }

  std::vector<std::string> atoms{"a", "b", "c"};
  for (int i = 0; i < 150; ++i) {
    auto f = testing::random_formula(rng, atoms, 8);
    auto af = ltl_to_buchi(f, atoms), anf = negate_and_translate(f, atoms);
    for (int j = 0; j < 20; ++j) {
      auto w = testing::random_lasso(rng, atoms, 3, 3);
      INFO(spec::to_string(f));
      CHECK(accepts_lasso(af, w) != accepts_lasso(anf, w));
    }
  }
}

TEST_CASE("translation agrees with lasso semantics on 500 random pairs") {
  std::mt19937_64 rng(99);
  std::vector<std::string> atoms{"a", "b", "c"};
  int agree = 0;
  for (int i = 0; i < 500; ++i) {
    auto f = testing::random_formula(rng, atoms, 8);
    auto w = testing::random_lasso(rng, atoms, 3, 3);
    bool expected = evaluate_ltl_on_lasso(f, w);
    bool got = accepts_lasso(ltl_to_buchi(f, atoms), w);
    INFO(spec::to_string(f));
    CHECK(got == expected);
    agree += got == expected;
  }
  CHECK(agree == 500);
}

TEST_CASE("disjoint union accepts the union of the languages") {
  std::mt19937_64 rng(4242);
  std::vector<std::string> atoms{"a", "b", "c"};
  for (int i = 0; i < 200; ++i) {
    std::vector<Formula> fs;
    std::vector<BuchiAutomaton> parts;
    for (int j = 0, n = 1 + static_cast<int>(rng() % 3); j < n; ++j) {
      fs.push_back(testing::random_formula(rng, atoms, 6));
      parts.push_back(ltl_to_buchi(fs.back()));
    }
    auto u = disjoint_union(parts);
    CHECK(std::is_sorted(u.alphabet.begin(), u.alphabet.end()));
    CHECK_FALSE(u.accepting[u.initial]);
    auto w = testing::random_lasso(rng, atoms, 3, 3);
    bool expected = false;
    for (const auto& f : fs) expected = expected || evaluate_ltl_on_lasso(f, w);
    CHECK(accepts_lasso(u, w) == expected);
  }
}

TEST_CASE("tableau size bound") {
  std::mt19937_64 rng(3);
  std::vector<std::string> atoms{"a", "b", "c"};
  for (int i = 0; i < 300; ++i) {
    auto f = testing::random_formula(rng, atoms, 8);
    auto aut = ltl_to_buchi(f);
    INFO(spec::to_string(f));
    CHECK(aut.size() <= (std::size_t{1} << (distinct_subformulas(f) + 1)));
    for (State q = 0; q < aut.size(); ++q)
      for (const auto& e : aut.edges[q]) {
        CHECK(e.to < aut.size());
        CHECK((e.guard.value & ~e.guard.care) == 0);
      }
  }
}

TEST_CASE("accepts_lasso matches the loop-relation oracle on random automata") {
  std::mt19937_64 rng(41);
  std::vector<std::string> atoms{"p", "q"};
  for (int i = 0; i < 400; ++i) {
    auto a = random_automaton(rng, atoms);
    auto w = testing::random_lasso(rng, atoms, 3, 3);
    CHECK(accepts_lasso(a, w) == run_dag_accepts(a, w));
  }
  // And on translated automata.
  std::vector<std::string> three{"a", "b", "c"};
  for (int i = 0; i < 200; ++i) {
    auto a = ltl_to_buchi(testing::random_formula(rng, three, 8), three);
    auto w = testing::random_lasso(rng, three, 3, 3);
    CHECK(accepts_lasso(a, w) == run_dag_accepts(a, w));
  }
}

TEST_CASE("serialization") {
  auto aut = ltl_to_buchi(parse_formula("a UNTIL b"));
  auto dot = to_dot(aut, "until");
  CHECK(dot.rfind("digraph until {", 0) == 0);
  CHECK(dot.find("doublecircle") != std::string::npos);
  auto text = to_text(aut);
  CHECK(text.rfind("alphabet a b\ninitial ", 0) == 0);
  CHECK(format_cube({0b11, 0b01}, {"a", "b"}) == "a & !b");
  CHECK(format_cube({}, {"a"}) == "true");
}
