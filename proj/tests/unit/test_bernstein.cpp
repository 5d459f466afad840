#include "doctest.h"

#include "nltl/bernstein/bernstein.hpp"
#include "nltl/bernstein/checker.hpp"
#include "poly_oracles.hpp"

#include <random>

using namespace nltl;
using namespace nltl::bernstein;
using nltl::testing::bernstein_basis;
using nltl::testing::from_unit;
using nltl::testing::grid;
using nltl::testing::random_box;
using nltl::testing::random_polynomial;
using nltl::testing::random_rational;

namespace {

Polynomial var(std::size_t n, std::size_t i) { return Polynomial::variable(n, i); }
Polynomial cst(std::size_t n, Rational c) { return Polynomial::constant(n, c); }

Box cube(std::size_t n, Rational lo, Rational hi) { return Box(std::vector<Interval>(n, Interval{lo, hi})); }

// x0 + x1 + x2 - 3 and x0^2 + x1^2 + x2^2 - 4 over [0,4]^3
PolyConstraint sensor_sum() { return {var(3, 0) + var(3, 1) + var(3, 2) - cst(3, 3), Relation::Greater}; }
PolyConstraint sensor_norm() {
  return {var(3, 0).pow(2) + var(3, 1).pow(2) + var(3, 2).pow(2) - cst(3, 4), Relation::Less};
}
// x + y - 3 > 0 and x^2 + y^2 - 7/2 < 0 over [0,4]^2
PolyConstraint req1() { return {var(2, 0) + var(2, 1) - cst(2, 3), Relation::Greater}; }
PolyConstraint req2() { return {var(2, 0).pow(2) + var(2, 1).pow(2) - cst(2, ratio(7, 2)), Relation::Less}; }

}  // namespace

TEST_CASE("evaluate reproduces the three-sensor witness values exactly") {
  std::vector<Rational> w{parse_rational("0.314453125"), Rational(1), parse_rational("1.6875")};
  auto sum = var(3, 0) + var(3, 1) + var(3, 2);
  auto norm = var(3, 0).pow(2) + var(3, 1).pow(2) + var(3, 2).pow(2);
  CHECK(evaluate(sum, w) == parse_rational("3.001953125"));
  CHECK(evaluate(norm, w) == parse_rational("3.946537017822265625"));
  CHECK(w[0] == ratio(161, 512));
}

TEST_CASE("evaluate edge cases") {
  std::vector<Rational> pt{ratio(3, 7), Rational(-2)};
  CHECK(evaluate(Polynomial(2), pt) == 0);
  CHECK_THROWS_AS(evaluate(var(3, 0), pt), std::invalid_argument);
}

TEST_CASE("polynomial arithmetic keeps no zero coefficients") {
  auto x = var(2, 0), y = var(2, 1);
  auto p = (x + y) * (x - y);
  CHECK(p == x.pow(2) - y.pow(2));
  CHECK((p - p).is_zero());
  CHECK((p - p).terms().empty());
  CHECK(p.degrees() == std::vector<std::uint32_t>{2, 2});
  CHECK(p.total_degree() == 2);
  std::vector<std::string> names{"x", "y"};
  CHECK(to_string(p, names) == "x^2 - y^2");
  CHECK(to_string(x * ratio(3, 2) - cst(2, ratio(7, 2)), names) == "3/2*x - 7/2");
}

TEST_CASE("to_unit_box") {
  SUBCASE("single variable on [0,4] becomes 4t") {
    CHECK(to_unit_box(var(1, 0), cube(1, 0, 4)) == var(1, 0) * Rational(4));
  }
  SUBCASE("x + y - 3 on [0,4]^2 becomes 4t0 + 4t1 - 3") {
    auto q = to_unit_box(req1().poly, cube(2, 0, 4));
    CHECK(q == var(2, 0) * Rational(4) + var(2, 1) * Rational(4) - cst(2, 3));
  }
  SUBCASE("random polynomials agree with affine substitution at random points") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
      std::size_t n = 1 + trial % 3;
      auto p = random_polynomial(rng, n, 4);
      auto b = random_box(rng, n);
      auto q = to_unit_box(p, b);
      for (int k = 0; k < 100 / 20 + 5; ++k) {
        std::vector<Rational> t;
        for (std::size_t i = 0; i < n; ++i) t.push_back(random_rational(rng, 0, 1, 16));
        CHECK(evaluate(q, t) == evaluate(p, from_unit(b, t)));
      }
    }
  }
}

TEST_CASE("bernstein_coefficients") {
  SUBCASE("constant") {
    auto t = bernstein_coefficients(cst(2, ratio(5, 3)), std::vector<std::uint32_t>{2, 3});
    for (const auto& c : t.coefficients()) CHECK(c == ratio(5, 3));
  }
  SUBCASE("identity of degree one") {
    auto t = bernstein_coefficients(var(1, 0));
    REQUIRE(t.size() == 2);
    CHECK(t[0] == 0);
    CHECK(t[1] == 1);
  }
  SUBCASE("degree below the polynomial degree is rejected") {
    CHECK_THROWS_AS(bernstein_coefficients(var(1, 0).pow(3), std::vector<std::uint32_t>{2}),
                    std::invalid_argument);
  }
  SUBCASE("re-expansion in the Bernstein basis reproduces p") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
      std::size_t n = 1 + trial % 3;
      auto p = random_polynomial(rng, n, 4);
      auto deg = p.degrees();
      if (trial % 2) for (auto& d : deg) d += 1;  // degree elevation too
      auto t = bernstein_coefficients(p, deg);
      for (int k = 0; k < 10; ++k) {
        std::vector<Rational> pt;
        for (std::size_t i = 0; i < n; ++i) pt.push_back(random_rational(rng, 0, 1, 32));
        Rational sum(0);
        for (std::size_t f = 0; f < t.size(); ++f) sum += t[f] * bernstein_basis(deg, t.multi_index(f), pt);
        CHECK(sum == evaluate(p, pt));
      }
    }
  }
}

TEST_CASE("bounds") {
  CHECK(bounds(cst(2, 5), cube(2, -1, 3), 3).lower == 5);
  CHECK(bounds(cst(2, 5), cube(2, -1, 3), 3).upper == 5);
  auto e = bounds(var(1, 0), cube(1, 0, 4), 0);
  CHECK(e.lower == 0);
  CHECK(e.upper == 4);

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 12; ++trial) {
    std::size_t n = 1 + trial % 2;
    auto p = random_polynomial(rng, n, 4);
    auto b = random_box(rng, n);
    Enclosure prev = bounds(p, b, 0);
    for (unsigned d = 1; d <= 4; ++d) {
      auto cur = bounds(p, b, d);
      CHECK(cur.lower >= prev.lower);
      CHECK(cur.upper <= prev.upper);
      prev = cur;
    }
    for (const auto& g : grid(b, 16)) {
      auto v = evaluate(p, g);
      CHECK(prev.lower <= v);
      CHECK(v <= prev.upper);
    }
  }
}

TEST_CASE("check_validity") {
  SUBCASE("x + y > 3 implies x^2 + y^2 >= 7/2 on [0,4]^2") {
    auto v = check_validity(ValidityQuery{{req1()}, req2().negated()}, cube(2, 0, 4));
    CHECK(v.kind == ValidityVerdict::Kind::Valid);
  }
  SUBCASE("x >= 0 on [0,1] at depth 0") {
    CheckConfig cfg;
    cfg.max_depth = 0;
    auto v = check_validity(PolyConstraint{var(1, 0), Relation::GreaterEq}, cube(1, 0, 1), cfg);
    CHECK(v.kind == ValidityVerdict::Kind::Valid);
    CHECK(v.subboxes == 1);
  }
  SUBCASE("x^2 >= 1 on [0,2] is invalid") {
    PolyConstraint c{var(1, 0).pow(2) - cst(1, 1), Relation::GreaterEq};
    auto v = check_validity(c, cube(1, 0, 2));
    REQUIRE(v.kind == ValidityVerdict::Kind::Invalid);
    CHECK(v.witness[0] * v.witness[0] < 1);
    CHECK(cube(1, 0, 2).contains(v.witness));
  }
  SUBCASE("boundary-touching strict constraint exhausts depth") {
    // x > 0 on [0,1]: not valid (x = 0), found at a vertex.
    auto v = check_validity(PolyConstraint{var(1, 0), Relation::Greater}, cube(1, 0, 1));
    CHECK(v.kind == ValidityVerdict::Kind::Invalid);
    // x^2 > 0 on [-1,1] fails only at 0, which is the center: also found.
    auto w = check_validity(PolyConstraint{var(1, 0).pow(2), Relation::Greater}, cube(1, -1, 1));
    CHECK(w.kind == ValidityVerdict::Kind::Invalid);
    // (x - 1/3)^2 > 0 on [0,1]: the bad point is never a dyadic sample.
    auto shifted = (var(1, 0) - cst(1, ratio(1, 3))).pow(2);
    CheckConfig cfg;
    cfg.max_depth = 8;
    auto u = check_validity(PolyConstraint{shifted, Relation::Greater}, cube(1, 0, 1), cfg);
    CHECK(u.kind == ValidityVerdict::Kind::Unknown);
  }
}

TEST_CASE("check_feasibility") {
  SUBCASE("three sensors") {
    auto box = cube(3, 0, 4);
    auto v = check_feasibility({sensor_sum(), sensor_norm()}, box);
    REQUIRE(v.kind == FeasibilityVerdict::Kind::Feasible);
    CHECK(box.contains(v.witness));
    CHECK(sensor_sum().holds_at(v.witness));
    CHECK(sensor_norm().holds_at(v.witness));
  }
  SUBCASE("two requests cannot hold together") {
    auto v = check_feasibility({req1(), req2()}, cube(2, 0, 4));
    CHECK(v.kind == FeasibilityVerdict::Kind::Infeasible);
  }
  SUBCASE("trivially feasible") {
    auto v = check_feasibility({PolyConstraint{var(1, 0), Relation::GreaterEq}}, cube(1, 0, 1));
    CHECK(v.kind == FeasibilityVerdict::Kind::Feasible);
    CHECK(v.subboxes == 1);
  }
  SUBCASE("empty list is rejected") {
    CHECK_THROWS_AS(check_feasibility({}, cube(1, 0, 1)), std::invalid_argument);
  }
  SUBCASE("arity mismatch is rejected") {
    CHECK_THROWS_AS(check_feasibility({req1()}, cube(3, 0, 1)), std::invalid_argument);
  }
  SUBCASE("point boxes are decided exactly") {
    auto v = check_feasibility({PolyConstraint{var(1, 0), Relation::Greater}}, cube(1, 0, 0));
    CHECK(v.kind == FeasibilityVerdict::Kind::Infeasible);
  }
}

TEST_CASE("feasibility and validity of the negation agree") {
  SUBCASE("two-sensor pair") {
    auto f = check_feasibility({req1(), req2()}, cube(2, 0, 4));
    auto v = check_validity(ValidityQuery{{req1()}, req2().negated()}, cube(2, 0, 4));
    CHECK(f.infeasible() == (v.kind == ValidityVerdict::Kind::Valid));
    CHECK(f.subboxes == v.subboxes);
  }
  SUBCASE("three-sensor pair") {
    auto f = check_feasibility({sensor_sum(), sensor_norm()}, cube(3, 0, 4));
    auto v = check_validity(ValidityQuery{{sensor_sum()}, sensor_norm().negated()}, cube(3, 0, 4));
    CHECK(f.infeasible() == (v.kind == ValidityVerdict::Kind::Valid));
    REQUIRE(v.kind == ValidityVerdict::Kind::Invalid);
    CHECK(v.witness == f.witness);
  }
}

TEST_CASE("Valid and Infeasible verdicts survive random sampling") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::uint64_t> bits(0, (1U << 20));
  auto sample = [&] { return Rational(static_cast<long>(bits(rng)), 1L << 18); };  // [0,4]
  int contradictions = 0;
  for (int i = 0; i < 100000; ++i) {
    std::vector<Rational> pt{sample(), sample()};
    if (req1().holds_at(pt) && req2().holds_at(pt)) ++contradictions;
  }
  CHECK(contradictions == 0);
}
