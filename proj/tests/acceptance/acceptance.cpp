// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "fixtures.hpp"
#include "game_oracles.hpp"
#include "nltl/abstraction/abstraction.hpp"
#include "nltl/automata/buchi.hpp"
#include "nltl/bernstein/bernstein.hpp"
#include "nltl/bernstein/checker.hpp"
#include "nltl/cegar/cegar.hpp"
#include "nltl/cli/commands.hpp"
#include "nltl/cli/controller_file.hpp"
#include "nltl/cli/simulate.hpp"
#include "nltl/speclang/parser.hpp"
#include "poly_oracles.hpp"
#include "spec_gen.hpp"

#include <bit>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

using namespace nltl;
namespace fs = std::filesystem;
using bernstein::Box;
using bernstein::Interval;
using bernstein::Polynomial;
using bernstein::PolyConstraint;
using bernstein::Relation;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt_seconds(double s) {
  std::ostringstream os;
  os.precision(2);
  os << std::fixed << s << "s";
  return os.str();
}

std::vector<std::string> lines_with_prefix(const std::string& text, const std::string& prefix) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);)
    if (line.rfind(prefix, 0) == 0) out.push_back(line);
  return out;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome running_example() {
  auto dir = fs::temp_directory_path() / "nltl_acceptance_1";
  fs::remove_all(dir);
  fs::create_directories(dir);
  fs::copy_file(testing::spec_path("arbiter.spec"), dir / "arbiter.spec");

  cli::SynthOptions opts;
  opts.spec_path = (dir / "arbiter.spec").string();
  opts.transcript = (dir / "arbiter.transcript").string();
  std::ostringstream out, err;
  auto t0 = std::chrono::steady_clock::now();
  int code = cli::cmd_synth(opts, out, err);
  double elapsed = seconds_since(t0);

  auto transcript = slurp(opts.transcript);
  auto checks = lines_with_prefix(transcript, "CHECK ");
  auto refines = lines_with_prefix(transcript, "REFINE ");
  bool check_ok = checks.size() == 1 && checks[0].rfind("CHECK input req1=1,req2=1 Infeasible", 0) == 0;
  bool refine_ok = refines.size() == 1 && refines[0] == "REFINE assumption ALWAYS !(req1 && req2)";
  bool pass = code == cli::kExitRealizable && check_ok && refine_ok && elapsed < 10.0;
  return {pass, "exit=" + std::to_string(code) + " checks=" + std::to_string(checks.size()) +
                    (checks.empty() ? "" : " [" + checks[0] + "]") + " refinements=" + std::to_string(refines.size()) +
                    (refines.empty() ? "" : " [" + refines[0] + "]") + " time=" + fmt_seconds(elapsed)};
}

Outcome two_request_validity() {
  cli::CheckOptions opts;
  opts.vars = {"x=0:4", "y=0:4"};
  opts.valid = "x + y - 3 > 0 -> x^2 + y^2 - 7/2 >= 0";
  std::ostringstream out, err;
  auto t0 = std::chrono::steady_clock::now();
  int code = cli::cmd_check(opts, out, err);
  double elapsed = seconds_since(t0);
  auto first = out.str().substr(0, out.str().find('\n'));
  return {code == 0 && first == "Valid" && elapsed < 5.0,
          "verdict=" + first + " exit=" + std::to_string(code) + " time=" + fmt_seconds(elapsed)};
}

Outcome three_sensors() {
  auto x = [](std::size_t i) { return Polynomial::variable(3, i); };
  auto c = [](Rational v) { return Polynomial::constant(3, v); };
  auto sum = x(0) + x(1) + x(2);
  auto norm = x(0).pow(2) + x(1).pow(2) + x(2).pow(2);
  std::vector<PolyConstraint> cs{{sum - c(3), Relation::Greater}, {norm - c(4), Relation::Less}};
  Box box(std::vector<Interval>(3, Interval{Rational(0), Rational(4)}));

  auto v = bernstein::check_feasibility(cs, box);
  bool feasible = v.kind == bernstein::FeasibilityVerdict::Kind::Feasible;
  bool witness_ok = feasible && box.contains(v.witness) && cs[0].holds_at(v.witness) && cs[1].holds_at(v.witness);

  std::vector<Rational> known{parse_rational("0.314453125"), Rational(1), parse_rational("1.6875")};
  bool regression = bernstein::evaluate(sum, known) == parse_rational("3.001953125") &&
                    bernstein::evaluate(norm, known) == parse_rational("3.946537017822265625");

  std::string w;
  for (const auto& r : v.witness) w += (w.empty() ? "" : ",") + to_string(r);
  return {feasible && witness_ok && regression, "verdict=" + std::string(bernstein::to_string(v.kind)) + " witness=(" +
                                                    w + ") exact=" + (witness_ok ? "yes" : "no") +
                                                    " regression=" + (regression ? "yes" : "no")};
}

Outcome error_handling_reencoding() {
  auto doc = spec::parse_spec(testing::read_spec("error_handling.spec"));
  auto [pb, table] = abstraction::abstract_spec(doc);
  auto [encoded, mux] = abstraction::reencode_outputs(pb);

  std::set<Letter> originals;
  bool one_hot = true;
  for (const auto& [code, orig] : mux.rows) {
    originals.insert(orig);
    one_hot = one_hot && std::popcount(orig) == 1;
  }
  const bool combos_ok = mux.rows.size() == 4 && originals.size() == 4 && one_hot && mux.original.size() == 4;
  const bool two_outputs = encoded.doc.output_atoms().size() == 2 && mux.encoded.size() == 2;

  auto result = cegar::synthesize(doc, cegar::CegarConfig{});
  if (result.kind != cegar::SynthesisResult::Kind::Realizable)
    return {false, "combinations=" + std::to_string(mux.rows.size()) + " synthesis=" + std::string(cegar::to_string(result.kind))};
  auto file = cli::make_controller_file(result, doc);
  auto trace = cli::simulate(file, {.steps = 1000, .seed = 1});
  std::size_t safety_violations = 0, uncovered = 0;
  for (const auto& g : trace.report.guarantees)
    if (g.safety) safety_violations += g.violated.size();
  for (const auto& s : trace.steps) uncovered += !s.covered;

  return {combos_ok && two_outputs && trace.steps.size() == 1000 && safety_violations == 0,
          "combinations=" + std::to_string(mux.rows.size()) + (one_hot ? " one-hot" : " not-one-hot") +
              " encoded-outputs=" + std::to_string(encoded.doc.output_atoms().size()) +
              " bound=" + std::to_string(result.bound) + " steps=" + std::to_string(trace.steps.size()) +
              " safety-violations=" + std::to_string(safety_violations) + " uncovered=" + std::to_string(uncovered)};
}

// Total degree at most max_degree, coefficients in [-10, 10].
Polynomial random_total_degree_polynomial(std::mt19937_64& rng, std::size_t n, unsigned max_degree) {
  Polynomial p(n);
  auto terms = std::uniform_int_distribution<int>(1, 6)(rng);
  for (int t = 0; t < terms; ++t) {
    bernstein::Exponent e(n, 0);
    unsigned budget = std::uniform_int_distribution<unsigned>(0, max_degree)(rng);
    for (unsigned k = 0; k < budget; ++k) ++e[std::uniform_int_distribution<std::size_t>(0, n - 1)(rng)];
    p.add_term(e, testing::random_rational(rng, -10, 10));
  }
  return p;
}

Outcome bernstein_properties() {
  std::mt19937_64 rng(5);
  std::size_t grid_fail = 0, vertex_fail = 0, monotone_fail = 0, expansion_fail = 0;
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 1 + i % 3;
    auto p = random_total_degree_polynomial(rng, n, 4);
    auto box = testing::random_box(rng, n);

    std::vector<bernstein::Enclosure> by_depth;
    for (unsigned d = 0; d <= 4; ++d) by_depth.push_back(bernstein::bounds(p, box, d));
    for (unsigned d = 1; d <= 4; ++d)
      if (by_depth[d].lower < by_depth[d - 1].lower || by_depth[d].upper > by_depth[d - 1].upper) ++monotone_fail;
    for (const auto& pt : testing::grid(box, 8)) {
      auto v = bernstein::evaluate(p, pt);
      for (const auto& e : by_depth)
        if (v < e.lower || v > e.upper) {
          ++grid_fail;
          break;
        }
    }

    auto q = bernstein::to_unit_box(p, box);
    auto tensor = bernstein::bernstein_coefficients(q);
    const auto& deg = tensor.degree();
    for (std::size_t f = 0; f < tensor.size(); ++f) {
      if (!tensor.is_vertex(f)) continue;
      auto idx = tensor.multi_index(f);
      std::vector<Rational> corner;
      for (std::size_t k = 0; k < n; ++k) corner.push_back(idx[k] == 0 ? box[k].lower : box[k].upper);
      if (tensor[f] != bernstein::evaluate(p, corner)) ++vertex_fail;
    }
    auto range = bernstein::bernstein_range(p, box);
    if (range.lower != tensor.min() || range.upper != tensor.max()) ++vertex_fail;

    for (int k = 0; k < 50; ++k) {
      std::vector<Rational> t;
      for (std::size_t j = 0; j < n; ++j) t.push_back(testing::random_rational(rng, 0, 1, 64));
      Rational sum(0);
      for (std::size_t f = 0; f < tensor.size(); ++f)
        sum += tensor[f] * testing::bernstein_basis(deg, tensor.multi_index(f), t);
      if (sum != bernstein::evaluate(q, t) || sum != bernstein::evaluate(p, testing::from_unit(box, t)))
        ++expansion_fail;
    }
  }
  return {grid_fail + vertex_fail + monotone_fail + expansion_fail == 0,
          "polynomials=200 grid-violations=" + std::to_string(grid_fail) + " vertex-mismatches=" +
              std::to_string(vertex_fail) + " non-monotone=" + std::to_string(monotone_fail) +
              " re-expansion-mismatches=" + std::to_string(expansion_fail)};
}

Outcome automata_cross_validation() {
  std::mt19937_64 rng(99);
  const std::vector<std::string> pool{"a", "b", "c"};
  std::size_t agree = 0, oversized = 0;
  for (int i = 0; i < 500; ++i) {
    std::vector<std::string> atoms(pool.begin(), pool.begin() + 1 + i % 3);
    auto f = testing::random_formula(rng, atoms, 8);
    if (f.size() > 8) ++oversized;
    auto w = testing::random_lasso(rng, atoms, 3, 3);
    agree += automata::accepts_lasso(automata::ltl_to_buchi(f, atoms), w) == automata::evaluate_ltl_on_lasso(f, w);
  }
  return {agree == 500 && oversized == 0,
          "agreement=" + std::to_string(agree) + "/500 oversized=" + std::to_string(oversized)};
}

Outcome game_oracle() {
  std::mt19937_64 rng(2024);
  std::size_t region_mismatch = 0, unsound = 0;
  for (int i = 0; i < 200; ++i) {
    auto gb = testing::random_arena(rng, 50, games::Objective::Buchi);
    auto sb = games::solve_buchi(gb);
    region_mismatch += sb.ctrl_wins != testing::brute_force_buchi(gb);
    unsound += !testing::strategies_sound(gb, sb);

    auto gs = testing::random_arena(rng, 50, games::Objective::Safety);
    auto ss = games::solve_safety(gs);
    region_mismatch += ss.ctrl_wins != testing::brute_force_safety(gs);
    unsound += !testing::strategies_sound(gs, ss);
  }
  return {region_mismatch == 0 && unsound == 0, "arenas=200x2 region-mismatches=" + std::to_string(region_mismatch) +
                                                    " unsound-strategies=" + std::to_string(unsound)};
}

Outcome cegar_invariants() {
  std::mt19937_64 rng(8);
  std::size_t duplicates = 0, cache_mismatch = 0, disagreements = 0, decided = 0;
  for (int i = 0; i < 50; ++i) {
    auto doc = testing::random_synthesis_document(rng);
    cegar::CegarConfig edge, rebuild;
    rebuild.refine_path = cegar::RefinePath::Rebuild;
    auto a = cegar::synthesize(doc, edge);
    auto b = cegar::synthesize(doc, rebuild);
    disagreements += a.kind != b.kind;
    decided += a.kind != cegar::SynthesisResult::Kind::Unknown;
    for (const auto* r : {&a, &b}) {
      std::set<std::pair<int, Valuation>> seen;
      std::size_t checks = 0;
      for (const auto& e : r->transcript.events) {
        if (e.kind != cegar::TranscriptEvent::Kind::Check) continue;
        ++checks;
        duplicates += !seen.emplace(static_cast<int>(e.side), e.valuation).second;
      }
      cache_mismatch += checks != r->cache.size();
    }
  }
  return {duplicates == 0 && cache_mismatch == 0 && disagreements == 0,
          "specs=50 decided=" + std::to_string(decided) + " duplicate-checks=" + std::to_string(duplicates) +
              " cache-mismatches=" + std::to_string(cache_mismatch) +
              " path-disagreements=" + std::to_string(disagreements)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"running example end-to-end", running_example},
      {"two-request validity", two_request_validity},
      {"three-sensor feasibility", three_sensors},
      {"output re-encoding", error_handling_reencoding},
      {"Bernstein properties", bernstein_properties},
      {"automata cross-validation", automata_cross_validation},
      {"game solver oracle", game_oracle},
      {"CEGAR invariants", cegar_invariants},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << "criterion " << i + 1 << " " << (o.pass ? "PASS" : "FAIL") << " " << criteria[i].first << ": "
              << o.detail << " (" << fmt_seconds(seconds_since(t0)) << ")" << std::endl;
    failures += !o.pass;
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
