#include "nltl/cegar/cegar.hpp"

#include "nltl/automata/buchi.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace nltl::cegar {

using abstraction::MultiplexerTable;
using games::GameArena;
using spec::Formula;
using Kind = SynthesisResult::Kind;

std::string_view to_string(Algorithm a) { return a == Algorithm::Buchi ? "buchi" : "safety"; }

std::string_view to_string(SynthesisResult::Kind k) {
  switch (k) {
    case Kind::Realizable: return "realizable";
    case Kind::UnrealizableWithinBound: return "unrealizable-within-bound";
    case Kind::Unknown: return "unknown";
  }
  return "?";
}

std::vector<std::size_t> doubling_bounds(std::size_t max_bound) {
  std::vector<std::size_t> out{1};
  while (out.back() * 2 <= max_bound) out.push_back(out.back() * 2);
  return out;
}

const FeasibilityVerdict* CheckedCache::find(Side side, const Valuation& v) const {
  const auto& m = entries(side);
  auto it = m.find(v);
  return it == m.end() ? nullptr : &it->second;
}

void CheckedCache::insert(Side side, const Valuation& v, FeasibilityVerdict verdict) {
  auto& m = side == Side::Input ? input_ : output_;
  if (!m.emplace(v, std::move(verdict)).second)
    throw std::logic_error("valuation " + format_valuation(v) + " was already checked");
}

std::vector<Valuation> CheckedCache::proven(Side side) const {
  std::vector<Valuation> out;
  for (const auto& [v, verdict] : entries(side))
    if (verdict.feasible()) out.push_back(v);
  return out;
}

void Transcript::add(TranscriptEvent::Kind kind, std::string text) {
  TranscriptEvent e;
  e.kind = kind;
  e.text = std::move(text);
  events.push_back(std::move(e));
}

std::string Transcript::format() const {
  std::string out;
  for (const auto& e : events) {
    switch (e.kind) {
      case TranscriptEvent::Kind::Solve: out += "SOLVE "; break;
      case TranscriptEvent::Kind::Check: out += "CHECK "; break;
      case TranscriptEvent::Kind::Refine: out += "REFINE "; break;
      case TranscriptEvent::Kind::Verdict: out += "VERDICT "; break;
    }
    out += e.text + "\n";
  }
  return out;
}

std::size_t count_theory_checks(const Transcript& t) {
  return static_cast<std::size_t>(std::count_if(t.events.begin(), t.events.end(), [](const TranscriptEvent& e) {
    return e.kind == TranscriptEvent::Kind::Check;
  }));
}

std::vector<bernstein::PolyConstraint> valuation_to_constraints(const Valuation& v, const PredicateTable& table) {
  std::optional<Side> side;
  for (const auto& [atom, value] : v) {
    const auto* e = table.find(atom);
    if (!e) throw std::invalid_argument("'" + atom + "' is not a predicate atom");
    if (side && *side != e->side) throw std::invalid_argument("valuation mixes input and output predicates");
    side = e->side;
  }
  std::vector<bernstein::PolyConstraint> out;
  for (const auto& e : table.entries) {
    auto it = v.find(e.atom);
    if (it != v.end()) out.push_back(it->second ? e.constraint : e.constraint.negated());
  }
  return out;
}

namespace {

std::string format_point(const std::vector<Rational>& point, const std::vector<std::string>& vars) {
  std::string out = "(";
  for (std::size_t i = 0; i < point.size(); ++i) {
    if (i) out += ",";
    out += (i < vars.size() ? vars[i] + "=" : "") + nltl::to_string(point[i]);
  }
  return out + ")";
}

// Cached verdict, or a fresh check recorded in cache and transcript.
const FeasibilityVerdict& check(Side side, const Valuation& v, const PredicateTable& table, CheckedCache& cache,
                                const bernstein::CheckConfig& cfg, Transcript* transcript) {
  if (const auto* hit = cache.find(side, v)) return *hit;
  const auto constraints = valuation_to_constraints(v, table);
  FeasibilityVerdict verdict;
  if (constraints.empty()) {
    verdict.kind = FeasibilityVerdict::Kind::Feasible;
  } else {
    verdict = bernstein::check_feasibility(constraints, table.domain(side).box, cfg);
    if (transcript) {
      std::string text = std::string(spec::to_string(side)) + " " + format_valuation(v) + " " +
                         std::string(bernstein::to_string(verdict.kind));
      if (verdict.feasible()) text += " witness=" + format_point(verdict.witness, table.domain(side).vars);
      if (verdict.kind == FeasibilityVerdict::Kind::Unknown) text += " reason=\"" + verdict.reason + "\"";
      text += " subboxes=" + std::to_string(verdict.subboxes);
      TranscriptEvent e;
      e.kind = TranscriptEvent::Kind::Check;
      e.text = std::move(text);
      e.side = side;
      e.valuation = v;
      transcript->events.push_back(std::move(e));
    }
  }
  cache.insert(side, v, std::move(verdict));
  return *cache.find(side, v);
}

// Output predicate projections of the controller's reachable outputs, ascending.
std::vector<Letter> output_projections(const games::MealyController& m, const MultiplexerTable& mux,
                                       const std::vector<std::string>& preds) {
  const auto& outputs = mux.empty() ? m.outputs : mux.original;
  std::set<Letter> out;
  for (Letter o : m.reachable_outputs()) {
    Letter orig = o;
    if (!mux.empty()) {
      auto d = mux.decode(o);
      if (!d) throw std::logic_error("controller emits an unused code-word");
      orig = *d;
    }
    out.insert(project(orig, outputs, preds));
  }
  return {out.begin(), out.end()};
}

}  // namespace

OutputValidation validate_controller_outputs(const games::MealyController& m, const MultiplexerTable& mux,
                                             const PredicateTable& table, CheckedCache& cache,
                                             const bernstein::CheckConfig& cfg, Transcript* transcript) {
  OutputValidation out;
  const auto preds = table.atoms(Side::Output);
  if (preds.empty()) return out;
  for (Letter p : output_projections(m, mux, preds)) {
    Valuation v = to_valuation(p, preds);
    const auto& verdict = check(Side::Output, v, table, cache, cfg, transcript);
    if (verdict.infeasible()) {
      out.infeasible.push_back(std::move(v));
    } else if (!verdict.feasible()) {
      out.unknown = true;
      out.reason = "theory check undecided for outputs " + format_valuation(v) + ": " + verdict.reason;
      break;
    }
  }
  return out;
}

games::MealyController decode_outputs(const games::MealyController& m, const MultiplexerTable& mux) {
  if (mux.empty()) return m;
  games::MealyController out = m;
  out.outputs = mux.original;
  for (auto& row : out.table)
    for (auto& [input, step] : row) {
      auto d = mux.decode(step.output);
      if (!d) throw std::logic_error("controller emits an unused code-word");
      step.output = *d;
    }
  return out;
}

bool is_input_invariant(const Formula& f, const std::vector<std::string>& inputs) {
  if (f.op() != spec::Op::Always || !spec::is_propositional(f.lhs())) return false;
  for (const auto& a : spec::atoms(f.lhs()))
    if (std::find(inputs.begin(), inputs.end(), a) == inputs.end()) return false;
  return true;
}

games::InputFilter input_filter(const std::vector<Formula>& assumptions, const std::vector<std::string>& inputs) {
  std::vector<const Formula*> invariants;
  for (const auto& a : assumptions)
    if (is_input_invariant(a, inputs)) invariants.push_back(&a);
  if (invariants.empty()) return {};
  if (inputs.size() > 20) throw std::length_error("too many inputs to enumerate");
  games::InputFilter allowed(std::size_t{1} << inputs.size());
  for (Letter i = 0; i < allowed.size(); ++i) {
    auto value = [&](const std::string& a) {
      auto it = std::find(inputs.begin(), inputs.end(), a);
      return ((i >> (it - inputs.begin())) & 1U) != 0;
    };
    allowed[i] = std::all_of(invariants.begin(), invariants.end(),
                             [&](const Formula* f) { return spec::evaluate_propositional(f->lhs(), value); });
  }
  return allowed;
}

namespace {

std::vector<Formula> temporal_assumptions(const spec::SpecDocument& doc) {
  std::vector<Formula> rest;
  for (const auto& a : doc.assumptions)
    if (!is_input_invariant(a, doc.boolean_inputs)) rest.push_back(a);
  return rest;
}

void flatten_conjuncts(const Formula& f, std::vector<Formula>& out) {
  if (f.op() == spec::Op::And) {
    flatten_conjuncts(f.lhs(), out);
    flatten_conjuncts(f.rhs(), out);
  } else {
    out.push_back(f);
  }
}

}  // namespace

Formula game_formula(const spec::SpecDocument& doc) {
  auto rest = temporal_assumptions(doc);
  Formula g = spec::conjunction(doc.guarantees);
  return rest.empty() ? g : Formula::implies(spec::conjunction(rest), g);
}

std::vector<Formula> obligations(const spec::SpecDocument& doc) {
  std::vector<Formula> conjuncts;
  for (const auto& g : doc.guarantees) flatten_conjuncts(g, conjuncts);
  if (conjuncts.empty()) conjuncts.push_back(Formula::tt());
  auto rest = temporal_assumptions(doc);
  if (!rest.empty())
    for (auto& g : conjuncts) g = Formula::implies(spec::conjunction(rest), g);
  return conjuncts;
}

automata::BuchiAutomaton negated_automaton(const spec::SpecDocument& doc) {
  std::vector<automata::BuchiAutomaton> parts;
  for (const auto& f : obligations(doc)) parts.push_back(automata::negate_and_translate(f));
  return parts.size() == 1 ? std::move(parts.front()) : automata::disjoint_union(parts);
}

namespace {

// Env moves removed by an input refinement: those whose predicate bits match.
Cube refinement_cube(const Valuation& v, const std::vector<std::string>& inputs) {
  Cube c;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    auto it = v.find(inputs[i]);
    if (it == v.end()) continue;
    c.care |= Letter{1} << i;
    if (it->second) c.value |= Letter{1} << i;
  }
  return c;
}

struct CachedArena {
  GameArena arena;
  std::size_t marked = 0;  // input refinements applied so far
};

class Driver {
 public:
  Driver(const spec::SpecDocument& doc, const CegarConfig& cfg) : cfg_(cfg) {
    auto [pb, table] = abstraction::abstract_spec(doc);
    r_.spec = std::move(pb);
    r_.predicates = std::move(table);
    r_.algorithm = cfg.algorithm;
    user_assumptions_ = r_.spec.doc.assumptions.size();
    if (cfg.algorithm == Algorithm::Buchi) {
      bounds_ = {0};
    } else {
      bounds_ = cfg.bounds;
      if (bounds_.empty()) throw std::invalid_argument("no unroll bounds configured");
    }
  }

  SynthesisResult run() {
    for (;;) {
      ++r_.iterations;
      if (!iterate()) break;
    }
    return std::move(r_);
  }

 private:
  // One abstraction-solve-check round; false once a verdict is reached.
  bool iterate() {
    PseudoBooleanSpec game_spec = r_.spec;
    MultiplexerTable mux;
    if (cfg_.reencode) {
      try {
        std::tie(game_spec, mux) = abstraction::reencode_outputs(r_.spec);
      } catch (const abstraction::InfeasibleOutputs&) {
        // Nothing to encode; the game itself shows there is no valid output.
      }
    }

    const bool marking = cfg_.refine_path == RefinePath::EdgeMarking;
    std::vector<Formula> filter_source = game_spec.doc.assumptions;
    if (marking) filter_source.resize(user_assumptions_);
    const auto& inputs = game_spec.inputs();
    const auto& outputs = game_spec.outputs();
    games::InputFilter filter;
    Formula formula;
    try {
      filter = input_filter(filter_source, inputs);
      formula = game_formula(game_spec.doc);
    } catch (const std::length_error& e) {
      return unknown(e.what());
    }

    std::string key = spec::to_string(formula) + "|";
    for (bool b : filter) key += b ? '1' : '0';
    for (const auto& o : outputs) key += "|" + o;
    if (!marking || key != arena_key_) {
      arenas_.clear();
      automaton_.reset();
      arena_key_ = key;
    }

    GameArena* g = nullptr;
    games::Solution sol;
    std::size_t bound = 0;
    bool ctrl_wins = false;
    for (std::size_t k : bounds_) {
      bound = k;
      try {
        g = &arena(k, game_spec.doc, formula, filter);
      } catch (const std::length_error& e) {
        return unknown(std::string("arena too large: ") + e.what());
      }
      sol = games::solve(*g);
      ctrl_wins = sol.ctrl_wins_initial(*g);
      r_.transcript.add(TranscriptEvent::Kind::Solve,
                        "iteration=" + std::to_string(r_.iterations) + " algorithm=" +
                            std::string(to_string(cfg_.algorithm)) + " bound=" + std::to_string(k) +
                            " nodes=" + std::to_string(g->size()) + " edges=" + std::to_string(g->edge_count()) +
                            " winner=" + (ctrl_wins ? "ctrl" : "env"));
      if (ctrl_wins) break;
    }
    r_.bound = bound;
    return ctrl_wins ? on_ctrl_win(*g, sol, mux) : on_env_win(*g, sol);
  }

  GameArena& arena(std::size_t k, const spec::SpecDocument& doc, const Formula& formula,
                   const games::InputFilter& filter) {
    const auto& inputs = doc.boolean_inputs;
    const auto& outputs = doc.boolean_outputs;
    auto it = arenas_.find(k);
    if (it == arenas_.end()) {
      if (!automaton_) {
        automaton_ = cfg_.algorithm == Algorithm::Buchi ? automata::ltl_to_buchi(formula) : negated_automaton(doc);
      }
      GameArena g = cfg_.algorithm == Algorithm::Buchi
                        ? games::build_buchi_game(*automaton_, inputs, outputs, filter, cfg_.limits)
                        : games::build_safety_game(*automaton_, k, inputs, outputs, filter, cfg_.limits);
      it = arenas_.emplace(k, CachedArena{std::move(g), 0}).first;
    }
    CachedArena& c = it->second;
    if (cfg_.refine_path == RefinePath::EdgeMarking) {
      std::size_t seen = 0;
      for (const auto& ref : r_.spec.refinements) {
        if (ref.side != Side::Input) continue;
        if (seen++ < c.marked) continue;
        games::mark_edges_absent(c.arena, refinement_cube(ref.valuation, inputs));
      }
      c.marked = seen;
    }
    return c.arena;
  }

  bool on_ctrl_win(const GameArena& g, const games::Solution& sol, const MultiplexerTable& mux) {
    auto m = games::extract_controller(g, sol);
    auto val = validate_controller_outputs(m, mux, r_.predicates, r_.cache, cfg_.theory, &r_.transcript);
    if (val.unknown) return unknown(val.reason);
    if (val.infeasible.empty()) {
      const auto preds = r_.predicates.atoms(Side::Output);
      if (!preds.empty())
        for (Letter p : output_projections(m, mux, preds)) add_witness(Side::Output, to_valuation(p, preds));
      r_.controller = std::move(m);
      r_.multiplexer = mux;
      return verdict(Kind::Realizable);
    }
    if (!cfg_.batch_refinement) val.infeasible.resize(1);
    for (const auto& v : val.infeasible)
      if (!refine(Side::Output, v)) return false;
    return true;
  }

  bool on_env_win(const GameArena& g, const games::Solution& sol) {
    auto cs = games::extract_counter_strategy(g, sol);
    const auto& preds = r_.spec.input_predicates;
    const auto& inputs = r_.spec.inputs();
    const Letter mask = r_.spec.predicate_mask(Side::Input);
    auto valuation_of = [&](Letter projection) { return to_valuation(project(projection, inputs, preds), preds); };

    if (mask == 0) {
      r_.counter = std::move(cs);
      return verdict(Kind::UnrealizableWithinBound);
    }
    auto status = [&](Letter p) {
      const auto* v = r_.cache.find(Side::Input, valuation_of(p));
      if (!v) return games::TheoryStatus::Unchecked;
      return v->feasible() ? games::TheoryStatus::Feasible : games::TheoryStatus::Infeasible;
    };
    auto sel = games::select_counter_inputs(cs, mask, status);

    std::vector<Valuation> infeasible;
    for (Letter p : sel.unproven) {
      Valuation v = valuation_of(p);
      const auto& verdict = check(Side::Input, v, r_.predicates, r_.cache, cfg_.theory, &r_.transcript);
      if (verdict.kind == FeasibilityVerdict::Kind::Unknown)
        return unknown("theory check undecided for inputs " + format_valuation(v) + ": " + verdict.reason);
      if (verdict.infeasible()) {
        infeasible.push_back(std::move(v));
        if (!cfg_.batch_refinement) break;
      }
    }
    if (infeasible.empty()) {
      std::set<Letter> used;
      for (const auto& st : sel.restricted.states)
        for (const auto& c : st.candidates) used.insert(c.input & mask);
      for (Letter p : used) add_witness(Side::Input, valuation_of(p));
      r_.counter = std::move(sel.restricted);
      return verdict(Kind::UnrealizableWithinBound);
    }
    for (const auto& v : infeasible)
      if (!refine(Side::Input, v)) return false;
    return true;
  }

  bool refine(Side side, const Valuation& v) {
    if (r_.spec.refinements.size() >= cfg_.max_refinements) {
      unknown("refinement cap of " + std::to_string(cfg_.max_refinements) + " reached");
      return false;
    }
    r_.spec = side == Side::Input ? abstraction::refine_with_assumption(r_.spec, v)
                                  : abstraction::refine_with_guarantee(r_.spec, v);
    r_.transcript.add(TranscriptEvent::Kind::Refine, std::string(side == Side::Input ? "assumption " : "guarantee ") +
                                                         spec::to_string(r_.spec.refinements.back().formula));
    return true;
  }

  void add_witness(Side side, Valuation v) {
    const auto* verdict = r_.cache.find(side, v);
    r_.witnesses.push_back({side, std::move(v), verdict ? verdict->witness : std::vector<Rational>{}});
  }

  bool verdict(Kind kind) {
    r_.kind = kind;
    std::string text(to_string(kind));
    if (kind != Kind::Unknown && cfg_.algorithm == Algorithm::Safety) text += " bound=" + std::to_string(r_.bound);
    if (kind == Kind::Unknown) text += " reason=\"" + r_.reason + "\"";
    text += " iterations=" + std::to_string(r_.iterations) + " refinements=" + std::to_string(r_.refinements()) +
            " checks=" + std::to_string(count_theory_checks(r_.transcript));
    r_.transcript.add(TranscriptEvent::Kind::Verdict, std::move(text));
    return false;
  }

  bool unknown(std::string reason) {
    r_.reason = std::move(reason);
    r_.controller.reset();
    r_.counter.reset();
    r_.witnesses.clear();
    return verdict(Kind::Unknown);
  }

  const CegarConfig& cfg_;
  SynthesisResult r_;
  std::size_t user_assumptions_ = 0;
  std::vector<std::size_t> bounds_;
  std::string arena_key_;
  std::optional<automata::BuchiAutomaton> automaton_;
  std::map<std::size_t, CachedArena> arenas_;
};

}  // namespace

SynthesisResult synthesize(const spec::SpecDocument& doc, const CegarConfig& cfg) { return Driver(doc, cfg).run(); }

}  // namespace nltl::cegar
