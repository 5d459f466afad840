#pragma once

#include "nltl/abstraction/abstraction.hpp"
#include "nltl/automata/buchi.hpp"
#include "nltl/bernstein/checker.hpp"
#include "nltl/games/strategy.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace nltl::cegar {

using abstraction::PredicateTable;
using abstraction::PseudoBooleanSpec;
using bernstein::FeasibilityVerdict;
using spec::Side;

enum class Algorithm { Buchi, Safety };
std::string_view to_string(Algorithm a);

/// How an infeasible input valuation is removed from later games.
enum class RefinePath {
  EdgeMarking,  // keep the built arenas and mark the matching env moves absent
  Rebuild,      // rebuild every arena from the refined specification
};

struct CegarConfig {
  Algorithm algorithm = Algorithm::Safety;
  /// Unroll bounds tried in order for the safety algorithm.
  std::vector<std::size_t> bounds{1, 2, 4, 8, 16};
  bernstein::CheckConfig theory;
  std::size_t max_refinements = 64;
  bool reencode = true;
  RefinePath refine_path = RefinePath::EdgeMarking;
  /// Refine with every infeasible valuation of an iteration instead of the first.
  bool batch_refinement = false;
  games::BuildLimits limits;
};

/// Bounds 1, 2, 4, ... up to and including max_bound (at least {1}).
std::vector<std::size_t> doubling_bounds(std::size_t max_bound);

/// Theory verdicts per valuation of the predicate atoms of one side. A
/// valuation is inserted once and never replaced.
class CheckedCache {
 public:
  const FeasibilityVerdict* find(Side side, const Valuation& v) const;
  /// Throws std::logic_error if `v` is already present.
  void insert(Side side, const Valuation& v, FeasibilityVerdict verdict);
  std::size_t size() const { return input_.size() + output_.size(); }
  const std::map<Valuation, FeasibilityVerdict>& entries(Side side) const {
    return side == Side::Input ? input_ : output_;
  }
  /// Keys with a Feasible verdict.
  std::vector<Valuation> proven(Side side) const;

 private:
  std::map<Valuation, FeasibilityVerdict> input_;
  std::map<Valuation, FeasibilityVerdict> output_;
};

struct TranscriptEvent {
  enum class Kind { Solve, Check, Refine, Verdict };
  Kind kind = Kind::Solve;
  std::string text;  // the payload after the keyword
  // Check events only.
  Side side = Side::Input;
  Valuation valuation;
};

struct Transcript {
  std::vector<TranscriptEvent> events;

  void add(TranscriptEvent::Kind kind, std::string text);
  /// One event per line: "SOLVE ...", "CHECK ...", "REFINE ...", "VERDICT ...".
  std::string format() const;
};

/// Number of theory checks recorded in the transcript.
std::size_t count_theory_checks(const Transcript& t);

/// A feasibility witness for one predicate valuation.
struct Witness {
  Side side = Side::Input;
  Valuation valuation;
  std::vector<Rational> point;  // over the side's variables

  bool operator==(const Witness&) const = default;
};

struct SynthesisResult {
  enum class Kind { Realizable, UnrealizableWithinBound, Unknown };
  Kind kind = Kind::Unknown;

  Algorithm algorithm = Algorithm::Safety;
  std::size_t bound = 0;  // the deciding unroll bound; 0 for the Büchi algorithm
  PseudoBooleanSpec spec;  // abstraction with all refinements, before re-encoding
  PredicateTable predicates;
  abstraction::MultiplexerTable multiplexer;

  std::optional<games::MealyController> controller;  // Realizable
  std::optional<games::CounterStrategy> counter;     // UnrealizableWithinBound
  /// Realizable: one witness per reachable output predicate valuation.
  /// Unrealizable: one per input predicate valuation the counter-strategy uses.
  std::vector<Witness> witnesses;
  std::string reason;  // Unknown

  std::size_t iterations = 0;
  CheckedCache cache;
  Transcript transcript;

  std::size_t refinements() const { return spec.refinements.size(); }
};

std::string_view to_string(SynthesisResult::Kind k);

/// The CEGAR loop: abstract, solve, and on a controller win validate the
/// emitted output predicate valuations (refining by guarantee on failure); on
/// an environment win select counter-strategy inputs and check them,
/// refining by assumption on the first infeasible one. Theory Unknown, an
/// oversized arena, or the refinement cap end the run with Unknown.
SynthesisResult synthesize(const spec::SpecDocument& doc, const CegarConfig& cfg = {});

/// Constraints of the atoms of `v`: the predicate's constraint where the atom
/// is true, its negation where false, in table order. Throws
/// std::invalid_argument on atoms missing from the table or mixed sides.
std::vector<bernstein::PolyConstraint> valuation_to_constraints(const Valuation& v, const PredicateTable& table);

struct OutputValidation {
  std::vector<Valuation> infeasible;  // ascending
  bool unknown = false;
  std::string reason;
};

/// Checks every output predicate valuation the controller can emit (after
/// decoding through the multiplexer) that is not cached yet. Cached and new
/// verdicts both count. No output predicates: nothing to do.
OutputValidation validate_controller_outputs(const games::MealyController& m,
                                             const abstraction::MultiplexerTable& mux,
                                             const PredicateTable& table, CheckedCache& cache,
                                             const bernstein::CheckConfig& cfg = {}, Transcript* transcript = nullptr);

/// The controller with its encoded outputs replaced by the decoded original
/// outputs. Returns `m` unchanged for an empty table.
games::MealyController decode_outputs(const games::MealyController& m, const abstraction::MultiplexerTable& mux);

/// Assumptions of the form ALWAYS φ with φ propositional over `inputs` only.
bool is_input_invariant(const spec::Formula& f, const std::vector<std::string>& inputs);

/// Input letters satisfying every input invariant among `assumptions`.
games::InputFilter input_filter(const std::vector<spec::Formula>& assumptions, const std::vector<std::string>& inputs);

/// The game formula: the non-invariant assumptions imply the guarantees.
spec::Formula game_formula(const spec::SpecDocument& doc);

/// The game formula split along the top-level conjuncts of the guarantees,
/// each guarded by the non-invariant assumptions. Never empty.
std::vector<spec::Formula> obligations(const spec::SpecDocument& doc);

/// Union of the automata of the negated obligations: it accepts exactly the
/// words violating the game formula, with far fewer states than the
/// automaton of the whole negation.
automata::BuchiAutomaton negated_automaton(const spec::SpecDocument& doc);

}  // namespace nltl::cegar
