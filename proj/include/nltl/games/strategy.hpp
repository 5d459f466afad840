#pragma once

#include "nltl/games/solver.hpp"

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace nltl::games {

struct MealyStep {
  Letter output = 0;
  std::size_t next = 0;

  bool operator==(const MealyStep&) const = default;
};

/// Deterministic transducer. A step consumes an input valuation and emits an
/// output valuation; inputs missing from a state's table are ruled out by the
/// assumptions in force when the controller was built.
struct MealyController {
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::vector<std::map<Letter, MealyStep>> table;
  std::vector<std::string> labels;
  std::size_t initial = 0;

  std::size_t size() const { return table.size(); }
  /// nullptr when the input is not permitted in `state`.
  const MealyStep* step(std::size_t state, Letter input) const;
  /// Output valuations on transitions reachable from the initial state, sorted.
  std::vector<Letter> reachable_outputs() const;

  bool operator==(const MealyController&) const = default;
};

struct CounterResponse {
  Letter output = 0;
  std::size_t next = 0;  // state index

  bool operator==(const CounterResponse&) const = default;
};

struct CounterCandidate {
  Letter input = 0;
  std::vector<CounterResponse> responses;  // every controller answer; empty if it has none

  bool operator==(const CounterCandidate&) const = default;
};

struct CounterState {
  Node node = 0;
  bool won = false;  // unsafe node: the play is already lost for the controller
  std::vector<CounterCandidate> candidates;  // sorted by input
  std::string label;

  bool operator==(const CounterState&) const = default;
};

/// Environment spoiler. Each state lists every input that keeps the
/// environment's progress measure, so fixing any one candidate per state
/// still wins for the environment.
struct CounterStrategy {
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::vector<CounterState> states;
  std::size_t initial = 0;

  std::size_t size() const { return states.size(); }
  bool operator==(const CounterStrategy&) const = default;
};

/// Controller states are the env nodes reachable under the ctrl strategy.
/// Throws std::invalid_argument if the initial node is not ctrl-winning.
MealyController extract_controller(const GameArena& g, const Solution& s);

/// States are the env nodes reachable through candidate inputs and arbitrary
/// controller answers. Throws std::invalid_argument if the initial node is
/// ctrl-winning.
CounterStrategy extract_counter_strategy(const GameArena& g, const Solution& s);

enum class TheoryStatus { Unchecked, Feasible, Infeasible };

struct CounterSelection {
  CounterStrategy restricted;
  /// Projections (input & predicate mask) chosen without a Feasible verdict,
  /// ascending. Empty means the strategy is genuine as far as the cache knows.
  std::vector<Letter> unproven;
};

/// Chooses inputs for the counter-strategy. If every state has a candidate
/// whose projection is known Feasible, the strategy is restricted to those.
/// Otherwise projections are picked greedily, each time the Unchecked one
/// offered by the most still-uncovered states (ties to the smaller letter),
/// until every state is covered. `status` is asked about projections only.
/// The restricted strategy keeps the candidates whose projection is Feasible
/// or chosen, pruned to the states still reachable.
CounterSelection select_counter_inputs(const CounterStrategy& cs, Letter predicate_mask,
                                       const std::function<TheoryStatus(Letter)>& status);

}  // namespace nltl::games
