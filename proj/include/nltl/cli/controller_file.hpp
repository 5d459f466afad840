#pragma once

#include "nltl/abstraction/abstraction.hpp"
#include "nltl/cegar/cegar.hpp"
#include "nltl/games/strategy.hpp"
#include "nltl/speclang/document.hpp"

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nltl::cli {

/// Malformed controller or counter-strategy file; the message names the line.
class FileFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A synthesized controller with everything needed to run it: the decoder
/// for re-encoded outputs and the source document, whose predicates give the
/// predicate table and whose guarantees drive the simulation monitor.
struct ControllerFile {
  std::string spec_hash;
  std::string algorithm;
  std::size_t bound = 0;
  std::vector<std::string> refinements;  // "assumption ALWAYS !(...)" / "guarantee ..."
  games::MealyController controller;     // over the abstract inputs and the (encoded) outputs
  abstraction::MultiplexerTable multiplexer;
  spec::SpecDocument source;

  bool operator==(const ControllerFile&) const = default;
};

/// An environment spoiler in the same layout, with the theory witnesses of
/// the inputs it uses.
struct CounterStrategyFile {
  std::string spec_hash;
  std::string algorithm;
  std::size_t bound = 0;
  std::vector<std::string> refinements;
  games::CounterStrategy strategy;
  std::vector<cegar::Witness> witnesses;
  spec::SpecDocument source;

  bool operator==(const CounterStrategyFile&) const = default;
};

/// FNV-1a of the canonical spec text, as 16 hex digits.
std::string spec_hash(const spec::SpecDocument& doc);

/// Requires a Realizable (resp. UnrealizableWithinBound) result.
ControllerFile make_controller_file(const cegar::SynthesisResult& r, const spec::SpecDocument& doc);
CounterStrategyFile make_counter_file(const cegar::SynthesisResult& r, const spec::SpecDocument& doc);

/// Line-oriented text; bit strings list atom 0 first. Readers accept '-' in
/// input bit strings and expand it, and reject files whose predicate echo
/// disagrees with the embedded spec.
std::string write_controller(const ControllerFile& f);
ControllerFile read_controller(std::string_view text);
std::string write_counter_strategy(const CounterStrategyFile& f);
CounterStrategyFile read_counter_strategy(std::string_view text);

/// Predicate table of the embedded source document.
abstraction::PredicateTable predicate_table(const spec::SpecDocument& source);

std::string to_dot(const games::MealyController& m, const std::string& name = "controller");
std::string to_dot(const games::CounterStrategy& cs, const std::string& name = "counter");

}  // namespace nltl::cli
