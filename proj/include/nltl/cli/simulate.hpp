#pragma once

#include "nltl/cli/controller_file.hpp"
#include "nltl/cli/monitor.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace nltl::cli {

struct SimulationOptions {
  std::size_t steps = 1000;
  std::uint64_t seed = 1;
  /// Input predicate valuation forced every `inject_every` steps (at steps
  /// inject_every - 1, 2 * inject_every - 1, ...), bypassing the sampler.
  std::optional<Valuation> inject;
  std::size_t inject_every = 0;
  /// Resampling attempts when the controller has no move for a sampled input.
  std::size_t max_resamples = 64;
};

struct SimulationStep {
  std::vector<Rational> sample;  // input-side reals; empty when injected
  Letter input = 0;              // over the abstract inputs
  Letter output = 0;             // over the original outputs, decoded
  std::size_t state = 0;         // controller state before the step
  bool injected = false;
  bool covered = true;  // false: the controller had no move; it emitted all-false and stayed put
};

struct SimulationTrace {
  std::vector<std::string> sample_vars;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::vector<SimulationStep> steps;
  MonitorReport report;  // over the source document's guarantees
};

/// Draws uniform samples of the input-side reals as dyadic rationals with
/// 20 fractional bits and fair coins for Boolean inputs, evaluates the input
/// predicates exactly, steps the controller and decodes its outputs, then
/// monitors the source guarantees. Deterministic in the seed.
SimulationTrace simulate(const ControllerFile& f, const SimulationOptions& opts = {});

/// One line per step followed by a summary block.
std::string format_trace(const SimulationTrace& trace);

}  // namespace nltl::cli
