#pragma once

#include "nltl/speclang/formula.hpp"
#include "nltl/valuation.hpp"

#include <string>
#include <vector>

namespace nltl::cli {

/// Kleene truth values. Unknown means the finite trace does not decide the
/// formula: some extension satisfies it and some violates it, as far as the
/// three-valued evaluation can tell.
enum class Truth { False, Unknown, True };

/// Value of `f` at every position of the finite trace, with every position
/// past the end treated as Unknown. A False or True verdict holds on every
/// infinite extension of the trace.
std::vector<Truth> evaluate_finite(const spec::Formula& f, const std::vector<std::string>& atoms,
                                   const std::vector<Letter>& trace);

/// ALWAYS φ where φ uses only Boolean connectives and NEXT.
bool is_bounded_safety(const spec::Formula& g);

struct GuaranteeStatus {
  std::string text;
  bool safety = false;  // see is_bounded_safety
  std::vector<std::size_t> violated;  // positions where the body is False, ascending
  std::size_t pending = 0;            // liveness only: positions still undecided at the end
};

struct MonitorReport {
  std::vector<GuaranteeStatus> guarantees;
  /// Violated positions summed over guarantees.
  std::size_t violations() const;
  std::size_t pending() const;
};

/// Checks each guarantee on a finite trace of letters over `atoms`. A
/// guarantee ALWAYS φ is judged position by position; any other guarantee
/// at position 0. Undecided safety positions at the end of the trace are not
/// reported, undecided liveness positions count as pending.
MonitorReport monitor(const std::vector<spec::Formula>& guarantees, const std::vector<std::string>& atoms,
                      const std::vector<Letter>& trace);

/// Indices of the guarantees violated at position `t`.
std::vector<std::size_t> violations_at(const MonitorReport& report, std::size_t t);

}  // namespace nltl::cli
