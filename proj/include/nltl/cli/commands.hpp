#pragma once

#include "nltl/cegar/cegar.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace nltl::cli {

/// Process exit codes shared by every command.
enum ExitCode : int {
  kExitRealizable = 0,
  kExitUnrealizable = 1,
  kExitUnknown = 2,
  kExitInputError = 3,
};

struct SynthOptions {
  std::string spec_path;
  cegar::Algorithm algorithm = cegar::Algorithm::Safety;
  std::size_t max_bound = 16;
  unsigned depth = 24;
  std::string out;         // controller or counter-strategy file; empty: <spec stem>.ctrl / .counter
  std::string dot;         // Graphviz rendering of the result; empty: none
  std::string transcript;  // CEGAR transcript; empty: none
};

/// Exit 0 with a controller file, 1 with a counter-strategy file and a
/// witness report, 2 on Unknown, 3 on unreadable or malformed input. A
/// summary including the number of theory checks goes to `out`.
int cmd_synth(const SynthOptions& opts, std::ostream& out, std::ostream& err);

struct CheckOptions {
  std::string file;                      // optional constraint file
  std::vector<std::string> vars;         // "x=0:4"
  std::vector<std::string> feasible;     // conjunction to satisfy
  std::string valid;                     // "c" or "c1 && c2 -> c"
  unsigned depth = 24;
};

/// Standalone theory check. The file holds "REAL x IN [lo, hi]" lines and
/// one "FEASIBLE c1 && c2 ..." or "VALID c1 && ... -> c" line; the inline
/// options do the same. Exit 0 when decided, 2 on Unknown, 3 on bad input.
int cmd_check(const CheckOptions& opts, std::ostream& out, std::ostream& err);

/// Prints the pseudo-Boolean abstraction with the predicate table as comments.
int cmd_abstract(const std::string& spec_path, std::ostream& out, std::ostream& err);

/// Prints the re-encoded abstraction and the multiplexer rows as comments, or
/// "no re-encoding applicable". Exit 1 when no output valuation is admissible.
int cmd_reencode(const std::string& spec_path, std::ostream& out, std::ostream& err);

struct SimulateOptions {
  std::string controller_path;
  std::size_t steps = 1000;
  std::uint64_t seed = 1;
  std::string inject;  // "req1=1,req2=1"; empty: none
  std::size_t inject_every = 10;
};

/// Prints the trace and monitor summary. Exit 0 without violations, 1 with
/// some, 3 on bad input.
int cmd_simulate(const SimulateOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace nltl::cli
