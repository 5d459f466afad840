#pragma once

#include "nltl/speclang/document.hpp"

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nltl::spec {

struct Diagnostic {
  enum class Severity { Warning, Error };

  Severity severity = Severity::Error;
  std::size_t line = 0;    // 1-based; 0 when not tied to a position
  std::size_t column = 0;  // 1-based
  std::string message;
};

/// "3:14: error: undeclared atom 'grnat1'".
std::string to_string(const Diagnostic& d);

class SpecError : public std::runtime_error {
 public:
  explicit SpecError(std::vector<Diagnostic> diagnostics);
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

/// Parses a specification file. Line-oriented: each non-blank line is one
/// of
///
///   INPUT a, b, ...
///   OUTPUT c, d, ...
///   REAL [INPUT|OUTPUT] x IN [lo, hi]
///   PRED [INPUT|OUTPUT] p := <poly> <rel> <poly>
///   ASSUME <formula>
///   <formula>                      (a guarantee)
///
/// and "##" starts a comment running to the end of the line. Declarations may
/// appear after their uses. Throws SpecError carrying every error found;
/// warnings (such as predicate atoms listed again under INPUT) go to
/// `warnings` when it is non-null.
SpecDocument parse_spec(std::string_view text, std::vector<Diagnostic>* warnings = nullptr);

/// Parses a single formula. Atoms are not checked against any declaration.
/// Throws SpecError.
Formula parse_formula(std::string_view text);

/// Parses "<poly> <rel> <poly>" over the named variables (index = position
/// in `variables`), folding the right-hand side to zero. Throws SpecError.
bernstein::PolyConstraint parse_constraint(std::string_view text, const std::vector<std::string>& variables);

/// Canonical text: INPUT, OUTPUT, REAL, PRED, ASSUME lines, then one line
/// per guarantee. parse_spec(format_spec(d)) == d for every valid d.
std::string format_spec(const SpecDocument& doc);

}  // namespace nltl::spec
