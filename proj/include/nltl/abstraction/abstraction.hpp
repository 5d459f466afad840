#pragma once

#include "nltl/bernstein/box.hpp"
#include "nltl/bernstein/constraint.hpp"
#include "nltl/speclang/document.hpp"
#include "nltl/valuation.hpp"

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nltl::abstraction {

using spec::Formula;
using spec::Side;

/// Real variables owned by one side, and their box.
struct SideDomain {
  std::vector<std::string> vars;
  bernstein::Box box;

  bool operator==(const SideDomain&) const = default;
};

/// A predicate atom with its constraint reindexed over the variables of its side.
struct PredicateEntry {
  std::string atom;
  bernstein::PolyConstraint constraint;
  Side side = Side::Input;

  bool operator==(const PredicateEntry&) const = default;
};

struct PredicateTable {
  std::vector<PredicateEntry> entries;  // declaration order
  SideDomain input;
  SideDomain output;

  bool empty() const { return entries.empty(); }
  const PredicateEntry* find(std::string_view atom) const;
  std::vector<std::string> atoms(Side side) const;
  const SideDomain& domain(Side side) const { return side == Side::Input ? input : output; }

  bool operator==(const PredicateTable&) const = default;
};

struct Refinement {
  Side side = Side::Input;  // Input: an assumption was added; Output: a guarantee
  Valuation valuation;      // over the predicate atoms of that side
  Formula formula;          // ALWAYS !(cube)

  bool operator==(const Refinement&) const = default;
};

/// Purely Boolean specification. Predicate atoms appear as ordinary Boolean
/// inputs or outputs and are remembered in `input_predicates` /
/// `output_predicates`; `source` is the document the abstraction came from.
struct PseudoBooleanSpec {
  spec::SpecDocument doc;
  std::shared_ptr<const spec::SpecDocument> source;
  std::vector<std::string> input_predicates;
  std::vector<std::string> output_predicates;
  std::vector<Refinement> refinements;

  const std::vector<std::string>& inputs() const { return doc.boolean_inputs; }
  const std::vector<std::string>& outputs() const { return doc.boolean_outputs; }
  /// Bits of the predicate atoms within the input (resp. output) letter.
  Letter predicate_mask(Side side) const;
};

/// Replaces every predicate by a free Boolean atom of its side. Inputs are
/// the Boolean inputs followed by input predicates, likewise for outputs.
std::pair<PseudoBooleanSpec, PredicateTable> abstract_spec(const spec::SpecDocument& doc);

/// Thrown when a valuation has already been refined away.
class DuplicateRefinement : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Conjunction of the atoms or their negations, in the given atom order.
Formula cube_formula(const Valuation& v, const std::vector<std::string>& atoms);

/// Appends the assumption ALWAYS !(cube of v). `v` must assign exactly the
/// input predicate atoms; throws std::invalid_argument otherwise and
/// DuplicateRefinement if v was refined before.
PseudoBooleanSpec refine_with_assumption(const PseudoBooleanSpec& spec, const Valuation& v);

/// Appends the guarantee ALWAYS !(cube of w) over the output predicate atoms.
PseudoBooleanSpec refine_with_guarantee(const PseudoBooleanSpec& spec, const Valuation& w);

/// Decoder from code-words over `encoded` to valuations of `original`.
/// Rows are sorted by code-word in counting order.
struct MultiplexerTable {
  std::vector<std::string> encoded;
  std::vector<std::string> original;
  std::vector<std::pair<Letter, Letter>> rows;

  bool empty() const { return rows.empty(); }
  std::optional<Letter> decode(Letter code) const;
  std::optional<Letter> encode(Letter original_letter) const;

  bool operator==(const MultiplexerTable&) const = default;
};

/// Orders letters over `width` atoms as tuples, the first atom most significant.
bool tuple_less(Letter a, Letter b, std::size_t width);

/// The k-th code-word over `width` atoms in binary counting order, the first
/// atom being the most significant digit.
Letter code_word(std::size_t k, std::size_t width);

/// Thrown when the propositional output guarantees admit no output at all.
class InfeasibleOutputs : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Output re-encoding. Guarantees ALWAYS(φ) with φ propositional over output
/// atoms only define the admissible output set K. When ceil(log2 |K|) is
/// below the number of outputs, the outputs are replaced by fresh atoms
/// sig1..sigm: K is enumerated in tuple order of the original valuations and
/// code-words are handed out in counting order; each original output becomes
/// the disjunction of the code-words decoding to true for it; the collected
/// guarantees are dropped and, if |K| < 2^m, replaced by one guarantee that
/// the code-word is in use. Otherwise the spec is returned unchanged with an
/// empty table. Throws InfeasibleOutputs if K is empty.
std::pair<PseudoBooleanSpec, MultiplexerTable> reencode_outputs(const PseudoBooleanSpec& spec);

/// "01 -> stop=0,grant1=1,..." per row.
std::string format_multiplexer(const MultiplexerTable& t);

}  // namespace nltl::abstraction
