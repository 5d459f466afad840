#include "nltl/abstraction/abstraction.hpp"

#include <algorithm>
#include <set>

namespace nltl::abstraction {

using spec::SpecDocument;

const PredicateEntry* PredicateTable::find(std::string_view atom) const {
  for (const auto& e : entries)
    if (e.atom == atom) return &e;
  return nullptr;
}

std::vector<std::string> PredicateTable::atoms(Side side) const {
  std::vector<std::string> out;
  for (const auto& e : entries)
    if (e.side == side) out.push_back(e.atom);
  return out;
}

Letter PseudoBooleanSpec::predicate_mask(Side side) const {
  const auto& atoms = side == Side::Input ? inputs() : outputs();
  const auto& preds = side == Side::Input ? input_predicates : output_predicates;
  Letter mask = 0;
  for (std::size_t i = 0; i < atoms.size(); ++i)
    if (std::find(preds.begin(), preds.end(), atoms[i]) != preds.end()) mask |= Letter{1} << i;
  return mask;
}

std::pair<PseudoBooleanSpec, PredicateTable> abstract_spec(const SpecDocument& doc) {
  PredicateTable table;
  const std::size_t n = doc.real_vars.size();
  std::vector<std::size_t> local(n, SIZE_MAX);
  std::vector<bernstein::Interval> in_box, out_box;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& v = doc.real_vars[i];
    SideDomain& d = v.side == Side::Input ? table.input : table.output;
    auto& box = v.side == Side::Input ? in_box : out_box;
    local[i] = d.vars.size();
    d.vars.push_back(v.name);
    box.push_back({v.lower, v.upper});
  }
  table.input.box = bernstein::Box(in_box);
  table.output.box = bernstein::Box(out_box);

  PseudoBooleanSpec pb;
  pb.source = std::make_shared<const SpecDocument>(doc);
  for (const auto& p : doc.predicates) {
    // Variables of the other side map out of range; remap rejects them if used.
    std::vector<std::size_t> mapping(n, SIZE_MAX);
    for (std::size_t i = 0; i < n; ++i)
      if (doc.real_vars[i].side == p.side) mapping[i] = local[i];
    const std::size_t arity = table.domain(p.side).vars.size();
    table.entries.push_back({p.atom, {p.constraint.poly.remap(mapping, arity), p.constraint.relation}, p.side});
    (p.side == Side::Input ? pb.input_predicates : pb.output_predicates).push_back(p.atom);
  }

  pb.doc.boolean_inputs = doc.input_atoms();
  pb.doc.boolean_outputs = doc.output_atoms();
  pb.doc.assumptions = doc.assumptions;
  pb.doc.guarantees = doc.guarantees;
  return {std::move(pb), std::move(table)};
}

Formula cube_formula(const Valuation& v, const std::vector<std::string>& atoms) {
  std::vector<Formula> literals;
  for (const auto& a : atoms) {
    auto it = v.find(a);
    if (it == v.end()) throw std::invalid_argument("valuation does not assign '" + a + "'");
    literals.push_back(it->second ? Formula::atom(a) : Formula::negation(Formula::atom(a)));
  }
  return spec::conjunction(literals);
}

namespace {

PseudoBooleanSpec refine(const PseudoBooleanSpec& pb, const Valuation& v, Side side) {
  const auto& preds = side == Side::Input ? pb.input_predicates : pb.output_predicates;
  if (v.size() != preds.size())
    throw std::invalid_argument("refinement valuation must assign exactly the " + std::string(spec::to_string(side)) +
                                " predicate atoms");
  for (const auto& r : pb.refinements)
    if (r.side == side && r.valuation == v)
      throw DuplicateRefinement("valuation " + format_valuation(v) + " was already refined away");

  PseudoBooleanSpec out = pb;
  Formula f = Formula::always(Formula::negation(cube_formula(v, preds)));
  (side == Side::Input ? out.doc.assumptions : out.doc.guarantees).push_back(f);
  out.refinements.push_back({side, v, f});
  return out;
}

}  // namespace

PseudoBooleanSpec refine_with_assumption(const PseudoBooleanSpec& spec, const Valuation& v) {
  return refine(spec, v, Side::Input);
}

PseudoBooleanSpec refine_with_guarantee(const PseudoBooleanSpec& spec, const Valuation& w) {
  return refine(spec, w, Side::Output);
}

std::optional<Letter> MultiplexerTable::decode(Letter code) const {
  for (const auto& [c, o] : rows)
    if (c == code) return o;
  return std::nullopt;
}

std::optional<Letter> MultiplexerTable::encode(Letter original_letter) const {
  for (const auto& [c, o] : rows)
    if (o == original_letter) return c;
  return std::nullopt;
}

bool tuple_less(Letter a, Letter b, std::size_t width) {
  for (std::size_t i = 0; i < width; ++i) {
    bool x = (a >> i) & 1U, y = (b >> i) & 1U;
    if (x != y) return y;
  }
  return false;
}

Letter code_word(std::size_t k, std::size_t width) {
  Letter out = 0;
  for (std::size_t i = 0; i < width; ++i)
    if ((k >> (width - 1 - i)) & 1U) out |= Letter{1} << i;
  return out;
}

namespace {

bool is_output_invariant(const Formula& g, const std::set<std::string>& outputs) {
  if (g.op() != spec::Op::Always || !spec::is_propositional(g.lhs())) return false;
  auto used = spec::atoms(g.lhs());
  return std::all_of(used.begin(), used.end(), [&](const std::string& a) { return outputs.count(a) > 0; });
}

std::string fresh_prefix(const SpecDocument& doc) {
  std::set<std::string> taken(doc.boolean_inputs.begin(), doc.boolean_inputs.end());
  taken.insert(doc.boolean_outputs.begin(), doc.boolean_outputs.end());
  std::string prefix = "sig";
  auto clashes = [&](const std::string& p) {
    return std::any_of(taken.begin(), taken.end(), [&](const std::string& a) { return a.rfind(p, 0) == 0; });
  };
  while (clashes(prefix)) prefix += "_";
  return prefix;
}

}  // namespace

std::pair<PseudoBooleanSpec, MultiplexerTable> reencode_outputs(const PseudoBooleanSpec& pb) {
  const auto& outputs = pb.outputs();
  const std::set<std::string> output_set(outputs.begin(), outputs.end());
  const std::size_t n = outputs.size();
  if (n > 20) throw std::length_error("too many outputs to enumerate");

  std::vector<Formula> invariants, kept;
  for (const auto& g : pb.doc.guarantees) (is_output_invariant(g, output_set) ? invariants : kept).push_back(g);
  if (invariants.empty()) return {pb, {}};

  std::vector<Letter> admissible;
  for (Letter o = 0; o < (Letter{1} << n); ++o) {
    auto value = [&](const std::string& a) {
      auto it = std::find(outputs.begin(), outputs.end(), a);
      return ((o >> (it - outputs.begin())) & 1U) != 0;
    };
    bool ok = std::all_of(invariants.begin(), invariants.end(),
                          [&](const Formula& g) { return spec::evaluate_propositional(g.lhs(), value); });
    if (ok) admissible.push_back(o);
  }
  if (admissible.empty()) throw InfeasibleOutputs("the output constraints admit no output valuation");

  std::size_t m = 0;
  while ((std::size_t{1} << m) < admissible.size()) ++m;
  if (m >= n) return {pb, {}};

  std::sort(admissible.begin(), admissible.end(), [&](Letter a, Letter b) { return tuple_less(a, b, n); });
  MultiplexerTable table;
  table.original = outputs;
  const std::string prefix = fresh_prefix(pb.doc);
  for (std::size_t i = 0; i < m; ++i) table.encoded.push_back(prefix + std::to_string(i + 1));
  for (std::size_t k = 0; k < admissible.size(); ++k) table.rows.emplace_back(code_word(k, m), admissible[k]);

  auto code_cube = [&](Letter code) { return cube_formula(to_valuation(code, table.encoded), table.encoded); };
  std::map<std::string, Formula> decoder;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Formula> words;
    for (const auto& [code, orig] : table.rows)
      if ((orig >> j) & 1U) words.push_back(code_cube(code));
    decoder.emplace(outputs[j], spec::disjunction(words));
  }

  PseudoBooleanSpec out = pb;
  out.doc.boolean_outputs = table.encoded;
  out.output_predicates.clear();
  out.doc.guarantees.clear();
  for (auto& a : out.doc.assumptions) a = spec::substitute(a, decoder);
  for (const auto& g : kept) out.doc.guarantees.push_back(spec::substitute(g, decoder));
  if (admissible.size() < (std::size_t{1} << m)) {
    std::vector<Formula> used;
    for (const auto& [code, orig] : table.rows) used.push_back(code_cube(code));
    out.doc.guarantees.push_back(Formula::always(spec::disjunction(used)));
  }
  if (out.doc.guarantees.empty()) out.doc.guarantees.push_back(Formula::always(Formula::tt()));
  return {std::move(out), std::move(table)};
}

std::string format_multiplexer(const MultiplexerTable& t) {
  std::string out;
  for (const auto& [code, orig] : t.rows)
    out += to_bits(code, t.encoded.size()) + " -> " + format_valuation(orig, t.original) + "\n";
  return out;
}

}  // namespace nltl::abstraction
