#include "nltl/speclang/document.hpp"
#include "nltl/speclang/parser.hpp"

namespace nltl::spec {

std::string_view to_string(Side side) { return side == Side::Input ? "input" : "output"; }

std::vector<std::string> SpecDocument::input_atoms() const {
  std::vector<std::string> out = boolean_inputs;
  for (const auto& p : predicates)
    if (p.side == Side::Input) out.push_back(p.atom);
  return out;
}

std::vector<std::string> SpecDocument::output_atoms() const {
  std::vector<std::string> out = boolean_outputs;
  for (const auto& p : predicates)
    if (p.side == Side::Output) out.push_back(p.atom);
  return out;
}

std::vector<std::string> SpecDocument::real_var_names() const {
  std::vector<std::string> out;
  for (const auto& v : real_vars) out.push_back(v.name);
  return out;
}

const PredicateDef* SpecDocument::find_predicate(std::string_view atom) const {
  for (const auto& p : predicates)
    if (p.atom == atom) return &p;
  return nullptr;
}

const RealVarDecl* SpecDocument::find_real_var(std::string_view name) const {
  for (const auto& v : real_vars)
    if (v.name == name) return &v;
  return nullptr;
}

Formula SpecDocument::as_formula() const {
  Formula g = conjunction(guarantees);
  if (assumptions.empty()) return g;
  return Formula::implies(conjunction(assumptions), g);
}

namespace {

std::string join(const std::vector<std::string>& names) {
  std::string out;
  for (const auto& n : names) out += (out.empty() ? "" : ", ") + n;
  return out;
}

}  // namespace

std::string format_spec(const SpecDocument& doc) {
  std::string out;
  if (!doc.boolean_inputs.empty()) out += "INPUT " + join(doc.boolean_inputs) + "\n";
  if (!doc.boolean_outputs.empty()) out += "OUTPUT " + join(doc.boolean_outputs) + "\n";
  for (const auto& v : doc.real_vars) {
    out += "REAL ";
    if (v.side == Side::Output) out += "OUTPUT ";
    out += v.name + " IN [" + nltl::to_string(v.lower) + ", " + nltl::to_string(v.upper) + "]\n";
  }
  auto names = doc.real_var_names();
  for (const auto& p : doc.predicates) {
    out += "PRED ";
    if (p.side == Side::Output) out += "OUTPUT ";
    out += p.atom + " := " + bernstein::to_string(p.constraint, names) + "\n";
  }
  for (const auto& a : doc.assumptions) out += "ASSUME " + to_string(a) + "\n";
  for (const auto& g : doc.guarantees) out += to_string(g) + "\n";
  return out;
}

}  // namespace nltl::spec
