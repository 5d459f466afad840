#include "nltl/automata/buchi.hpp"

#include <sstream>

namespace nltl::automata {

std::string format_cube(const Cube& c, const std::vector<std::string>& atoms) {
  std::string out;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    Letter bit = Letter{1} << i;
    if (!(c.care & bit)) continue;
    if (!out.empty()) out += " & ";
    if (!(c.value & bit)) out += '!';
    out += atoms[i];
  }
  return out.empty() ? "true" : out;
}

std::string to_dot(const BuchiAutomaton& a, const std::string& name) {
  std::ostringstream os;
  os << "digraph " << name << " {\n  rankdir=LR;\n  init [shape=point];\n";
  for (State q = 0; q < a.size(); ++q)
    os << "  s" << q << " [shape=" << (a.accepting[q] ? "doublecircle" : "circle") << ", label=\"" << q << "\"];\n";
  os << "  init -> s" << a.initial << ";\n";
  for (State q = 0; q < a.size(); ++q)
    for (const auto& e : a.edges[q])
      os << "  s" << q << " -> s" << e.to << " [label=\"" << format_cube(e.guard, a.alphabet) << "\"];\n";
  os << "}\n";
  return os.str();
}

std::string to_text(const BuchiAutomaton& a) {
  std::ostringstream os;
  os << "alphabet";
  for (const auto& atom : a.alphabet) os << ' ' << atom;
  os << "\ninitial " << a.initial << '\n';
  for (State q = 0; q < a.size(); ++q) os << "state " << q << (a.accepting[q] ? " accepting" : "") << '\n';
  for (State q = 0; q < a.size(); ++q)
    for (const auto& e : a.edges[q]) os << "edge " << q << ' ' << e.to << ' ' << format_cube(e.guard, a.alphabet) << '\n';
  return os.str();
}

}  // namespace nltl::automata
