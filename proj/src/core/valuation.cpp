#include "nltl/valuation.hpp"

#include <stdexcept>

namespace nltl {

Letter to_letter(const Valuation& valuation, std::span<const std::string> atoms) {
  Letter letter = 0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    auto it = valuation.find(atoms[i]);
    if (it == valuation.end())
      throw std::invalid_argument("valuation does not assign atom '" + atoms[i] + "'");
    if (it->second) letter |= Letter{1} << i;
  }
  return letter;
}

Valuation to_valuation(Letter letter, std::span<const std::string> atoms) {
  Valuation v;
  for (std::size_t i = 0; i < atoms.size(); ++i) v[atoms[i]] = (letter >> i) & 1U;
  return v;
}

std::string to_bits(Letter letter, std::size_t width) {
  std::string s(width, '0');
  for (std::size_t i = 0; i < width; ++i)
    if ((letter >> i) & 1U) s[i] = '1';
  return s;
}

Letter from_bits(std::string_view bits) {
  if (bits.size() > kMaxAtoms) throw std::invalid_argument("too many bits");
  Letter letter = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1')
      letter |= Letter{1} << i;
    else if (bits[i] != '0')
      throw std::invalid_argument("bad bit string '" + std::string(bits) + "'");
  }
  return letter;
}

std::string format_valuation(Letter letter, std::span<const std::string> atoms) {
  std::string out;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (i) out += ',';
    out += atoms[i];
    out += ((letter >> i) & 1U) ? "=1" : "=0";
  }
  return out;
}

std::string format_valuation(const Valuation& valuation) {
  std::string out;
  for (const auto& [atom, value] : valuation) {
    if (!out.empty()) out += ',';
    out += atom;
    out += value ? "=1" : "=0";
  }
  return out;
}

Valuation parse_valuation(std::string_view text) {
  Valuation v;
  while (!text.empty()) {
    auto comma = text.find(',');
    auto item = text.substr(0, comma);
    auto eq = item.find('=');
    if (eq == 0 || eq == std::string_view::npos || eq + 2 != item.size() || (item[eq + 1] != '0' && item[eq + 1] != '1'))
      throw std::invalid_argument("malformed valuation item '" + std::string(item) + "'");
    if (!v.emplace(std::string(item.substr(0, eq)), item[eq + 1] == '1').second)
      throw std::invalid_argument("atom '" + std::string(item.substr(0, eq)) + "' assigned twice");
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
    if (text.empty()) throw std::invalid_argument("trailing ',' in valuation");
  }
  return v;
}

Letter project(Letter letter, std::span<const std::string> from, std::span<const std::string> to) {
  Letter out = 0;
  for (std::size_t j = 0; j < to.size(); ++j) {
    for (std::size_t i = 0; i < from.size(); ++i) {
      if (from[i] == to[j]) {
        if ((letter >> i) & 1U) out |= Letter{1} << j;
        break;
      }
    }
  }
  return out;
}

}  // namespace nltl
