#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nltl {

/// A full assignment over an ordered atom list, packed as bits: atom i is
/// bit i. Numeric order of letters is the canonical order of valuations
/// used for every deterministic tie-break in the toolchain.
using Letter = std::uint64_t;

inline constexpr std::size_t kMaxAtoms = 62;

/// Partial assignment: bits in `care` are fixed to the matching bits of `value`.
struct Cube {
  Letter care = 0;
  Letter value = 0;

  bool admits(Letter letter) const { return (letter & care) == value; }
  bool operator==(const Cube&) const = default;
  auto operator<=>(const Cube&) const = default;
};

/// Named total assignment, used at module boundaries (cache keys, reports).
using Valuation = std::map<std::string, bool>;

Letter to_letter(const Valuation& valuation, std::span<const std::string> atoms);
Valuation to_valuation(Letter letter, std::span<const std::string> atoms);

/// "1010"-style rendering, atom 0 first.
std::string to_bits(Letter letter, std::size_t width);
/// Inverse of to_bits; throws std::invalid_argument on characters other than 0/1.
Letter from_bits(std::string_view bits);

/// "req1=1,req2=0" in the given atom order.
std::string format_valuation(Letter letter, std::span<const std::string> atoms);
/// "req1=1,req2=0" in the map's (alphabetical) order.
std::string format_valuation(const Valuation& valuation);
/// Inverse of format_valuation; "" is the empty valuation. Throws
/// std::invalid_argument on malformed text or a repeated atom.
Valuation parse_valuation(std::string_view text);

/// Projects `letter` over `from` atoms onto the `to` atom list (atoms missing
/// in `from` read as false).
Letter project(Letter letter, std::span<const std::string> from, std::span<const std::string> to);

}  // namespace nltl
