#pragma once

#include "nltl/rational.hpp"

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace nltl::bernstein {

struct Interval {
  Rational lower;
  Rational upper;

  Rational width() const { return upper - lower; }
  Rational midpoint() const { return (lower + upper) / 2; }
  bool operator==(const Interval&) const = default;
};

/// Cartesian product of closed rational intervals.
class Box {
 public:
  Box() = default;
  /// Throws std::invalid_argument if some lower > upper.
  explicit Box(std::vector<Interval> dims);

  std::size_t dimension() const { return dims_.size(); }
  const Interval& operator[](std::size_t i) const { return dims_[i]; }
  const std::vector<Interval>& intervals() const { return dims_; }

  bool contains(std::span<const Rational> point) const;
  /// Widest dimension, lowest index on ties.
  std::size_t widest_dimension() const;
  bool is_point() const;
  std::pair<Box, Box> bisect(std::size_t dim) const;

  std::vector<Rational> center() const;
  /// Corner selected by the bits of `mask` (bit i set: upper bound of dim i).
  std::vector<Rational> vertex(std::uint64_t mask) const;

  bool operator==(const Box&) const = default;

 private:
  std::vector<Interval> dims_;
};

}  // namespace nltl::bernstein
