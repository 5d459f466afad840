#pragma once

#include "nltl/bernstein/box.hpp"
#include "nltl/bernstein/polynomial.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace nltl::bernstein {

/// Dense tensor of Bernstein coefficients b_J for all multi-indices J <= N.
/// Dimension 0 varies fastest in the flat layout.
class BernsteinTensor {
 public:
  explicit BernsteinTensor(std::vector<std::uint32_t> degree);

  const std::vector<std::uint32_t>& degree() const { return degree_; }
  std::size_t size() const { return coeffs_.size(); }
  const std::vector<Rational>& coefficients() const { return coeffs_; }

  const Rational& at(std::span<const std::uint32_t> index) const { return coeffs_[flat(index)]; }
  Rational& at(std::span<const std::uint32_t> index) { return coeffs_[flat(index)]; }
  const Rational& operator[](std::size_t flat_index) const { return coeffs_[flat_index]; }
  Rational& operator[](std::size_t flat_index) { return coeffs_[flat_index]; }

  std::size_t flat(std::span<const std::uint32_t> index) const;
  std::vector<std::uint32_t> multi_index(std::size_t flat_index) const;
  /// True when every component of the index is 0 or N_i.
  bool is_vertex(std::size_t flat_index) const;

  const Rational& min() const;
  const Rational& max() const;

 private:
  std::vector<std::uint32_t> degree_;
  std::vector<std::size_t> stride_;
  std::vector<Rational> coeffs_;
};

/// q(t) = p(lower + t * (upper - lower)), so that the box maps onto [0,1]^n.
Polynomial to_unit_box(const Polynomial& p, const Box& box);

/// Bernstein coefficients of a polynomial given on the unit box, of degree
/// `degree` (componentwise >= the polynomial's degrees; throws
/// std::invalid_argument otherwise).
BernsteinTensor bernstein_coefficients(const Polynomial& p, std::span<const std::uint32_t> degree);
/// Same, at the polynomial's own per-variable degree.
BernsteinTensor bernstein_coefficients(const Polynomial& p);

struct Enclosure {
  Rational lower;
  Rational upper;
};

/// Range enclosure of p on one box without subdivision.
Enclosure bernstein_range(const Polynomial& p, const Box& box);

/// Certified enclosure lower <= p(x) <= upper over the box, tightened by
/// bisecting the widest dimension recursively up to `depth` levels. A
/// subbox whose extreme coefficients sit on vertices is already sharp and is
/// not split further.
Enclosure bounds(const Polynomial& p, const Box& box, unsigned depth);

}  // namespace nltl::bernstein
