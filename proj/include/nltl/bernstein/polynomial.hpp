#pragma once

#include "nltl/rational.hpp"

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace nltl::bernstein {

using Exponent = std::vector<std::uint32_t>;

/// Sparse multivariate polynomial over exact rationals in a fixed number of
/// variables. Zero coefficients are never stored.
class Polynomial {
 public:
  explicit Polynomial(std::size_t arity = 0) : arity_(arity) {}

  static Polynomial constant(std::size_t arity, const Rational& c);
  static Polynomial variable(std::size_t arity, std::size_t index);

  std::size_t arity() const { return arity_; }
  const std::map<Exponent, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Accumulates c * x^e; throws std::invalid_argument on an exponent of the
  /// wrong length.
  void add_term(const Exponent& e, const Rational& c);
  Rational coefficient(const Exponent& e) const;

  /// Per-variable maximum exponent.
  std::vector<std::uint32_t> degrees() const;
  std::uint32_t total_degree() const;
  std::set<std::size_t> variables_used() const;

  /// Renames variable i to `mapping[i]` in a polynomial of arity `new_arity`.
  /// Variables used by this polynomial must map below new_arity.
  Polynomial remap(std::span<const std::size_t> mapping, std::size_t new_arity) const;

  Polynomial pow(unsigned exponent) const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Rational& scalar);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
  friend Polynomial operator-(Polynomial a) { return a *= Rational(-1); }

  bool operator==(const Polynomial& other) const = default;

 private:
  void check_same_arity(const Polynomial& other) const;

  std::size_t arity_;
  std::map<Exponent, Rational> terms_;
};

/// Exact value at `point`; throws std::invalid_argument on arity mismatch.
Rational evaluate(const Polynomial& p, std::span<const Rational> point);

/// Surface syntax accepted by the spec parser, e.g. "x^2 + 3/2*x*y - 7/2".
/// Terms are printed in descending graded-lexicographic order.
std::string to_string(const Polynomial& p, std::span<const std::string> names);

}  // namespace nltl::bernstein
