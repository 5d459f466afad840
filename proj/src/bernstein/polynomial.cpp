#include "nltl/bernstein/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace nltl::bernstein {

Polynomial Polynomial::constant(std::size_t arity, const Rational& c) {
  Polynomial p(arity);
  p.add_term(Exponent(arity, 0), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t arity, std::size_t index) {
  if (index >= arity) throw std::invalid_argument("variable index out of range");
  Polynomial p(arity);
  Exponent e(arity, 0);
  e[index] = 1;
  p.add_term(e, Rational(1));
  return p;
}

void Polynomial::add_term(const Exponent& e, const Rational& c) {
  if (e.size() != arity_) throw std::invalid_argument("exponent length does not match arity");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational Polynomial::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::vector<std::uint32_t> Polynomial::degrees() const {
  std::vector<std::uint32_t> d(arity_, 0);
  for (const auto& [e, c] : terms_)
    for (std::size_t i = 0; i < arity_; ++i) d[i] = std::max(d[i], e[i]);
  return d;
}

std::uint32_t Polynomial::total_degree() const {
  std::uint32_t d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, std::accumulate(e.begin(), e.end(), 0U));
  return d;
}

std::set<std::size_t> Polynomial::variables_used() const {
  std::set<std::size_t> used;
  for (const auto& [e, c] : terms_)
    for (std::size_t i = 0; i < arity_; ++i)
      if (e[i] != 0) used.insert(i);
  return used;
}

Polynomial Polynomial::remap(std::span<const std::size_t> mapping, std::size_t new_arity) const {
  if (mapping.size() != arity_) throw std::invalid_argument("remap: mapping size mismatch");
  Polynomial out(new_arity);
  for (const auto& [e, c] : terms_) {
    Exponent ne(new_arity, 0);
    for (std::size_t i = 0; i < arity_; ++i) {
      if (e[i] == 0) continue;
      if (mapping[i] >= new_arity) throw std::invalid_argument("remap: used variable mapped out of range");
      ne[mapping[i]] += e[i];
    }
    out.add_term(ne, c);
  }
  return out;
}

Polynomial Polynomial::pow(unsigned exponent) const {
  Polynomial result = constant(arity_, Rational(1));
  Polynomial base = *this;
  while (exponent) {
    if (exponent & 1U) result = result * base;
    exponent >>= 1U;
    if (exponent) base = base * base;
  }
  return result;
}

void Polynomial::check_same_arity(const Polynomial& other) const {
  if (other.arity_ != arity_) throw std::invalid_argument("polynomial arity mismatch");
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  check_same_arity(other);
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  check_same_arity(other);
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& scalar) {
  if (scalar == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= scalar;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.check_same_arity(b);
  Polynomial out(a.arity_);
  Exponent e(a.arity_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

Rational evaluate(const Polynomial& p, std::span<const Rational> point) {
  if (point.size() != p.arity())
    throw std::invalid_argument("evaluate: point has " + std::to_string(point.size()) +
                                " coordinates, polynomial arity is " + std::to_string(p.arity()));
  Rational sum(0);
  Rational term;
  for (const auto& [e, c] : p.terms()) {
    term = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      mpz_class num, den;
      mpz_pow_ui(num.get_mpz_t(), point[i].get_num_mpz_t(), e[i]);
      mpz_pow_ui(den.get_mpz_t(), point[i].get_den_mpz_t(), e[i]);
      term *= ratio(num, den);
    }
    sum += term;
  }
  return sum;
}

std::string to_string(const Polynomial& p, std::span<const std::string> names) {
  if (names.size() != p.arity()) throw std::invalid_argument("to_string: name count mismatch");
  if (p.is_zero()) return "0";

  std::vector<std::pair<Exponent, Rational>> terms(p.terms().begin(), p.terms().end());
  std::stable_sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    auto da = std::accumulate(a.first.begin(), a.first.end(), 0U);
    auto db = std::accumulate(b.first.begin(), b.first.end(), 0U);
    if (da != db) return da > db;
    return a.first > b.first;
  });

  std::string out;
  bool first = true;
  for (const auto& [e, c] : terms) {
    Rational mag = abs(c);
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;

    std::string monomial;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!monomial.empty()) monomial += "*";
      monomial += names[i];
      if (e[i] > 1) monomial += "^" + std::to_string(e[i]);
    }
    if (monomial.empty()) {
      out += nltl::to_string(mag);
    } else if (mag == 1) {
      out += monomial;
    } else {
      out += nltl::to_string(mag) + "*" + monomial;
    }
  }
  return out;
}

}  // namespace nltl::bernstein
