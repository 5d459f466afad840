#include "nltl/bernstein/bernstein.hpp"

#include <algorithm>
#include <stdexcept>

namespace nltl::bernstein {

namespace {

mpz_class binomial(unsigned n, unsigned k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

}  // namespace

BernsteinTensor::BernsteinTensor(std::vector<std::uint32_t> degree) : degree_(std::move(degree)) {
  stride_.resize(degree_.size());
  std::size_t total = 1;
  for (std::size_t i = 0; i < degree_.size(); ++i) {
    stride_[i] = total;
    total *= degree_[i] + 1;
  }
  coeffs_.assign(total, Rational(0));
}

std::size_t BernsteinTensor::flat(std::span<const std::uint32_t> index) const {
  std::size_t f = 0;
  for (std::size_t i = 0; i < degree_.size(); ++i) f += index[i] * stride_[i];
  return f;
}

std::vector<std::uint32_t> BernsteinTensor::multi_index(std::size_t flat_index) const {
  std::vector<std::uint32_t> idx(degree_.size());
  for (std::size_t i = 0; i < degree_.size(); ++i) {
    idx[i] = static_cast<std::uint32_t>(flat_index % (degree_[i] + 1));
    flat_index /= degree_[i] + 1;
  }
  return idx;
}

bool BernsteinTensor::is_vertex(std::size_t flat_index) const {
  for (std::size_t i = 0; i < degree_.size(); ++i) {
    auto j = flat_index % (degree_[i] + 1);
    flat_index /= degree_[i] + 1;
    if (j != 0 && j != degree_[i]) return false;
  }
  return true;
}

const Rational& BernsteinTensor::min() const { return *std::min_element(coeffs_.begin(), coeffs_.end()); }
const Rational& BernsteinTensor::max() const { return *std::max_element(coeffs_.begin(), coeffs_.end()); }

Polynomial to_unit_box(const Polynomial& p, const Box& box) {
  const std::size_t n = p.arity();
  if (box.dimension() != n) throw std::invalid_argument("to_unit_box: box dimension does not match arity");
  auto deg = p.degrees();

  // powers[i][k] = (lower_i + width_i * t_i)^k
  std::vector<std::vector<Polynomial>> powers(n);
  for (std::size_t i = 0; i < n; ++i) {
    Polynomial affine = Polynomial::constant(n, box[i].lower) + Polynomial::variable(n, i) * box[i].width();
    powers[i].push_back(Polynomial::constant(n, Rational(1)));
    for (std::uint32_t k = 1; k <= deg[i]; ++k) powers[i].push_back(powers[i].back() * affine);
  }

  Polynomial q(n);
  for (const auto& [e, c] : p.terms()) {
    Polynomial term = Polynomial::constant(n, c);
    for (std::size_t i = 0; i < n; ++i)
      if (e[i] != 0) term = term * powers[i][e[i]];
    q += term;
  }
  return q;
}

BernsteinTensor bernstein_coefficients(const Polynomial& p, std::span<const std::uint32_t> degree) {
  const std::size_t n = p.arity();
  if (degree.size() != n) throw std::invalid_argument("bernstein_coefficients: degree vector length mismatch");
  auto own = p.degrees();
  for (std::size_t i = 0; i < n; ++i)
    if (degree[i] < own[i])
      throw std::invalid_argument("bernstein_coefficients: degree " + std::to_string(degree[i]) +
                                  " below polynomial degree " + std::to_string(own[i]) + " in variable " +
                                  std::to_string(i));

  BernsteinTensor t(std::vector<std::uint32_t>(degree.begin(), degree.end()));
  for (const auto& [e, c] : p.terms()) t.at(e) = c;

  // Separable basis change, one axis at a time:
  //   b_j = sum_{k <= j} C(j,k) / C(N,k) * a_k
  std::size_t stride = 1;
  std::vector<Rational> fiber, out;
  for (std::size_t axis = 0; axis < n; ++axis) {
    const unsigned N = degree[axis];
    std::vector<std::vector<Rational>> weight(N + 1, std::vector<Rational>(N + 1));
    for (unsigned j = 0; j <= N; ++j)
      for (unsigned k = 0; k <= j; ++k) weight[j][k] = ratio(binomial(j, k), binomial(N, k));

    const std::size_t extent = N + 1;
    const std::size_t block = stride * extent;
    fiber.resize(extent);
    out.resize(extent);
    for (std::size_t base = 0; base < t.size(); base += block) {
      for (std::size_t offset = 0; offset < stride; ++offset) {
        for (std::size_t k = 0; k < extent; ++k) fiber[k] = t[base + offset + k * stride];
        for (std::size_t j = 0; j < extent; ++j) {
          Rational s(0);
          for (std::size_t k = 0; k <= j; ++k)
            if (fiber[k] != 0) s += weight[j][k] * fiber[k];
          out[j] = s;
        }
        for (std::size_t j = 0; j < extent; ++j) t[base + offset + j * stride] = out[j];
      }
    }
    stride = block;
  }
  return t;
}

BernsteinTensor bernstein_coefficients(const Polynomial& p) {
  auto d = p.degrees();
  return bernstein_coefficients(p, d);
}

Enclosure bernstein_range(const Polynomial& p, const Box& box) {
  auto t = bernstein_coefficients(to_unit_box(p, box));
  return {t.min(), t.max()};
}

namespace {

Enclosure bounds_rec(const Polynomial& p, const Box& box, unsigned depth) {
  auto t = bernstein_coefficients(to_unit_box(p, box));
  Enclosure e{t.min(), t.max()};
  if (depth == 0 || box.is_point()) return e;

  bool lower_sharp = false, upper_sharp = false;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!t.is_vertex(i)) continue;
    if (t[i] == e.lower) lower_sharp = true;
    if (t[i] == e.upper) upper_sharp = true;
  }
  if (lower_sharp && upper_sharp) return e;

  auto [lo, hi] = box.bisect(box.widest_dimension());
  auto a = bounds_rec(p, lo, depth - 1);
  auto b = bounds_rec(p, hi, depth - 1);
  return {std::min(a.lower, b.lower), std::max(a.upper, b.upper)};
}

}  // namespace

Enclosure bounds(const Polynomial& p, const Box& box, unsigned depth) {
  if (box.dimension() != p.arity()) throw std::invalid_argument("bounds: box dimension does not match arity");
  return bounds_rec(p, box, depth);
}

}  // namespace nltl::bernstein
