#include "nltl/bernstein/box.hpp"

#include <stdexcept>

namespace nltl::bernstein {

Box::Box(std::vector<Interval> dims) : dims_(std::move(dims)) {
  for (const auto& d : dims_)
    if (d.lower > d.upper)
      throw std::invalid_argument("box interval [" + to_string(d.lower) + ", " + to_string(d.upper) +
                                  "] has lower > upper");
}

bool Box::contains(std::span<const Rational> point) const {
  if (point.size() != dims_.size()) return false;
  for (std::size_t i = 0; i < dims_.size(); ++i)
    if (point[i] < dims_[i].lower || point[i] > dims_[i].upper) return false;
  return true;
}

std::size_t Box::widest_dimension() const {
  std::size_t best = 0;
  for (std::size_t i = 1; i < dims_.size(); ++i)
    if (dims_[i].width() > dims_[best].width()) best = i;
  return best;
}

bool Box::is_point() const {
  for (const auto& d : dims_)
    if (d.lower != d.upper) return false;
  return true;
}

std::pair<Box, Box> Box::bisect(std::size_t dim) const {
  Box lo = *this, hi = *this;
  Rational mid = dims_.at(dim).midpoint();
  lo.dims_[dim].upper = mid;
  hi.dims_[dim].lower = mid;
  return {std::move(lo), std::move(hi)};
}

std::vector<Rational> Box::center() const {
  std::vector<Rational> c;
  c.reserve(dims_.size());
  for (const auto& d : dims_) c.push_back(d.midpoint());
  return c;
}

std::vector<Rational> Box::vertex(std::uint64_t mask) const {
  std::vector<Rational> v;
  v.reserve(dims_.size());
  for (std::size_t i = 0; i < dims_.size(); ++i) v.push_back(((mask >> i) & 1U) ? dims_[i].upper : dims_[i].lower);
  return v;
}

}  // namespace nltl::bernstein
