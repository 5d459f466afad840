#include "nnf.hpp"

#include <stdexcept>

namespace nltl::automata::detail {

using spec::Op;

NnfTable::NnfTable(const std::vector<std::string>& alphabet) {
  for (std::size_t i = 0; i < alphabet.size(); ++i) atom_index_[alphabet[i]] = static_cast<int>(i);
}

int NnfTable::make(NOp op, int lhs, int rhs) {
  NNode n{op, -1, true, lhs, rhs};
  auto key = std::make_tuple(op, n.atom, n.positive, lhs, rhs);
  auto [it, fresh] = index_.try_emplace(key, static_cast<int>(nodes_.size()));
  if (fresh) nodes_.push_back(n);
  return it->second;
}

int NnfTable::tt() { return make(NOp::True, -1); }
int NnfTable::ff() { return make(NOp::False, -1); }

int NnfTable::lit(int atom, bool positive) {
  auto key = std::make_tuple(NOp::Lit, atom, positive, -1, -1);
  auto [it, fresh] = index_.try_emplace(key, static_cast<int>(nodes_.size()));
  if (fresh) nodes_.push_back({NOp::Lit, atom, positive, -1, -1});
  return it->second;
}

int NnfTable::build(const spec::Formula& f, bool negate) {
  switch (f.op()) {
    case Op::True: return negate ? ff() : tt();
    case Op::False: return negate ? tt() : ff();
    case Op::Atom: {
      auto it = atom_index_.find(f.name());
      if (it == atom_index_.end()) throw std::invalid_argument("atom '" + f.name() + "' is not in the alphabet");
      return lit(it->second, !negate);
    }
    case Op::Not: return build(f.lhs(), !negate);
    case Op::And: {
      int a = build(f.lhs(), negate), b = build(f.rhs(), negate);
      return make(negate ? NOp::Or : NOp::And, a, b);
    }
    case Op::Or: {
      int a = build(f.lhs(), negate), b = build(f.rhs(), negate);
      return make(negate ? NOp::And : NOp::Or, a, b);
    }
    case Op::Implies: {
      // a -> b == !a || b;  !(a -> b) == a && !b
      int a = build(f.lhs(), !negate), b = build(f.rhs(), negate);
      return make(negate ? NOp::And : NOp::Or, a, b);
    }
    case Op::Next: return make(NOp::Next, build(f.lhs(), negate));
    case Op::Always: {
      // G a == false R a;  !G a == true U !a
      int a = build(f.lhs(), negate);
      return negate ? make(NOp::Until, tt(), a) : make(NOp::Release, ff(), a);
    }
    case Op::Eventually: {
      int a = build(f.lhs(), negate);
      return negate ? make(NOp::Release, ff(), a) : make(NOp::Until, tt(), a);
    }
    case Op::Until: {
      // !(a U b) == !a R !b
      int a = build(f.lhs(), negate), b = build(f.rhs(), negate);
      return make(negate ? NOp::Release : NOp::Until, a, b);
    }
  }
  throw std::logic_error("unreachable formula operator");
}

}  // namespace nltl::automata::detail
