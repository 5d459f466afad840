#include "nltl/bernstein/checker.hpp"

#include "nltl/bernstein/bernstein.hpp"

#include <stdexcept>

namespace nltl::bernstein {

namespace {

enum class Status { Proven, Refuted, Undecided };

Status classify(const PolyConstraint& c, const Box& box) {
  auto [lo, hi] = bernstein_range(c.poly, box);
  switch (c.relation) {
    case Relation::Greater:
      if (lo > 0) return Status::Proven;
      if (hi <= 0) return Status::Refuted;
      break;
    case Relation::GreaterEq:
      if (lo >= 0) return Status::Proven;
      if (hi < 0) return Status::Refuted;
      break;
    case Relation::Less:
      if (hi < 0) return Status::Proven;
      if (lo >= 0) return Status::Refuted;
      break;
    case Relation::LessEq:
      if (hi <= 0) return Status::Proven;
      if (lo > 0) return Status::Refuted;
      break;
  }
  return Status::Undecided;
}

struct Node {
  Box box;
  unsigned depth;
};

// Center first, then the 2^n vertices in mask order.
template <typename Pred>
bool sample(const Box& box, Pred&& accept, std::vector<Rational>& out) {
  auto c = box.center();
  if (accept(c)) {
    out = std::move(c);
    return true;
  }
  if (box.is_point()) return false;
  const std::size_t n = box.dimension();
  if (n > 16) return false;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    auto v = box.vertex(mask);
    if (accept(v)) {
      out = std::move(v);
      return true;
    }
  }
  return false;
}

void check_arity(const PolyConstraint& c, const Box& box) {
  if (c.poly.arity() != box.dimension())
    throw std::invalid_argument("constraint arity " + std::to_string(c.poly.arity()) +
                                " does not match box dimension " + std::to_string(box.dimension()));
}

// Shared depth-first driver, lower half first. `decide` returns true when a
// subbox needs no further work; `accept` recognizes a terminating point.
template <typename Decide, typename Accept>
auto search(const Box& root, const CheckConfig& cfg, Decide&& decide, Accept&& accept) {
  struct Result {
    bool found = false;
    std::vector<Rational> point;
    std::size_t undecided = 0;
    bool budget_exhausted = false;
    std::size_t explored = 0;
  } r;

  std::vector<Node> stack;
  stack.push_back({root, 0});
  while (!stack.empty()) {
    Node node = std::move(stack.back());
    stack.pop_back();
    if (++r.explored > cfg.max_subboxes) {
      r.budget_exhausted = true;
      break;
    }
    if (decide(node.box)) continue;
    if (sample(node.box, accept, r.point)) {
      r.found = true;
      break;
    }
    if (node.box.is_point()) continue;  // single point already evaluated exactly
    if (node.depth >= cfg.max_depth) {
      ++r.undecided;
      continue;
    }
    auto [lo, hi] = node.box.bisect(node.box.widest_dimension());
    stack.push_back({std::move(hi), node.depth + 1});
    stack.push_back({std::move(lo), node.depth + 1});
  }
  return r;
}

}  // namespace

FeasibilityVerdict check_feasibility(const std::vector<PolyConstraint>& constraints, const Box& box,
                                     const CheckConfig& cfg) {
  if (constraints.empty()) throw std::invalid_argument("check_feasibility: empty constraint list");
  for (const auto& c : constraints) check_arity(c, box);

  auto decide = [&](const Box& b) {
    for (const auto& c : constraints)
      if (classify(c, b) == Status::Refuted) return true;
    return false;
  };
  auto accept = [&](std::span<const Rational> pt) {
    for (const auto& c : constraints)
      if (!c.holds_at(pt)) return false;
    return true;
  };
  auto r = search(box, cfg, decide, accept);

  FeasibilityVerdict v;
  v.subboxes = std::min(r.explored, cfg.max_subboxes);
  if (r.found) {
    v.kind = FeasibilityVerdict::Kind::Feasible;
    v.witness = std::move(r.point);
  } else if (r.budget_exhausted) {
    v.reason = "subbox budget of " + std::to_string(cfg.max_subboxes) + " exhausted";
  } else if (r.undecided > 0) {
    v.reason = std::to_string(r.undecided) + " subbox(es) undecided at depth " + std::to_string(cfg.max_depth);
  } else {
    v.kind = FeasibilityVerdict::Kind::Infeasible;
  }
  return v;
}

ValidityVerdict check_validity(const ValidityQuery& query, const Box& box, const CheckConfig& cfg) {
  for (const auto& c : query.premises) check_arity(c, box);
  check_arity(query.conclusion, box);

  // Decided on a subbox when a premise is refuted there or the conclusion is proven.
  auto decide = [&](const Box& b) {
    for (const auto& c : query.premises)
      if (classify(c, b) == Status::Refuted) return true;
    return classify(query.conclusion, b) == Status::Proven;
  };
  auto counterexample = [&](std::span<const Rational> pt) {
    for (const auto& c : query.premises)
      if (!c.holds_at(pt)) return false;
    return !query.conclusion.holds_at(pt);
  };
  auto r = search(box, cfg, decide, counterexample);

  ValidityVerdict v;
  v.subboxes = std::min(r.explored, cfg.max_subboxes);
  if (r.found) {
    v.kind = ValidityVerdict::Kind::Invalid;
    v.witness = std::move(r.point);
  } else if (r.budget_exhausted) {
    v.reason = "subbox budget of " + std::to_string(cfg.max_subboxes) + " exhausted";
  } else if (r.undecided > 0) {
    v.reason = std::to_string(r.undecided) + " subbox(es) undecided at depth " + std::to_string(cfg.max_depth);
  } else {
    v.kind = ValidityVerdict::Kind::Valid;
  }
  return v;
}

ValidityVerdict check_validity(const PolyConstraint& constraint, const Box& box, const CheckConfig& cfg) {
  return check_validity(ValidityQuery{{}, constraint}, box, cfg);
}

std::string_view to_string(FeasibilityVerdict::Kind k) {
  switch (k) {
    case FeasibilityVerdict::Kind::Feasible: return "Feasible";
    case FeasibilityVerdict::Kind::Infeasible: return "Infeasible";
    case FeasibilityVerdict::Kind::Unknown: return "Unknown";
  }
  return "?";
}

std::string_view to_string(ValidityVerdict::Kind k) {
  switch (k) {
    case ValidityVerdict::Kind::Valid: return "Valid";
    case ValidityVerdict::Kind::Invalid: return "Invalid";
    case ValidityVerdict::Kind::Unknown: return "Unknown";
  }
  return "?";
}

}  // namespace nltl::bernstein
