#include "nltl/cli/monitor.hpp"

#include <algorithm>
#include <stdexcept>

namespace nltl::cli {

using spec::Formula;
using spec::Op;

namespace {

Truth k_not(Truth a) { return a == Truth::True ? Truth::False : a == Truth::False ? Truth::True : Truth::Unknown; }
Truth k_and(Truth a, Truth b) { return std::min(a, b); }
Truth k_or(Truth a, Truth b) { return std::max(a, b); }

// values[t] for t in [0, n]; values[n] stands for every position past the end.
std::vector<Truth> eval(const Formula& f, const std::vector<std::string>& atoms, const std::vector<Letter>& trace) {
  const std::size_t n = trace.size();
  std::vector<Truth> v(n + 1, Truth::Unknown);
  switch (f.op()) {
    case Op::True:
      std::fill(v.begin(), v.end(), Truth::True);
      break;
    case Op::False:
      std::fill(v.begin(), v.end(), Truth::False);
      break;
    case Op::Atom: {
      auto it = std::find(atoms.begin(), atoms.end(), f.name());
      if (it == atoms.end()) throw std::invalid_argument("trace does not assign '" + f.name() + "'");
      const auto bit = static_cast<std::size_t>(it - atoms.begin());
      for (std::size_t t = 0; t < n; ++t) v[t] = ((trace[t] >> bit) & 1U) ? Truth::True : Truth::False;
      break;
    }
    case Op::Not: {
      auto a = eval(f.lhs(), atoms, trace);
      for (std::size_t t = 0; t <= n; ++t) v[t] = k_not(a[t]);
      break;
    }
    case Op::And:
    case Op::Or:
    case Op::Implies: {
      auto a = eval(f.lhs(), atoms, trace), b = eval(f.rhs(), atoms, trace);
      for (std::size_t t = 0; t <= n; ++t)
        v[t] = f.op() == Op::And ? k_and(a[t], b[t]) : f.op() == Op::Or ? k_or(a[t], b[t]) : k_or(k_not(a[t]), b[t]);
      break;
    }
    case Op::Next: {
      auto a = eval(f.lhs(), atoms, trace);
      for (std::size_t t = 0; t < n; ++t) v[t] = a[t + 1];
      break;
    }
    case Op::Always:
    case Op::Eventually: {
      auto a = eval(f.lhs(), atoms, trace);
      const bool always = f.op() == Op::Always;
      for (std::size_t t = n; t-- > 0;) v[t] = always ? k_and(a[t], v[t + 1]) : k_or(a[t], v[t + 1]);
      break;
    }
    case Op::Until: {
      auto a = eval(f.lhs(), atoms, trace), b = eval(f.rhs(), atoms, trace);
      for (std::size_t t = n; t-- > 0;) v[t] = k_or(b[t], k_and(a[t], v[t + 1]));
      break;
    }
  }
  return v;
}

bool next_only(const Formula& f) {
  switch (f.op()) {
    case Op::True:
    case Op::False:
    case Op::Atom: return true;
    case Op::Not:
    case Op::Next: return next_only(f.lhs());
    case Op::And:
    case Op::Or:
    case Op::Implies: return next_only(f.lhs()) && next_only(f.rhs());
    default: return false;
  }
}

}  // namespace

std::vector<Truth> evaluate_finite(const Formula& f, const std::vector<std::string>& atoms,
                                   const std::vector<Letter>& trace) {
  auto v = eval(f, atoms, trace);
  v.pop_back();
  return v;
}

bool is_bounded_safety(const Formula& g) { return g.op() == Op::Always && next_only(g.lhs()); }

std::size_t MonitorReport::violations() const {
  std::size_t n = 0;
  for (const auto& g : guarantees) n += g.violated.size();
  return n;
}

std::size_t MonitorReport::pending() const {
  std::size_t n = 0;
  for (const auto& g : guarantees) n += g.pending;
  return n;
}

MonitorReport monitor(const std::vector<Formula>& guarantees, const std::vector<std::string>& atoms,
                      const std::vector<Letter>& trace) {
  MonitorReport report;
  for (const auto& g : guarantees) {
    GuaranteeStatus st;
    st.text = spec::to_string(g);
    st.safety = is_bounded_safety(g);
    const bool pointwise = g.op() == Op::Always;
    auto v = evaluate_finite(pointwise ? g.lhs() : g, atoms, trace);
    if (!pointwise && !v.empty()) v.resize(1);
    for (std::size_t t = 0; t < v.size(); ++t) {
      if (v[t] == Truth::False) st.violated.push_back(t);
      if (v[t] == Truth::Unknown && !st.safety) ++st.pending;
    }
    report.guarantees.push_back(std::move(st));
  }
  return report;
}

std::vector<std::size_t> violations_at(const MonitorReport& report, std::size_t t) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < report.guarantees.size(); ++i) {
    const auto& v = report.guarantees[i].violated;
    if (std::binary_search(v.begin(), v.end(), t)) out.push_back(i);
  }
  return out;
}

}  // namespace nltl::cli
