#include "nltl/cli/simulate.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

namespace nltl::cli {

namespace {

constexpr unsigned kFractionBits = 20;

Rational sample_interval(std::mt19937_64& rng, const bernstein::Interval& iv) {
  std::uniform_int_distribution<std::uint64_t> dist(0, std::uint64_t{1} << kFractionBits);
  const Rational t = ratio(mpz_class(static_cast<unsigned long>(dist(rng))), mpz_class(1UL << kFractionBits));
  return iv.lower + (iv.upper - iv.lower) * t;
}

}  // namespace

SimulationTrace simulate(const ControllerFile& f, const SimulationOptions& opts) {
  const auto table = predicate_table(f.source);
  const auto& m = f.controller;
  const auto& mux = f.multiplexer;
  const auto& box = table.input.box;

  SimulationTrace trace;
  trace.sample_vars = table.input.vars;
  trace.inputs = m.inputs;
  trace.outputs = mux.empty() ? m.outputs : mux.original;
  if (trace.inputs != f.source.input_atoms() || trace.outputs != f.source.output_atoms())
    throw std::invalid_argument("controller atoms do not match the embedded spec");

  std::vector<std::size_t> bool_bits, pred_bits;
  std::vector<const abstraction::PredicateEntry*> preds;
  for (std::size_t i = 0; i < m.inputs.size(); ++i) {
    if (const auto* e = table.find(m.inputs[i]); e && e->side == spec::Side::Input) {
      pred_bits.push_back(i);
      preds.push_back(e);
    } else {
      bool_bits.push_back(i);
    }
  }
  Letter injected_letter = 0;
  if (opts.inject) {
    for (const auto& [atom, value] : *opts.inject) {
      auto it = std::find(m.inputs.begin(), m.inputs.end(), atom);
      if (it == m.inputs.end() || !table.find(atom)) throw std::invalid_argument("cannot inject unknown predicate '" + atom + "'");
      if (value) injected_letter |= Letter{1} << (it - m.inputs.begin());
    }
  }

  std::mt19937_64 rng(opts.seed);
  std::bernoulli_distribution coin(0.5);
  auto draw = [&](SimulationStep& st) {
    st.sample.clear();
    for (const auto& iv : box.intervals()) st.sample.push_back(sample_interval(rng, iv));
    st.input = 0;
    for (std::size_t b : bool_bits)
      if (coin(rng)) st.input |= Letter{1} << b;
    for (std::size_t j = 0; j < preds.size(); ++j)
      if (preds[j]->constraint.holds_at(st.sample)) st.input |= Letter{1} << pred_bits[j];
  };

  std::size_t state = m.initial;
  std::vector<Letter> letters;
  for (std::size_t t = 0; t < opts.steps; ++t) {
    SimulationStep st;
    st.state = state;
    const games::MealyStep* move = nullptr;
    if (opts.inject && opts.inject_every > 0 && (t + 1) % opts.inject_every == 0) {
      st.injected = true;
      draw(st);
      st.sample.clear();
      Letter pred_mask = 0;
      for (std::size_t b : pred_bits) pred_mask |= Letter{1} << b;
      st.input = (st.input & ~pred_mask) | injected_letter;
      move = m.step(state, st.input);
    } else {
      for (std::size_t attempt = 0; attempt <= opts.max_resamples && !move; ++attempt) {
        draw(st);
        move = m.step(state, st.input);
      }
    }
    if (move) {
      st.output = move->output;
      if (!mux.empty()) {
        auto d = mux.decode(move->output);
        if (!d) throw std::logic_error("controller emits an unused code-word");
        st.output = *d;
      }
      state = move->next;
    } else {
      st.covered = false;
      st.output = 0;
    }
    letters.push_back(st.input | (st.output << trace.inputs.size()));
    trace.steps.push_back(std::move(st));
  }

  std::vector<std::string> atoms = trace.inputs;
  atoms.insert(atoms.end(), trace.outputs.begin(), trace.outputs.end());
  trace.report = monitor(f.source.guarantees, atoms, letters);
  return trace;
}

std::string format_trace(const SimulationTrace& trace) {
  std::ostringstream os;
  for (std::size_t t = 0; t < trace.steps.size(); ++t) {
    const auto& st = trace.steps[t];
    os << t << " state=" << st.state;
    if (st.injected) {
      os << " injected";
    } else if (!st.sample.empty()) {
      os << " ";
      for (std::size_t i = 0; i < st.sample.size(); ++i)
        os << (i ? "," : "") << trace.sample_vars[i] << "=" << nltl::to_string(st.sample[i]);
    }
    if (!trace.inputs.empty()) os << " " << format_valuation(st.input, trace.inputs);
    os << " -> " << format_valuation(st.output, trace.outputs);
    if (!st.covered) os << " uncovered";
    auto bad = violations_at(trace.report, t);
    if (bad.empty()) {
      os << " ok";
    } else {
      os << " violation(";
      for (std::size_t i = 0; i < bad.size(); ++i) os << (i ? "," : "") << bad[i];
      os << ")";
    }
    os << "\n";
  }
  const auto& r = trace.report;
  os << "summary steps=" << trace.steps.size() << " violations=" << r.violations() << " pending=" << r.pending() << "\n";
  for (std::size_t i = 0; i < r.guarantees.size(); ++i) {
    const auto& g = r.guarantees[i];
    os << "guarantee " << i << (g.safety ? " safety" : " liveness");
    if (!g.violated.empty())
      os << " violated=" << g.violated.size() << " first=" << g.violated.front();
    else if (g.pending > 0)
      os << " pending=" << g.pending;
    else
      os << " ok";
    os << ": " << g.text << "\n";
  }
  return os.str();
}

}  // namespace nltl::cli
