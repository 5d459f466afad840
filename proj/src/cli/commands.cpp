#include "nltl/cli/commands.hpp"

#include "nltl/bernstein/checker.hpp"
#include "nltl/cli/controller_file.hpp"
#include "nltl/cli/simulate.hpp"
#include "nltl/speclang/parser.hpp"

#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <regex>
#include <sstream>

namespace nltl::cli {

namespace {

std::optional<std::string> read_file(const std::string& path, std::ostream& err) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    err << path << ": cannot open file\n";
    return std::nullopt;
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool write_file(const std::string& path, const std::string& content, std::ostream& err) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out) {
    err << path << ": cannot write file\n";
    return false;
  }
  return true;
}

std::optional<spec::SpecDocument> load_spec(const std::string& path, std::ostream& err) {
  auto text = read_file(path, err);
  if (!text) return std::nullopt;
  std::vector<spec::Diagnostic> warnings;
  try {
    auto doc = spec::parse_spec(*text, &warnings);
    for (const auto& w : warnings) err << path << ":" << spec::to_string(w) << "\n";
    return doc;
  } catch (const spec::SpecError& e) {
    for (const auto& d : e.diagnostics()) err << path << ":" << spec::to_string(d) << "\n";
    return std::nullopt;
  }
}

std::string exact_and_decimal(const Rational& x) {
  std::string exact = nltl::to_string(x), dec = to_decimal(x);
  return exact == dec ? exact : exact + " (" + dec + ")";
}

std::string format_point(const std::vector<Rational>& point, const std::vector<std::string>& vars) {
  std::string out;
  for (std::size_t i = 0; i < point.size(); ++i)
    out += (i ? ", " : "") + vars[i] + " = " + exact_and_decimal(point[i]);
  return out;
}

// "  x + y - 3 = 1/2 > 0" for every constraint at the point.
void print_constraint_values(std::ostream& out, const std::vector<bernstein::PolyConstraint>& cs,
                             const std::vector<Rational>& point, const std::vector<std::string>& vars,
                             const std::string& indent) {
  for (const auto& c : cs)
    out << indent << bernstein::to_string(c.poly, vars) << " = " << exact_and_decimal(bernstein::evaluate(c.poly, point))
        << " " << bernstein::to_string(c.relation) << " 0\n";
}

void print_witness(std::ostream& out, const cegar::Witness& w, const abstraction::PredicateTable& table) {
  const auto& vars = table.domain(w.side).vars;
  out << "  " << spec::to_string(w.side) << " " << format_valuation(w.valuation) << " at " << format_point(w.point, vars)
      << "\n";
  print_constraint_values(out, cegar::valuation_to_constraints(w.valuation, table), w.point, vars, "    ");
}

std::string box_text(const abstraction::SideDomain& d) {
  std::string out;
  for (std::size_t i = 0; i < d.vars.size(); ++i)
    out += (i ? ", " : "") + d.vars[i] + " in [" + nltl::to_string(d.box[i].lower) + ", " +
           nltl::to_string(d.box[i].upper) + "]";
  return out;
}

}  // namespace

int cmd_synth(const SynthOptions& opts, std::ostream& out, std::ostream& err) {
  auto doc = load_spec(opts.spec_path, err);
  if (!doc) return kExitInputError;

  cegar::CegarConfig cfg;
  cfg.algorithm = opts.algorithm;
  cfg.bounds = cegar::doubling_bounds(opts.max_bound);
  cfg.theory.max_depth = opts.depth;
  const auto r = cegar::synthesize(*doc, cfg);

  out << "verdict: " << cegar::to_string(r.kind) << "\n";
  out << "algorithm: " << cegar::to_string(r.algorithm);
  if (r.algorithm == cegar::Algorithm::Safety) out << " (bound " << r.bound << ")";
  out << "\n";
  out << "iterations: " << r.iterations << "\n";
  out << "theory checks: " << cegar::count_theory_checks(r.transcript) << "\n";
  out << "refinements: " << r.refinements() << "\n";
  for (const auto& ref : r.spec.refinements)
    out << "  " << (ref.side == spec::Side::Input ? "assumption " : "guarantee ") << spec::to_string(ref.formula)
        << "\n";
  if (!opts.transcript.empty() && !write_file(opts.transcript, r.transcript.format(), err)) return kExitInputError;

  namespace fs = std::filesystem;
  switch (r.kind) {
    case cegar::SynthesisResult::Kind::Realizable: {
      const auto file = make_controller_file(r, *doc);
      const std::string path = opts.out.empty() ? fs::path(opts.spec_path).replace_extension(".ctrl").string() : opts.out;
      if (!write_file(path, write_controller(file), err)) return kExitInputError;
      out << "controller: " << r.controller->size() << " states, written to " << path << "\n";
      if (!r.multiplexer.empty()) {
        out << "multiplexer:\n";
        std::istringstream rows(abstraction::format_multiplexer(r.multiplexer));
        for (std::string line; std::getline(rows, line);) out << "  " << line << "\n";
      }
      if (!r.witnesses.empty()) out << "output witnesses:\n";
      for (const auto& w : r.witnesses) print_witness(out, w, r.predicates);
      if (!opts.dot.empty() &&
          !write_file(opts.dot, to_dot(cegar::decode_outputs(*r.controller, r.multiplexer)), err))
        return kExitInputError;
      return kExitRealizable;
    }
    case cegar::SynthesisResult::Kind::UnrealizableWithinBound: {
      const auto file = make_counter_file(r, *doc);
      const std::string path =
          opts.out.empty() ? fs::path(opts.spec_path).replace_extension(".counter").string() : opts.out;
      if (!write_file(path, write_counter_strategy(file), err)) return kExitInputError;
      out << "counter-strategy: " << r.counter->size() << " states, written to " << path << "\n";
      if (!r.witnesses.empty()) out << "witnesses:\n";
      for (const auto& w : r.witnesses) print_witness(out, w, r.predicates);
      if (!opts.dot.empty() && !write_file(opts.dot, to_dot(*r.counter), err)) return kExitInputError;
      return kExitUnrealizable;
    }
    case cegar::SynthesisResult::Kind::Unknown:
      out << "reason: " << r.reason << "\n";
      return kExitUnknown;
  }
  return kExitUnknown;
}

namespace {

struct CheckInput {
  std::vector<std::string> vars;
  std::vector<bernstein::Interval> box;
  enum class Mode { None, Feasible, Valid } mode = Mode::None;
  std::string query;
};

std::vector<std::string> split(const std::string& text, const std::string& sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    auto pos = text.find(sep, start);
    out.push_back(text.substr(start, pos == std::string::npos ? std::string::npos : pos - start));
    if (pos == std::string::npos) return out;
    start = pos + sep.size();
  }
}

void add_var(CheckInput& in, const std::string& name, const std::string& lo, const std::string& hi) {
  for (const auto& v : in.vars)
    if (v == name) throw std::invalid_argument("variable '" + name + "' declared twice");
  Rational l = parse_rational(lo), u = parse_rational(hi);
  if (l > u) throw std::invalid_argument("empty interval for '" + name + "'");
  in.vars.push_back(name);
  in.box.push_back({l, u});
}

void set_query(CheckInput& in, CheckInput::Mode mode, const std::string& q) {
  if (in.mode != CheckInput::Mode::None) throw std::invalid_argument("more than one FEASIBLE/VALID query");
  in.mode = mode;
  in.query = q;
}

void parse_check_file(const std::string& text, CheckInput& in) {
  static const std::regex real(R"(^\s*REAL\s+([A-Za-z_][A-Za-z0-9_]*)\s+IN\s*\[\s*([^,\]]+?)\s*,\s*([^\]]+?)\s*\]\s*$)");
  static const std::regex query(R"(^\s*(FEASIBLE|VALID)\s+(.+)$)");
  std::istringstream lines(text);
  std::size_t n = 0;
  for (std::string line; std::getline(lines, line);) {
    ++n;
    if (auto c = line.find("##"); c != std::string::npos) line.erase(c);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::smatch m;
    try {
      if (std::regex_match(line, m, real)) {
        add_var(in, m[1], m[2], m[3]);
      } else if (std::regex_match(line, m, query)) {
        set_query(in, m[1] == "VALID" ? CheckInput::Mode::Valid : CheckInput::Mode::Feasible, m[2]);
      } else {
        throw std::invalid_argument("expected 'REAL x IN [lo, hi]', 'FEASIBLE ...' or 'VALID ...'");
      }
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("line " + std::to_string(n) + ": " + e.what());
    }
  }
}

std::vector<bernstein::PolyConstraint> conjunction(const std::string& text, const std::vector<std::string>& vars) {
  std::vector<bernstein::PolyConstraint> out;
  for (const auto& part : split(text, "&&")) out.push_back(spec::parse_constraint(part, vars));
  return out;
}

}  // namespace

int cmd_check(const CheckOptions& opts, std::ostream& out, std::ostream& err) {
  CheckInput in;
  try {
    if (!opts.file.empty()) {
      auto text = read_file(opts.file, err);
      if (!text) return kExitInputError;
      parse_check_file(*text, in);
    }
    for (const auto& v : opts.vars) {
      static const std::regex var(R"(^\s*([A-Za-z_][A-Za-z0-9_]*)\s*=\s*([^:]+?)\s*:\s*(.+?)\s*$)");
      std::smatch m;
      if (!std::regex_match(v, m, var)) throw std::invalid_argument("expected --var name=lo:hi, got '" + v + "'");
      add_var(in, m[1], m[2], m[3]);
    }
    if (!opts.feasible.empty()) {
      std::string q;
      for (const auto& c : opts.feasible) q += (q.empty() ? "" : " && ") + c;
      set_query(in, CheckInput::Mode::Feasible, q);
    }
    if (!opts.valid.empty()) set_query(in, CheckInput::Mode::Valid, opts.valid);
    if (in.mode == CheckInput::Mode::None) throw std::invalid_argument("nothing to check");
  } catch (const std::invalid_argument& e) {
    err << (opts.file.empty() ? "" : opts.file + ": ") << e.what() << "\n";
    return kExitInputError;
  }

  bernstein::CheckConfig cfg;
  cfg.max_depth = opts.depth;
  try {
    const bernstein::Box box(in.box);
    if (in.mode == CheckInput::Mode::Feasible) {
      auto cs = conjunction(in.query, in.vars);
      auto v = bernstein::check_feasibility(cs, box, cfg);
      out << bernstein::to_string(v.kind) << "\n";
      if (v.feasible()) {
        out << "witness: " << format_point(v.witness, in.vars) << "\n";
        print_constraint_values(out, cs, v.witness, in.vars, "  ");
      }
      if (v.kind == bernstein::FeasibilityVerdict::Kind::Unknown) out << "reason: " << v.reason << "\n";
      out << "subboxes: " << v.subboxes << "\n";
      return v.kind == bernstein::FeasibilityVerdict::Kind::Unknown ? kExitUnknown : 0;
    }
    bernstein::ValidityQuery q;
    auto sides = split(in.query, "->");
    if (sides.size() > 2) throw std::invalid_argument("at most one '->' in a VALID query");
    if (sides.size() == 2) q.premises = conjunction(sides[0], in.vars);
    q.conclusion = spec::parse_constraint(sides.back(), in.vars);
    auto v = bernstein::check_validity(q, box, cfg);
    out << bernstein::to_string(v.kind) << "\n";
    if (v.kind == bernstein::ValidityVerdict::Kind::Invalid) {
      out << "counterexample: " << format_point(v.witness, in.vars) << "\n";
      auto all = q.premises;
      all.push_back(q.conclusion);
      print_constraint_values(out, all, v.witness, in.vars, "  ");
    }
    if (v.kind == bernstein::ValidityVerdict::Kind::Unknown) out << "reason: " << v.reason << "\n";
    out << "subboxes: " << v.subboxes << "\n";
    return v.kind == bernstein::ValidityVerdict::Kind::Unknown ? kExitUnknown : 0;
  } catch (const spec::SpecError& e) {
    for (const auto& d : e.diagnostics()) err << spec::to_string(d) << "\n";
    return kExitInputError;
  } catch (const std::invalid_argument& e) {
    err << e.what() << "\n";
    return kExitInputError;
  }
}

int cmd_abstract(const std::string& spec_path, std::ostream& out, std::ostream& err) {
  auto doc = load_spec(spec_path, err);
  if (!doc) return kExitInputError;
  auto [pb, table] = abstraction::abstract_spec(*doc);
  if (!table.empty()) {
    out << "## predicates\n";
    for (const auto& e : table.entries)
      out << "##   " << e.atom << " (" << spec::to_string(e.side)
          << "): " << bernstein::to_string(e.constraint, table.domain(e.side).vars) << "\n";
    for (auto side : {spec::Side::Input, spec::Side::Output})
      if (!table.domain(side).vars.empty())
        out << "## " << spec::to_string(side) << " box: " << box_text(table.domain(side)) << "\n";
  }
  out << spec::format_spec(pb.doc);
  return 0;
}

int cmd_reencode(const std::string& spec_path, std::ostream& out, std::ostream& err) {
  auto doc = load_spec(spec_path, err);
  if (!doc) return kExitInputError;
  auto pb = abstraction::abstract_spec(*doc).first;
  try {
    auto [enc, mux] = abstraction::reencode_outputs(pb);
    if (mux.empty()) {
      out << "no re-encoding applicable\n";
      return 0;
    }
    out << spec::format_spec(enc.doc);
    out << "## multiplexer:";
    for (const auto& e : mux.encoded) out << " " << e;
    out << " ->";
    for (const auto& o : mux.original) out << " " << o;
    out << "\n";
    std::istringstream rows(abstraction::format_multiplexer(mux));
    for (std::string line; std::getline(rows, line);) out << "##   " << line << "\n";
    return 0;
  } catch (const abstraction::InfeasibleOutputs& e) {
    err << spec_path << ": " << e.what() << "\n";
    return kExitUnrealizable;
  } catch (const std::length_error& e) {
    err << spec_path << ": " << e.what() << "\n";
    return kExitInputError;
  }
}

int cmd_simulate(const SimulateOptions& opts, std::ostream& out, std::ostream& err) {
  auto text = read_file(opts.controller_path, err);
  if (!text) return kExitInputError;
  try {
    auto file = read_controller(*text);
    SimulationOptions sim;
    sim.steps = opts.steps;
    sim.seed = opts.seed;
    if (!opts.inject.empty()) {
      sim.inject = parse_valuation(opts.inject);
      sim.inject_every = opts.inject_every;
    }
    auto trace = simulate(file, sim);
    out << format_trace(trace);
    return trace.report.violations() == 0 ? 0 : 1;
  } catch (const FileFormatError& e) {
    err << opts.controller_path << ": " << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    err << e.what() << "\n";
  }
  return kExitInputError;
}

}  // namespace nltl::cli
