#include "nltl/cli/controller_file.hpp"

#include "nltl/speclang/parser.hpp"

#include <cstdint>
#include <cstdio>
#include <sstream>

namespace nltl::cli {

using spec::Side;

std::string spec_hash(const spec::SpecDocument& doc) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : spec::format_spec(doc)) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

abstraction::PredicateTable predicate_table(const spec::SpecDocument& source) {
  return abstraction::abstract_spec(source).second;
}

namespace {

std::vector<std::string> refinement_lines(const cegar::SynthesisResult& r) {
  std::vector<std::string> out;
  for (const auto& ref : r.spec.refinements)
    out.push_back(std::string(ref.side == Side::Input ? "assumption " : "guarantee ") +
                  spec::to_string(ref.formula));
  return out;
}

// Bit string, atom 0 first; "_" for zero width so the token is never empty.
std::string bits_of(Letter l, std::size_t width) { return width == 0 ? "_" : to_bits(l, width); }

std::string join(const std::vector<std::string>& names) {
  std::string out;
  for (const auto& n : names) out += " " + n;
  return out;
}

std::vector<std::string> predicate_echo(const spec::SpecDocument& source) {
  auto table = predicate_table(source);
  std::vector<std::string> out;
  for (const auto& e : table.entries)
    out.push_back(e.atom + " " + std::string(spec::to_string(e.side)) + " " +
                  bernstein::to_string(e.constraint, table.domain(e.side).vars));
  return out;
}

void write_common(std::ostringstream& os, const std::string& magic, const std::string& hash,
                  const std::string& algorithm, std::size_t bound, const std::vector<std::string>& refinements) {
  os << magic << " 1\n";
  os << "spec-hash " << hash << "\n";
  os << "algorithm " << algorithm << "\n";
  os << "bound " << bound << "\n";
  for (const auto& r : refinements) os << "refinement " << r << "\n";
}

void write_tail(std::ostringstream& os, const spec::SpecDocument& source) {
  for (const auto& line : predicate_echo(source)) os << "predicate " << line << "\n";
  os << "spec\n";
  std::istringstream lines(spec::format_spec(source));
  for (std::string line; std::getline(lines, line);) os << "| " << line << "\n";
  os << "end\n";
}

// Line cursor with keyword dispatch helpers.
class Reader {
 public:
  explicit Reader(std::string_view text) {
    std::istringstream in{std::string(text)};
    for (std::string line; std::getline(in, line);) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      lines_.push_back(line);
    }
  }

  bool done() const { return pos_ >= lines_.size(); }
  std::size_t line_number() const { return pos_ + 1; }

  [[noreturn]] void fail(const std::string& what) const {
    throw FileFormatError("line " + std::to_string(std::min(pos_ + 1, lines_.size())) + ": " + what);
  }

  // Keyword of the current line, "" past the end.
  std::string keyword() const {
    if (done()) return {};
    const auto& l = lines_[pos_];
    return l.substr(0, l.find(' '));
  }

  // Remainder after the keyword.
  std::string rest() const {
    const auto& l = lines_[pos_];
    auto sp = l.find(' ');
    return sp == std::string::npos ? std::string() : l.substr(sp + 1);
  }

  std::vector<std::string> tokens() const {
    std::istringstream in(rest());
    std::vector<std::string> out;
    for (std::string t; in >> t;) out.push_back(t);
    return out;
  }

  const std::string& line() const { return lines_[pos_]; }
  void next() { ++pos_; }

  std::string expect(const std::string& kw) {
    if (keyword() != kw) fail("expected '" + kw + "'");
    std::string r = rest();
    next();
    return r;
  }

  std::size_t number(const std::string& text) const {
    try {
      std::size_t used = 0;
      auto v = std::stoull(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
      fail("expected a number, got '" + text + "'");
    }
  }

  Letter bits(const std::string& text, std::size_t width) const {
    if (width == 0 && text == "_") return 0;
    if (text.size() != width || text.find_first_not_of("01") != std::string::npos)
      fail("expected " + std::to_string(width) + " bits, got '" + text + "'");
    return from_bits(text);
  }

  // A bit string with '-' for don't-care, expanded to every matching letter.
  std::vector<Letter> cube(const std::string& text, std::size_t width) const {
    if (width == 0 && text == "_") return {0};
    if (text.size() != width || text.find_first_not_of("01-") != std::string::npos)
      fail("expected an input cube of width " + std::to_string(width) + ", got '" + text + "'");
    std::vector<Letter> out{0};
    for (std::size_t i = 0; i < width; ++i) {
      const Letter bit = Letter{1} << i;
      if (text[i] == '1') {
        for (auto& l : out) l |= bit;
      } else if (text[i] == '-') {
        const std::size_t n = out.size();
        for (std::size_t j = 0; j < n; ++j) out.push_back(out[j] | bit);
      }
    }
    return out;
  }

 private:
  std::vector<std::string> lines_;
  std::size_t pos_ = 0;
};

std::vector<std::string> names(const std::string& rest) {
  std::istringstream in(rest);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

struct Common {
  std::string hash, algorithm;
  std::size_t bound = 0;
  std::vector<std::string> refinements;
};

Common read_common(Reader& in, const std::string& magic) {
  if (in.keyword() != magic || in.rest() != "1") in.fail("not a '" + magic + "' file of version 1");
  in.next();
  Common c;
  c.hash = in.expect("spec-hash");
  c.algorithm = in.expect("algorithm");
  c.bound = in.number(in.expect("bound"));
  while (in.keyword() == "refinement") {
    c.refinements.push_back(in.rest());
    in.next();
  }
  return c;
}

spec::SpecDocument read_tail(Reader& in, const Common& c) {
  std::vector<std::string> echo;
  while (in.keyword() == "predicate") {
    echo.push_back(in.rest());
    in.next();
  }
  in.expect("spec");
  std::string text;
  while (!in.done() && in.line() != "end") {
    const auto& l = in.line();
    if (l.rfind("| ", 0) != 0 && l != "|") in.fail("spec lines start with '| '");
    text += (l.size() > 2 ? l.substr(2) : std::string()) + "\n";
    in.next();
  }
  if (in.done()) in.fail("missing 'end'");
  in.next();
  spec::SpecDocument doc;
  try {
    doc = spec::parse_spec(text);
  } catch (const spec::SpecError& e) {
    throw FileFormatError(std::string("embedded spec: ") + e.what());
  }
  if (echo != predicate_echo(doc)) throw FileFormatError("predicate lines disagree with the embedded spec");
  if (spec_hash(doc) != c.hash) throw FileFormatError("spec-hash does not match the embedded spec");
  return doc;
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

ControllerFile make_controller_file(const cegar::SynthesisResult& r, const spec::SpecDocument& doc) {
  if (r.kind != cegar::SynthesisResult::Kind::Realizable || !r.controller)
    throw std::invalid_argument("controller file needs a realizable result");
  ControllerFile f;
  f.spec_hash = spec_hash(doc);
  f.algorithm = std::string(cegar::to_string(r.algorithm));
  f.bound = r.bound;
  f.refinements = refinement_lines(r);
  f.controller = *r.controller;
  f.multiplexer = r.multiplexer;
  f.source = doc;
  return f;
}

CounterStrategyFile make_counter_file(const cegar::SynthesisResult& r, const spec::SpecDocument& doc) {
  if (r.kind != cegar::SynthesisResult::Kind::UnrealizableWithinBound || !r.counter)
    throw std::invalid_argument("counter-strategy file needs an unrealizable result");
  CounterStrategyFile f;
  f.spec_hash = spec_hash(doc);
  f.algorithm = std::string(cegar::to_string(r.algorithm));
  f.bound = r.bound;
  f.refinements = refinement_lines(r);
  f.strategy = *r.counter;
  f.witnesses = r.witnesses;
  f.source = doc;
  return f;
}

std::string write_controller(const ControllerFile& f) {
  std::ostringstream os;
  const auto& m = f.controller;
  write_common(os, "nltl-controller", f.spec_hash, f.algorithm, f.bound, f.refinements);
  os << "inputs" << join(m.inputs) << "\n";
  os << "outputs" << join(m.outputs) << "\n";
  if (!f.multiplexer.empty()) {
    os << "mux-encoded" << join(f.multiplexer.encoded) << "\n";
    os << "mux-original" << join(f.multiplexer.original) << "\n";
    for (const auto& [code, orig] : f.multiplexer.rows)
      os << "mux " << bits_of(code, f.multiplexer.encoded.size()) << " " << bits_of(orig, f.multiplexer.original.size())
         << "\n";
  }
  os << "initial " << m.initial << "\n";
  for (std::size_t s = 0; s < m.size(); ++s) {
    os << "state " << s;
    if (s < m.labels.size() && !m.labels[s].empty()) os << " " << m.labels[s];
    os << "\n";
    for (const auto& [input, step] : m.table[s])
      os << "on " << s << " " << bits_of(input, m.inputs.size()) << " -> " << bits_of(step.output, m.outputs.size())
         << " " << step.next << "\n";
  }
  write_tail(os, f.source);
  return os.str();
}

ControllerFile read_controller(std::string_view text) {
  Reader in(text);
  Common c = read_common(in, "nltl-controller");
  ControllerFile f;
  f.spec_hash = c.hash;
  f.algorithm = c.algorithm;
  f.bound = c.bound;
  f.refinements = c.refinements;
  auto& m = f.controller;
  m.inputs = names(in.expect("inputs"));
  m.outputs = names(in.expect("outputs"));
  if (in.keyword() == "mux-encoded") {
    f.multiplexer.encoded = names(in.expect("mux-encoded"));
    f.multiplexer.original = names(in.expect("mux-original"));
    while (in.keyword() == "mux") {
      auto t = in.tokens();
      if (t.size() != 2) in.fail("expected 'mux <code> <original>'");
      f.multiplexer.rows.emplace_back(in.bits(t[0], f.multiplexer.encoded.size()),
                                      in.bits(t[1], f.multiplexer.original.size()));
      in.next();
    }
  }
  m.initial = in.number(in.expect("initial"));
  while (in.keyword() == "state") {
    auto r = in.rest();
    auto sp = r.find(' ');
    std::size_t s = in.number(r.substr(0, sp));
    if (s != m.size()) in.fail("states must be numbered consecutively from 0");
    m.labels.push_back(sp == std::string::npos ? std::string() : r.substr(sp + 1));
    m.table.emplace_back();
    in.next();
    while (in.keyword() == "on") {
      auto t = in.tokens();
      if (t.size() != 5 || t[2] != "->") in.fail("expected 'on <state> <inputs> -> <outputs> <next>'");
      if (in.number(t[0]) != s) in.fail("transition listed under the wrong state");
      games::MealyStep step{in.bits(t[3], m.outputs.size()), in.number(t[4])};
      for (Letter i : in.cube(t[1], m.inputs.size()))
        if (!m.table[s].emplace(i, step).second) in.fail("input listed twice");
      in.next();
    }
  }
  if (m.size() == 0) in.fail("controller has no states");
  if (m.initial >= m.size()) in.fail("initial state out of range");
  for (const auto& row : m.table)
    for (const auto& [i, step] : row)
      if (step.next >= m.size()) in.fail("transition target out of range");
  f.source = read_tail(in, c);
  if (!in.done()) in.fail("trailing content");
  return f;
}

std::string write_counter_strategy(const CounterStrategyFile& f) {
  std::ostringstream os;
  const auto& cs = f.strategy;
  write_common(os, "nltl-counter-strategy", f.spec_hash, f.algorithm, f.bound, f.refinements);
  os << "inputs" << join(cs.inputs) << "\n";
  os << "outputs" << join(cs.outputs) << "\n";
  os << "initial " << cs.initial << "\n";
  for (std::size_t s = 0; s < cs.size(); ++s) {
    const auto& st = cs.states[s];
    os << "state " << s << " " << st.node << " " << (st.won ? "won" : "play");
    if (!st.label.empty()) os << " " << st.label;
    os << "\n";
    for (const auto& c : st.candidates) {
      os << "candidate " << s << " " << bits_of(c.input, cs.inputs.size()) << "\n";
      for (const auto& r : c.responses)
        os << "response " << s << " " << bits_of(c.input, cs.inputs.size()) << " -> "
           << bits_of(r.output, cs.outputs.size()) << " " << r.next << "\n";
    }
  }
  for (const auto& w : f.witnesses) {
    os << "witness " << spec::to_string(w.side) << " " << format_valuation(w.valuation);
    for (const auto& x : w.point) os << " " << nltl::to_string(x);
    os << "\n";
  }
  write_tail(os, f.source);
  return os.str();
}

CounterStrategyFile read_counter_strategy(std::string_view text) {
  Reader in(text);
  Common c = read_common(in, "nltl-counter-strategy");
  CounterStrategyFile f;
  f.spec_hash = c.hash;
  f.algorithm = c.algorithm;
  f.bound = c.bound;
  f.refinements = c.refinements;
  auto& cs = f.strategy;
  cs.inputs = names(in.expect("inputs"));
  cs.outputs = names(in.expect("outputs"));
  cs.initial = in.number(in.expect("initial"));
  while (in.keyword() == "state") {
    auto t = in.tokens();
    if (t.size() < 3 || (t[2] != "won" && t[2] != "play")) in.fail("expected 'state <i> <node> won|play [label]'");
    std::size_t s = in.number(t[0]);
    if (s != cs.size()) in.fail("states must be numbered consecutively from 0");
    games::CounterState st;
    st.node = in.number(t[1]);
    st.won = t[2] == "won";
    auto r = in.rest();
    std::size_t pos = 0;
    for (int k = 0; k < 3 && pos != std::string::npos; ++k) {
      pos = r.find(' ', pos);
      if (pos != std::string::npos) ++pos;
    }
    if (pos != std::string::npos) st.label = r.substr(pos);
    in.next();
    while (in.keyword() == "candidate") {
      auto ct = in.tokens();
      if (ct.size() != 2 || in.number(ct[0]) != s) in.fail("expected 'candidate <state> <inputs>'");
      games::CounterCandidate cand;
      cand.input = in.bits(ct[1], cs.inputs.size());
      in.next();
      while (in.keyword() == "response") {
        auto rt = in.tokens();
        if (rt.size() != 5 || rt[2] != "->" || in.number(rt[0]) != s || in.bits(rt[1], cs.inputs.size()) != cand.input)
          in.fail("expected 'response <state> <inputs> -> <outputs> <next>' matching its candidate");
        cand.responses.push_back({in.bits(rt[3], cs.outputs.size()), in.number(rt[4])});
        in.next();
      }
      st.candidates.push_back(std::move(cand));
    }
    cs.states.push_back(std::move(st));
  }
  if (cs.size() == 0 || cs.initial >= cs.size()) in.fail("initial state out of range");
  while (in.keyword() == "witness") {
    auto t = in.tokens();
    if (t.size() < 2 || (t[0] != "input" && t[0] != "output")) in.fail("expected 'witness input|output <valuation> <point>'");
    cegar::Witness w;
    w.side = t[0] == "input" ? Side::Input : Side::Output;
    try {
      w.valuation = parse_valuation(t[1]);
    } catch (const std::invalid_argument& e) {
      in.fail(e.what());
    }
    for (std::size_t i = 2; i < t.size(); ++i) {
      try {
        w.point.push_back(parse_rational(t[i]));
      } catch (const std::invalid_argument&) {
        in.fail("malformed rational '" + t[i] + "'");
      }
    }
    f.witnesses.push_back(std::move(w));
    in.next();
  }
  f.source = read_tail(in, c);
  if (!in.done()) in.fail("trailing content");
  return f;
}

std::string to_dot(const games::MealyController& m, const std::string& name) {
  std::ostringstream os;
  os << "digraph \"" << dot_escape(name) << "\" {\n  rankdir=LR;\n  init [shape=point];\n";
  for (std::size_t s = 0; s < m.size(); ++s) {
    std::string label = std::to_string(s);
    if (s < m.labels.size() && !m.labels[s].empty()) label += "\\n" + dot_escape(m.labels[s]);
    os << "  s" << s << " [shape=circle,label=\"" << label << "\"];\n";
  }
  os << "  init -> s" << m.initial << ";\n";
  for (std::size_t s = 0; s < m.size(); ++s)
    for (const auto& [input, step] : m.table[s])
      os << "  s" << s << " -> s" << step.next << " [label=\"" << bits_of(input, m.inputs.size()) << " / "
         << bits_of(step.output, m.outputs.size()) << "\"];\n";
  os << "}\n";
  return os.str();
}

std::string to_dot(const games::CounterStrategy& cs, const std::string& name) {
  std::ostringstream os;
  os << "digraph \"" << dot_escape(name) << "\" {\n  rankdir=LR;\n  init [shape=point];\n";
  for (std::size_t s = 0; s < cs.size(); ++s)
    os << "  s" << s << " [shape=" << (cs.states[s].won ? "doublecircle" : "circle") << ",label=\"" << s << "\"];\n";
  os << "  init -> s" << cs.initial << ";\n";
  for (std::size_t s = 0; s < cs.size(); ++s)
    for (const auto& c : cs.states[s].candidates)
      for (const auto& r : c.responses)
        os << "  s" << s << " -> s" << r.next << " [label=\"" << bits_of(c.input, cs.inputs.size()) << " / "
           << bits_of(r.output, cs.outputs.size()) << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace nltl::cli
