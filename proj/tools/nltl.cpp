#include "nltl/cli/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace nltl;

int main(int argc, char** argv) {
  CLI::App app{"Synthesis of reactive controllers from LTL specifications over polynomial real predicates"};
  app.require_subcommand(1);

  cli::SynthOptions synth;
  std::string algorithm = "safety";
  auto* s = app.add_subcommand("synth", "Run the refinement loop and write a controller or counter-strategy");
  s->add_option("spec", synth.spec_path, "Specification file")->required();
  s->add_option("--algorithm", algorithm, "Game construction")
      ->check(CLI::IsMember({"buchi", "safety"}))
      ->capture_default_str();
  s->add_option("--max-bound", synth.max_bound, "Largest unroll bound for the safety game")
      ->check(CLI::Range(1, 100))
      ->capture_default_str();
  s->add_option("--depth", synth.depth, "Bisection depth budget of the theory checker")->capture_default_str();
  s->add_option("--out", synth.out, "Output file (default: spec path with .ctrl or .counter)");
  s->add_option("--dot", synth.dot, "Write a Graphviz rendering of the result");
  s->add_option("--transcript", synth.transcript, "Write the CEGAR transcript");

  cli::CheckOptions check;
  auto* c = app.add_subcommand("check", "Decide a polynomial feasibility or validity query over a box");
  c->add_option("file", check.file, "Constraint file with REAL, FEASIBLE and VALID lines");
  c->add_option("--var", check.vars, "Variable and its range, name=lo:hi");
  c->add_option("--feasible", check.feasible, "Constraint of a conjunction to satisfy");
  c->add_option("--valid", check.valid, "Implication 'c1 && c2 -> c' to prove for all points");
  c->add_option("--depth", check.depth, "Bisection depth budget")->capture_default_str();

  std::string abstract_path;
  auto* a = app.add_subcommand("abstract", "Print the pseudo-Boolean abstraction");
  a->add_option("spec", abstract_path, "Specification file")->required();

  std::string reencode_path;
  auto* r = app.add_subcommand("reencode", "Print the output re-encoding and its multiplexer");
  r->add_option("spec", reencode_path, "Specification file")->required();

  cli::SimulateOptions sim;
  auto* m = app.add_subcommand("simulate", "Run a controller on random samples and monitor its guarantees");
  m->add_option("controller", sim.controller_path, "Controller file written by synth")->required();
  m->add_option("--steps", sim.steps, "Number of steps")->capture_default_str();
  m->add_option("--seed", sim.seed, "Random seed")->capture_default_str();
  m->add_option("--inject", sim.inject, "Predicate valuation to force, e.g. req1=1,req2=1");
  m->add_option("--inject-every", sim.inject_every, "Injection period in steps")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : cli::kExitInputError;
  }

  if (s->parsed()) {
    synth.algorithm = algorithm == "buchi" ? cegar::Algorithm::Buchi : cegar::Algorithm::Safety;
    return cli::cmd_synth(synth, std::cout, std::cerr);
  }
  if (c->parsed()) return cli::cmd_check(check, std::cout, std::cerr);
  if (a->parsed()) return cli::cmd_abstract(abstract_path, std::cout, std::cerr);
  if (r->parsed()) return cli::cmd_reencode(reencode_path, std::cout, std::cerr);
  return cli::cmd_simulate(sim, std::cout, std::cerr);
}
