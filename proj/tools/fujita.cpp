// Command-line front end: build, check, verify-proof, simulate, sweep.

#include "fujita/config.hpp"
#include "fujita/error.hpp"
#include "fujita/report.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace fujita;

namespace {

void run_build(const RunSpec& spec, const std::string& out) {
  const Problem p = build_problem(spec);
  write_graph_report(out, p);
  std::cout << p.graph->size() << " vertices, " << p.graph->edge_count() << " edges -> " << out
            << '\n';
}

void run_check(const RunSpec& spec, const std::string& out) {
  const Problem p = build_problem(spec);
  const HypothesisQuery q = make_query(spec, p);
  const HypothesisReport r = check(q);
  write_hypothesis_report(out, r, q);
  std::cout << "verdict: " << to_string(r.verdict);
  if (!r.fired.empty()) std::cout << " (" << r.fired << ")";
  std::cout << '\n';
}

void run_verify(const RunSpec& spec, const std::string& out) {
  const Problem p = build_problem(spec);
  const TestFnParams base = make_testfn_params(spec, p);
  const ProofLadder ladder =
      verify_proof_bounds(p.graph, p.metric, base, spec.proof.radii, spec.proof.resolution);
  std::vector<ClaimRow> claims;
  for (double R : spec.proof.claim_radii) {
    TestFnParams tp = base;
    tp.R = R;
    claims.push_back({R, claim_xi_gap(TestFunction(p.graph, p.metric, tp), spec.proof.resolution)});
  }
  write_proof_report(out, ladder, claims);
  std::cout << "laplacian bound: " << to_string(ladder.laplacian_trend.verdict)
            << ", time bound: " << to_string(ladder.time_trend.verdict) << '\n';
}

void run_simulate(const RunSpec& spec, const std::string& out) {
  const Problem p = build_problem(spec);
  const BlowUpReport r = run(*p.graph, make_sim_config(spec, p));
  write_simulation_report(out, r);
  std::cout << "outcome: " << to_string(r.outcome);
  if (r.blow_up_time) std::cout << " at t = " << *r.blow_up_time;
  std::cout << '\n';
}

void run_sweep(const RunSpec& spec, const std::string& out) {
  const Problem p = build_problem(spec);
  RunSpec unit = spec;
  unit.simulation.amplitude = 1.0;
  const SimConfig base = make_sim_config(unit, p);
  const Field shape = base.initial;
  const SweepResult r = fujita_sweep(*p.graph, spec.sweep.sigmas, spec.sweep.amplitudes, base, shape);
  write_sweep_report(out, r);
  std::cout << r.rows.size() << " runs";
  if (r.survival_sigma) std::cout << ", smallest surviving sigma " << *r.survival_sigma;
  std::cout << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Blow-up and global existence for u_t = Lap u + v u^sigma on weighted graphs"};
  app.require_subcommand(1);

  std::string config;
  std::string out = "out";
  bool print_config = false;

  struct Command {
    const char* name;
    const char* help;
    void (*fn)(const RunSpec&, const std::string&);
  };
  const Command commands[] = {
      {"build", "build the graph and write its edge list", run_build},
      {"check", "check the hypotheses and volume conditions", run_check},
      {"verify-proof", "verify the test-function bounds on a radius ladder", run_verify},
      {"simulate", "integrate the equation and classify the run", run_simulate},
      {"sweep", "classify a grid of (sigma, amplitude) runs", run_sweep},
  };
  std::vector<std::pair<CLI::App*, const Command*>> subs;
  for (const auto& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("-c,--config,--graph", config, "run configuration file")->required();
    sub->add_option("-o,--out", out, "output directory");
    sub->add_flag("--print-config", print_config, "print the canonical configuration and exit");
    subs.emplace_back(sub, &c);
  }

  CLI11_PARSE(app, argc, argv);

  try {
    const RunSpec spec = load_config(config);
    if (print_config) {
      emit_config(spec, std::cout);
      return 0;
    }
    for (const auto& [sub, cmd] : subs)
      if (sub->parsed()) cmd->fn(spec, out);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
