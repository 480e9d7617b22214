#pragma once

// CSV tables and JSON summaries written by the command-line tool. Numbers
// are printed with 17 significant digits, so equal inputs give equal bytes.

#include "fujita/config.hpp"
#include "fujita/hypothesis.hpp"
#include "fujita/simulator.hpp"
#include "fujita/testfn.hpp"

#include <filesystem>
#include <optional>
#include <vector>

namespace fujita {

struct ClaimRow {
  double R;
  Index violations;
};

/// graph.edges and graph_summary.json.
void write_graph_report(const std::filesystem::path& dir, const Problem& problem);

/// hypothesis.csv (R, quantity, bound, margin) and hypothesis_summary.json.
void write_hypothesis_report(const std::filesystem::path& dir, const HypothesisReport& report,
                             const HypothesisQuery& query);

/// proof_bounds.csv (R, Cmax_laplacian, Cmax_time, violations) and proof_summary.json.
void write_proof_report(const std::filesystem::path& dir, const ProofLadder& ladder,
                        const std::vector<ClaimRow>& claims);

/// trajectory.csv (t, sup_u, mass, boundary_max) and simulation_summary.json.
void write_simulation_report(const std::filesystem::path& dir, const BlowUpReport& report);

/// sweep.csv (sigma, amplitude, outcome, blow_up_time) and sweep_summary.json.
void write_sweep_report(const std::filesystem::path& dir, const SweepResult& result);

}  // namespace fujita
