#pragma once

// Sectioned `key = value` run configuration.
//
//   [graph]       kind = lattice | cyclic | product | file, plus kind keys
//   [graph.left]  product factors (lattice or cyclic)
//   [graph.right]
//   [metric]      kind = default | natural | euclidean | table, path
//   [equation]    sigma
//   [potential]   time, time_param, times, values, space, space_param
//   [hypothesis]  x0, alpha, R0, theta1, theta2, radii
//   [simulation]  dt, t_max, scheme, thresholds, initial data
//   [sweep]       sigmas, amplitudes
//   [proof]       radii, claim_radii, s, resolution
//   [run]         seed

#include "fujita/builders.hpp"
#include "fujita/hypothesis.hpp"
#include "fujita/simulator.hpp"
#include "fujita/testfn.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace fujita {

struct GraphSpec {
  std::string kind = "lattice";
  int dimension = 1;   // lattice
  int radius = 100;    // lattice
  int m = 5;           // cyclic
  int K = 1;           // cyclic
  std::string path;    // file
  double p = 2.0;                     // product
  std::string measure_rule = "sum";   // product
  double measure_constant = 1.0;      // product
  std::vector<GraphSpec> factors;     // product: left, right

  bool operator==(const GraphSpec&) const = default;
};

struct MetricSpec {
  std::string kind = "default";
  std::string path;
  bool operator==(const MetricSpec&) const = default;
};

struct PotentialSpec {
  std::string time = "constant";
  double time_param = 1.0;
  std::vector<double> times;   // table
  std::vector<double> values;  // table
  std::string space = "constant";
  double space_param = 1.0;
  bool operator==(const PotentialSpec&) const = default;
};

struct HypothesisSpec {
  std::string x0;  ///< empty: the origin of a lattice, else the first vertex
  double alpha = 1.0;
  double R0 = 1.0;
  std::optional<double> theta1;  ///< unset: 2(1+alpha)
  std::optional<double> theta2;  ///< unset: 2
  std::vector<double> radii{8.0, 16.0, 32.0, 64.0};
  bool operator==(const HypothesisSpec&) const = default;
};

struct SimulationSpec {
  std::optional<double> dt;  ///< unset: automatic
  double t_max = 1000.0;
  std::string scheme = "explicit-euler";
  double blow_up_threshold = 1e10;
  double decay_threshold = 1e-14;
  double boundary_mass_tolerance = 1e-8;
  std::string initial = "box";  ///< box | constant
  double amplitude = 0.01;
  double initial_radius = 5.0;  ///< box: d(x0, x) <= initial_radius
  int record_every = 1;
  bool operator==(const SimulationSpec&) const = default;
};

struct SweepSpec {
  std::vector<double> sigmas{2.0, 4.0};
  std::vector<double> amplitudes{1e-3, 1e-2};
  bool operator==(const SweepSpec&) const = default;
};

struct ProofSpec {
  std::vector<double> radii{8.0, 16.0, 32.0, 64.0};
  std::vector<double> claim_radii{8.0, 16.0};
  double s = 3.0;
  int resolution = 16;
  bool operator==(const ProofSpec&) const = default;
};

struct RunSpec {
  GraphSpec graph;
  MetricSpec metric;
  double sigma = 2.0;
  PotentialSpec potential;
  HypothesisSpec hypothesis;
  SimulationSpec simulation;
  SweepSpec sweep;
  ProofSpec proof;
  std::uint64_t seed = 0;

  /// Throws ConfigError naming the violated constraint.
  void validate() const;
  bool operator==(const RunSpec&) const = default;
};

/// Unknown sections or keys, malformed lines and bad numbers throw
/// ParseError with the line number; constraint violations throw ConfigError.
RunSpec parse_config(std::istream& in);
RunSpec load_config(const std::string& path);

/// Canonical text: every field, fixed order, doubles with 17 digits.
void emit_config(const RunSpec& spec, std::ostream& out);
std::string emit_config(const RunSpec& spec);

/// Graph, metric and base vertex built from a spec.
struct Problem {
  std::shared_ptr<const Graph> graph;
  PseudoMetric metric;
  Index x0 = 0;
};

Problem build_problem(const RunSpec& spec);
Potential make_potential(const PotentialSpec& spec);
HypothesisQuery make_query(const RunSpec& spec, const Problem& problem);
SimConfig make_sim_config(const RunSpec& spec, const Problem& problem);
TestFnParams make_testfn_params(const RunSpec& spec, const Problem& problem);

}  // namespace fujita
