#pragma once

// Time stepping of u_t = Lap(u) + v u^sigma with a zero exterior on
// truncated windows, and blow-up classification.

#include "fujita/graph.hpp"
#include "fujita/potential.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fujita {

enum class Scheme { explicit_euler, semi_implicit_linear };
enum class Outcome { blow_up, global_decay, undecided };

std::string to_string(Scheme s);
std::string to_string(Outcome o);
Scheme scheme_from_string(const std::string& s);

struct SimConfig {
  double sigma = 2.0;
  /// Empty space field means v = 1.
  BoundPotential potential{TimeProfile::constant(), Field()};
  std::optional<double> dt;  ///< unset: default_dt(g)
  double t_max = 1000.0;
  Scheme scheme = Scheme::explicit_euler;
  double blow_up_threshold = 1e10;
  double decay_threshold = 1e-14;
  /// Relative to the current sup of u.
  double boundary_mass_tolerance = 1e-8;
  Field initial;
  /// Test hook: false drops the reaction term.
  bool reaction_enabled = true;
  /// History is sampled every this many steps (and at the end).
  int record_every = 1;
  /// Re-run at dt/2 to confirm a blow-up time.
  bool confirm = true;
};

struct HistorySample {
  double t;
  double sup;
  double mass;          ///< sum of mu u
  double boundary_max;  ///< max of u over boundary vertices
};

struct BlowUpReport {
  Outcome outcome = Outcome::undecided;
  std::optional<double> blow_up_time;
  std::optional<double> confirm_time;  ///< blow-up time of the dt/2 re-run
  std::vector<HistorySample> history;
  double boundary_contamination = 0.0;  ///< largest boundary value seen
  bool contaminated = false;            ///< boundary exceeded its tolerance
  double dt_used = 0.0;
  int dt_halvings = 0;
  std::string reason;
};

/// 0.4 / max_x (sum_y w_xy + exterior weight) / mu(x).
double default_dt(const Graph& g);

/// One step from time t. Throws StepError when a value turns negative.
Field step(const Graph& g, const Field& u, double t, double dt, const SimConfig& cfg);

/// Integrates to t_max or the blow-up threshold and classifies the run.
BlowUpReport run(const Graph& g, const SimConfig& cfg);

struct Trajectory {
  std::vector<double> times;
  std::vector<Field> fields;
};

/// Every step from 0 up to the first grid time >= t_end, at fixed dt.
Trajectory trajectory(const Graph& g, const SimConfig& cfg, double t_end);

struct SweepRow {
  double sigma;
  double amplitude;
  Outcome outcome;
  std::optional<double> blow_up_time;
};

struct SweepResult {
  std::vector<SweepRow> rows;  ///< sigma-major, in the order given
  /// Smallest sigma at which the smallest amplitude decays globally.
  std::optional<double> survival_sigma;
};

/// Runs every (sigma, amplitude) with initial = amplitude * shape. Runs are
/// spread over FUJITA_THREADS worker threads (default 1).
SweepResult fujita_sweep(const Graph& g, const std::vector<double>& sigmas,
                         const std::vector<double>& amplitudes, const SimConfig& base,
                         const Field& shape);

/// Thread count from FUJITA_THREADS, at least 1.
int worker_threads();

}  // namespace fujita
