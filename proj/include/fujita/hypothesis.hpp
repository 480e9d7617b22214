#pragma once

// Numerical checks of the standing assumptions (edge mass, jump size,
// Laplacian of the distance) and of the volume-growth conditions that
// force nonexistence of global solutions.

#include "fujita/graph.hpp"
#include "fujita/metric.hpp"
#include "fujita/numerics.hpp"
#include "fujita/potential.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace fujita {

/// Slack allowed on exponent inequalities decided from fitted slopes.
inline constexpr double kExponentTolerance = 0.05;

struct HypothesisQuery {
  std::shared_ptr<const Graph> graph;
  PseudoMetric metric;
  Index x0 = 0;
  double alpha = 1.0;
  double R0 = 1.0;
  double sigma = 2.0;
  Potential potential;
  double theta1 = 4.0;
  double theta2 = 2.0;
  /// Increasing test radii. Empty means "the whole window".
  std::vector<double> radii;

  /// Throws ConfigError naming the violated constraint.
  void validate() const;
  /// theta1 = 2(1 + alpha), theta2 = 2.
  void use_default_thetas();
};

/// max over interior vertices of sum_y w_xy / mu(x).
double edge_mass_bound(const Graph& g);

/// Least C with Laplacian(d)(x) <= C d(x)^-alpha on the admissible region
/// (interior x with d(x, x0) > R0, and d <= max radius when radii are set).
double laplacian_distance_bound(const HypothesisQuery& q);

struct RunningSup {
  double R;
  double first;   ///< sup of Laplacian(d) d^alpha over R0 < d <= R
  double second;  ///< sup of Laplacian(d^(1+alpha)) over R0 < d <= R
};

struct Remark25Check {
  double first = 0.0;
  double second = 0.0;
  std::vector<RunningSup> ladder;
  bool first_bounded = true;
  bool second_bounded = true;
  /// The reverse implication needs R0 > 2j.
  bool reverse_applicable = false;
  double jump = 0.0;
};

/// Both forms of the Laplacian-of-distance bound over the admissible region.
Remark25Check remark25_check(const HypothesisQuery& q);

/// max over interior vertices of (1+alpha) d^alpha Lap(d) - Lap(d^(1+alpha)).
/// Convexity makes this <= 0 up to rounding.
double convexity_defect(const HypothesisQuery& q);

struct VolumeFit {
  double delta = 0.0;
  double residual = 0.0;
  std::vector<double> radii;    ///< radii actually used
  std::vector<double> volumes;  ///< Vol(B_R) for those radii
};

/// Slope of log Vol(B_R(x0)) against log R. Radii below R0 and balls that
/// reach the window boundary are excluded; fewer than 3 usable radii throws.
VolumeFit volume_growth_fit(const Graph& g, const PseudoMetric& d, Index x0,
                            const std::vector<double>& radii, double R0 = 0.0);

struct MarginRow {
  double R;         ///< radius, or time T for the finite-graph condition
  double quantity;  ///< measured integral
  double bound;     ///< allowed growth R^exponent
  double margin;    ///< quantity / bound
};

struct ConditionReport {
  std::vector<MarginRow> rows;
  TrendVerdict trend;
};

/// Space-time weighted volume of the shells E_R against R^((1+alpha)sigma/(sigma-1)).
ConditionReport spacetime_condition(const HypothesisQuery& q);

/// Finite graphs: integral over [T, 2T] of sum_x v^(-1/(sigma-1)) mu
/// against T^(sigma/(sigma-1)).
ConditionReport finite_graph_condition(const Graph& g, const BoundPotential& v, double sigma,
                                       const std::vector<double>& times);

enum class Criterion { separable, spatial_weight, volume, finite_graph };

std::string to_string(Criterion c);

struct CorollaryReport {
  Criterion criterion = Criterion::separable;
  double delta1 = 0.0;  ///< time exponent
  double delta2 = 0.0;  ///< space exponent
  double lhs = 0.0;     ///< (1+alpha) delta1 + delta2
  double rhs = 0.0;     ///< (1+alpha) sigma / (sigma-1)
  Verdict verdict = Verdict::inconclusive;
  std::optional<ConditionReport> finite;  ///< set on the finite-graph route
};

/// Exponent-fit form of the condition for separable potentials.
CorollaryReport corollary_conditions(const HypothesisQuery& q);

struct HypothesisReport {
  double edge_mass_C = 0.0;
  JumpSize jump{0.0, false};
  double lap_dist_C = 0.0;
  double rem25_C = 0.0;
  std::optional<VolumeFit> volume;
  ConditionReport spacetime;
  CorollaryReport corollary;
  Verdict verdict = Verdict::inconclusive;
  std::string fired;  ///< which criterion produced a "met" verdict
};

/// Everything above for one query.
HypothesisReport check(const HypothesisQuery& q);

}  // namespace fujita
