#pragma once

// Space-time cutoff test functions phi_R(x, t) = phi(psi_R(x, t)) and
// numerical checks of the inequalities they satisfy.

#include "fujita/graph.hpp"
#include "fujita/metric.hpp"
#include "fujita/numerics.hpp"
#include "fujita/potential.hpp"

#include <cmath>
#include <memory>
#include <vector>

namespace fujita {

/// phi = 1 on [0,1], 1 - S(p-1) on [1,2] with S(u) = 6u^5 - 15u^4 + 10u^3,
/// 0 beyond.
double cutoff(double p);
double cutoff_d1(double p);
double cutoff_d2(double p);

inline constexpr double kCutoffSlopeBound = 15.0 / 8.0;
inline const double kCutoffCurvatureBound = 10.0 / std::sqrt(3.0);

struct TestFnParams {
  double theta1 = 4.0;
  double theta2 = 2.0;
  double alpha = 1.0;
  double R = 8.0;
  double s = 3.0;  ///< exponent of phi_R^s
  Index x0 = 0;

  /// Throws ConfigError. When sigma is given, also requires s > sigma/(sigma-1).
  void validate(double sigma = std::nan("")) const;
};

struct ShellFlags {
  bool in_B;  ///< d^theta1 + t^theta2 <= R^theta1
  bool in_E;  ///< R^theta1 <= ... <= 2 R^theta1
  bool in_F;  ///< (R/2)^theta1 <= ... <= (4R)^theta1
};

class TestFunction {
 public:
  TestFunction(std::shared_ptr<const Graph> g, PseudoMetric d, TestFnParams p);

  const Graph& graph() const { return *graph_; }
  const PseudoMetric& metric() const { return metric_; }
  const TestFnParams& params() const { return p_; }
  /// d(x0, .)^theta1.
  const Field& distance_powered() const { return dp_; }
  double scale() const { return Rt_; }  ///< R^theta1

  double psi(Index x, double t) const;
  double phi(Index x, double t) const;
  double dphi_dt(Index x, double t) const;
  /// Graph Laplacian of phi_R(., t) at x.
  double laplacian_phi(Index x, double t) const;
  ShellFlags shells(Index x, double t) const;

  /// phi_R^s and its time derivative at every vertex.
  Field power_field(double t) const;
  Field power_field_dt(double t) const;

  /// (2 R^theta1)^(1/theta2): phi_R(x, t) = 0 for every x beyond this time.
  double support_time() const;
  /// Uniform grid on [0, 2^(1/theta2) (4R)^(theta1/theta2)] with
  /// max(4, resolution) * R^(theta1/theta2) + 1 points.
  std::vector<double> time_grid(int resolution = 16) const;

 private:
  std::shared_ptr<const Graph> graph_;
  PseudoMetric metric_;
  TestFnParams p_;
  Field dp_;
  double Rt_;
};

struct BoundCheck {
  double R = 0.0;
  double Cmax = 0.0;      ///< max of the scaled negative derivative
  Index violations = 0;   ///< positive samples outside the allowed shell
  Index samples = 0;      ///< (x, t) samples where the derivative is nonzero
};

/// -Lap(phi_R) R^(1+alpha) over interior vertices and the time grid;
/// violations are samples outside F_R. Needs R >= 2j and no boundary vertex
/// within 5R of x0.
BoundCheck verify_laplacian_bound(const TestFunction& tf, int resolution = 16);

/// -d/dt phi_R R^(theta1/theta2); violations are samples outside E_R.
BoundCheck verify_time_bound(const TestFunction& tf, int resolution = 16);

/// Number of (x, t, y) with y ~ x, (x, t) outside the open annulus
/// (R/2)^theta1 < d^theta1 + t^theta2 < (4R)^theta1, and
/// [min(psi_x, psi_y), max(psi_x, psi_y)] meeting (1, 2).
Index claim_xi_gap(const TestFunction& tf, int resolution = 16, bool check_preconditions = true);

/// Samples of F_R not covered by E_{2^(k/theta1 - 1) R}, k = 0..ceil(3 theta1 - 1).
Index shell_cover_gaps(const TestFunction& tf, int resolution = 16);

struct ProofRow {
  double R;
  BoundCheck laplacian;
  BoundCheck time;
};

struct ProofLadder {
  std::vector<ProofRow> rows;
  TrendVerdict laplacian_trend;
  TrendVerdict time_trend;
};

/// Both bounds over an increasing list of radii.
ProofLadder verify_proof_bounds(std::shared_ptr<const Graph> g, const PseudoMetric& d,
                                TestFnParams base, const std::vector<double>& radii,
                                int resolution = 16);

struct WeakFormResidual {
  double residual = 0.0;
  double scale = 0.0;  ///< same integral with every term in absolute value
};

/// Trapezoid-rule left side of the very-weak-solution inequality:
/// int sum mu (Lap(u) phi + v u^sigma phi + u phi_t) dt + sum mu u(0) phi(0).
/// The test must be nonnegative, vanish on boundary vertices and at the
/// last time.
WeakFormResidual weak_form_residual(const Graph& g, const std::vector<double>& times,
                                    const std::vector<Field>& u,
                                    const std::vector<Field>& test,
                                    const std::vector<Field>& test_dt, const BoundPotential& v,
                                    double sigma);

/// phi_R^s and its time derivative sampled at `times`.
void sample_test_series(const TestFunction& tf, const std::vector<double>& times,
                        std::vector<Field>& test, std::vector<Field>& test_dt);

}  // namespace fujita
