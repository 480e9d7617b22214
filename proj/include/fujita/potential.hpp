#pragma once

// Separable potentials v(x, t) = f(t) g(x).

#include "fujita/graph.hpp"
#include "fujita/metric.hpp"

#include <string>
#include <vector>

namespace fujita {

/// Time profile f > 0.
class TimeProfile {
 public:
  enum class Kind { constant, power, exponential, table };

  /// f(t) = c.
  static TimeProfile constant(double c = 1.0);
  /// f(t) = (1 + t)^beta.
  static TimeProfile power(double beta);
  /// f(t) = exp(rate * t).
  static TimeProfile exponential(double rate);
  /// Piecewise constant: f(t) = values[k] on [times[k], times[k+1]), the last
  /// value continues to infinity, and times[0] must be 0.
  static TimeProfile table(std::vector<double> times, std::vector<double> values);

  Kind kind() const noexcept { return kind_; }
  bool is_constant() const noexcept { return kind_ == Kind::constant; }
  double parameter() const noexcept { return param_; }
  const std::vector<double>& times() const noexcept { return times_; }
  const std::vector<double>& values() const noexcept { return values_; }

  double operator()(double t) const;

  /// Integral of f^(-q) over [a, b]: exact for constant and table profiles,
  /// adaptive Simpson (absolute tolerance 1e-9) otherwise.
  double inverse_power_integral(double a, double b, double q) const;

  bool operator==(const TimeProfile&) const = default;

 private:
  Kind kind_ = Kind::constant;
  double param_ = 1.0;
  std::vector<double> times_;
  std::vector<double> values_;
};

/// Vertex profile g > 0.
class VertexProfile {
 public:
  enum class Kind { constant, distance_power, table };

  static VertexProfile constant(double c = 1.0);
  /// g(x) = (1 + d(x, x0))^gamma.
  static VertexProfile distance_power(double gamma);
  /// One value per vertex.
  static VertexProfile table(Field values);

  Kind kind() const noexcept { return kind_; }
  bool is_constant() const noexcept { return kind_ == Kind::constant; }
  double parameter() const noexcept { return param_; }

  /// g at every vertex given the distances d(x0, .).
  Field evaluate(const Field& distance_from_x0) const;

  bool operator==(const VertexProfile& other) const;

 private:
  Kind kind_ = Kind::constant;
  double param_ = 1.0;
  Field values_;
};

struct Potential {
  TimeProfile time = TimeProfile::constant();
  VertexProfile space = VertexProfile::constant();

  bool operator==(const Potential&) const = default;
};

/// A potential with its vertex profile evaluated on a concrete graph.
struct BoundPotential {
  TimeProfile time;
  Field space;

  static BoundPotential bind(const Potential& v, const PseudoMetric& d, Index x0);
  static BoundPotential uniform(Index n, double c = 1.0);

  double operator()(Index x, double t) const { return time(t) * space[x]; }
  Field at(double t) const { return time(t) * space; }
};

}  // namespace fujita
