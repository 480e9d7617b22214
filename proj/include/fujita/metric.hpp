#pragma once

#include "fujita/graph.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>

namespace fujita {

enum class MetricKind { natural, euclidean_lattice, product, table };

std::string to_string(MetricKind kind);

/// A pseudo-metric on the vertices of one graph. Cheap to copy; the
/// evaluator state is shared and immutable.
class PseudoMetric {
 public:
  /// An unset metric; every query on it throws PreconditionError.
  PseudoMetric() = default;

  /// Hop count along shortest paths of the window.
  static PseudoMetric natural(std::shared_ptr<const Graph> g);
  /// Euclidean distance between integer vertex coordinates.
  static PseudoMetric euclidean(std::shared_ptr<const Graph> g);
  /// (d1^p + d2^p)^(1/p) on a product whose vertex (i, j) has index
  /// i * right.size() + j.
  static PseudoMetric product(double p, PseudoMetric left, PseudoMetric right);
  /// Explicit symmetric table. Validated: zero diagonal, symmetry,
  /// nonnegativity and the triangle inequality (exhaustive below 200
  /// vertices, otherwise `samples` seeded triples).
  static PseudoMetric table(Eigen::MatrixXd distances, std::uint64_t seed = 0,
                            Index samples = 10000);

  MetricKind kind() const;
  Index size() const;

  double operator()(Index x, Index y) const;
  /// d(x0, .) for every vertex.
  Field from(Index x0) const;
  /// d(x0, .)^exponent, computed without rounding where the structure
  /// allows (squared Euclidean lattice distances, product p-th powers).
  Field powered_from(Index x0, double exponent) const;

  /// Product parameters; throw unless kind() == product.
  double exponent() const;
  const PseudoMetric& left() const;
  const PseudoMetric& right() const;

  /// The graph a natural or Euclidean metric was built on (null otherwise).
  const Graph* graph() const;

 private:
  struct Impl;
  explicit PseudoMetric(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  const Impl& impl() const;
  std::shared_ptr<const Impl> impl_;
};

/// Outcome of a triangle-inequality audit.
struct TriangleAudit {
  Index triples_checked = 0;
  Index violations = 0;
  double worst_excess = 0.0;  ///< max of d(x,y) - d(x,z) - d(z,y)
};

/// Exhaustive when `exhaustive` is set (cubic), else `samples` random
/// triples drawn from `seed`.
TriangleAudit audit_triangle_inequality(const PseudoMetric& d, bool exhaustive,
                                        std::uint64_t seed, Index samples = 10000,
                                        double tolerance = 1e-12);

/// Parses `x y d` lines against the vertex names of `g`; the symmetric
/// closure is applied and every unordered pair must be present.
PseudoMetric read_metric_table(std::istream& in, const Graph& g, std::uint64_t seed = 0);
PseudoMetric load_metric_table(const std::string& path, const Graph& g, std::uint64_t seed = 0);

/// Hop count of a shortest path; 0 iff x == y.
Index natural_distance(const Graph& g, Index x, Index y);

struct JumpSize {
  double value;
  bool window_restricted;  ///< true when the graph is a truncated window
};

/// sup of d(x, y) over edges with positive weight.
JumpSize jump_size(const Graph& g, const PseudoMetric& d);

struct Ball {
  Index center;
  double radius;
  VertexSet members;  ///< sorted
};

/// Closed ball {x : d(x0, x) <= r}. Throws WindowTooSmall when a member is a
/// boundary vertex, because the true ball may then leave the window.
Ball ball(const Graph& g, const PseudoMetric& d, Index x0, double r);

/// Sum of mu over `members`.
double volume(const Graph& g, const VertexSet& members);

}  // namespace fujita
