#pragma once

// Constructors for lattices, cyclic-group powers, product graphs and
// edge-list files.

#include "fujita/graph.hpp"
#include "fujita/metric.hpp"

#include <functional>
#include <iosfwd>
#include <memory>
#include <string>

namespace fujita {

/// Z^N truncated to the sup-norm box [-window_radius, window_radius]^N.
struct LatticeSpec {
  int dimension = 1;
  int window_radius = 1;
};

struct LatticeGraph {
  std::shared_ptr<const Graph> graph;
  PseudoMetric euclidean;
  PseudoMetric natural;
  /// Index of the origin.
  Index origin;
};

/// Unit weights between vertices at L1 distance 1, mu = 2N everywhere.
/// Vertices on the box faces carry exterior weight 2N - (window degree).
LatticeGraph lattice(const LatticeSpec& spec);

struct GraphWithMetric {
  std::shared_ptr<const Graph> graph;
  PseudoMetric metric;
};

/// (Z_m)^K with [a] ~ [a +- 1] in each factor, mu([a]) = 2 per factor,
/// combined by the sum measure rule. For m = 2 both neighbors coincide and
/// the factor edge carries weight 2.
GraphWithMetric cyclic_power(int m, int K);

enum class MeasureRule { sum, max, product, custom };

std::string to_string(MeasureRule rule);
MeasureRule measure_rule_from_string(const std::string& s);

struct ProductSpec {
  GraphWithMetric left;
  GraphWithMetric right;
  double p = 2.0;
  MeasureRule rule = MeasureRule::sum;
  /// Used when rule == custom: (mu1, mu2) -> mu.
  std::function<double(double, double)> custom_rule;
  /// Lower bound constant C in mu(x1, x2) >= C max{mu1(x1), mu2(x2)}.
  double measure_constant = 1.0;
};

/// Cartesian product graph: edges move along one factor at a time, with the
/// factor's weight. Vertex (i, j) has index i * |V2| + j.
GraphWithMetric product(const ProductSpec& spec);

/// Edge-list text: `x y w` per undirected edge, `node x mu` per vertex,
/// blank lines and `#` comments ignored.
std::shared_ptr<const Graph> read_edge_list(std::istream& in);
std::shared_ptr<const Graph> from_edge_list(const std::string& path);

/// Writes every vertex measure and every edge once, in index order.
void write_edge_list(const Graph& g, std::ostream& out);

}  // namespace fujita
