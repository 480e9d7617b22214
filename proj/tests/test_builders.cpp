#include "fujita/builders.hpp"
#include "fujita/error.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

using namespace fujita;

TEST_CASE("lattice windows") {
  const LatticeGraph L1 = lattice({1, 2});
  CHECK(L1.graph->size() == 5);
  CHECK(L1.graph->degree()[L1.origin] == 2.0);
  CHECK((L1.graph->measure().array() == 2.0).all());
  CHECK(L1.graph->boundary_vertices().size() == 2);

  const LatticeGraph L2 = lattice({2, 1});
  CHECK(L2.graph->size() == 9);
  CHECK(L2.graph->neighbor_count(L2.origin) == 4);
  CHECK(L2.graph->boundary_vertices().size() == 8);

  for (int N = 1; N <= 3; ++N) {
    const LatticeGraph L = lattice({N, 3});
    for (Index x = 0; x < L.graph->size(); ++x) {
      const double total = L.graph->degree()[x] + L.graph->exterior_weight()[x];
      CHECK(total == 2.0 * N);
      if (!L.graph->is_boundary(x)) CHECK(L.graph->degree()[x] / L.graph->measure(x) == 1.0);
    }
  }
  CHECK_THROWS_AS(lattice({0, 3}), PreconditionError);
  CHECK_THROWS_AS(lattice({1, 0}), PreconditionError);
}

TEST_CASE("cyclic powers") {
  const GraphWithMetric c5 = cyclic_power(5, 1);
  CHECK(c5.graph->size() == 5);
  CHECK(c5.graph->is_finite());
  for (Index x = 0; x < 5; ++x) {
    CHECK(c5.graph->neighbor_count(x) == 2);
    CHECK(c5.graph->measure(x) == 2.0);
  }

  const GraphWithMetric c2 = cyclic_power(2, 1);
  CHECK(c2.graph->size() == 2);
  CHECK(c2.graph->edge_count() == 1);
  CHECK(c2.graph->weight(0, 1) == 2.0);
  CHECK(c2.graph->degree()[0] == c2.graph->measure(0));

  const GraphWithMetric c33 = cyclic_power(3, 2);
  CHECK(c33.graph->size() == 9);
  for (Index x = 0; x < 9; ++x) CHECK(c33.graph->neighbor_count(x) == 4);

  for (int m = 3; m <= 5; ++m)
    for (int K = 1; K <= 3; ++K) {
      const GraphWithMetric c = cyclic_power(m, K);
      const Index mk = static_cast<Index>(std::pow(m, K));
      CHECK(c.graph->size() == mk);
      CHECK(c.graph->edge_count() == K * mk);
    }
}

TEST_CASE("product graphs") {
  // Two single edges give a 4-cycle.
  const Graph e({"a", "b"}, Field::Ones(2), {{0, 1, 1.0}});
  auto eg = std::make_shared<const Graph>(e);
  const GraphWithMetric edge{eg, PseudoMetric::natural(eg)};
  const GraphWithMetric sq = product({edge, edge, 1.0});
  CHECK(sq.graph->size() == 4);
  CHECK(sq.graph->edge_count() == 4);
  for (Index x = 0; x < 4; ++x) CHECK(sq.graph->neighbor_count(x) == 2);

  const LatticeGraph line = lattice({1, 6});
  const GraphWithMetric c5 = cyclic_power(5, 1);
  const GraphWithMetric prod = product({{line.graph, line.euclidean}, c5, 2.0});
  CHECK(prod.graph->size() == line.graph->size() * 5);
  CHECK(prod.graph->boundary_vertices().size() == 10);

  ProductSpec tight{{line.graph, line.euclidean}, c5, 2.0, MeasureRule::max};
  tight.measure_constant = 1.5;
  CHECK_THROWS_AS(product(tight), GraphInvariantError);
  CHECK_THROWS_AS(product({{line.graph, line.euclidean}, c5, 2.5}), PreconditionError);
  CHECK(measure_rule_from_string("product") == MeasureRule::product);
  CHECK_THROWS_AS(measure_rule_from_string("min"), ConfigError);
}

TEST_CASE("product Laplacian factorizes across factors") {
  const LatticeGraph line = lattice({1, 8});
  const GraphWithMetric c5 = cyclic_power(5, 1);
  for (double p : {1.0, 1.5, 2.0}) {
    const GraphWithMetric prod = product({{line.graph, line.euclidean}, c5, p});
    const Graph& g = *prod.graph;
    const Index n2 = c5.graph->size();
    const Index w = line.origin * n2;  // base vertex (0, [0])
    const Field dp = prod.metric.powered_from(w, p);
    const Field d1p = line.euclidean.powered_from(line.origin, p);
    const Field d2p = c5.metric.powered_from(0, p);
    const Field lap = laplacian_field(g, dp);
    const Field lap1 = laplacian_field(*line.graph, d1p);
    const Field lap2 = laplacian_field(*c5.graph, d2p);
    for (Index x = 0; x < g.size(); ++x) {
      if (g.is_boundary(x)) continue;
      const Index i = x / n2, j = x % n2;
      const double mu1 = line.graph->measure(i), mu2 = c5.graph->measure(j), mu = g.measure(x);
      const double rhs = mu2 / mu * lap2[j] + mu1 / mu * lap1[i];
      CHECK(std::abs(lap[x] - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
    }
  }
}

TEST_CASE("edge-list files") {
  std::istringstream tri("# triangle\nnode a 2\nnode b 2\nnode c 2\na b 1\nb c 1\nc a 1\n");
  const auto g = read_edge_list(tri);
  CHECK(g->size() == 3);
  CHECK(g->edge_count() == 3);

  std::istringstream loop("node x 1\nx x 1\n");
  CHECK_THROWS_AS(read_edge_list(loop), Error);
  std::istringstream nomu("node x 1\nx y 1\n");
  CHECK_THROWS_AS(read_edge_list(nomu), ParseError);
  std::istringstream negmu("node x -1\nnode y 1\nx y 1\n");
  CHECK_THROWS_AS(read_edge_list(negmu), Error);
  std::istringstream asym("node x 1\nnode y 1\nx y 1\ny x 2\n");
  try {
    read_edge_list(asym);
    FAIL("expected an asymmetry error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
  }
  std::istringstream split("node a 1\nnode b 1\nnode c 1\nnode d 1\na b 1\nc d 1\n");
  CHECK_THROWS_AS(read_edge_list(split), GraphInvariantError);

  // Round trip through a file.
  const GraphWithMetric c = cyclic_power(4, 2);
  const std::string path = "builders_roundtrip.edges";
  {
    std::ofstream out(path);
    write_edge_list(*c.graph, out);
  }
  const auto back = from_edge_list(path);
  std::remove(path.c_str());
  CHECK(back->size() == c.graph->size());
  CHECK(back->edge_count() == c.graph->edge_count());
  for (Index x = 0; x < back->size(); ++x) {
    const Index y = c.graph->index_of(back->name(x));
    CHECK(back->measure(x) == c.graph->measure(y));
    CHECK(back->degree()[x] == c.graph->degree()[y]);
  }
  CHECK_THROWS_AS(from_edge_list("/nonexistent/file.edges"), Error);
}
