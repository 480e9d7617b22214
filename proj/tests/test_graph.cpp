#include "fujita/builders.hpp"
#include "fujita/error.hpp"
#include "fujita/graph.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace fujita;
using fujita::testing::dense_laplacian;
using fujita::testing::random_graph;
using fujita::testing::random_sparse_field;

namespace {

std::shared_ptr<const Graph> path_graph(Index n) {
  std::vector<std::string> names;
  std::vector<Edge> edges;
  for (Index x = 0; x < n; ++x) names.push_back(std::to_string(x));
  for (Index x = 0; x + 1 < n; ++x) edges.push_back({x, x + 1, 1.0});
  return std::make_shared<const Graph>(names, Field::Ones(n), edges);
}

}  // namespace

TEST_CASE("construction rejects invalid graphs") {
  const std::vector<std::string> ab{"a", "b"};
  CHECK_THROWS_AS(Graph(ab, Field::Ones(2), {{0, 0, 1.0}}), GraphInvariantError);
  CHECK_THROWS_AS(Graph(ab, Field::Ones(2), {{0, 1, -1.0}}), GraphInvariantError);
  CHECK_THROWS_AS(Graph(ab, Field::Ones(2), {{0, 1, 1.0}, {1, 0, 2.0}}), GraphInvariantError);
  CHECK_THROWS_AS(Graph(ab, Field::Ones(2), {}), GraphInvariantError);
  CHECK_THROWS_AS(Graph(ab, Field::Constant(2, 0.0), {{0, 1, 1.0}}), GraphInvariantError);
  CHECK_THROWS_AS(Graph({"a", "a"}, Field::Ones(2), {{0, 1, 1.0}}), GraphInvariantError);
  CHECK_THROWS_AS(Graph(ab, Field::Ones(2), {{0, 2, 1.0}}), Error);
}

TEST_CASE("repeated edges that agree are accepted and tiny weights are dropped") {
  const Graph g({"a", "b", "c"}, Field::Ones(3), {{0, 1, 1.0}, {1, 0, 1.0}, {1, 2, 2.0}, {0, 2, 1e-16}});
  CHECK(g.edge_count() == 2);
  CHECK(g.weight(0, 1) == 1.0);
  CHECK(g.weight(0, 2) == 0.0);
  CHECK(g.degree()[1] == 3.0);
  CHECK(g.is_finite());
  CHECK(g.index_of("c") == 2);
  CHECK_THROWS_AS(g.index_of("z"), IndexError);
  CHECK_THROWS_AS(g.measure(7), IndexError);
}

TEST_CASE("difference") {
  const auto g = path_graph(5);
  const Field c = Field::Constant(5, 3.0);
  CHECK(difference(*g, c, 1, 3) == 0.0);
  Field id(5);
  for (Index x = 0; x < 5; ++x) id[x] = static_cast<double>(x);
  CHECK(difference(*g, id, 0, 1) == 1.0);
  CHECK_THROWS_AS(difference(*g, id, 0, 9), IndexError);

  const auto rg = random_graph(5, 3, 7);
  std::mt19937_64 rng(1);
  const Field f = random_sparse_field(5, 5, rng);
  for (Index x = 0; x < 5; ++x)
    for (Index y = 0; y < 5; ++y) CHECK(difference(*rg.graph, f, x, y) == f[y] - f[x]);
}

TEST_CASE("laplacian of squared distance on Z^N is one in the interior") {
  for (int N = 1; N <= 3; ++N) {
    const LatticeGraph L = lattice({N, 6});
    const Field d2 = L.euclidean.powered_from(L.origin, 2.0);
    const Field lap = laplacian_field(*L.graph, d2);
    for (Index x = 0; x < L.graph->size(); ++x) {
      if (L.graph->is_boundary(x)) continue;
      CHECK(lap[x] == doctest::Approx(1.0).epsilon(1e-15));
      CHECK(laplacian(*L.graph, d2, x) == lap[x]);
    }
  }
}

TEST_CASE("laplacian of |x| on Z^1 vanishes away from the origin") {
  const LatticeGraph L = lattice({1, 10});
  const Field d = L.euclidean.from(L.origin);
  for (Index x = 0; x < L.graph->size(); ++x) {
    if (L.graph->is_boundary(x) || x == L.origin) continue;
    CHECK(std::abs(laplacian(*L.graph, d, x)) <= 1e-15);
  }
  CHECK(laplacian(*L.graph, d, L.origin) == doctest::Approx(1.0));
}

TEST_CASE("laplacian_field matches the per-vertex loop and a dense oracle") {
  const auto rg = random_graph(40, 60, 11);
  std::mt19937_64 rng(3);
  const Field f = random_sparse_field(40, 40, rng);
  const Field lap = laplacian_field(*rg.graph, f);
  const Field oracle = dense_laplacian(rg.dense, rg.mu) * f;
  for (Index x = 0; x < 40; ++x) {
    CHECK(lap[x] == doctest::Approx(laplacian(*rg.graph, f, x)).epsilon(1e-13));
    CHECK(lap[x] == doctest::Approx(oracle[x]).epsilon(1e-12));
  }
  CHECK(laplacian_field(*rg.graph, Field::Zero(40)).isZero(0.0));
  CHECK(laplacian_field(*rg.graph, Field::Constant(40, 2.5)).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("dirichlet laplacian sees zero outside the window") {
  const LatticeGraph L = lattice({1, 2});
  const Field one = Field::Ones(L.graph->size());
  const Field lap = dirichlet_laplacian_field(*L.graph, one);
  CHECK(lap[L.graph->index_of("2")] == doctest::Approx(-0.5));
  CHECK(lap[L.origin] == 0.0);
}

TEST_CASE("integration by parts") {
  const LatticeGraph L = lattice({1, 10});
  Field e = Field::Zero(L.graph->size());
  e[L.origin] = 1.0;
  const IbpResidual r = integration_by_parts_residual(*L.graph, e, e);
  CHECK(std::abs(r.residual) <= 1e-12 * r.scale);

  const IbpResidual z = integration_by_parts_residual(*L.graph, Field::Zero(L.graph->size()),
                                                      Field::Ones(L.graph->size()));
  CHECK(z.residual == 0.0);

  Field edge = Field::Zero(L.graph->size());
  edge[L.graph->index_of("10")] = 1.0;
  CHECK_THROWS_AS(integration_by_parts_residual(*L.graph, edge, edge), PreconditionError);

  // Dense oracle: both sides evaluated from the weight matrix directly.
  const auto rg = random_graph(50, 80, 5);
  std::mt19937_64 rng(9);
  for (int k = 0; k < 20; ++k) {
    const Field f = random_sparse_field(50, 6, rng);
    const Field h = random_sparse_field(50, 50, rng);
    const IbpResidual res = integration_by_parts_residual(*rg.graph, f, h);
    const Eigen::MatrixXd Lm = dense_laplacian(rg.dense, rg.mu);
    const double lhs = ((Lm * f).array() * h.array() * rg.mu.array()).sum();
    double rhs = 0.0;
    for (Index x = 0; x < 50; ++x)
      for (Index y = 0; y < 50; ++y) rhs += 0.5 * rg.dense(x, y) * (f[y] - f[x]) * (h[y] - h[x]);
    CHECK(std::abs(lhs + rhs) <= 1e-12 * (std::abs(lhs) + std::abs(rhs)));
    CHECK(std::abs(res.residual) <= 1e-12 * res.scale);
    CHECK(res.residual == doctest::Approx(lhs + rhs).epsilon(1e-9).scale(res.scale));
  }
}

TEST_CASE("laplacian symmetry, mean-value bound and product rule") {
  const auto rg = random_graph(30, 40, 21);
  const Graph& g = *rg.graph;
  std::mt19937_64 rng(4);
  for (int k = 0; k < 10; ++k) {
    const Field f = random_sparse_field(30, 30, rng);
    const Field h = random_sparse_field(30, 30, rng);
    const double a = (laplacian_field(g, f).array() * h.array() * g.measure().array()).sum();
    const double b = (f.array() * laplacian_field(g, h).array() * g.measure().array()).sum();
    CHECK(a == doctest::Approx(b).epsilon(1e-12));

    for (Index x = 0; x < 30; ++x) {
      double lo = 1e300, hi = -1e300;
      g.for_each_neighbor(x, [&](Index y, double) {
        lo = std::min(lo, f[y] - f[x]);
        hi = std::max(hi, f[y] - f[x]);
      });
      const double mid = g.measure(x) / g.degree()[x] * laplacian(g, f, x);
      CHECK(mid >= lo - 1e-12);
      CHECK(mid <= hi + 1e-12);

      g.for_each_neighbor(x, [&](Index y, double) {
        const Field fh = f.cwiseProduct(h);
        const double lhs = difference(g, fh, x, y);
        const double rhs = f[x] * difference(g, h, x, y) + difference(g, f, x, y) * h[y];
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12).scale(1.0));
      });
    }
  }
}

TEST_CASE("support helpers and hop distances") {
  const LatticeGraph L = lattice({1, 3});
  Field f = Field::Zero(L.graph->size());
  f[L.origin] = 2.0;
  CHECK(support(f) == VertexSet{L.origin});
  CHECK(support_is_interior(*L.graph, f));
  f[0] = 1.0;
  CHECK_FALSE(support_is_interior(*L.graph, f));

  const auto rg = random_graph(60, 30, 2);
  const auto hops = hop_distances(*rg.graph, 0);
  const auto oracle = fujita::testing::dense_bfs(rg.dense, 0);
  for (Index x = 0; x < 60; ++x) CHECK(hops[x] == oracle[x]);
}
