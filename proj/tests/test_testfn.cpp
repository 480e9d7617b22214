#include "fujita/builders.hpp"
#include "fujita/error.hpp"
#include "fujita/testfn.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace fujita;

namespace {

TestFunction make(const LatticeGraph& L, double R, double theta1 = 4.0, double theta2 = 2.0,
                  double alpha = 1.0) {
  TestFnParams p;
  p.theta1 = theta1;
  p.theta2 = theta2;
  p.alpha = alpha;
  p.R = R;
  p.x0 = L.origin;
  return TestFunction(L.graph, L.euclidean, p);
}

// Direct scan of every interior vertex, neighbour and grid time.
Index claim_brute_force(const TestFunction& tf, int resolution) {
  const Graph& g = tf.graph();
  const TestFnParams& p = tf.params();
  const Field& dp = tf.distance_powered();
  const double Rt = tf.scale();
  const double lo_F = std::pow(p.R / 2.0, p.theta1);
  const double hi_F = std::pow(4.0 * p.R, p.theta1);
  Index count = 0;
  for (double t : tf.time_grid(resolution)) {
    const double s = std::pow(t, p.theta2);
    for (Index x = 0; x < g.size(); ++x) {
      if (g.is_boundary(x)) continue;
      const double q = s + dp[x];
      if (lo_F < q && q < hi_F) continue;
      g.for_each_neighbor(x, [&](Index y, double) {
        const double top = s + std::max(dp[x], dp[y]);
        const double bottom = s + std::min(dp[x], dp[y]);
        if (top > Rt && bottom < 2.0 * Rt) ++count;
      });
    }
  }
  return count;
}

double brute_laplacian_cmax(const TestFunction& tf, int resolution) {
  const double scale = std::pow(tf.params().R, 1.0 + tf.params().alpha);
  double best = 0.0;
  for (double t : tf.time_grid(resolution))
    for (Index x = 0; x < tf.graph().size(); ++x)
      if (!tf.graph().is_boundary(x)) best = std::max(best, -tf.laplacian_phi(x, t) * scale);
  return best;
}

}  // namespace

TEST_CASE("cutoff profile") {
  CHECK(cutoff(0.0) == 1.0);
  CHECK(cutoff(1.0) == 1.0);
  CHECK(cutoff(1.5) == doctest::Approx(0.5));
  CHECK(cutoff(2.0) == 0.0);
  CHECK(cutoff(7.0) == 0.0);
  CHECK(cutoff_d1(1.5) == doctest::Approx(-kCutoffSlopeBound));
  const double u = 0.5 - 0.5 / std::sqrt(3.0);
  CHECK(std::abs(cutoff_d2(1.0 + u)) == doctest::Approx(kCutoffCurvatureBound));

  double prev = 1.0, max_d1 = 0.0, max_d2 = 0.0;
  const double h = 1e-5;
  for (double p = 0.9; p <= 2.1; p += 1e-3) {
    CHECK(cutoff(p) <= prev + 1e-15);
    CHECK(cutoff(p) >= 0.0);
    prev = cutoff(p);
    max_d1 = std::max(max_d1, std::abs(cutoff_d1(p)));
    max_d2 = std::max(max_d2, std::abs(cutoff_d2(p)));
    const double fd1 = (cutoff(p + h) - cutoff(p - h)) / (2.0 * h);
    const double fd2 = (cutoff_d1(p + h) - cutoff_d1(p - h)) / (2.0 * h);
    CHECK(fd1 == doctest::Approx(cutoff_d1(p)).scale(1.0).epsilon(1e-6));
    CHECK(fd2 == doctest::Approx(cutoff_d2(p)).scale(1.0).epsilon(1e-3));
  }
  CHECK(max_d1 <= kCutoffSlopeBound + 1e-12);
  CHECK(max_d2 <= kCutoffCurvatureBound + 1e-12);
}

TEST_CASE("psi, phi and shells") {
  const LatticeGraph L = lattice({1, 60});
  const TestFunction tf = make(L, 8.0);
  const Index x = L.graph->index_of("4");
  CHECK(tf.psi(x, 8.0) == 0.078125);
  CHECK(tf.phi(x, 8.0) == 1.0);
  CHECK(tf.dphi_dt(x, 8.0) == 0.0);
  CHECK(tf.support_time() == doctest::Approx(std::sqrt(2.0) * 64.0));
  for (Index y = 0; y < L.graph->size(); ++y) CHECK(tf.phi(y, tf.support_time()) == 0.0);

  const auto grid = tf.time_grid(16);
  CHECK(grid.front() == 0.0);
  CHECK(grid.back() == doctest::Approx(std::sqrt(2.0) * 1024.0));
  CHECK(grid.size() == 16 * 64 + 1);

  for (double t : grid)
    for (Index y = 0; y < L.graph->size(); ++y) {
      const ShellFlags f = tf.shells(y, t);
      if (f.in_E) CHECK(f.in_F);
      if (f.in_B) CHECK(tf.phi(y, t) == 1.0);
      if (!f.in_B && !f.in_E) CHECK(tf.phi(y, t) <= 1.0);
      const double psi = tf.psi(y, t);
      if (psi > 1.0 && psi < 2.0) CHECK(f.in_E);
    }

  CHECK_THROWS_AS(make(L, 8.0, 2.0, 2.0, 1.0), ConfigError);
  TestFnParams p;
  p.s = 2.0;
  CHECK_THROWS_AS(p.validate(2.0), ConfigError);
  p.s = 3.0;
  CHECK_NOTHROW(p.validate(2.0));
}

TEST_CASE("shell cover has no gaps") {
  const LatticeGraph L = lattice({2, 30});
  for (double theta1 : {2.0, 3.0, 4.0}) {
    const TestFunction tf = make(L, 4.0, theta1, 1.0, 0.0);
    CHECK(shell_cover_gaps(tf, 16) == 0);
  }
}

TEST_CASE("claim counter matches a brute-force scan") {
  const LatticeGraph L = lattice({2, 12});
  for (double R : {0.5, 0.8, 1.0, 1.5, 2.0, 3.0}) {
    const TestFunction tf = make(L, R);
    const Index fast = claim_xi_gap(tf, 16, false);
    CHECK(fast == claim_brute_force(tf, 16));
    if (R >= 2.0) CHECK(fast == 0);
  }
  // Below unit radius the four lattice neighbours of x0 are counterexamples.
  CHECK(claim_xi_gap(make(L, 0.5), 16, false) == 4);
  CHECK_THROWS_AS(claim_xi_gap(make(L, 1.0), 16, true), PreconditionError);
}

TEST_CASE("Laplacian and time bounds on small radii") {
  for (int N = 1; N <= 2; ++N) {
    const LatticeGraph L = lattice({N, 41});
    for (double R : {4.0, 8.0}) {
      const TestFunction tf = make(L, R);
      const BoundCheck lap = verify_laplacian_bound(tf, 8);
      CHECK(lap.violations == 0);
      CHECK(lap.samples > 0);
      CHECK(lap.Cmax == doctest::Approx(brute_laplacian_cmax(tf, 8)).epsilon(1e-12));
      const BoundCheck time = verify_time_bound(tf, 8);
      CHECK(time.violations == 0);
      // -phi_t R^(theta1/theta2) <= |phi'| theta2 (t / R^(theta1/theta2))^(theta2-1)
      CHECK(time.Cmax <= kCutoffSlopeBound * 2.0 * std::sqrt(2.0) + 1e-12);
    }
  }
  const LatticeGraph narrow = lattice({2, 20});
  CHECK_THROWS_AS(verify_laplacian_bound(make(narrow, 8.0)), WindowTooSmall);
}

TEST_CASE("bounds are unchanged when measure and weights scale together") {
  const LatticeGraph L = lattice({2, 41});
  const Graph& g = *L.graph;
  const double lambda = 2.75;
  std::vector<std::string> names;
  std::vector<Coord> coords;
  std::vector<Edge> edges;
  for (Index x = 0; x < g.size(); ++x) {
    names.push_back(g.name(x));
    coords.push_back(g.coordinates(x));
    g.for_each_neighbor(x, [&](Index y, double w) {
      if (y > x) edges.push_back({x, y, lambda * w});
    });
  }
  auto h = std::make_shared<const Graph>(names, Field(lambda * g.measure()), edges,
                                         Field(lambda * g.exterior_weight()), coords);
  const LatticeGraph S{h, PseudoMetric::euclidean(h), PseudoMetric::natural(h), L.origin};
  const BoundCheck a = verify_laplacian_bound(make(L, 6.0), 8);
  const BoundCheck b = verify_laplacian_bound(make(S, 6.0), 8);
  CHECK(a.Cmax == doctest::Approx(b.Cmax).epsilon(1e-12));
  CHECK(a.violations == b.violations);
}

TEST_CASE("powers of the cutoff are subharmonic-convex") {
  // Lap(phi^s) >= s phi^(s-1) Lap(phi) pointwise, by convexity of r -> r^s.
  const LatticeGraph L = lattice({2, 25});
  const TestFunction tf = make(L, 4.0);
  const double s = tf.params().s;
  for (double t : tf.time_grid(4)) {
    const Field ps = tf.power_field(t);
    const Field lap = laplacian_field(*L.graph, ps);
    for (Index x = 0; x < L.graph->size(); ++x) {
      if (L.graph->is_boundary(x)) continue;
      const double rhs = s * std::pow(tf.phi(x, t), s - 1.0) * tf.laplacian_phi(x, t);
      CHECK(lap[x] >= rhs - 1e-12);
    }
  }
}

TEST_CASE("time derivative of the powered test function") {
  const LatticeGraph L = lattice({1, 60});
  const TestFunction tf = make(L, 6.0);
  const double h = 1e-5;
  for (double t : {3.0, 20.0, 40.0, 50.0}) {
    const Field fd = (tf.power_field(t + h) - tf.power_field(t - h)) / (2.0 * h);
    const Field an = tf.power_field_dt(t);
    CHECK((fd - an).cwiseAbs().maxCoeff() <= 1e-6);
  }
}

TEST_CASE("weak-form residual") {
  const GraphWithMetric c = cyclic_power(5, 1);
  const Index n = c.graph->size();
  std::vector<double> times;
  std::vector<Field> zero, test, test_dt;
  const double T = 2.0;
  for (int k = 0; k <= 200; ++k) {
    const double t = T * k / 200.0;
    times.push_back(t);
    zero.push_back(Field::Zero(n));
    test.push_back(Field::Constant(n, (1.0 - t / T) * (1.0 - t / T)));
    test_dt.push_back(Field::Constant(n, -2.0 * (1.0 - t / T) / T));
  }
  const WeakFormResidual z =
      weak_form_residual(*c.graph, times, zero, test, test_dt, BoundPotential::uniform(n), 2.0);
  CHECK(z.residual == 0.0);

  // Spatially constant exact solution of u' = u^2 on a graph without boundary:
  // the inequality holds with equality up to quadrature error.
  auto residual_at = [&](int steps) {
    std::vector<double> ts;
    std::vector<Field> u, ph, ph_dt;
    for (int k = 0; k <= steps; ++k) {
      const double t = T * k / steps;
      ts.push_back(t);
      u.push_back(Field::Constant(n, 1.0 / (1.0 / 0.2 - t)));
      ph.push_back(Field::Constant(n, (1.0 - t / T) * (1.0 - t / T)));
      ph_dt.push_back(Field::Constant(n, -2.0 * (1.0 - t / T) / T));
    }
    return weak_form_residual(*c.graph, ts, u, ph, ph_dt, BoundPotential::uniform(n), 2.0);
  };
  const WeakFormResidual coarse = residual_at(100);
  const WeakFormResidual fine = residual_at(200);
  CHECK(std::abs(coarse.residual) <= 1e-3 * coarse.scale);
  CHECK(std::abs(fine.residual) == doctest::Approx(std::abs(coarse.residual) / 4.0).epsilon(0.05));

  std::vector<Field> bad = test;
  bad.back() = Field::Ones(n);
  CHECK_THROWS_AS(weak_form_residual(*c.graph, times, zero, bad, test_dt,
                                     BoundPotential::uniform(n), 2.0),
                  PreconditionError);
}
