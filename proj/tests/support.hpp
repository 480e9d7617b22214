#pragma once

// Shared fixtures and independent oracles for the test suites.

#include "fujita/graph.hpp"

#include <Eigen/Dense>

#include <deque>
#include <memory>
#include <random>
#include <string>
#include <vector>

namespace fujita::testing {

struct RandomGraph {
  std::shared_ptr<const Graph> graph;
  std::vector<Edge> edges;
  Field mu;
  Eigen::MatrixXd dense;  ///< symmetric weight matrix built from `edges`
};

/// Random spanning tree plus `extra` random chords; weights in [0.1, 2],
/// measures in [0.5, 2].
inline RandomGraph random_graph(Index n, Index extra, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> wdist(0.1, 2.0), mdist(0.5, 2.0);
  RandomGraph out;
  out.dense = Eigen::MatrixXd::Zero(n, n);
  const auto add = [&](Index a, Index b) {
    if (a == b || out.dense(a, b) != 0.0) return;
    const double w = wdist(rng);
    out.dense(a, b) = out.dense(b, a) = w;
    out.edges.push_back({a, b, w});
  };
  for (Index x = 1; x < n; ++x) add(x, std::uniform_int_distribution<Index>(0, x - 1)(rng));
  std::uniform_int_distribution<Index> pick(0, n - 1);
  for (Index k = 0; k < extra; ++k) add(pick(rng), pick(rng));
  out.mu = Field(n);
  for (Index x = 0; x < n; ++x) out.mu[x] = mdist(rng);
  std::vector<std::string> names;
  for (Index x = 0; x < n; ++x) names.push_back("v" + std::to_string(x));
  out.graph = std::make_shared<const Graph>(names, out.mu, out.edges);
  return out;
}

/// Dense Laplacian matrix diag(1/mu) (W - diag(W 1)).
inline Eigen::MatrixXd dense_laplacian(const Eigen::MatrixXd& W, const Field& mu) {
  Eigen::MatrixXd L = W;
  L.diagonal() -= W.rowwise().sum();
  return mu.cwiseInverse().asDiagonal() * L;
}

/// Breadth-first hop counts over a dense weight matrix.
inline std::vector<int> dense_bfs(const Eigen::MatrixXd& W, Index source) {
  std::vector<int> d(static_cast<std::size_t>(W.rows()), -1);
  std::deque<Index> queue{source};
  d[source] = 0;
  while (!queue.empty()) {
    const Index x = queue.front();
    queue.pop_front();
    for (Index y = 0; y < W.rows(); ++y)
      if (W(x, y) > 0.0 && d[y] < 0) {
        d[y] = d[x] + 1;
        queue.push_back(y);
      }
  }
  return d;
}

/// Random field with `k` nonzero entries drawn from [-1, 1].
inline Field random_sparse_field(Index n, Index k, std::mt19937_64& rng) {
  Field f = Field::Zero(n);
  std::uniform_int_distribution<Index> pick(0, n - 1);
  std::uniform_real_distribution<double> val(-1.0, 1.0);
  for (Index j = 0; j < k; ++j) f[pick(rng)] = val(rng);
  return f;
}

}  // namespace fujita::testing
