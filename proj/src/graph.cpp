#include "fujita/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <utility>

namespace fujita {

Graph::Graph(std::vector<std::string> names, Field mu, const std::vector<Edge>& edges,
             Field exterior_weight, std::vector<Coord> coords)
    : names_(std::move(names)), mu_(std::move(mu)), coords_(std::move(coords)) {
  const Index n = size();
  if (n == 0) throw GraphInvariantError("graph has no vertices");
  if (mu_.size() != n) throw GraphInvariantError("node measure length differs from vertex count");
  for (Index x = 0; x < n; ++x) {
    if (!(mu_[x] > 0.0) || !std::isfinite(mu_[x]))
      throw GraphInvariantError("node measure of '" + names_[x] + "' must be positive");
  }
  lookup_.reserve(names_.size());
  for (Index x = 0; x < n; ++x) {
    if (!lookup_.emplace(names_[x], x).second)
      throw GraphInvariantError("duplicate vertex name '" + names_[x] + "'");
  }

  std::map<std::pair<Index, Index>, double> unique;
  for (const Edge& e : edges) {
    check(e.a);
    check(e.b);
    if (e.a == e.b) throw GraphInvariantError("loop at vertex '" + names_[e.a] + "'");
    if (!(e.weight >= 0.0) || !std::isfinite(e.weight))
      throw GraphInvariantError("edge weight must be finite and nonnegative");
    if (e.weight < kWeightCutoff) continue;
    auto key = std::minmax(e.a, e.b);
    auto [it, inserted] = unique.emplace(key, e.weight);
    if (!inserted && it->second != e.weight)
      throw GraphInvariantError("asymmetric weight between '" + names_[e.a] + "' and '" +
                                names_[e.b] + "'");
  }

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(2 * unique.size());
  for (const auto& [key, w] : unique) {
    triplets.emplace_back(key.first, key.second, w);
    triplets.emplace_back(key.second, key.first, w);
  }
  weights_.resize(n, n);
  weights_.setFromTriplets(triplets.begin(), triplets.end());
  weights_.makeCompressed();
  degree_ = weights_ * Field::Ones(n);

  if (exterior_weight.size() == 0) exterior_weight = Field::Zero(n);
  if (exterior_weight.size() != n)
    throw GraphInvariantError("exterior weight length differs from vertex count");
  if ((exterior_weight.array() < 0.0).any())
    throw GraphInvariantError("exterior weight must be nonnegative");
  exterior_ = std::move(exterior_weight);
  for (Index x = 0; x < n; ++x)
    if (exterior_[x] > 0.0) boundary_.push_back(x);

  if (!coords_.empty()) {
    if (static_cast<Index>(coords_.size()) != n)
      throw GraphInvariantError("coordinate count differs from vertex count");
    coord_lookup_.reserve(coords_.size());
    for (Index x = 0; x < n; ++x) coord_lookup_.emplace(coords_[x], x);
  }

  const auto hops = hop_distances(*this, 0);
  for (Index x = 0; x < n; ++x) {
    if (hops[x] < 0)
      throw GraphInvariantError("graph is disconnected: '" + names_[x] + "' is unreachable");
  }
}

const std::string& Graph::name(Index x) const { return names_[check(x)]; }

Index Graph::index_of(std::string_view name) const {
  auto it = lookup_.find(std::string(name));
  if (it == lookup_.end()) throw IndexError("unknown vertex '" + std::string(name) + "'");
  return it->second;
}

bool Graph::contains(std::string_view name) const {
  return lookup_.count(std::string(name)) > 0;
}

double Graph::weight(Index x, Index y) const {
  return weights_.coeff(check(x), check(y));
}

const Coord& Graph::coordinates(Index x) const {
  if (coords_.empty()) throw PreconditionError("graph has no vertex coordinates");
  return coords_[check(x)];
}

Index Graph::find(const Coord& c) const {
  auto it = coord_lookup_.find(c);
  return it == coord_lookup_.end() ? -1 : it->second;
}

VertexSet support(const Field& f) {
  VertexSet s;
  for (Index x = 0; x < f.size(); ++x)
    if (f[x] != 0.0) s.push_back(x);
  return s;
}

bool support_is_interior(const Graph& g, const Field& f) {
  for (Index x : g.boundary_vertices())
    if (f[x] != 0.0) return false;
  return true;
}

IbpResidual integration_by_parts_residual(const Graph& g, const Field& f, const Field& h) {
  if (f.size() != g.size() || h.size() != g.size())
    throw PreconditionError("field length differs from vertex count");
  if (!support_is_interior(g, f) && !support_is_interior(g, h))
    throw PreconditionError(
        "integration by parts needs one field supported strictly inside the window");

  const Field lap = laplacian_field(g, f);
  double residual = 0.0;
  double scale = 0.0;
  for (Index x = 0; x < g.size(); ++x) {
    const double lhs = lap[x] * h[x] * g.measure()[x];
    residual += lhs;
    scale += std::abs(lhs);
  }
  // Ordered pairs (x, y) and (y, x) both appear in the row-major weights.
  for (Index x = 0; x < g.size(); ++x) {
    g.for_each_neighbor(x, [&](Index y, double w) {
      const double term = 0.5 * w * (f[y] - f[x]) * (h[y] - h[x]);
      residual += term;
      scale += std::abs(term);
    });
  }
  return {residual, scale};
}

std::vector<Index> hop_distances(const Graph& g, Index source) {
  std::vector<Index> dist(static_cast<std::size_t>(g.size()), -1);
  std::deque<Index> queue{g.check(source)};
  dist[source] = 0;
  while (!queue.empty()) {
    const Index x = queue.front();
    queue.pop_front();
    g.for_each_neighbor(x, [&](Index y, double) {
      if (dist[y] < 0) {
        dist[y] = dist[x] + 1;
        queue.push_back(y);
      }
    });
  }
  return dist;
}

}  // namespace fujita
