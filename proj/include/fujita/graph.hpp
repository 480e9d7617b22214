#pragma once

// Weighted graphs (V, omega, mu) and the discrete calculus on them.
//
// An infinite graph is represented by a finite window. Every vertex carries
// the total weight of its edges that leave the window ("exterior weight");
// vertices with positive exterior weight are boundary vertices and the
// windowed Laplacian is exact only away from them.

#include "fujita/error.hpp"

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace fujita {

using Index = Eigen::Index;
using Field = Eigen::VectorXd;
using SparseWeights = Eigen::SparseMatrix<double, Eigen::RowMajor>;
using Coord = std::vector<int>;
using VertexSet = std::vector<Index>;

/// Weights below this are treated as absent edges.
inline constexpr double kWeightCutoff = 1e-15;

struct CoordHash {
  std::size_t operator()(const Coord& c) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (int v : c) {
      h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(v));
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

struct Edge {
  Index a;
  Index b;
  double weight;
};

/// Immutable weighted graph on a dense vertex index 0..size()-1.
class Graph {
 public:
  /// Validates symmetry (edges are undirected by construction), absence of
  /// loops, positivity of mu and connectivity. Repeated edges must agree on
  /// their weight. `exterior_weight` may be empty (finite graph);
  /// `coords` may be empty (no lattice structure).
  Graph(std::vector<std::string> names, Field mu, const std::vector<Edge>& edges,
        Field exterior_weight = {}, std::vector<Coord> coords = {});

  Index size() const noexcept { return static_cast<Index>(names_.size()); }
  Index edge_count() const noexcept { return weights_.nonZeros() / 2; }

  const std::string& name(Index x) const;
  Index index_of(std::string_view name) const;
  bool contains(std::string_view name) const;

  const Field& measure() const noexcept { return mu_; }
  double measure(Index x) const { return mu_[check(x)]; }

  const SparseWeights& weights() const noexcept { return weights_; }
  double weight(Index x, Index y) const;

  /// Sum of edge weights inside the window.
  const Field& degree() const noexcept { return degree_; }
  /// Weight of edges to vertices outside the window (zero on finite graphs).
  const Field& exterior_weight() const noexcept { return exterior_; }

  bool is_boundary(Index x) const { return exterior_[check(x)] > 0.0; }
  bool is_finite() const noexcept { return boundary_.empty(); }
  const VertexSet& boundary_vertices() const noexcept { return boundary_; }

  bool has_coordinates() const noexcept { return !coords_.empty(); }
  const Coord& coordinates(Index x) const;
  /// Index of the vertex at `c`, or -1 when it is not in the window.
  Index find(const Coord& c) const;

  template <class Fn>
  void for_each_neighbor(Index x, Fn&& fn) const {
    for (SparseWeights::InnerIterator it(weights_, x); it; ++it) fn(it.col(), it.value());
  }

  Index neighbor_count(Index x) const {
    return weights_.outerIndexPtr()[x + 1] - weights_.outerIndexPtr()[x];
  }

  Index check(Index x) const {
    if (x < 0 || x >= size())
      throw IndexError("vertex index " + std::to_string(x) + " out of range");
    return x;
  }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, Index> lookup_;
  Field mu_;
  SparseWeights weights_;
  Field degree_;
  Field exterior_;
  VertexSet boundary_;
  std::vector<Coord> coords_;
  std::unordered_map<Coord, Index, CoordHash> coord_lookup_;
};

/// Gradient along an ordered pair: f(y) - f(x).
template <class Derived>
double difference(const Graph& g, const Eigen::MatrixBase<Derived>& f, Index x, Index y) {
  return f[g.check(y)] - f[g.check(x)];
}

/// Windowed weighted Laplacian at one vertex, (1/mu(x)) sum_y w_xy (f(y) - f(x)).
/// Exact for the represented graph whenever x is not a boundary vertex.
template <class Derived>
double laplacian(const Graph& g, const Eigen::MatrixBase<Derived>& f, Index x) {
  g.check(x);
  const double fx = f[x];
  double acc = 0.0;
  g.for_each_neighbor(x, [&](Index y, double w) { acc += w * (f[y] - fx); });
  return acc / g.measure()[x];
}

/// Batched windowed Laplacian. Entries at `g.boundary_vertices()` only see the
/// in-window neighbors and are therefore contaminated by the truncation.
template <class Derived>
Field laplacian_field(const Graph& g, const Eigen::MatrixBase<Derived>& f) {
  if (f.size() != g.size()) throw PreconditionError("field length differs from vertex count");
  return (g.weights() * f - g.degree().cwiseProduct(f)).cwiseQuotient(g.measure());
}

/// Laplacian with a zero Dirichlet exterior: the window's missing neighbors
/// are taken to carry the value 0.
template <class Derived>
Field dirichlet_laplacian_field(const Graph& g, const Eigen::MatrixBase<Derived>& f) {
  if (f.size() != g.size()) throw PreconditionError("field length differs from vertex count");
  return (g.weights() * f - (g.degree() + g.exterior_weight()).cwiseProduct(f))
      .cwiseQuotient(g.measure());
}

/// Vertices where `f` is nonzero.
VertexSet support(const Field& f);

/// True when every vertex of supp f is an interior (non-boundary) vertex.
bool support_is_interior(const Graph& g, const Field& f);

struct IbpResidual {
  double residual;  ///< sum Lf h mu + 1/2 sum w (grad f)(grad h)
  double scale;     ///< sum of absolute values of all terms
};

/// Residual of the discrete integration by parts identity. One of f, h must
/// be supported strictly inside the window.
IbpResidual integration_by_parts_residual(const Graph& g, const Field& f, const Field& h);

/// Vertices reached from `source` by breadth-first search, with hop counts
/// (-1 for unreachable).
std::vector<Index> hop_distances(const Graph& g, Index source);

}  // namespace fujita
