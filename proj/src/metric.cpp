#include "fujita/metric.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <istream>
#include <random>
#include <sstream>

namespace fujita {

struct PseudoMetric::Impl {
  MetricKind kind;
  std::shared_ptr<const Graph> graph;
  double p = 1.0;
  std::shared_ptr<const PseudoMetric> left;
  std::shared_ptr<const PseudoMetric> right;
  Eigen::MatrixXd table;
};

const PseudoMetric::Impl& PseudoMetric::impl() const {
  if (!impl_) throw PreconditionError("metric is not set");
  return *impl_;
}

std::string to_string(MetricKind kind) {
  switch (kind) {
    case MetricKind::natural: return "natural";
    case MetricKind::euclidean_lattice: return "euclidean";
    case MetricKind::product: return "product";
    case MetricKind::table: return "table";
  }
  return "unknown";
}

PseudoMetric PseudoMetric::natural(std::shared_ptr<const Graph> g) {
  if (!g) throw PreconditionError("natural metric needs a graph");
  auto impl = std::make_shared<Impl>();
  impl->kind = MetricKind::natural;
  impl->graph = std::move(g);
  return PseudoMetric(std::move(impl));
}

PseudoMetric PseudoMetric::euclidean(std::shared_ptr<const Graph> g) {
  if (!g) throw PreconditionError("euclidean metric needs a graph");
  if (!g->has_coordinates())
    throw PreconditionError("euclidean metric needs integer vertex coordinates");
  auto impl = std::make_shared<Impl>();
  impl->kind = MetricKind::euclidean_lattice;
  impl->graph = std::move(g);
  return PseudoMetric(std::move(impl));
}

PseudoMetric PseudoMetric::product(double p, PseudoMetric left, PseudoMetric right) {
  if (!(p >= 1.0 && p <= 2.0)) throw PreconditionError("product exponent p must lie in [1, 2]");
  auto impl = std::make_shared<Impl>();
  impl->kind = MetricKind::product;
  impl->p = p;
  impl->left = std::make_shared<const PseudoMetric>(std::move(left));
  impl->right = std::make_shared<const PseudoMetric>(std::move(right));
  return PseudoMetric(std::move(impl));
}

PseudoMetric PseudoMetric::table(Eigen::MatrixXd distances, std::uint64_t seed, Index samples) {
  const Index n = distances.rows();
  if (n == 0 || distances.cols() != n) throw PreconditionError("metric table must be square");
  for (Index x = 0; x < n; ++x) {
    if (distances(x, x) != 0.0) throw PreconditionError("metric table diagonal must be zero");
    for (Index y = 0; y < n; ++y) {
      const double v = distances(x, y);
      if (!(v >= 0.0) || !std::isfinite(v))
        throw PreconditionError("metric distances must be finite and nonnegative");
      if (v != distances(y, x)) throw PreconditionError("metric table must be symmetric");
    }
  }
  auto impl = std::make_shared<Impl>();
  impl->kind = MetricKind::table;
  impl->table = std::move(distances);
  PseudoMetric metric(std::move(impl));
  const auto audit = audit_triangle_inequality(metric, n < 200, seed, samples);
  if (audit.violations > 0)
    throw PreconditionError("metric table violates the triangle inequality (" +
                            std::to_string(audit.violations) + " triples)");
  return metric;
}

MetricKind PseudoMetric::kind() const { return impl().kind; }

Index PseudoMetric::size() const {
  switch (impl().kind) {
    case MetricKind::natural:
    case MetricKind::euclidean_lattice: return impl().graph->size();
    case MetricKind::product: return impl().left->size() * impl().right->size();
    case MetricKind::table: return impl().table.rows();
  }
  return 0;
}

const Graph* PseudoMetric::graph() const { return impl().graph.get(); }

double PseudoMetric::exponent() const {
  if (impl().kind != MetricKind::product) throw PreconditionError("not a product metric");
  return impl().p;
}

const PseudoMetric& PseudoMetric::left() const {
  if (impl().kind != MetricKind::product) throw PreconditionError("not a product metric");
  return *impl().left;
}

const PseudoMetric& PseudoMetric::right() const {
  if (impl().kind != MetricKind::product) throw PreconditionError("not a product metric");
  return *impl().right;
}

namespace {

double euclid_squared(const Coord& a, const Coord& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double diff = static_cast<double>(a[k]) - static_cast<double>(b[k]);
    s += diff * diff;
  }
  return s;
}

Index check_index(Index x, Index n) {
  if (x < 0 || x >= n) throw IndexError("vertex index " + std::to_string(x) + " out of range");
  return x;
}

}  // namespace

double PseudoMetric::operator()(Index x, Index y) const {
  const Index n = size();
  check_index(x, n);
  check_index(y, n);
  switch (impl().kind) {
    case MetricKind::natural:
      return static_cast<double>(natural_distance(*impl().graph, x, y));
    case MetricKind::euclidean_lattice:
      return std::sqrt(euclid_squared(impl().graph->coordinates(x), impl().graph->coordinates(y)));
    case MetricKind::product: {
      const Index n2 = impl().right->size();
      const double d1 = (*impl().left)(x / n2, y / n2);
      const double d2 = (*impl().right)(x % n2, y % n2);
      const double p = impl().p;
      if (p == 1.0) return d1 + d2;
      return std::pow(std::pow(d1, p) + std::pow(d2, p), 1.0 / p);
    }
    case MetricKind::table: return impl().table(x, y);
  }
  return 0.0;
}

Field PseudoMetric::from(Index x0) const {
  const Index n = size();
  check_index(x0, n);
  switch (impl().kind) {
    case MetricKind::natural: {
      const auto hops = hop_distances(*impl().graph, x0);
      Field d(n);
      for (Index x = 0; x < n; ++x) {
        if (hops[x] < 0) throw GraphInvariantError("graph is disconnected");
        d[x] = static_cast<double>(hops[x]);
      }
      return d;
    }
    case MetricKind::euclidean_lattice:
      return powered_from(x0, 2.0).cwiseSqrt();
    case MetricKind::product: {
      const double p = impl().p;
      Field dp = powered_from(x0, p);
      if (p == 1.0) return dp;
      return dp.array().pow(1.0 / p).matrix();
    }
    case MetricKind::table: return impl().table.col(x0);
  }
  return {};
}

Field PseudoMetric::powered_from(Index x0, double exponent) const {
  const Index n = size();
  check_index(x0, n);
  if (impl().kind == MetricKind::euclidean_lattice && exponent > 0.0 &&
      std::fmod(exponent, 2.0) == 0.0) {
    // Even powers are polynomials in the integer squared distance.
    const Graph& g = *impl().graph;
    const Coord& c0 = g.coordinates(x0);
    const int half = static_cast<int>(exponent / 2.0);
    Field d(n);
    for (Index x = 0; x < n; ++x) {
      const double s = euclid_squared(g.coordinates(x), c0);
      double v = 1.0;
      for (int k = 0; k < half; ++k) v *= s;
      d[x] = v;
    }
    return d;
  }
  if (impl().kind == MetricKind::product && exponent == impl().p) {
    const Index n2 = impl().right->size();
    const Index n1 = impl().left->size();
    const Field a = impl().left->powered_from(x0 / n2, exponent);
    const Field b = impl().right->powered_from(x0 % n2, exponent);
    Field d(n);
    for (Index i = 0; i < n1; ++i) d.segment(i * n2, n2) = b.array() + a[i];
    return d;
  }
  if (exponent == 1.0) return from(x0);
  return from(x0).array().pow(exponent).matrix();
}

TriangleAudit audit_triangle_inequality(const PseudoMetric& d, bool exhaustive,
                                        std::uint64_t seed, Index samples, double tolerance) {
  TriangleAudit audit;
  const Index n = d.size();
  auto visit = [&](Index x, Index y, Index z) {
    ++audit.triples_checked;
    const double excess = d(x, y) - d(x, z) - d(z, y);
    if (excess > tolerance) ++audit.violations;
    audit.worst_excess = std::max(audit.worst_excess, excess);
  };
  if (exhaustive) {
    // Row caches keep the cubic loop to table lookups.
    std::vector<Field> rows(static_cast<std::size_t>(n));
    for (Index x = 0; x < n; ++x) rows[x] = d.from(x);
    for (Index x = 0; x < n; ++x)
      for (Index y = x + 1; y < n; ++y)
        for (Index z = 0; z < n; ++z) {
          ++audit.triples_checked;
          const double excess = rows[x][y] - rows[x][z] - rows[z][y];
          if (excess > tolerance) ++audit.violations;
          audit.worst_excess = std::max(audit.worst_excess, excess);
        }
    return audit;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Index> pick(0, n - 1);
  for (Index k = 0; k < samples; ++k) {
    const Index x = pick(rng), y = pick(rng), z = pick(rng);
    visit(x, y, z);
  }
  return audit;
}

PseudoMetric read_metric_table(std::istream& in, const Graph& g, std::uint64_t seed) {
  const Index n = g.size();
  Eigen::MatrixXd table = Eigen::MatrixXd::Constant(n, n, -1.0);
  table.diagonal().setZero();
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string a, b;
    if (!(fields >> a)) continue;
    double value = 0.0;
    if (!(fields >> b >> value)) throw ParseError("expected 'x y d'", lineno);
    std::string extra;
    if (fields >> extra) throw ParseError("trailing text '" + extra + "'", lineno);
    if (!g.contains(a)) throw ParseError("unknown vertex '" + a + "'", lineno);
    if (!g.contains(b)) throw ParseError("unknown vertex '" + b + "'", lineno);
    if (!(value >= 0.0)) throw ParseError("distance must be nonnegative", lineno);
    const Index x = g.index_of(a), y = g.index_of(b);
    if (x == y) {
      if (value != 0.0) throw ParseError("d(x, x) must be zero", lineno);
      continue;
    }
    for (auto [i, j] : {std::pair{x, y}, std::pair{y, x}}) {
      if (table(i, j) >= 0.0 && table(i, j) != value)
        throw ParseError("conflicting distances for '" + a + "' and '" + b + "'", lineno);
      table(i, j) = value;
    }
  }
  for (Index x = 0; x < n; ++x)
    for (Index y = x + 1; y < n; ++y)
      if (table(x, y) < 0.0)
        throw ParseError("missing distance between '" + g.name(x) + "' and '" + g.name(y) + "'",
                         0);
  return PseudoMetric::table(std::move(table), seed);
}

PseudoMetric load_metric_table(const std::string& path, const Graph& g, std::uint64_t seed) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open metric table '" + path + "'");
  return read_metric_table(in, g, seed);
}

Index natural_distance(const Graph& g, Index x, Index y) {
  g.check(x);
  g.check(y);
  if (x == y) return 0;
  if (g.weight(x, y) > 0.0) return 1;
  std::vector<Index> dist(static_cast<std::size_t>(g.size()), -1);
  std::deque<Index> queue{x};
  dist[x] = 0;
  while (!queue.empty()) {
    const Index u = queue.front();
    queue.pop_front();
    Index found = -1;
    g.for_each_neighbor(u, [&](Index w, double) {
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        if (w == y) found = dist[w];
        queue.push_back(w);
      }
    });
    if (found >= 0) return found;
  }
  throw GraphInvariantError("no path between '" + g.name(x) + "' and '" + g.name(y) + "'");
}

JumpSize jump_size(const Graph& g, const PseudoMetric& d) {
  if (d.size() != g.size()) throw PreconditionError("metric and graph sizes differ");
  double j = 0.0;
  for (Index x = 0; x < g.size(); ++x)
    g.for_each_neighbor(x, [&](Index y, double) {
      if (y > x) j = std::max(j, d(x, y));
    });
  return {j, !g.is_finite()};
}

Ball ball(const Graph& g, const PseudoMetric& d, Index x0, double r) {
  if (!(r >= 0.0)) throw PreconditionError("ball radius must be nonnegative");
  if (d.size() != g.size()) throw PreconditionError("metric and graph sizes differ");
  g.check(x0);
  Ball b{x0, r, {}};
  auto admit = [&](Index x) {
    if (g.is_boundary(x))
      throw WindowTooSmall("ball of radius " + std::to_string(r) + " around '" + g.name(x0) +
                           "' reaches the window boundary");
    b.members.push_back(x);
  };

  if (d.kind() == MetricKind::euclidean_lattice && d.graph() == &g) {
    // Integer points of the bounding box [c - r, c + r]^N.
    const Coord& c = g.coordinates(x0);
    const int reach = static_cast<int>(std::floor(r));
    const std::size_t dim = c.size();
    Coord offset(dim, -reach);
    Coord point(dim);
    for (;;) {
      double s = 0.0;
      for (std::size_t k = 0; k < dim; ++k) {
        point[k] = c[k] + offset[k];
        s += static_cast<double>(offset[k]) * offset[k];
      }
      if (std::sqrt(s) <= r) {
        const Index x = g.find(point);
        if (x < 0)
          throw WindowTooSmall("ball of radius " + std::to_string(r) + " leaves the window");
        admit(x);
      }
      std::size_t k = 0;
      while (k < dim && offset[k] == reach) offset[k++] = -reach;
      if (k == dim) break;
      ++offset[k];
    }
    std::sort(b.members.begin(), b.members.end());
    return b;
  }

  const Field dist = d.from(x0);
  for (Index x = 0; x < g.size(); ++x)
    if (dist[x] <= r) admit(x);
  return b;
}

double volume(const Graph& g, const VertexSet& members) {
  double v = 0.0;
  for (Index x : members) v += g.measure(x);
  return v;
}

}  // namespace fujita
