#include "fujita/builders.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace fujita {

namespace {

std::string lattice_name(const Coord& c) {
  if (c.size() == 1) return std::to_string(c[0]);
  std::string s = "(";
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (k) s += ',';
    s += std::to_string(c[k]);
  }
  return s + ")";
}

std::string_view strip_parens(std::string_view s) {
  if (s.size() >= 2 && s.front() == '(' && s.back() == ')') return s.substr(1, s.size() - 2);
  return s;
}

std::string pair_name(const std::string& a, const std::string& b) {
  std::string s = "(";
  s += strip_parens(a);
  s += ',';
  s += strip_parens(b);
  return s + ")";
}

std::shared_ptr<const Graph> cyclic_factor(int m) {
  std::vector<std::string> names;
  for (int a = 0; a < m; ++a) names.push_back("[" + std::to_string(a) + "]");
  std::vector<Edge> edges;
  if (m == 2) {
    // [0] + [1] and [0] - [1] are the same class: one pair, weight 2.
    edges.push_back({0, 1, 2.0});
  } else {
    for (int a = 0; a < m; ++a) edges.push_back({a, (a + 1) % m, 1.0});
  }
  return std::make_shared<const Graph>(std::move(names), Field::Constant(m, 2.0), edges);
}

}  // namespace

LatticeGraph lattice(const LatticeSpec& spec) {
  if (spec.dimension < 1) throw PreconditionError("lattice dimension must be at least 1");
  if (spec.window_radius < 1) throw PreconditionError("lattice window radius must be at least 1");
  const int N = spec.dimension;
  const int r = spec.window_radius;
  const Index side = 2 * static_cast<Index>(r) + 1;
  Index n = 1;
  for (int k = 0; k < N; ++k) n *= side;

  std::vector<Coord> coords(static_cast<std::size_t>(n), Coord(N));
  std::vector<std::string> names(static_cast<std::size_t>(n));
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n) * N);
  Field exterior = Field::Zero(n);
  for (Index idx = 0; idx < n; ++idx) {
    Index rest = idx;
    Index stride = 1;
    for (int k = 0; k < N; ++k) {
      coords[idx][k] = static_cast<int>(rest % side) - r;
      rest /= side;
    }
    names[idx] = lattice_name(coords[idx]);
    for (int k = 0; k < N; ++k) {
      const int c = coords[idx][k];
      if (c < r) edges.push_back({idx, idx + stride, 1.0});
      if (c == r || c == -r) exterior[idx] += 1.0;
      stride *= side;
    }
  }
  auto g = std::make_shared<const Graph>(std::move(names), Field::Constant(n, 2.0 * N), edges,
                                         std::move(exterior), std::move(coords));
  const Index origin = g->find(Coord(N, 0));
  return {g, PseudoMetric::euclidean(g), PseudoMetric::natural(g), origin};
}

GraphWithMetric cyclic_power(int m, int K) {
  if (m < 2) throw PreconditionError("cyclic order m must be at least 2");
  if (K < 1) throw PreconditionError("cyclic power K must be at least 1");
  auto factor = cyclic_factor(m);
  GraphWithMetric result{factor, PseudoMetric::natural(factor)};
  for (int k = 1; k < K; ++k) {
    ProductSpec spec;
    spec.left = result;
    spec.right = {factor, PseudoMetric::natural(factor)};
    spec.p = 1.0;
    result = product(spec);
  }
  return {result.graph, PseudoMetric::natural(result.graph)};
}

std::string to_string(MeasureRule rule) {
  switch (rule) {
    case MeasureRule::sum: return "sum";
    case MeasureRule::max: return "max";
    case MeasureRule::product: return "product";
    case MeasureRule::custom: return "custom";
  }
  return "unknown";
}

MeasureRule measure_rule_from_string(const std::string& s) {
  if (s == "sum") return MeasureRule::sum;
  if (s == "max") return MeasureRule::max;
  if (s == "product") return MeasureRule::product;
  throw ConfigError("unknown measure rule '" + s + "' (expected sum, max or product)");
}

GraphWithMetric product(const ProductSpec& spec) {
  if (!spec.left.graph || !spec.right.graph) throw PreconditionError("product needs two graphs");
  if (!(spec.measure_constant > 0.0))
    throw PreconditionError("measure lower-bound constant must be positive");
  const Graph& g1 = *spec.left.graph;
  const Graph& g2 = *spec.right.graph;
  if (spec.left.metric.size() != g1.size() || spec.right.metric.size() != g2.size())
    throw PreconditionError("factor metric and graph sizes differ");
  const Index n1 = g1.size(), n2 = g2.size(), n = n1 * n2;

  auto rule = [&](double a, double b) -> double {
    switch (spec.rule) {
      case MeasureRule::sum: return a + b;
      case MeasureRule::max: return std::max(a, b);
      case MeasureRule::product: return a * b;
      case MeasureRule::custom:
        if (!spec.custom_rule) throw PreconditionError("custom measure rule not provided");
        return spec.custom_rule(a, b);
    }
    return 0.0;
  };

  std::vector<std::string> names(static_cast<std::size_t>(n));
  Field mu(n), exterior(n);
  std::vector<Edge> edges;
  const bool with_coords = g1.has_coordinates() && g2.has_coordinates();
  std::vector<Coord> coords;
  if (with_coords) coords.resize(static_cast<std::size_t>(n));
  for (Index i = 0; i < n1; ++i) {
    for (Index j = 0; j < n2; ++j) {
      const Index x = i * n2 + j;
      names[x] = pair_name(g1.name(i), g2.name(j));
      const double m1 = g1.measure(i), m2 = g2.measure(j);
      mu[x] = rule(m1, m2);
      if (!(mu[x] >= spec.measure_constant * std::max(m1, m2)))
        throw GraphInvariantError("product measure at '" + names[x] +
                                  "' violates mu >= C max{mu1, mu2}");
      exterior[x] = g1.exterior_weight()[i] + g2.exterior_weight()[j];
      g1.for_each_neighbor(i, [&](Index k, double w) {
        if (k > i) edges.push_back({x, k * n2 + j, w});
      });
      g2.for_each_neighbor(j, [&](Index k, double w) {
        if (k > j) edges.push_back({x, i * n2 + k, w});
      });
      if (with_coords) {
        coords[x] = g1.coordinates(i);
        const Coord& c2 = g2.coordinates(j);
        coords[x].insert(coords[x].end(), c2.begin(), c2.end());
      }
    }
  }
  auto g = std::make_shared<const Graph>(std::move(names), std::move(mu), edges,
                                         std::move(exterior), std::move(coords));
  return {g, PseudoMetric::product(spec.p, spec.left.metric, spec.right.metric)};
}

std::shared_ptr<const Graph> read_edge_list(std::istream& in) {
  std::vector<std::string> names;
  std::map<std::string, Index> index;
  std::map<Index, double> measures;
  std::vector<Edge> edges;
  std::vector<std::size_t> edge_lines;
  auto intern = [&](const std::string& s) {
    auto [it, inserted] = index.emplace(s, static_cast<Index>(names.size()));
    if (inserted) names.push_back(s);
    return it->second;
  };

  std::string line;
  std::size_t lineno = 0;
  std::map<std::pair<Index, Index>, std::pair<double, std::size_t>> seen;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string first;
    if (!(fields >> first)) continue;
    std::string second;
    double value = 0.0;
    if (!(fields >> second)) throw ParseError("expected 'x y w' or 'node x mu'", lineno);
    if (!(fields >> value)) throw ParseError("missing or malformed number", lineno);
    std::string extra;
    if (fields >> extra) throw ParseError("trailing text '" + extra + "'", lineno);

    if (first == "node") {
      const Index x = intern(second);
      if (!(value > 0.0) || !std::isfinite(value))
        throw ParseError("node measure of '" + second + "' must be positive", lineno);
      if (!measures.emplace(x, value).second)
        throw ParseError("duplicate measure for '" + second + "'", lineno);
      continue;
    }
    if (first == second) throw ParseError("loop at vertex '" + first + "'", lineno);
    if (!(value >= 0.0) || !std::isfinite(value))
      throw ParseError("edge weight must be finite and nonnegative", lineno);
    const Index a = intern(first), b = intern(second);
    auto key = std::minmax(a, b);
    auto [it, inserted] = seen.emplace(key, std::pair{value, lineno});
    if (!inserted) {
      if (it->second.first != value)
        throw ParseError("asymmetric weight between '" + first + "' and '" + second +
                             "' (line " + std::to_string(it->second.second) + " disagrees)",
                         lineno);
      continue;
    }
    edges.push_back({a, b, value});
  }
  if (names.empty()) throw ParseError("edge list is empty", 0);
  Field mu(static_cast<Index>(names.size()));
  for (Index x = 0; x < mu.size(); ++x) {
    auto it = measures.find(x);
    if (it == measures.end()) throw ParseError("missing node measure for '" + names[x] + "'", 0);
    mu[x] = it->second;
  }
  return std::make_shared<const Graph>(std::move(names), std::move(mu), edges);
}

std::shared_ptr<const Graph> from_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open edge list '" + path + "'");
  return read_edge_list(in);
}

void write_edge_list(const Graph& g, std::ostream& out) {
  out << std::setprecision(17);
  out << "# " << g.size() << " vertices, " << g.edge_count() << " edges\n";
  if (!g.is_finite())
    out << "# truncated window: " << g.boundary_vertices().size()
        << " boundary vertices (exterior weight is not stored)\n";
  for (Index x = 0; x < g.size(); ++x) out << "node " << g.name(x) << ' ' << g.measure(x) << '\n';
  for (Index x = 0; x < g.size(); ++x)
    g.for_each_neighbor(x, [&](Index y, double w) {
      if (y > x) out << g.name(x) << ' ' << g.name(y) << ' ' << w << '\n';
    });
}

}  // namespace fujita
