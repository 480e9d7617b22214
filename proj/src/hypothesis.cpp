#include "fujita/hypothesis.hpp"

#include "fujita/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace fujita {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

double max_radius(const HypothesisQuery& q) {
  return q.radii.empty() ? std::numeric_limits<double>::infinity() : q.radii.back();
}

// Interior vertices with R0 < d <= Rmax. A boundary vertex in that range
// means the window does not cover the region.
VertexSet admissible_region(const HypothesisQuery& q, const Field& dist) {
  const Graph& g = *q.graph;
  const double rmax = max_radius(q);
  VertexSet region;
  for (Index x = 0; x < g.size(); ++x) {
    if (!(dist[x] > q.R0) || dist[x] > rmax) continue;
    if (g.is_boundary(x)) {
      if (q.radii.empty()) continue;
      throw WindowTooSmall("vertex " + g.name(x) + " at distance " + fmt(dist[x]) +
                           " lies on the window boundary");
    }
    region.push_back(x);
  }
  if (region.empty()) throw PreconditionError("no interior vertex with d(x, x0) > R0");
  return region;
}

// Default ladder: dyadic from max(R0, 1) up to the largest interior distance.
std::vector<double> ladder_for(const HypothesisQuery& q, const Field& dist) {
  if (!q.radii.empty()) return q.radii;
  double reach = 0.0;
  for (Index x = 0; x < q.graph->size(); ++x)
    if (!q.graph->is_boundary(x)) reach = std::max(reach, dist[x]);
  std::vector<double> out;
  for (double R = std::max(q.R0, 1.0); R < reach; R *= 2.0) out.push_back(R);
  out.push_back(reach);
  return out;
}

// Running sup bounded on a window: exact for finite graphs, trend rule otherwise.
bool running_sup_bounded(const Graph& g, const std::vector<double>& values) {
  if (g.is_finite() || values.size() < 2)
    return std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); });
  const std::size_t half = values.size() / 2;
  const double bottom = *std::max_element(values.begin(), values.begin() + half);
  const double top = *std::max_element(values.begin() + half, values.end());
  return top <= bottom + (kTrendRatio - 1.0) * std::abs(bottom) + 1e-12;
}

double inverse_power(double v, double q) { return std::pow(v, -q); }

}  // namespace

void HypothesisQuery::validate() const {
  if (!graph) throw ConfigError("hypothesis query has no graph");
  if (metric.size() != graph->size())
    throw ConfigError("metric size differs from graph size");
  if (x0 < 0 || x0 >= graph->size()) throw ConfigError("x0 is not a vertex of the graph");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ConfigError("alpha must lie in [0, 1]");
  if (!(R0 >= 1.0)) throw ConfigError("R0 must be at least 1");
  if (!(sigma > 1.0)) throw ConfigError("sigma must exceed 1");
  if (!(theta1 >= 2.0)) throw ConfigError("theta1 must be at least 2");
  if (!(theta2 >= 1.0)) throw ConfigError("theta2 must be at least 1");
  if (theta1 / theta2 < 1.0 + alpha - 1e-12)
    throw ConfigError("theta1/theta2 must be at least 1+alpha (got " + fmt(theta1 / theta2) +
                      " < " + fmt(1.0 + alpha) + ")");
  for (std::size_t k = 0; k < radii.size(); ++k) {
    if (!(radii[k] > 0.0)) throw ConfigError("radii must be positive");
    if (k > 0 && !(radii[k] > radii[k - 1])) throw ConfigError("radii must be increasing");
  }
}

void HypothesisQuery::use_default_thetas() {
  theta1 = 2.0 * (1.0 + alpha);
  theta2 = 2.0;
}

double edge_mass_bound(const Graph& g) {
  double c = 0.0;
  for (Index x = 0; x < g.size(); ++x) {
    if (g.is_boundary(x)) continue;
    c = std::max(c, g.degree()[x] / g.measure(x));
  }
  return c;
}

double laplacian_distance_bound(const HypothesisQuery& q) {
  q.validate();
  const Graph& g = *q.graph;
  const Field dist = q.metric.from(q.x0);
  double c = -std::numeric_limits<double>::infinity();
  for (Index x : admissible_region(q, dist))
    c = std::max(c, laplacian(g, dist, x) * std::pow(dist[x], q.alpha));
  return c;
}

Remark25Check remark25_check(const HypothesisQuery& q) {
  q.validate();
  const Graph& g = *q.graph;
  const Field dist = q.metric.from(q.x0);
  const Field powered = q.metric.powered_from(q.x0, 1.0 + q.alpha);
  VertexSet region = admissible_region(q, dist);
  std::sort(region.begin(), region.end(),
            [&](Index a, Index b) { return dist[a] < dist[b]; });

  Remark25Check out;
  out.first = -std::numeric_limits<double>::infinity();
  out.second = -std::numeric_limits<double>::infinity();
  const std::vector<double> ladder = ladder_for(q, dist);
  std::size_t next = 0;
  for (double R : ladder) {
    for (; next < region.size() && dist[region[next]] <= R; ++next) {
      const Index x = region[next];
      out.first = std::max(out.first, laplacian(g, dist, x) * std::pow(dist[x], q.alpha));
      out.second = std::max(out.second, laplacian(g, powered, x));
    }
    if (next > 0) out.ladder.push_back({R, out.first, out.second});
  }
  for (; next < region.size(); ++next) {
    const Index x = region[next];
    out.first = std::max(out.first, laplacian(g, dist, x) * std::pow(dist[x], q.alpha));
    out.second = std::max(out.second, laplacian(g, powered, x));
  }

  std::vector<double> firsts, seconds;
  for (const auto& row : out.ladder) {
    firsts.push_back(row.first);
    seconds.push_back(row.second);
  }
  out.first_bounded = running_sup_bounded(g, firsts);
  out.second_bounded = running_sup_bounded(g, seconds);
  out.jump = jump_size(g, q.metric).value;
  out.reverse_applicable = q.R0 > 2.0 * out.jump;
  return out;
}

double convexity_defect(const HypothesisQuery& q) {
  q.validate();
  const Graph& g = *q.graph;
  const Field dist = q.metric.from(q.x0);
  const Field powered = q.metric.powered_from(q.x0, 1.0 + q.alpha);
  double worst = -std::numeric_limits<double>::infinity();
  for (Index x = 0; x < g.size(); ++x) {
    if (g.is_boundary(x)) continue;
    const double lhs = (1.0 + q.alpha) * std::pow(dist[x], q.alpha) * laplacian(g, dist, x);
    worst = std::max(worst, lhs - laplacian(g, powered, x));
  }
  return worst;
}

VolumeFit volume_growth_fit(const Graph& g, const PseudoMetric& d, Index x0,
                            const std::vector<double>& radii, double R0) {
  g.check(x0);
  if (radii.size() < 3) throw PreconditionError("volume fit needs at least 3 radii");
  const Field dist = d.from(x0);
  VolumeFit out;
  for (double R : radii) {
    if (R < R0 || !(R > 0.0)) continue;
    double vol = 0.0;
    bool touches = false;
    for (Index x = 0; x < g.size(); ++x) {
      if (dist[x] > R) continue;
      if (g.is_boundary(x)) {
        touches = true;
        break;
      }
      vol += g.measure(x);
    }
    if (touches) continue;
    out.radii.push_back(R);
    out.volumes.push_back(vol);
  }
  if (out.radii.size() < 3)
    throw PreconditionError("volume fit needs at least 3 radii with interior balls (got " +
                            std::to_string(out.radii.size()) + ")");
  const LogLogFit fit = fit_log_log(out.radii, out.volumes);
  out.delta = fit.slope;
  out.residual = fit.max_residual;
  return out;
}

ConditionReport spacetime_condition(const HypothesisQuery& q) {
  q.validate();
  if (q.radii.empty()) throw PreconditionError("space-time condition needs test radii");
  const Graph& g = *q.graph;
  const BoundPotential v = BoundPotential::bind(q.potential, q.metric, q.x0);
  const Field dp = q.metric.powered_from(q.x0, q.theta1);
  const double qexp = 1.0 / (q.sigma - 1.0);
  const double growth = (1.0 + q.alpha) * q.sigma / (q.sigma - 1.0);

  ConditionReport out;
  std::vector<double> Rs, margins;
  for (double R : q.radii) {
    if (R < q.R0) continue;
    const double Rt = std::pow(R, q.theta1);
    // Vertices sharing d^theta1 share the time interval; sum their weights.
    std::map<double, double> shells;
    for (Index x = 0; x < g.size(); ++x) {
      if (dp[x] > 2.0 * Rt) continue;
      if (g.is_boundary(x))
        throw WindowTooSmall("shell E_R for R = " + fmt(R) + " reaches the window boundary");
      shells[dp[x]] += g.measure(x) * inverse_power(v.space[x], qexp);
    }
    double total = 0.0;
    for (const auto& [p, w] : shells) {
      const double lo = std::pow(std::max(0.0, Rt - p), 1.0 / q.theta2);
      const double hi = std::pow(2.0 * Rt - p, 1.0 / q.theta2);
      total += w * v.time.inverse_power_integral(lo, hi, qexp);
    }
    const double bound = std::pow(R, growth);
    out.rows.push_back({R, total, bound, total / bound});
    Rs.push_back(R);
    margins.push_back(total / bound);
  }
  if (Rs.size() < 2) throw PreconditionError("space-time condition needs two radii >= R0");
  out.trend = classify_trend(Rs, margins);
  return out;
}

ConditionReport finite_graph_condition(const Graph& g, const BoundPotential& v, double sigma,
                                       const std::vector<double>& times) {
  if (!g.is_finite()) throw PreconditionError("finite-graph condition needs a finite graph");
  if (!(sigma > 1.0)) throw ConfigError("sigma must exceed 1");
  if (v.space.size() != g.size()) throw PreconditionError("potential size differs from graph");
  if (times.size() < 2) throw PreconditionError("finite-graph condition needs two times");
  const double qexp = 1.0 / (sigma - 1.0);
  double spatial = 0.0;
  for (Index x = 0; x < g.size(); ++x) spatial += g.measure(x) * inverse_power(v.space[x], qexp);

  ConditionReport out;
  std::vector<double> margins;
  for (double T : times) {
    if (!(T > 0.0)) throw PreconditionError("times must be positive");
    const double J = spatial * v.time.inverse_power_integral(T, 2.0 * T, qexp);
    const double bound = std::pow(T, sigma / (sigma - 1.0));
    out.rows.push_back({T, J, bound, J / bound});
    margins.push_back(J / bound);
  }
  out.trend = classify_trend(times, margins);
  return out;
}

std::string to_string(Criterion c) {
  switch (c) {
    case Criterion::separable: return "separable";
    case Criterion::spatial_weight: return "spatial-weight";
    case Criterion::volume: return "volume";
    case Criterion::finite_graph: return "finite-graph";
  }
  return "?";
}

CorollaryReport corollary_conditions(const HypothesisQuery& q) {
  q.validate();
  const Graph& g = *q.graph;
  const BoundPotential v = BoundPotential::bind(q.potential, q.metric, q.x0);
  const double qexp = 1.0 / (q.sigma - 1.0);
  CorollaryReport out;

  if (g.is_finite()) {
    std::vector<double> times = q.radii;
    if (times.empty())
      for (double T = 1.0; T <= 1024.0; T *= 2.0) times.push_back(T);
    ConditionReport rep = finite_graph_condition(g, v, q.sigma, times);
    std::vector<double> Js;
    for (const auto& row : rep.rows) Js.push_back(row.quantity);
    out.criterion = Criterion::finite_graph;
    out.delta1 = fit_log_log(times, Js).slope;
    out.lhs = out.delta1;
    out.rhs = q.sigma / (q.sigma - 1.0);
    out.verdict = rep.trend.verdict;
    out.finite = std::move(rep);
    return out;
  }

  if (q.radii.size() < 3) throw PreconditionError("corollary fit needs at least 3 radii");
  const Field dist = q.metric.from(q.x0);

  if (q.potential.time.is_constant()) {
    out.delta1 = 1.0;
  } else {
    std::vector<double> Ts, Fs;
    for (double R : q.radii) {
      if (R < q.R0) continue;
      const double T = std::pow(R, 1.0 + q.alpha);
      Ts.push_back(T);
      Fs.push_back(v.time.inverse_power_integral(0.0, T, qexp));
    }
    if (Ts.size() < 3) throw PreconditionError("corollary fit needs at least 3 radii >= R0");
    out.delta1 = std::max(0.0, fit_log_log(Ts, Fs).slope);
  }

  std::vector<double> Rs, Ss;
  for (double R : q.radii) {
    if (R < q.R0) continue;
    double sum = 0.0;
    bool touches = false;
    for (Index x = 0; x < g.size(); ++x) {
      if (dist[x] > R) continue;
      if (g.is_boundary(x)) {
        touches = true;
        break;
      }
      sum += g.measure(x) * inverse_power(v.space[x], qexp);
    }
    if (touches) continue;
    Rs.push_back(R);
    Ss.push_back(sum);
  }
  if (Rs.size() < 3)
    throw PreconditionError("corollary fit needs at least 3 radii with interior balls");
  out.delta2 = std::max(0.0, fit_log_log(Rs, Ss).slope);

  out.lhs = (1.0 + q.alpha) * out.delta1 + out.delta2;
  out.rhs = (1.0 + q.alpha) * q.sigma / (q.sigma - 1.0);
  out.verdict = out.lhs <= out.rhs + kExponentTolerance ? Verdict::met : Verdict::not_met;
  if (q.potential.time.is_constant() && q.potential.space.is_constant())
    out.criterion = Criterion::volume;
  else if (q.potential.time.is_constant())
    out.criterion = Criterion::spatial_weight;
  else
    out.criterion = Criterion::separable;
  return out;
}

HypothesisReport check(const HypothesisQuery& q) {
  q.validate();
  const Graph& g = *q.graph;
  HypothesisReport out;
  out.edge_mass_C = edge_mass_bound(g);
  out.jump = jump_size(g, q.metric);
  const Remark25Check rem = remark25_check(q);
  out.lap_dist_C = rem.first;
  out.rem25_C = rem.second;
  if (q.radii.size() >= 3) {
    try {
      out.volume = volume_growth_fit(g, q.metric, q.x0, q.radii, q.R0);
    } catch (const PreconditionError&) {
      out.volume.reset();
    }
  }
  out.corollary = corollary_conditions(q);

  if (g.is_finite()) {
    out.spacetime = *out.corollary.finite;
    out.verdict = out.corollary.verdict;
    if (out.verdict == Verdict::met) out.fired = to_string(Criterion::finite_graph);
    return out;
  }

  out.spacetime = spacetime_condition(q);
  const Verdict st = out.spacetime.trend.verdict;
  const Verdict co = out.corollary.verdict;
  if (st == Verdict::met) {
    out.verdict = Verdict::met;
    out.fired = "spacetime";
  } else if (co == Verdict::met) {
    out.verdict = Verdict::met;
    out.fired = to_string(out.corollary.criterion);
  } else if (st == Verdict::not_met && co == Verdict::not_met) {
    out.verdict = Verdict::not_met;
  } else {
    out.verdict = Verdict::inconclusive;
  }
  return out;
}

}  // namespace fujita
