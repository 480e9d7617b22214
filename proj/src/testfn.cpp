#include "fujita/testfn.hpp"

#include "fujita/error.hpp"

#include <algorithm>
#include <sstream>

namespace fujita {

double cutoff(double p) {
  if (p <= 1.0) return 1.0;
  if (p >= 2.0) return 0.0;
  const double u = p - 1.0;
  return 1.0 - u * u * u * (10.0 + u * (-15.0 + 6.0 * u));
}

double cutoff_d1(double p) {
  if (p <= 1.0 || p >= 2.0) return 0.0;
  const double u = p - 1.0;
  return -30.0 * u * u * (1.0 - u) * (1.0 - u);
}

double cutoff_d2(double p) {
  if (p <= 1.0 || p >= 2.0) return 0.0;
  const double u = p - 1.0;
  return -60.0 * u * (1.0 - u) * (1.0 - 2.0 * u);
}

void TestFnParams::validate(double sigma) const {
  if (!(theta1 >= 2.0)) throw ConfigError("theta1 must be at least 2");
  if (!(theta2 >= 1.0)) throw ConfigError("theta2 must be at least 1");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ConfigError("alpha must lie in [0, 1]");
  if (theta1 / theta2 < 1.0 + alpha - 1e-12)
    throw ConfigError("theta1/theta2 must be at least 1+alpha");
  if (!(R > 0.0)) throw ConfigError("R must be positive");
  if (!std::isnan(sigma)) {
    if (!(sigma > 1.0)) throw ConfigError("sigma must exceed 1");
    if (!(s > sigma / (sigma - 1.0))) throw ConfigError("s must exceed sigma/(sigma-1)");
  } else if (!(s >= 1.0)) {
    throw ConfigError("s must be at least 1");
  }
}

TestFunction::TestFunction(std::shared_ptr<const Graph> g, PseudoMetric d, TestFnParams p)
    : graph_(std::move(g)), metric_(std::move(d)), p_(p) {
  if (!graph_) throw PreconditionError("test function needs a graph");
  p_.validate();
  graph_->check(p_.x0);
  if (metric_.size() != graph_->size()) throw PreconditionError("metric size differs from graph");
  dp_ = metric_.powered_from(p_.x0, p_.theta1);
  Rt_ = std::pow(p_.R, p_.theta1);
}

double TestFunction::psi(Index x, double t) const {
  return (std::pow(t, p_.theta2) + dp_[graph_->check(x)]) / Rt_;
}

double TestFunction::phi(Index x, double t) const { return cutoff(psi(x, t)); }

double TestFunction::dphi_dt(Index x, double t) const {
  return cutoff_d1(psi(x, t)) * p_.theta2 * std::pow(t, p_.theta2 - 1.0) / Rt_;
}

double TestFunction::laplacian_phi(Index x, double t) const {
  const double st = std::pow(t, p_.theta2);
  const double px = cutoff((st + dp_[graph_->check(x)]) / Rt_);
  double acc = 0.0;
  graph_->for_each_neighbor(x, [&](Index y, double w) {
    acc += w * (cutoff((st + dp_[y]) / Rt_) - px);
  });
  return acc / graph_->measure(x);
}

ShellFlags TestFunction::shells(Index x, double t) const {
  const double q = std::pow(t, p_.theta2) + dp_[graph_->check(x)];
  const double half = std::pow(p_.R / 2.0, p_.theta1);
  const double four = std::pow(4.0 * p_.R, p_.theta1);
  return {q <= Rt_, Rt_ <= q && q <= 2.0 * Rt_, half <= q && q <= four};
}

Field TestFunction::power_field(double t) const {
  Field out(graph_->size());
  const double st = std::pow(t, p_.theta2);
  for (Index x = 0; x < graph_->size(); ++x)
    out[x] = std::pow(cutoff((st + dp_[x]) / Rt_), p_.s);
  return out;
}

Field TestFunction::power_field_dt(double t) const {
  Field out(graph_->size());
  const double st = std::pow(t, p_.theta2);
  const double chain = p_.theta2 * std::pow(t, p_.theta2 - 1.0) / Rt_;
  for (Index x = 0; x < graph_->size(); ++x) {
    const double q = (st + dp_[x]) / Rt_;
    const double d1 = cutoff_d1(q);
    out[x] = d1 == 0.0 ? 0.0 : p_.s * std::pow(cutoff(q), p_.s - 1.0) * d1 * chain;
  }
  return out;
}

double TestFunction::support_time() const { return std::pow(2.0 * Rt_, 1.0 / p_.theta2); }

std::vector<double> TestFunction::time_grid(int resolution) const {
  const double ratio = p_.theta1 / p_.theta2;
  const double end = std::pow(2.0, 1.0 / p_.theta2) * std::pow(4.0 * p_.R, ratio);
  const auto count =
      static_cast<std::size_t>(std::ceil(std::max(4, resolution) * std::pow(p_.R, ratio)));
  std::vector<double> out(count + 1);
  for (std::size_t k = 0; k <= count; ++k)
    out[k] = end * static_cast<double>(k) / static_cast<double>(count);
  return out;
}

namespace {

std::vector<double> powered_grid(const std::vector<double>& times, double theta2) {
  std::vector<double> s(times.size());
  for (std::size_t k = 0; k < times.size(); ++k) s[k] = std::pow(times[k], theta2);
  return s;
}

// Index range of the sorted array whose entries lie between lo and hi, each
// end open or closed.
std::pair<std::size_t, std::size_t> range_between(const std::vector<double>& s, double lo,
                                                  bool lo_open, double hi, bool hi_open) {
  const auto b = lo_open ? std::upper_bound(s.begin(), s.end(), lo)
                         : std::lower_bound(s.begin(), s.end(), lo);
  const auto e = hi_open ? std::lower_bound(s.begin(), s.end(), hi)
                         : std::upper_bound(s.begin(), s.end(), hi);
  const auto first = static_cast<std::size_t>(b - s.begin());
  const auto last = static_cast<std::size_t>(e - s.begin());
  return {first, std::max(first, last)};
}

void require_claim_radius(const TestFunction& tf) {
  const double j = jump_size(tf.graph(), tf.metric()).value;
  if (tf.params().R < 2.0 * j) {
    std::ostringstream os;
    os << "R = " << tf.params().R << " is below twice the jump size " << j;
    throw PreconditionError(os.str());
  }
}

void require_window(const TestFunction& tf, double factor) {
  const Graph& g = tf.graph();
  const double reach = std::pow(factor * tf.params().R, tf.params().theta1);
  for (Index x : g.boundary_vertices()) {
    if (tf.distance_powered()[x] <= reach) {
      std::ostringstream os;
      os << "window does not contain the ball of radius " << factor * tf.params().R;
      throw WindowTooSmall(os.str());
    }
  }
}

}  // namespace

BoundCheck verify_laplacian_bound(const TestFunction& tf, int resolution) {
  require_claim_radius(tf);
  require_window(tf, 5.0);
  const Graph& g = tf.graph();
  const TestFnParams& p = tf.params();
  const Field& dp = tf.distance_powered();
  const double Rt = tf.scale();
  const double lo_F = std::pow(p.R / 2.0, p.theta1);
  const double hi_F = std::pow(4.0 * p.R, p.theta1);
  const double scale = std::pow(p.R, 1.0 + p.alpha);
  const std::vector<double> s = powered_grid(tf.time_grid(resolution), p.theta2);

  BoundCheck out;
  out.R = p.R;
  std::vector<std::pair<Index, double>> nbrs;
  for (Index x = 0; x < g.size(); ++x) {
    if (g.is_boundary(x)) continue;
    nbrs.clear();
    double lo = Rt - dp[x];
    double hi = 2.0 * Rt - dp[x];
    g.for_each_neighbor(x, [&](Index y, double w) {
      nbrs.emplace_back(y, w);
      lo = std::min(lo, Rt - dp[y]);
      hi = std::max(hi, 2.0 * Rt - dp[y]);
    });
    // Outside [lo, hi] every psi in the stencil sits on one flat piece.
    const auto [b, e] = range_between(s, lo, false, hi, false);
    const double mu = g.measure(x);
    for (std::size_t k = b; k < e; ++k) {
      const double px = cutoff((s[k] + dp[x]) / Rt);
      double acc = 0.0;
      for (const auto& [y, w] : nbrs) acc += w * (cutoff((s[k] + dp[y]) / Rt) - px);
      const double neg = -acc / mu;
      if (acc == 0.0) continue;
      ++out.samples;
      out.Cmax = std::max(out.Cmax, neg * scale);
      const double q = s[k] + dp[x];
      if (neg > 1e-12 && (q < lo_F || q > hi_F)) ++out.violations;
    }
  }
  return out;
}

BoundCheck verify_time_bound(const TestFunction& tf, int resolution) {
  require_claim_radius(tf);
  require_window(tf, 5.0);
  const Graph& g = tf.graph();
  const TestFnParams& p = tf.params();
  const Field& dp = tf.distance_powered();
  const double Rt = tf.scale();
  const double scale = std::pow(p.R, p.theta1 / p.theta2);
  const std::vector<double> times = tf.time_grid(resolution);
  const std::vector<double> s = powered_grid(times, p.theta2);

  BoundCheck out;
  out.R = p.R;
  for (Index x = 0; x < g.size(); ++x) {
    if (g.is_boundary(x) || dp[x] >= 2.0 * Rt) continue;
    // phi'(psi) vanishes unless psi lies strictly between 1 and 2.
    const auto [b, e] = range_between(s, Rt - dp[x], true, 2.0 * Rt - dp[x], true);
    for (std::size_t k = b; k < e; ++k) {
      const double q = s[k] + dp[x];
      const double neg =
          -cutoff_d1(q / Rt) * p.theta2 * std::pow(times[k], p.theta2 - 1.0) / Rt;
      if (neg == 0.0) continue;
      ++out.samples;
      out.Cmax = std::max(out.Cmax, neg * scale);
      if (neg > 1e-12 && (q < Rt || q > 2.0 * Rt)) ++out.violations;
    }
  }
  return out;
}

Index claim_xi_gap(const TestFunction& tf, int resolution, bool check_preconditions) {
  if (check_preconditions) require_claim_radius(tf);
  const Graph& g = tf.graph();
  const TestFnParams& p = tf.params();
  const Field& dp = tf.distance_powered();
  const double Rt = tf.scale();
  const double lo_F = std::pow(p.R / 2.0, p.theta1);
  const double hi_F = std::pow(4.0 * p.R, p.theta1);
  const std::vector<double> s = powered_grid(tf.time_grid(resolution), p.theta2);

  Index violations = 0;
  for (Index x = 0; x < g.size(); ++x) {
    if (g.is_boundary(x)) continue;
    g.for_each_neighbor(x, [&](Index y, double) {
      // The segment meets (1, 2) iff max psi > 1 and min psi < 2.
      const double meet_lo = Rt - std::max(dp[x], dp[y]);
      const double meet_hi = 2.0 * Rt - std::min(dp[x], dp[y]);
      const auto [b1, e1] = range_between(s, std::max(meet_lo, hi_F - dp[x]),
                                          meet_lo >= hi_F - dp[x], meet_hi, true);
      const auto [b2, e2] =
          range_between(s, meet_lo, true, std::min(meet_hi, lo_F - dp[x]),
                        meet_hi <= lo_F - dp[x]);
      violations += static_cast<Index>((e1 - b1) + (e2 - b2));
    });
  }
  return violations;
}

Index shell_cover_gaps(const TestFunction& tf, int resolution) {
  const Graph& g = tf.graph();
  const TestFnParams& p = tf.params();
  const Field& dp = tf.distance_powered();
  const double lo_F = std::pow(p.R / 2.0, p.theta1);
  const double hi_F = std::pow(4.0 * p.R, p.theta1);
  const int m = static_cast<int>(std::ceil(3.0 * p.theta1 - 1.0));
  std::vector<double> levels;  // (2^(k/theta1 - 1) R)^theta1
  for (int k = 0; k <= m; ++k)
    levels.push_back(std::pow(std::pow(2.0, k / p.theta1 - 1.0) * p.R, p.theta1));
  const std::vector<double> s = powered_grid(tf.time_grid(resolution), p.theta2);

  Index gaps = 0;
  for (Index x = 0; x < g.size(); ++x) {
    if (dp[x] > hi_F) continue;
    const auto [b, e] = range_between(s, lo_F - dp[x], false, hi_F - dp[x], false);
    for (std::size_t k = b; k < e; ++k) {
      const double q = s[k] + dp[x];
      const bool covered = std::any_of(levels.begin(), levels.end(), [&](double L) {
        return L * (1.0 - 1e-12) <= q && q <= 2.0 * L * (1.0 + 1e-12);
      });
      if (!covered) ++gaps;
    }
  }
  return gaps;
}

ProofLadder verify_proof_bounds(std::shared_ptr<const Graph> g, const PseudoMetric& d,
                                TestFnParams base, const std::vector<double>& radii,
                                int resolution) {
  if (radii.size() < 2) throw PreconditionError("proof ladder needs at least two radii");
  ProofLadder out;
  std::vector<double> lap, time;
  for (double R : radii) {
    base.R = R;
    const TestFunction tf(g, d, base);
    ProofRow row{R, verify_laplacian_bound(tf, resolution), verify_time_bound(tf, resolution)};
    lap.push_back(row.laplacian.Cmax);
    time.push_back(row.time.Cmax);
    out.rows.push_back(row);
  }
  out.laplacian_trend = classify_trend(radii, lap);
  out.time_trend = classify_trend(radii, time);
  return out;
}

WeakFormResidual weak_form_residual(const Graph& g, const std::vector<double>& times,
                                    const std::vector<Field>& u,
                                    const std::vector<Field>& test,
                                    const std::vector<Field>& test_dt, const BoundPotential& v,
                                    double sigma) {
  const std::size_t K = times.size();
  if (K < 2 || u.size() != K || test.size() != K || test_dt.size() != K)
    throw PreconditionError("weak form needs matching series of at least two times");
  if (v.space.size() != g.size()) throw PreconditionError("potential size differs from graph");
  const Index n = g.size();
  for (std::size_t k = 0; k < K; ++k) {
    if (u[k].size() != n || test[k].size() != n || test_dt[k].size() != n)
      throw PreconditionError("field length differs from vertex count");
    if ((u[k].array() < 0.0).any()) throw PreconditionError("u must be nonnegative");
    if ((test[k].array() < 0.0).any()) throw PreconditionError("test function must be nonnegative");
    for (Index x : g.boundary_vertices())
      if (test[k][x] != 0.0 || test_dt[k][x] != 0.0)
        throw PreconditionError("test function support touches the window boundary");
  }
  if ((test.back().array() != 0.0).any() || (test_dt.back().array() != 0.0).any())
    throw PreconditionError("test function must vanish at the final time");

  const Field& mu = g.measure();
  std::vector<double> val(K), mag(K);
  for (std::size_t k = 0; k < K; ++k) {
    const Field vt = v.at(times[k]);
    double s = 0.0, a = 0.0;
    for (Index x = 0; x < n; ++x) {
      const double ph = test[k][x];
      const double pt = test_dt[k][x];
      if (ph == 0.0 && pt == 0.0) continue;
      const double lap = ph == 0.0 ? 0.0 : laplacian(g, u[k], x) * ph;
      const double react = vt[x] * std::pow(u[k][x], sigma) * ph;
      const double trans = u[k][x] * pt;
      s += mu[x] * (lap + react + trans);
      a += mu[x] * (std::abs(lap) + std::abs(react) + std::abs(trans));
    }
    val[k] = s;
    mag[k] = a;
  }
  WeakFormResidual out;
  for (std::size_t k = 0; k + 1 < K; ++k) {
    const double h = times[k + 1] - times[k];
    if (!(h > 0.0)) throw PreconditionError("times must be increasing");
    out.residual += 0.5 * h * (val[k] + val[k + 1]);
    out.scale += 0.5 * h * (mag[k] + mag[k + 1]);
  }
  const double initial = (mu.array() * u.front().array() * test.front().array()).sum();
  out.residual += initial;
  out.scale += std::abs(initial);
  return out;
}

void sample_test_series(const TestFunction& tf, const std::vector<double>& times,
                        std::vector<Field>& test, std::vector<Field>& test_dt) {
  test.clear();
  test_dt.clear();
  test.reserve(times.size());
  test_dt.reserve(times.size());
  for (double t : times) {
    test.push_back(tf.power_field(t));
    test_dt.push_back(tf.power_field_dt(t));
  }
}

}  // namespace fujita
