#include "fujita/simulator.hpp"

#include "fujita/error.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <thread>

namespace fujita {

std::string to_string(Scheme s) {
  return s == Scheme::explicit_euler ? "explicit-euler" : "semi-implicit-linear";
}

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::blow_up: return "blow-up";
    case Outcome::global_decay: return "global-decay";
    case Outcome::undecided: return "undecided";
  }
  return "?";
}

Scheme scheme_from_string(const std::string& s) {
  if (s == "explicit-euler") return Scheme::explicit_euler;
  if (s == "semi-implicit-linear") return Scheme::semi_implicit_linear;
  throw ConfigError("unknown scheme '" + s + "'");
}

double default_dt(const Graph& g) {
  const Field rate =
      ((g.degree() + g.exterior_weight()).array() / g.measure().array()).matrix();
  const double m = rate.size() ? rate.maxCoeff() : 0.0;
  return m > 0.0 ? 0.4 / m : 0.4;
}

namespace {

Field potential_at(const Graph& g, const SimConfig& cfg, double t) {
  if (cfg.potential.space.size() == 0) return Field::Constant(g.size(), cfg.potential.time(t));
  if (cfg.potential.space.size() != g.size())
    throw PreconditionError("potential size differs from graph");
  return cfg.potential.at(t);
}

Field reaction(const Graph& g, const Field& u, double t, const SimConfig& cfg) {
  if (!cfg.reaction_enabled) return Field::Zero(g.size());
  return (potential_at(g, cfg, t).array() * u.array().pow(cfg.sigma)).matrix();
}

double boundary_max(const Graph& g, const Field& u) {
  double m = 0.0;
  for (Index x : g.boundary_vertices()) m = std::max(m, u[x]);
  return m;
}

struct RawRun {
  std::optional<double> hit_time;
  std::vector<HistorySample> history;
  double boundary_seen = 0.0;
  bool contaminated = false;
  double contaminated_at = 0.0;
};

RawRun integrate(const Graph& g, const SimConfig& cfg, double dt) {
  RawRun out;
  Field u = cfg.initial;
  const auto sample = [&](double t) {
    const double bmax = boundary_max(g, u);
    const double sup = u.size() ? u.maxCoeff() : 0.0;
    out.history.push_back({t, sup, g.measure().dot(u), bmax});
    out.boundary_seen = std::max(out.boundary_seen, bmax);
    if (!out.contaminated && bmax > cfg.boundary_mass_tolerance * sup) {
      out.contaminated = true;
      out.contaminated_at = t;
    }
    return sup;
  };
  sample(0.0);
  const auto steps = static_cast<long long>(std::ceil(cfg.t_max / dt - 1e-9));
  const int stride = std::max(1, cfg.record_every);
  for (long long k = 0; k < steps; ++k) {
    const double t = static_cast<double>(k) * dt;
    u = step(g, u, t, dt, cfg);
    const double t1 = static_cast<double>(k + 1) * dt;
    const double sup = u.maxCoeff();
    const bool last = k + 1 == steps;
    if (sup >= cfg.blow_up_threshold || !std::isfinite(sup)) {
      sample(t1);
      out.hit_time = t1;
      return out;
    }
    if ((k + 1) % stride == 0 || last) {
      sample(t1);
    } else {
      const double bmax = boundary_max(g, u);
      out.boundary_seen = std::max(out.boundary_seen, bmax);
      if (!out.contaminated && bmax > cfg.boundary_mass_tolerance * sup) {
        out.contaminated = true;
        out.contaminated_at = t1;
      }
    }
  }
  return out;
}

RawRun integrate_with_halving(const Graph& g, const SimConfig& cfg, double& dt, int& halvings) {
  for (;;) {
    try {
      return integrate(g, cfg, dt);
    } catch (const StepError&) {
      if (halvings >= 10) throw;
      dt /= 2.0;
      ++halvings;
    }
  }
}

}  // namespace

Field step(const Graph& g, const Field& u, double t, double dt, const SimConfig& cfg) {
  if (u.size() != g.size()) throw PreconditionError("field length differs from vertex count");
  const Field react = reaction(g, u, t, cfg);
  Field next;
  if (cfg.scheme == Scheme::explicit_euler) {
    next = u + dt * (dirichlet_laplacian_field(g, u) + react);
  } else {
    // (I - dt Lap) next = u + dt react, by Jacobi sweeps.
    const Field rhs = u + dt * react;
    const Field diag =
        (1.0 + dt * ((g.degree() + g.exterior_weight()).array() / g.measure().array())).matrix();
    next = rhs;
    for (int it = 0;; ++it) {
      const Field off = dt * ((g.weights() * next).array() / g.measure().array()).matrix();
      Field upd = ((rhs + off).array() / diag.array()).matrix();
      const double change = (upd - next).cwiseAbs().maxCoeff();
      next.swap(upd);
      if (change <= 1e-12 * std::max(1.0, next.cwiseAbs().maxCoeff())) break;
      if (it > 100000) throw StepError("Jacobi iteration did not converge");
    }
  }
  for (Index x = 0; x < next.size(); ++x)
    if (next[x] < 0.0) throw StepError("negative value at vertex " + g.name(x));
  return next;
}

BlowUpReport run(const Graph& g, const SimConfig& cfg) {
  if (!(cfg.sigma > 1.0)) throw ConfigError("sigma must exceed 1");
  if (!(cfg.t_max > 0.0)) throw ConfigError("t_max must be positive");
  if (cfg.initial.size() != g.size()) throw PreconditionError("initial data length differs from graph");
  if ((cfg.initial.array() < 0.0).any()) throw PreconditionError("initial data must be nonnegative");
  if (cfg.dt && !(*cfg.dt > 0.0)) throw ConfigError("dt must be positive");

  BlowUpReport rep;
  double dt = cfg.dt.value_or(default_dt(g));
  RawRun raw = integrate_with_halving(g, cfg, dt, rep.dt_halvings);
  rep.dt_used = dt;
  rep.history = std::move(raw.history);
  rep.boundary_contamination = raw.boundary_seen;
  rep.contaminated = raw.contaminated;

  if (raw.hit_time) {
    rep.blow_up_time = raw.hit_time;
    if (raw.contaminated && raw.contaminated_at <= *raw.hit_time) {
      rep.outcome = Outcome::undecided;
      rep.reason = "boundary contamination before the threshold";
      return rep;
    }
    if (!cfg.confirm) {
      rep.outcome = Outcome::blow_up;
      return rep;
    }
    double half = dt / 2.0;
    int extra = 0;
    const RawRun check = integrate_with_halving(g, cfg, half, extra);
    if (check.hit_time) rep.confirm_time = check.hit_time;
    if (check.hit_time && std::abs(*check.hit_time - *raw.hit_time) <= 0.1 * *raw.hit_time) {
      rep.outcome = Outcome::blow_up;
    } else {
      rep.outcome = Outcome::undecided;
      rep.reason = "dt/2 re-run disagrees on the blow-up time";
    }
    return rep;
  }

  if (raw.contaminated) {
    rep.outcome = Outcome::undecided;
    rep.reason = "boundary contamination";
    return rep;
  }
  const auto& h = rep.history;
  const double final_sup = h.back().sup;
  if (final_sup < cfg.decay_threshold) {
    rep.outcome = Outcome::global_decay;
    return rep;
  }
  bool monotone = true;
  for (std::size_t k = h.size() / 2; k + 1 < h.size(); ++k)
    if (h[k + 1].sup > h[k].sup * (1.0 + 1e-12)) monotone = false;
  if (monotone && final_sup <= h.front().sup) {
    rep.outcome = Outcome::global_decay;
  } else {
    rep.outcome = Outcome::undecided;
    rep.reason = "sup did not decrease over the second half of the run";
  }
  return rep;
}

Trajectory trajectory(const Graph& g, const SimConfig& cfg, double t_end) {
  if (cfg.initial.size() != g.size()) throw PreconditionError("initial data length differs from graph");
  const double dt = cfg.dt.value_or(default_dt(g));
  Trajectory out;
  Field u = cfg.initial;
  out.times.push_back(0.0);
  out.fields.push_back(u);
  const auto steps = static_cast<long long>(std::ceil(t_end / dt - 1e-9));
  for (long long k = 0; k < steps; ++k) {
    u = step(g, u, static_cast<double>(k) * dt, dt, cfg);
    out.times.push_back(static_cast<double>(k + 1) * dt);
    out.fields.push_back(u);
  }
  return out;
}

int worker_threads() {
  const char* env = std::getenv("FUJITA_THREADS");
  if (!env) return 1;
  const int n = std::atoi(env);
  return std::max(1, n);
}

SweepResult fujita_sweep(const Graph& g, const std::vector<double>& sigmas,
                         const std::vector<double>& amplitudes, const SimConfig& base,
                         const Field& shape) {
  if (shape.size() != g.size()) throw PreconditionError("initial shape length differs from graph");
  if (sigmas.empty() || amplitudes.empty()) throw ConfigError("sweep needs sigmas and amplitudes");
  const std::size_t total = sigmas.size() * amplitudes.size();
  std::vector<SweepRow> rows(total);
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(total);
  const auto worker = [&] {
    for (std::size_t k = next++; k < total; k = next++) try {
      SimConfig cfg = base;
      cfg.sigma = sigmas[k / amplitudes.size()];
      const double a = amplitudes[k % amplitudes.size()];
      cfg.initial = a * shape;
      const BlowUpReport rep = run(g, cfg);
      rows[k] = {cfg.sigma, a, rep.outcome,
                 rep.outcome == Outcome::blow_up ? rep.blow_up_time : std::nullopt};
    } catch (...) {
      errors[k] = std::current_exception();
    }
  };
  const int n = std::min<int>(worker_threads(), static_cast<int>(total));
  if (n <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  SweepResult out;
  out.rows = std::move(rows);
  const auto smallest = std::min_element(amplitudes.begin(), amplitudes.end());
  const std::size_t ai = static_cast<std::size_t>(smallest - amplitudes.begin());
  for (std::size_t si = 0; si < sigmas.size(); ++si) {
    const SweepRow& r = out.rows[si * amplitudes.size() + ai];
    if (r.outcome == Outcome::global_decay &&
        (!out.survival_sigma || r.sigma < *out.survival_sigma))
      out.survival_sigma = r.sigma;
  }
  return out;
}

}  // namespace fujita
