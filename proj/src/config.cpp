#include "fujita/config.hpp"

#include "fujita/error.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace fujita {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& v, std::size_t line) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || v.empty())
    throw ParseError("expected a number, got '" + v + "'", line);
  return out;
}

int to_int(const std::string& v, std::size_t line) {
  int out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || v.empty())
    throw ParseError("expected an integer, got '" + v + "'", line);
  return out;
}

std::uint64_t to_u64(const std::string& v, std::size_t line) {
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || v.empty())
    throw ParseError("expected a nonnegative integer, got '" + v + "'", line);
  return out;
}

std::vector<double> to_list(const std::string& v, std::size_t line) {
  std::vector<double> out;
  if (v.empty()) return out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_double(trim(item), line));
  return out;
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string list(const std::vector<double>& v) {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k) out += (k ? ", " : "") + num(v[k]);
  return out;
}

using Setter = std::function<void(RunSpec&, const std::string&, std::size_t)>;
using Section = std::map<std::string, Setter>;

Section graph_keys(std::function<GraphSpec&(RunSpec&)> pick) {
  Section s;
  s["kind"] = [pick](RunSpec& r, const std::string& v, std::size_t) { pick(r).kind = v; };
  s["dimension"] = [pick](RunSpec& r, const std::string& v, std::size_t l) {
    pick(r).dimension = to_int(v, l);
  };
  s["radius"] = [pick](RunSpec& r, const std::string& v, std::size_t l) {
    pick(r).radius = to_int(v, l);
  };
  s["m"] = [pick](RunSpec& r, const std::string& v, std::size_t l) { pick(r).m = to_int(v, l); };
  s["K"] = [pick](RunSpec& r, const std::string& v, std::size_t l) { pick(r).K = to_int(v, l); };
  s["path"] = [pick](RunSpec& r, const std::string& v, std::size_t) { pick(r).path = v; };
  s["p"] = [pick](RunSpec& r, const std::string& v, std::size_t l) { pick(r).p = to_double(v, l); };
  s["measure_rule"] = [pick](RunSpec& r, const std::string& v, std::size_t) {
    pick(r).measure_rule = v;
  };
  s["measure_constant"] = [pick](RunSpec& r, const std::string& v, std::size_t l) {
    pick(r).measure_constant = to_double(v, l);
  };
  return s;
}

GraphSpec& factor(RunSpec& r, std::size_t k) {
  if (r.graph.factors.size() < 2) r.graph.factors.resize(2);
  return r.graph.factors[k];
}

const std::map<std::string, Section>& schema() {
  static const std::map<std::string, Section> table = [] {
    std::map<std::string, Section> t;
    t["graph"] = graph_keys([](RunSpec& r) -> GraphSpec& { return r.graph; });
    t["graph.left"] = graph_keys([](RunSpec& r) -> GraphSpec& { return factor(r, 0); });
    t["graph.right"] = graph_keys([](RunSpec& r) -> GraphSpec& { return factor(r, 1); });

    t["metric"]["kind"] = [](RunSpec& r, const std::string& v, std::size_t) { r.metric.kind = v; };
    t["metric"]["path"] = [](RunSpec& r, const std::string& v, std::size_t) { r.metric.path = v; };

    t["equation"]["sigma"] = [](RunSpec& r, const std::string& v, std::size_t l) {
      r.sigma = to_double(v, l);
    };

    auto& p = t["potential"];
    p["time"] = [](RunSpec& r, const std::string& v, std::size_t) { r.potential.time = v; };
    p["time_param"] = [](RunSpec& r, const std::string& v, std::size_t l) {
      r.potential.time_param = to_double(v, l);
    };
    p["times"] = [](RunSpec& r, const std::string& v, std::size_t l) {
      r.potential.times = to_list(v, l);
    };
    p["values"] = [](RunSpec& r, const std::string& v, std::size_t l) {
      r.potential.values = to_list(v, l);
    };
    p["space"] = [](RunSpec& r, const std::string& v, std::size_t) { r.potential.space = v; };
    p["space_param"] = [](RunSpec& r, const std::string& v, std::size_t l) {
      r.potential.space_param = to_double(v, l);
    };

    auto& h = t["hypothesis"];
    h["x0"] = [](RunSpec& r, const std::string& v, std::size_t) { r.hypothesis.x0 = v; };
    h["alpha"] = [](RunSpec& r, const std::string& v, std::size_t l) {
      r.hypothesis.alpha = to_double(v, l);
    };
    h["R0"] = [](RunSpec& r, const std::string& v, std::size_t l) {
      r.hypothesis.R0 = to_double(v, l);
    };
    h["theta1"] = [](RunSpec& r, const std::string& v, std::size_t l) {
      r.hypothesis.theta1 = to_double(v, l);
    };
    h["theta2"] = [](RunSpec& r, const std::string& v, std::size_t l) {
      r.hypothesis.theta2 = to_double(v, l);
    };
    h["radii"] = [](RunSpec& r, const std::string& v, std::size_t l) {
      r.hypothesis.radii = to_list(v, l);
    };

    auto& s = t["simulation"];
    s["dt"] = [](RunSpec& r, const std::string& v, std::size_t l) {
      if (v == "auto")
        r.simulation.dt.reset();
      else
        r.simulation.dt = to_double(v, l);
    };
    s["t_max"] = [](RunSpec& r, const std::string& v, std::size_t l) {
      r.simulation.t_max = to_double(v, l);
    };
    s["scheme"] = [](RunSpec& r, const std::string& v, std::size_t) { r.simulation.scheme = v; };
    s["blow_up_threshold"] = [](RunSpec& r, const std::string& v, std::size_t l) {
      r.simulation.blow_up_threshold = to_double(v, l);
    };
    s["decay_threshold"] = [](RunSpec& r, const std::string& v, std::size_t l) {
      r.simulation.decay_threshold = to_double(v, l);
    };
    s["boundary_mass_tolerance"] = [](RunSpec& r, const std::string& v, std::size_t l) {
      r.simulation.boundary_mass_tolerance = to_double(v, l);
    };
    s["initial"] = [](RunSpec& r, const std::string& v, std::size_t) { r.simulation.initial = v; };
    s["amplitude"] = [](RunSpec& r, const std::string& v, std::size_t l) {
      r.simulation.amplitude = to_double(v, l);
    };
    s["initial_radius"] = [](RunSpec& r, const std::string& v, std::size_t l) {
      r.simulation.initial_radius = to_double(v, l);
    };
    s["record_every"] = [](RunSpec& r, const std::string& v, std::size_t l) {
      r.simulation.record_every = to_int(v, l);
    };

    t["sweep"]["sigmas"] = [](RunSpec& r, const std::string& v, std::size_t l) {
      r.sweep.sigmas = to_list(v, l);
    };
    t["sweep"]["amplitudes"] = [](RunSpec& r, const std::string& v, std::size_t l) {
      r.sweep.amplitudes = to_list(v, l);
    };

    auto& pr = t["proof"];
    pr["radii"] = [](RunSpec& r, const std::string& v, std::size_t l) {
      r.proof.radii = to_list(v, l);
    };
    pr["claim_radii"] = [](RunSpec& r, const std::string& v, std::size_t l) {
      r.proof.claim_radii = to_list(v, l);
    };
    pr["s"] = [](RunSpec& r, const std::string& v, std::size_t l) { r.proof.s = to_double(v, l); };
    pr["resolution"] = [](RunSpec& r, const std::string& v, std::size_t l) {
      r.proof.resolution = to_int(v, l);
    };

    t["run"]["seed"] = [](RunSpec& r, const std::string& v, std::size_t l) {
      r.seed = to_u64(v, l);
    };
    return t;
  }();
  return table;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

void require_increasing(const std::vector<double>& v, const std::string& name) {
  for (std::size_t k = 0; k < v.size(); ++k) {
    require(v[k] > 0.0, name + " must be positive");
    require(k == 0 || v[k] > v[k - 1], name + " must be increasing");
  }
}

void validate_graph(const GraphSpec& g, bool is_factor) {
  if (g.kind == "lattice") {
    require(g.dimension >= 1, "graph.dimension must be at least 1");
    require(g.radius >= 1, "graph.radius must be at least 1");
  } else if (g.kind == "cyclic") {
    require(g.m >= 2, "graph.m must be at least 2");
    require(g.K >= 1, "graph.K must be at least 1");
  } else if (g.kind == "file") {
    require(!g.path.empty(), "graph.path is required for kind = file");
  } else if (g.kind == "product" && !is_factor) {
    require(g.factors.size() == 2, "product graphs need [graph.left] and [graph.right]");
    require(g.p >= 1.0 && g.p <= 2.0, "graph.p must lie in [1, 2]");
    require(g.measure_rule == "sum" || g.measure_rule == "max" || g.measure_rule == "product",
            "graph.measure_rule must be sum, max or product");
    require(g.measure_constant > 0.0, "graph.measure_constant must be positive");
    for (const auto& f : g.factors) validate_graph(f, true);
  } else {
    throw ConfigError("unknown graph kind '" + g.kind + "'");
  }
}

}  // namespace

void RunSpec::validate() const {
  validate_graph(graph, false);
  require(metric.kind == "default" || metric.kind == "natural" || metric.kind == "euclidean" ||
              metric.kind == "table",
          "unknown metric kind '" + metric.kind + "'");
  require(metric.kind != "table" || !metric.path.empty(), "metric.path is required for kind = table");
  require(sigma > 1.0, "sigma must exceed 1");

  require(potential.time == "constant" || potential.time == "power" ||
              potential.time == "exponential" || potential.time == "table",
          "unknown time profile '" + potential.time + "'");
  require(potential.time != "constant" || potential.time_param > 0.0,
          "potential.time_param must be positive for a constant profile");
  require(potential.space == "constant" || potential.space == "distance_power",
          "unknown space profile '" + potential.space + "'");
  require(potential.space != "constant" || potential.space_param > 0.0,
          "potential.space_param must be positive for a constant profile");

  const auto& h = hypothesis;
  require(h.alpha >= 0.0 && h.alpha <= 1.0, "alpha must lie in [0, 1]");
  require(h.R0 >= 1.0, "R0 must be at least 1");
  const double t1 = h.theta1.value_or(2.0 * (1.0 + h.alpha));
  const double t2 = h.theta2.value_or(2.0);
  require(t1 >= 2.0, "theta1 must be at least 2");
  require(t2 >= 1.0, "theta2 must be at least 1");
  require(t1 / t2 >= 1.0 + h.alpha - 1e-12,
          "theta1/theta2 must be at least 1+alpha (theta1 = " + num(t1) + ", theta2 = " +
              num(t2) + ", alpha = " + num(h.alpha) + ")");
  require_increasing(h.radii, "hypothesis.radii");

  const auto& s = simulation;
  require(!s.dt || *s.dt > 0.0, "dt must be positive");
  require(s.t_max > 0.0, "t_max must be positive");
  require(s.scheme == "explicit-euler" || s.scheme == "semi-implicit-linear",
          "unknown scheme '" + s.scheme + "'");
  require(s.blow_up_threshold > 0.0, "blow_up_threshold must be positive");
  require(s.decay_threshold >= 0.0, "decay_threshold must be nonnegative");
  require(s.boundary_mass_tolerance >= 0.0, "boundary_mass_tolerance must be nonnegative");
  require(s.initial == "box" || s.initial == "constant",
          "unknown initial data '" + s.initial + "'");
  require(s.amplitude >= 0.0, "amplitude must be nonnegative");
  require(s.initial_radius >= 0.0, "initial_radius must be nonnegative");
  require(s.record_every >= 1, "record_every must be at least 1");

  require(!sweep.sigmas.empty() && !sweep.amplitudes.empty(),
          "sweep needs at least one sigma and one amplitude");
  for (double v : sweep.sigmas) require(v > 1.0, "sigma must exceed 1");
  for (double v : sweep.amplitudes) require(v >= 0.0, "amplitudes must be nonnegative");

  require_increasing(proof.radii, "proof.radii");
  require_increasing(proof.claim_radii, "proof.claim_radii");
  require(proof.s > sigma / (sigma - 1.0), "s must exceed sigma/(sigma-1)");
  require(proof.resolution >= 4, "proof.resolution must be at least 4");
}

RunSpec parse_config(std::istream& in) {
  RunSpec spec;
  const auto& table = schema();
  const Section* section = nullptr;
  std::string section_name;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string text = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (text.empty()) continue;
    if (text.front() == '[') {
      if (text.back() != ']') throw ParseError("malformed section header", line);
      section_name = trim(text.substr(1, text.size() - 2));
      const auto it = table.find(section_name);
      if (it == table.end()) throw ParseError("unknown section [" + section_name + "]", line);
      section = &it->second;
      continue;
    }
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw ParseError("expected key = value", line);
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    if (!section) throw ParseError("key '" + key + "' outside any section", line);
    const auto it = section->find(key);
    if (it == section->end())
      throw ParseError("unknown key '" + key + "' in [" + section_name + "]", line);
    it->second(spec, value, line);
  }
  spec.validate();
  return spec;
}

RunSpec load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config '" + path + "'");
  return parse_config(in);
}

namespace {

void emit_graph(const GraphSpec& g, const std::string& name, std::ostream& out) {
  out << "[" << name << "]\n";
  out << "kind = " << g.kind << "\n";
  out << "dimension = " << g.dimension << "\n";
  out << "radius = " << g.radius << "\n";
  out << "m = " << g.m << "\n";
  out << "K = " << g.K << "\n";
  out << "path = " << g.path << "\n";
  out << "p = " << num(g.p) << "\n";
  out << "measure_rule = " << g.measure_rule << "\n";
  out << "measure_constant = " << num(g.measure_constant) << "\n\n";
}

}  // namespace

void emit_config(const RunSpec& spec, std::ostream& out) {
  emit_graph(spec.graph, "graph", out);
  if (spec.graph.factors.size() == 2) {
    emit_graph(spec.graph.factors[0], "graph.left", out);
    emit_graph(spec.graph.factors[1], "graph.right", out);
  }
  out << "[metric]\nkind = " << spec.metric.kind << "\npath = " << spec.metric.path << "\n\n";
  out << "[equation]\nsigma = " << num(spec.sigma) << "\n\n";

  const auto& p = spec.potential;
  out << "[potential]\ntime = " << p.time << "\ntime_param = " << num(p.time_param)
      << "\ntimes = " << list(p.times) << "\nvalues = " << list(p.values)
      << "\nspace = " << p.space << "\nspace_param = " << num(p.space_param) << "\n\n";

  const auto& h = spec.hypothesis;
  out << "[hypothesis]\nx0 = " << h.x0 << "\nalpha = " << num(h.alpha) << "\nR0 = " << num(h.R0)
      << "\n";
  if (h.theta1) out << "theta1 = " << num(*h.theta1) << "\n";
  if (h.theta2) out << "theta2 = " << num(*h.theta2) << "\n";
  out << "radii = " << list(h.radii) << "\n\n";

  const auto& s = spec.simulation;
  out << "[simulation]\ndt = " << (s.dt ? num(*s.dt) : "auto") << "\nt_max = " << num(s.t_max)
      << "\nscheme = " << s.scheme << "\nblow_up_threshold = " << num(s.blow_up_threshold)
      << "\ndecay_threshold = " << num(s.decay_threshold)
      << "\nboundary_mass_tolerance = " << num(s.boundary_mass_tolerance)
      << "\ninitial = " << s.initial << "\namplitude = " << num(s.amplitude)
      << "\ninitial_radius = " << num(s.initial_radius) << "\nrecord_every = " << s.record_every
      << "\n\n";

  out << "[sweep]\nsigmas = " << list(spec.sweep.sigmas)
      << "\namplitudes = " << list(spec.sweep.amplitudes) << "\n\n";
  out << "[proof]\nradii = " << list(spec.proof.radii)
      << "\nclaim_radii = " << list(spec.proof.claim_radii) << "\ns = " << num(spec.proof.s)
      << "\nresolution = " << spec.proof.resolution << "\n\n";
  out << "[run]\nseed = " << spec.seed << "\n";
}

std::string emit_config(const RunSpec& spec) {
  std::ostringstream os;
  emit_config(spec, os);
  return os.str();
}

namespace {

struct Built {
  GraphWithMetric gm;
  Index base = 0;
};

Built build_graph(const GraphSpec& g, const MetricSpec& m, std::uint64_t seed, bool top) {
  const std::string kind = top ? m.kind : "default";
  Built out;
  if (g.kind == "lattice") {
    LatticeGraph L = lattice({g.dimension, g.radius});
    out.gm.graph = L.graph;
    out.gm.metric = kind == "natural" ? L.natural : L.euclidean;
    out.base = L.origin;
  } else if (g.kind == "cyclic") {
    out.gm = cyclic_power(g.m, g.K);
  } else if (g.kind == "file") {
    out.gm.graph = from_edge_list(g.path);
    out.gm.metric = PseudoMetric::natural(out.gm.graph);
  } else if (g.kind == "product") {
    const Built left = build_graph(g.factors.at(0), m, seed, false);
    const Built right = build_graph(g.factors.at(1), m, seed, false);
    ProductSpec ps;
    ps.left = left.gm;
    ps.right = right.gm;
    ps.p = g.p;
    ps.rule = measure_rule_from_string(g.measure_rule);
    ps.measure_constant = g.measure_constant;
    out.gm = product(ps);
    out.base = left.base * right.gm.graph->size() + right.base;
    if (kind == "natural") out.gm.metric = PseudoMetric::natural(out.gm.graph);
  } else {
    throw ConfigError("unknown graph kind '" + g.kind + "'");
  }
  if (top && kind == "euclidean") {
    if (!out.gm.graph->has_coordinates())
      throw ConfigError("metric kind euclidean needs a lattice graph");
    out.gm.metric = PseudoMetric::euclidean(out.gm.graph);
  } else if (top && kind == "natural") {
    out.gm.metric = PseudoMetric::natural(out.gm.graph);
  } else if (top && kind == "table") {
    out.gm.metric = load_metric_table(m.path, *out.gm.graph, seed);
  }
  return out;
}

}  // namespace

Problem build_problem(const RunSpec& spec) {
  spec.validate();
  const Built b = build_graph(spec.graph, spec.metric, spec.seed, true);
  Problem p{b.gm.graph, b.gm.metric, b.base};
  if (!spec.hypothesis.x0.empty()) p.x0 = p.graph->index_of(spec.hypothesis.x0);
  return p;
}

Potential make_potential(const PotentialSpec& spec) {
  Potential v;
  if (spec.time == "constant")
    v.time = TimeProfile::constant(spec.time_param);
  else if (spec.time == "power")
    v.time = TimeProfile::power(spec.time_param);
  else if (spec.time == "exponential")
    v.time = TimeProfile::exponential(spec.time_param);
  else if (spec.time == "table")
    v.time = TimeProfile::table(spec.times, spec.values);
  else
    throw ConfigError("unknown time profile '" + spec.time + "'");
  if (spec.space == "constant")
    v.space = VertexProfile::constant(spec.space_param);
  else if (spec.space == "distance_power")
    v.space = VertexProfile::distance_power(spec.space_param);
  else
    throw ConfigError("unknown space profile '" + spec.space + "'");
  return v;
}

HypothesisQuery make_query(const RunSpec& spec, const Problem& problem) {
  HypothesisQuery q;
  q.graph = problem.graph;
  q.metric = problem.metric;
  q.x0 = problem.x0;
  q.alpha = spec.hypothesis.alpha;
  q.R0 = spec.hypothesis.R0;
  q.sigma = spec.sigma;
  q.potential = make_potential(spec.potential);
  q.use_default_thetas();
  if (spec.hypothesis.theta1) q.theta1 = *spec.hypothesis.theta1;
  if (spec.hypothesis.theta2) q.theta2 = *spec.hypothesis.theta2;
  q.radii = spec.hypothesis.radii;
  return q;
}

SimConfig make_sim_config(const RunSpec& spec, const Problem& problem) {
  const auto& s = spec.simulation;
  SimConfig c;
  c.sigma = spec.sigma;
  c.potential = BoundPotential::bind(make_potential(spec.potential), problem.metric, problem.x0);
  c.dt = s.dt;
  c.t_max = s.t_max;
  c.scheme = scheme_from_string(s.scheme);
  c.blow_up_threshold = s.blow_up_threshold;
  c.decay_threshold = s.decay_threshold;
  c.boundary_mass_tolerance = s.boundary_mass_tolerance;
  c.record_every = s.record_every;
  const Index n = problem.graph->size();
  if (s.initial == "constant") {
    c.initial = Field::Constant(n, s.amplitude);
  } else {
    const Field d = problem.metric.from(problem.x0);
    c.initial = (d.array() <= s.initial_radius).cast<double>().matrix() * s.amplitude;
  }
  return c;
}

TestFnParams make_testfn_params(const RunSpec& spec, const Problem& problem) {
  TestFnParams p;
  p.alpha = spec.hypothesis.alpha;
  p.theta1 = spec.hypothesis.theta1.value_or(2.0 * (1.0 + p.alpha));
  p.theta2 = spec.hypothesis.theta2.value_or(2.0);
  p.R = spec.proof.radii.empty() ? 8.0 : spec.proof.radii.front();
  p.s = spec.proof.s;
  p.x0 = problem.x0;
  return p;
}

}  // namespace fujita
