#include "fujita/report.hpp"

#include "fujita/error.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>

namespace fujita {

namespace {

using Json = nlohmann::ordered_json;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ofstream open(const std::filesystem::path& dir, const std::string& name) {
  std::filesystem::create_directories(dir);
  std::ofstream out(dir / name, std::ios::binary);
  if (!out) throw Error("cannot write '" + (dir / name).string() + "'");
  return out;
}

void write_json(const std::filesystem::path& dir, const std::string& name, const Json& j) {
  auto out = open(dir, name);
  out << j.dump(2) << '\n';
}

Json rows_json(const ConditionReport& c) {
  Json rows = Json::array();
  for (const auto& r : c.rows)
    rows.push_back({{"R", r.R}, {"quantity", r.quantity}, {"bound", r.bound}, {"margin", r.margin}});
  return rows;
}

Json trend_json(const TrendVerdict& t) {
  return {{"verdict", to_string(t.verdict)}, {"ratio", t.ratio}, {"slope", t.slope}};
}

}  // namespace

void write_graph_report(const std::filesystem::path& dir, const Problem& problem) {
  const Graph& g = *problem.graph;
  {
    auto out = open(dir, "graph.edges");
    write_edge_list(g, out);
  }
  const JumpSize j = jump_size(g, problem.metric);
  Json s;
  s["vertices"] = g.size();
  s["edges"] = g.edge_count();
  s["finite"] = g.is_finite();
  s["boundary_vertices"] = g.boundary_vertices().size();
  s["metric"] = to_string(problem.metric.kind());
  s["x0"] = g.name(problem.x0);
  s["jump_size"] = j.value;
  s["jump_window_restricted"] = j.window_restricted;
  s["volume"] = g.measure().sum();
  write_json(dir, "graph_summary.json", s);
}

void write_hypothesis_report(const std::filesystem::path& dir, const HypothesisReport& report,
                             const HypothesisQuery& query) {
  {
    auto out = open(dir, "hypothesis.csv");
    out << "R,quantity,bound,margin\n";
    const ConditionReport& rows = report.spacetime;
    for (const auto& r : rows.rows)
      out << num(r.R) << ',' << num(r.quantity) << ',' << num(r.bound) << ',' << num(r.margin)
          << '\n';
  }
  Json s;
  s["x0"] = query.graph->name(query.x0);
  s["alpha"] = query.alpha;
  s["R0"] = query.R0;
  s["sigma"] = query.sigma;
  s["theta1"] = query.theta1;
  s["theta2"] = query.theta2;
  s["edge_mass_C"] = report.edge_mass_C;
  s["jump"] = report.jump.value;
  s["jump_window_restricted"] = report.jump.window_restricted;
  s["lap_dist_C"] = report.lap_dist_C;
  s["rem25_C"] = report.rem25_C;
  if (report.volume)
    s["volume_exponent"] = {{"delta", report.volume->delta}, {"residual", report.volume->residual}};
  else
    s["volume_exponent"] = nullptr;
  s["condition"] = {{"kind", query.graph->is_finite() ? "finite-graph" : "spacetime"},
                    {"rows", rows_json(report.spacetime)},
                    {"trend", trend_json(report.spacetime.trend)}};
  const CorollaryReport& c = report.corollary;
  s["corollary"] = {{"criterion", to_string(c.criterion)}, {"delta1", c.delta1},
                    {"delta2", c.delta2},                  {"lhs", c.lhs},
                    {"rhs", c.rhs},                        {"verdict", to_string(c.verdict)}};
  s["verdict"] = to_string(report.verdict);
  s["fired"] = report.fired;
  write_json(dir, "hypothesis_summary.json", s);
}

void write_proof_report(const std::filesystem::path& dir, const ProofLadder& ladder,
                        const std::vector<ClaimRow>& claims) {
  {
    auto out = open(dir, "proof_bounds.csv");
    out << "R,Cmax_laplacian,Cmax_time,violations\n";
    for (const auto& r : ladder.rows)
      out << num(r.R) << ',' << num(r.laplacian.Cmax) << ',' << num(r.time.Cmax) << ','
          << r.laplacian.violations + r.time.violations << '\n';
  }
  Json rows = Json::array();
  for (const auto& r : ladder.rows)
    rows.push_back({{"R", r.R},
                    {"Cmax_laplacian", r.laplacian.Cmax},
                    {"laplacian_violations", r.laplacian.violations},
                    {"Cmax_time", r.time.Cmax},
                    {"time_violations", r.time.violations}});
  Json claim = Json::array();
  for (const auto& c : claims) claim.push_back({{"R", c.R}, {"violations", c.violations}});
  Json s;
  s["rows"] = rows;
  s["laplacian_trend"] = trend_json(ladder.laplacian_trend);
  s["time_trend"] = trend_json(ladder.time_trend);
  s["claim"] = claim;
  write_json(dir, "proof_summary.json", s);
}

void write_simulation_report(const std::filesystem::path& dir, const BlowUpReport& report) {
  {
    auto out = open(dir, "trajectory.csv");
    out << "t,sup_u,mass,boundary_max\n";
    for (const auto& h : report.history)
      out << num(h.t) << ',' << num(h.sup) << ',' << num(h.mass) << ',' << num(h.boundary_max)
          << '\n';
  }
  Json s;
  s["outcome"] = to_string(report.outcome);
  s["blow_up_time"] = report.blow_up_time ? Json(*report.blow_up_time) : Json(nullptr);
  s["confirm_time"] = report.confirm_time ? Json(*report.confirm_time) : Json(nullptr);
  s["dt_used"] = report.dt_used;
  s["dt_halvings"] = report.dt_halvings;
  s["boundary_contamination"] = report.boundary_contamination;
  s["contaminated"] = report.contaminated;
  s["reason"] = report.reason;
  write_json(dir, "simulation_summary.json", s);
}

void write_sweep_report(const std::filesystem::path& dir, const SweepResult& result) {
  {
    auto out = open(dir, "sweep.csv");
    out << "sigma,amplitude,outcome,blow_up_time\n";
    for (const auto& r : result.rows)
      out << num(r.sigma) << ',' << num(r.amplitude) << ',' << to_string(r.outcome) << ','
          << (r.blow_up_time ? num(*r.blow_up_time) : "") << '\n';
  }
  Json s;
  s["runs"] = result.rows.size();
  s["survival_sigma"] = result.survival_sigma ? Json(*result.survival_sigma) : Json(nullptr);
  write_json(dir, "sweep_summary.json", s);
}

}  // namespace fujita
