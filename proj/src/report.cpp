#include "proxpoint/report.hpp"

#include <sstream>

#include "proxpoint/format.hpp"

namespace proxpoint {

namespace {

constexpr std::size_t kMaxListed = 10;

const char* yes_no(bool b) { return b ? "yes" : "no"; }

class Writer {
 public:
  explicit Writer(const MetricSpace* space) : space_(space) {}

  void line(const std::string& key, const std::string& value) { out_ << key << ": " << value << '\n'; }
  void num(const std::string& key, double value) { line(key, format_number(value)); }
  void count(const std::string& key, std::size_t value) { line(key, std::to_string(value)); }
  void point(const std::string& key, PointId p) { line(key, format_point(space_, p)); }
  void section(const std::string& name) { out_ << '\n' << '[' << name << "]\n"; }
  void raw(const std::string& text) { out_ << text << '\n'; }

  void points(const std::string& key, const std::vector<PointId>& ids) {
    std::string value = std::to_string(ids.size());
    for (std::size_t i = 0; i < ids.size() && i < kMaxListed; ++i) {
      value += (i == 0 ? " : " : ", ") + format_point(space_, ids[i]);
    }
    if (ids.size() > kMaxListed) value += ", ... (" + std::to_string(ids.size() - kMaxListed) + " more)";
    line(key, value);
  }

  std::string pair(const ProximalPair& p) const {
    return "(" + format_point(space_, p.x) + ", " + format_point(space_, p.y) + ")";
  }

  std::string str() const { return out_.str(); }

 private:
  const MetricSpace* space_;
  std::ostringstream out_;
};

void write_proximity(Writer& w, const ProximitySummary& p) {
  w.section("proximity");
  w.num("tol", p.tol);
  w.num("dist_ab", p.dist_ab);
  w.count("size_A", p.a_size);
  w.count("size_B", p.b_size);
  w.count("size_A0", p.a0_size);
  w.count("size_B0", p.b0_size);
  w.count("proximal_pairs", p.pairs);
  w.line("p_property", p.verdict.holds ? "holds" : "fails");
  w.num("p_property_max_defect", p.verdict.max_defect);
  if (p.verdict.witness) {
    const auto& wit = *p.verdict.witness;
    w.line("p_property_witness", w.pair(wit.first) + " " + w.pair(wit.second));
    w.num("p_property_witness_defect", wit.defect);
  }
  if (p.isometry) {
    w.num("isometry_max_defect", p.isometry->max_isometry_defect);
    w.num("isometry_max_proximal_defect", p.isometry->max_proximal_defect);
    w.line("isometry_bijective", yes_no(p.isometry->bijective));
  }
}

void write_certification(Writer& w, const CertificationReport& c) {
  w.section("certification");
  w.line("class", c.class_name);
  w.line("holds", yes_no(c.holds));
  w.line("sample", c.sample);
  w.count("checks", c.checks);
  w.num("max_excess", c.max_excess);
  if (c.witness) {
    w.point("witness_x", c.witness->x);
    w.point("witness_y", c.witness->y);
    w.num("witness_lhs", c.witness->lhs);
    w.num("witness_rhs", c.witness->rhs);
    if (c.witness->eps) w.num("witness_eps", *c.witness->eps);
  }
}

void write_result(Writer& w, const BestProximityResult& r) {
  w.line("termination", std::string(to_string(r.termination)));
  w.count("iterations", r.iterations);
  w.point("x_star", r.x_star);
  w.num("residual", r.residual);
  if (!r.trace.empty()) {
    w.num("final_step", r.trace.back().step);
    double max_snap = 0.0;
    for (const auto& t : r.trace) max_snap = std::max(max_snap, t.snap);
    w.num("max_snap", max_snap);
  }
}

void write_solve(Writer& w, const SolveSummary& s) {
  w.section("solve");
  w.line("class", s.map_class);
  w.point("start", s.start);
  write_result(w, s.result);
}

void write_multistart(Writer& w, const MultiStartOutcome& m, const MetricSpace* space) {
  w.section("multistart");
  w.count("starts", m.starts.size());
  w.num("max_disagreement", m.max_disagreement);
  for (std::size_t i = 0; i < m.runs.size(); ++i) {
    const auto& r = m.runs[i];
    w.line("run_" + std::to_string(i),
           format_point(space, m.starts[i]) + " -> " + format_point(space, r.x_star) + " " +
               std::string(to_string(r.termination)) + " iterations " +
               std::to_string(r.iterations) + " residual " + format_number(r.residual));
  }
}

void write_verify(Writer& w, const VerifySummary& v) {
  w.section("verify");
  w.line("oracle_objective", std::string(to_string(v.bpp.kind)));
  w.num("oracle_dist_ab", v.bpp.dist_ab);
  w.num("oracle_objective_value", v.bpp.objective_value);
  w.num("oracle_residual", v.bpp.residual());
  w.points("oracle_minimizers", v.bpp.minimizers);
  w.points("oracle_best_proximity_points", v.oracle_best_proximity_points);
  w.num("reduced_map_min_objective", v.fixed_points.objective_value);
  w.points("reduced_map_fixed_points", v.fixed_points.minimizers);
  w.line("equivalence", yes_no(v.equivalent));
  w.line("cross_check", v.agreement.agrees ? "agrees" : "DISAGREEMENT");
  w.point("solver_x_star", v.agreement.solver_point);
  if (v.agreement.nearest_minimizer) {
    w.point("nearest_oracle_minimizer", *v.agreement.nearest_minimizer);
    w.num("distance_to_minimizer", v.agreement.distance_to_minimizer);
  }
  w.num("solver_residual", v.agreement.solver_residual);
  w.num("oracle_residual_at_minimizer", v.agreement.oracle_residual);
}

}  // namespace

std::string format_point(const MetricSpace* space, PointId p) {
  if (space == nullptr || !space->is_euclidean()) return "#" + std::to_string(p);
  std::string out = "[";
  const auto coords = space->point(p).coords();
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (i > 0) out += ", ";
    out += format_number(coords[i]);
  }
  return out + "]";
}

std::string render_report(const RunReport& report, bool with_timings) {
  const MetricSpace* space = report.space.get();
  Writer w(space);
  w.raw("proxpoint report");
  w.line("command", report.command);
  if (!report.scenario_name.empty()) w.line("scenario", report.scenario_name);
  if (!report.digest.empty()) w.line("digest", report.digest);
  if (space != nullptr) {
    w.line("backend", space->is_euclidean()
                          ? "euclidean (dimension " + std::to_string(space->dimension()) + ")"
                          : "finite (" + std::to_string(space->size()) + " points)");
  }
  if (report.proximity) write_proximity(w, *report.proximity);
  if (report.certification) write_certification(w, *report.certification);
  if (report.solve) write_solve(w, *report.solve);
  if (report.multistart) write_multistart(w, *report.multistart, space);
  if (report.verify) write_verify(w, *report.verify);
  if (!report.warnings.empty()) {
    w.section("warnings");
    w.count("count", report.warnings.size());
    for (std::size_t i = 0; i < report.warnings.size() && i < kMaxListed; ++i) {
      w.raw("- " + report.warnings[i]);
    }
  }
  if (report.error) {
    w.section("error");
    w.line("code", std::string(to_string(report.error->first)));
    w.line("message", report.error->second);
  }
  if (with_timings && !report.timings_ms.empty()) {
    w.section("timings");
    for (const auto& [phase, ms] : report.timings_ms) w.num(phase + "_ms", ms);
  }
  w.section("outcome");
  w.line("status", report.outcome);
  w.count("exit_code", static_cast<std::size_t>(report.exit_code));
  return w.str();
}

std::string render_trace_csv(const BestProximityResult& result) {
  std::string out = "iter,step,residual,snap\n";
  for (std::size_t i = 0; i < result.trace.size(); ++i) {
    const TraceEntry& t = result.trace[i];
    out += std::to_string(i + 1) + "," + format_number(t.step) + "," + format_number(t.residual) +
           "," + format_number(t.snap) + "\n";
  }
  return out;
}

}  // namespace proxpoint
