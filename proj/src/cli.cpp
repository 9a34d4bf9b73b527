#include "proxpoint/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "proxpoint/format.hpp"
#include "proxpoint/oracle.hpp"
#include "proxpoint/report.hpp"
#include "proxpoint/scenario.hpp"

namespace proxpoint::cli {

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotP:
    case ErrorCode::NonFunctional:
    case ErrorCode::ImageOutsideB0:
    case ErrorCode::CertificationFailed:
      return kExitHypothesis;
    case ErrorCode::Disagreement:
      return kExitDisagreement;
    default:
      return kExitValidation;
  }
}

namespace {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double lap_ms() {
    const auto now = std::chrono::steady_clock::now();
    const double ms = std::chrono::duration<double, std::milli>(now - start_).count();
    start_ = now;
    return ms;
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

ProximitySummary summarize(const ProximityStructure& ps, const PPropertyVerdict& verdict,
                           std::optional<IsometryReport> isometry) {
  return ProximitySummary{ps.tol,        ps.dist_ab,    ps.a.size(),
                          ps.b.size(),   ps.a0.size(),  ps.b0.size(),
                          ps.pairs.size(), verdict,     std::move(isometry)};
}

void fail_report(RunReport& report, ErrorCode code, const std::string& message) {
  report.error = std::make_pair(code, message);
  report.outcome = std::string(to_string(code));
  report.exit_code = exit_code_for(code);
}

void analyze(const Scenario& s, RunReport& report, Stopwatch& clock) {
  ProximityStructure ps = proximal_sets(s.a, s.b, s.config.tol);
  PPropertyVerdict verdict = check_p_property(ps);
  std::optional<IsometryReport> iso;
  std::optional<Error> failure;
  if (verdict.holds) {
    try {
      ProximityIsometry g = build_isometry(ps);
      iso = verify_isometry(g);
      report.warnings = g.warnings;
    } catch (const Error& e) {
      failure = e;
    }
  }
  report.proximity = summarize(ps, verdict, iso);
  report.timings_ms.emplace_back("analyze", clock.lap_ms());
  if (!verdict.holds) {
    fail_report(report, ErrorCode::NotP,
                "P-property fails with defect " + format_number(verdict.max_defect));
  } else if (failure) {
    fail_report(report, failure->code(), failure->message());
  }
}

void certify(const Scenario& s, RunReport& report, Stopwatch& clock) {
  ProximityStructure ps = proximal_sets(s.a, s.b, s.config.tol);
  report.proximity = summarize(ps, check_p_property(ps), std::nullopt);
  report.certification =
      certify_class(s.map, s.config.map_class, s.config.params, ps.a0, s.config.tol);
  report.timings_ms.emplace_back("certify", clock.lap_ms());
  if (!report.certification->holds) {
    report.outcome = std::string(to_string(ErrorCode::CertificationFailed));
    report.exit_code = kExitHypothesis;
  }
}

PreparedProblem prepare_for_report(const Scenario& s, RunReport& report, Stopwatch& clock) {
  PreparedProblem problem = prepare(s.a, s.b, s.map, s.config);
  report.proximity = summarize(problem.proximity, problem.verdict, verify_isometry(problem.isometry));
  report.certification = problem.certification;
  report.warnings = problem.warnings;
  report.timings_ms.emplace_back("prepare", clock.lap_ms());
  return problem;
}

void solve(const Scenario& s, const Options& options, RunReport& report, Stopwatch& clock) {
  PreparedProblem problem = prepare_for_report(s, report, clock);
  const PointId start = s.config.start.value_or(problem.proximity.a0[0]);
  BestProximityResult result = solve_from(problem, s.config, start);
  bool max_iters = !result.converged();
  if (options.trace_csv) {
    std::ofstream csv(*options.trace_csv, std::ios::binary);
    if (!csv) throw Error(ErrorCode::InvalidArgument, "cannot write trace CSV " + *options.trace_csv);
    csv << render_trace_csv(result);
  }
  report.solve = SolveSummary{std::string(to_string(s.config.map_class)), start, std::move(result)};
  if (options.starts > 1) {
    report.multistart = multi_start_solve(problem, s.config, options.starts);
    for (const auto& r : report.multistart->runs) max_iters = max_iters || !r.converged();
  }
  report.timings_ms.emplace_back("solve", clock.lap_ms());
  if (max_iters) {
    report.outcome = "MAX_ITERS";
    if (!options.allow_maxiters) report.exit_code = kExitNonConvergence;
  }
}

void verify(const Scenario& s, RunReport& report, Stopwatch& clock) {
  PreparedProblem problem = prepare_for_report(s, report, clock);
  const PointId start = s.config.start.value_or(problem.proximity.a0[0]);
  BestProximityResult result = solve_from(problem, s.config, start);
  report.timings_ms.emplace_back("solve", clock.lap_ms());

  const double tol = s.config.tol;
  OracleResult bpp = brute_force_bpp(s.map, tol);
  OracleResult fixed = brute_force_fixed_points(problem.reduced, tol);
  std::vector<PointId> bpps = bpp.best_proximity_points(tol);
  // Lifting a fixed point of g^-1 T to a best proximity point keeps the point.
  const bool equivalent = bpps == fixed.minimizers;
  AgreementReport agreement = cross_check(result, bpp, *s.space, tol);
  report.timings_ms.emplace_back("oracle", clock.lap_ms());

  report.solve = SolveSummary{std::string(to_string(s.config.map_class)), start, result};
  report.verify = VerifySummary{std::move(bpp), std::move(fixed), std::move(bpps), equivalent,
                                agreement};
  if (!equivalent || !agreement.agrees) {
    std::string what = "solver x* " + format_point(s.space.get(), agreement.solver_point) +
                       " (residual " + format_number(agreement.solver_residual) + ")";
    what += agreement.nearest_minimizer
                ? " vs oracle " + format_point(s.space.get(), *agreement.nearest_minimizer)
                : std::string(" vs oracle with no minimizer");
    what += " (residual " + format_number(agreement.oracle_residual) + ")";
    if (!equivalent) what += "; oracle best proximity set differs from the reduced fixed-point set";
    fail_report(report, ErrorCode::Disagreement, what);
  }
}

}  // namespace

int run_command(const Options& options, const std::string& scenario_text, std::ostream& out) {
  RunReport report;
  report.command = options.command;
  Stopwatch clock;
  try {
    ScenarioDocument doc = parse_document(scenario_text);
    if (options.tol) doc.tolerances.tol = *options.tol;
    report.scenario_name = doc.name;
    report.digest = scenario_digest(doc);
    Scenario s = instantiate(doc);
    report.space = s.space;
    report.timings_ms.emplace_back("load", clock.lap_ms());

    if (options.command == "analyze") {
      analyze(s, report, clock);
    } else if (options.command == "certify") {
      certify(s, report, clock);
    } else if (options.command == "solve") {
      solve(s, options, report, clock);
    } else if (options.command == "verify") {
      verify(s, report, clock);
    } else {
      throw Error(ErrorCode::InvalidArgument, "unknown command '" + options.command + "'");
    }
  } catch (const Error& e) {
    fail_report(report, e.code(), e.message());
  }
  out << render_report(report, !options.no_timings);
  return report.exit_code;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Best proximity points of non-self maps via fixed points of g^-1 T", "proxpoint"};
  app.require_subcommand(1);
  Options options;

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"analyze", "dist(A,B), proximal sets, P-property and the pairing g"},
      {"certify", "check the declared contraction class on A0"},
      {"solve", "run the fixed-point iteration of g^-1 T and lift the result"},
      {"verify", "compare a solve against exhaustive oracle scans"},
  };
  for (const auto& [name, description] : commands) {
    CLI::App* sub = app.add_subcommand(name, description);
    sub->add_option("scenario", options.scenario_path, "scenario file (JSON)")->required();
    sub->add_option("--trace-csv", options.trace_csv, "write the iteration trace as CSV");
    sub->add_option("--starts", options.starts, "number of strided start points")
        ->check(CLI::PositiveNumber);
    sub->add_option("--tol", options.tol, "override the scenario tolerance")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--no-timings", options.no_timings, "omit wall-clock timings");
    sub->add_flag("--allow-maxiters", options.allow_maxiters,
                  "exit 0 when the iteration budget runs out");
    sub->callback([&options, name = name] { options.command = name; });
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitValidation;
  }

  std::ifstream in(options.scenario_path, std::ios::binary);
  if (!in) {
    err << "error: cannot read scenario file " << options.scenario_path << '\n';
    return kExitValidation;
  }
  std::ostringstream text;
  text << in.rdbuf();
  return run_command(options, text.str(), out);
}

}  // namespace proxpoint::cli
