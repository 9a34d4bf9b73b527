#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "proxpoint/error.hpp"
#include "proxpoint/maps.hpp"
#include "proxpoint/oracle.hpp"
#include "proxpoint/proximity.hpp"
#include "proxpoint/solvers.hpp"

namespace proxpoint {

struct ProximitySummary {
  double tol;
  double dist_ab;
  std::size_t a_size;
  std::size_t b_size;
  std::size_t a0_size;
  std::size_t b0_size;
  std::size_t pairs;
  PPropertyVerdict verdict;
  std::optional<IsometryReport> isometry;
};

struct SolveSummary {
  std::string map_class;
  PointId start;
  BestProximityResult result;
};

struct VerifySummary {
  OracleResult bpp;
  OracleResult fixed_points;
  std::vector<PointId> oracle_best_proximity_points;
  bool equivalent;
  AgreementReport agreement;
};

/// Everything one CLI invocation prints. Sections are optional; render_report
/// prints the ones that are present in a fixed order.
struct RunReport {
  std::string command;
  std::string scenario_name;
  std::string digest;
  std::shared_ptr<const MetricSpace> space;

  std::optional<ProximitySummary> proximity;
  std::optional<CertificationReport> certification;
  std::optional<SolveSummary> solve;
  std::optional<MultiStartOutcome> multistart;
  std::optional<VerifySummary> verify;
  std::vector<std::string> warnings;
  std::optional<std::pair<ErrorCode, std::string>> error;
  std::vector<std::pair<std::string, double>> timings_ms;

  std::string outcome = "ok";
  int exit_code = 0;
};

/// "[x, y]" for Euclidean points, "#i" for finite-space points.
std::string format_point(const MetricSpace* space, PointId p);

/// Deterministic text rendering; numbers use 12 significant digits.
std::string render_report(const RunReport& report, bool with_timings);

/// "iter,step,residual,snap" header plus one row per iteration.
std::string render_trace_csv(const BestProximityResult& result);

}  // namespace proxpoint
