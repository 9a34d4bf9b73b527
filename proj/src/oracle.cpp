#include "proxpoint/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace proxpoint {

std::string_view to_string(ObjectiveKind kind) {
  switch (kind) {
    case ObjectiveKind::BppSingle: return "BPP_SINGLE";
    case ObjectiveKind::BppMulti: return "BPP_MULTI";
    case ObjectiveKind::FixedPoint: return "FIXED_POINT";
  }
  return "UNKNOWN";
}

std::vector<PointId> OracleResult::best_proximity_points(double tol) const {
  if (residual() <= tol) return minimizers;
  return {};
}

namespace {

double enumerate_dist(const IndexedSet& a, const IndexedSet& b) {
  double best = std::numeric_limits<double>::infinity();
  for (PointId x : a.members()) {
    for (PointId y : b.members()) best = std::min(best, a.space().distance(x, y));
  }
  return best;
}

// Minimizers within tol of the minimum, sorted, plus the runner-up value.
OracleResult collect_minimizers(ObjectiveKind kind, std::span<const PointId> domain,
                                const std::vector<double>& objective, double tol) {
  OracleResult r{kind, {}, *std::min_element(objective.begin(), objective.end()), 0.0,
                 std::nullopt};
  for (std::size_t i = 0; i < domain.size(); ++i) {
    if (objective[i] <= r.objective_value + tol) {
      r.minimizers.push_back(domain[i]);
    } else if (!r.second_best || objective[i] < *r.second_best) {
      r.second_best = objective[i];
    }
  }
  std::sort(r.minimizers.begin(), r.minimizers.end());
  return r;
}

}  // namespace

OracleResult brute_force_bpp(const SingleValuedMap& t, double tol) {
  const IndexedSet& a = t.domain();
  std::vector<double> objective;
  objective.reserve(a.size());
  for (PointId x : a.members()) objective.push_back(a.space().distance(x, t.evaluate(x).point));
  OracleResult r = collect_minimizers(ObjectiveKind::BppSingle, a.members(), objective, tol);
  r.dist_ab = enumerate_dist(a, t.codomain());
  return r;
}

OracleResult brute_force_bpp(const MultiValuedMap& t, double tol) {
  const IndexedSet& a = t.domain();
  std::vector<double> objective;
  objective.reserve(a.size());
  for (PointId x : a.members()) {
    double nearest = std::numeric_limits<double>::infinity();
    for (const MapImage& m : t.evaluate(x)) nearest = std::min(nearest, a.space().distance(x, m.point));
    objective.push_back(nearest);
  }
  OracleResult r = collect_minimizers(ObjectiveKind::BppMulti, a.members(), objective, tol);
  r.dist_ab = enumerate_dist(a, t.codomain());
  return r;
}

OracleResult brute_force_bpp(const NonSelfMap& t, double tol) {
  return std::visit([tol](const auto& m) { return brute_force_bpp(m, tol); }, t);
}

OracleResult brute_force_fixed_points(const SelfMap& f, double tol) {
  const IndexedSet& dom = f.domain();
  std::vector<double> objective;
  objective.reserve(dom.size());
  for (PointId x : dom.members()) {
    double nearest = std::numeric_limits<double>::infinity();
    for (PointId y : f.images(x)) nearest = std::min(nearest, dom.space().distance(x, y));
    objective.push_back(nearest);
  }
  OracleResult r{ObjectiveKind::FixedPoint, {},
                 *std::min_element(objective.begin(), objective.end()), 0.0, std::nullopt};
  for (std::size_t i = 0; i < dom.size(); ++i) {
    if (objective[i] <= tol) {
      r.minimizers.push_back(dom[i]);
    } else if (!r.second_best || objective[i] < *r.second_best) {
      r.second_best = objective[i];
    }
  }
  std::sort(r.minimizers.begin(), r.minimizers.end());
  return r;
}

AgreementReport cross_check(const BestProximityResult& solver, const OracleResult& oracle,
                            const MetricSpace& space, double tol) {
  AgreementReport report;
  report.solver_point = solver.x_star;
  report.solver_residual = solver.residual;
  report.oracle_residual = oracle.residual();
  report.distance_to_minimizer = std::numeric_limits<double>::infinity();
  for (PointId m : oracle.minimizers) {
    const double d = space.distance(solver.x_star, m);
    if (d < report.distance_to_minimizer) {
      report.distance_to_minimizer = d;
      report.nearest_minimizer = m;
    }
  }
  report.agrees = report.nearest_minimizer && report.distance_to_minimizer <= tol &&
                  std::abs(report.solver_residual - report.oracle_residual) <= 2.0 * tol;
  return report;
}

}  // namespace proxpoint
