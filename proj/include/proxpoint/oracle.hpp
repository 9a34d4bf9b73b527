#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "proxpoint/maps.hpp"
#include "proxpoint/metric.hpp"
#include "proxpoint/solvers.hpp"

namespace proxpoint {

// Exhaustive scans used as ground truth. Nothing here goes through the
// proximity structure, the isometry or the iterative solvers.

enum class ObjectiveKind { BppSingle, BppMulti, FixedPoint };

std::string_view to_string(ObjectiveKind kind);

struct OracleResult {
  ObjectiveKind kind;
  /// Sorted point ids. For the BPP scans: every x whose objective is within
  /// tol of the minimum. For the fixed-point scan: every x with objective
  /// <= tol (possibly none).
  std::vector<PointId> minimizers;
  double objective_value;  // global minimum of the objective
  double dist_ab = 0.0;    // enumerated dist(A,B); 0 for fixed-point scans
  std::optional<double> second_best;  // smallest objective outside the minimizers

  /// objective_value - dist_ab.
  double residual() const { return objective_value - dist_ab; }
  /// The minimizers when they attain dist(A,B) within tol, else nothing.
  std::vector<PointId> best_proximity_points(double tol) const;
};

/// Scans d(x, Tx) over the whole domain of T.
OracleResult brute_force_bpp(const SingleValuedMap& t, double tol);
/// Scans D(x, Tx) over the whole domain of T.
OracleResult brute_force_bpp(const MultiValuedMap& t, double tol);
OracleResult brute_force_bpp(const NonSelfMap& t, double tol);

/// Scans d(x, Fx) (D(x, Fx) when multivalued) over F's domain.
OracleResult brute_force_fixed_points(const SelfMap& f, double tol);

struct AgreementReport {
  bool agrees = false;
  PointId solver_point = 0;
  std::optional<PointId> nearest_minimizer;
  double distance_to_minimizer = 0.0;
  double solver_residual = 0.0;
  double oracle_residual = 0.0;
};

/// Agreement means x* lies within tol of some oracle minimizer and the
/// residuals agree within 2 tol.
AgreementReport cross_check(const BestProximityResult& solver, const OracleResult& oracle,
                            const MetricSpace& space, double tol);

}  // namespace proxpoint
