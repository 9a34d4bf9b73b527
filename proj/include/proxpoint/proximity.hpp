#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "proxpoint/metric.hpp"

namespace proxpoint {

/// A pair (x, y) in A x B at distance dist(A,B) up to tolerance.
struct ProximalPair {
  PointId x;
  PointId y;
  double distance;
};

/// dist(A,B) together with the proximal subsets A0, B0.
///
/// Invariants (established by proximal_sets):
///  - dist_ab is the minimum of d(x,y) over A x B;
///  - every member of a0 and of b0 occurs in at least one pair;
///  - every pair satisfies |d(x,y) - dist_ab| <= tol.
/// a0 and b0 keep the member order of a and b; pairs are listed A-major.
struct ProximityStructure {
  IndexedSet a;
  IndexedSet b;
  double dist_ab;
  IndexedSet a0;
  IndexedSet b0;
  std::vector<ProximalPair> pairs;
  double tol;
};

/// D(x,S): distance from x to the nearest member of S.
double point_set_distance(PointId x, const IndexedSet& s);

/// dist(A,B). Throws InvalidArgument when the sets live in different spaces.
double set_distance(const IndexedSet& a, const IndexedSet& b);

/// Enumerates every pair with d(x,y) <= dist(A,B) + tol.
ProximityStructure proximal_sets(const IndexedSet& a, const IndexedSet& b, double tol);

struct PPropertyWitness {
  ProximalPair first;
  ProximalPair second;
  double defect;  // |d(x1,x2) - d(y1,y2)|
};

struct PPropertyVerdict {
  bool holds;
  double max_defect;
  std::optional<PPropertyWitness> witness;  // set when holds is false
};

/// Quadratic scan over all pairs of proximal pairs. The witness is the
/// first maximal-defect quadruple in lexicographic pair order.
PPropertyVerdict check_p_property(const ProximityStructure& ps);
PPropertyVerdict check_p_property(const ProximityStructure& ps, double tol);

/// The pairing g: A0 -> B0 with d(x, g x) = dist(A,B).
///
/// forward is indexed by position in a0 and holds point ids of b0; inverse is
/// indexed by position in b0 and holds point ids of a0.
struct ProximityIsometry {
  IndexedSet a0;
  IndexedSet b0;
  std::vector<PointId> forward;
  std::vector<PointId> inverse;
  double dist_ab;
  double tol;
  std::vector<std::string> warnings;

  /// g(x). Throws OutOfRange when x is not in a0.
  PointId apply(PointId x) const;
  /// g^{-1}(y), or nullopt when y is not in b0.
  std::optional<PointId> invert(PointId y) const;
};

/// Builds g from a structure whose P-property holds.
///
/// Errors: NotP when the P-property fails at ps.tol; NonFunctional when the
/// selected partners do not form a bijection a0 -> b0 (points of A or B
/// closer than tol to each other). A point with several partners within tol
/// keeps the nearest one (lowest B position on ties) and a warning is
/// recorded.
ProximityIsometry build_isometry(const ProximityStructure& ps);

struct IsometryReport {
  double max_isometry_defect = 0.0;  // max |d(x1,x2) - d(gx1,gx2)|
  double max_proximal_defect = 0.0;  // max |d(x,gx) - dist_ab|
  bool bijective = false;
  std::optional<std::pair<PointId, PointId>> isometry_witness;

  bool passes(double tol) const {
    return bijective && max_isometry_defect <= tol && max_proximal_defect <= tol;
  }
};

IsometryReport verify_isometry(const ProximityIsometry& g);

}  // namespace proxpoint
