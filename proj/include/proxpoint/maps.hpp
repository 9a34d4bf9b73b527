#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "proxpoint/metric.hpp"

namespace proxpoint {

/// y = M x + c on R^n.
struct AffineForm {
  std::vector<std::vector<double>> matrix;
  std::vector<double> offset;

  /// Throws DimensionMismatch unless matrix is n x n and offset has n entries.
  void validate(std::size_t dimension) const;
  std::vector<double> apply(std::span<const double> x) const;

  bool operator==(const AffineForm&) const = default;
};

/// Image of one point. snap is the distance from the exact affine image to
/// the codomain member it was snapped to (0 for table maps).
struct MapImage {
  PointId point;
  double snap = 0.0;
};

/// A non-self map T: A -> B.
///
/// Images are computed once at construction, so every failure to land in B
/// surfaces there (Resolution). Affine maps need a Euclidean backend.
class SingleValuedMap {
 public:
  /// images[i] is the point id of T(domain[i]); it must belong to codomain.
  static SingleValuedMap table(IndexedSet domain, IndexedSet codomain, std::vector<PointId> images);
  /// Exact images farther than tol_snap from every codomain member are rejected.
  static SingleValuedMap affine(IndexedSet domain, IndexedSet codomain, AffineForm form,
                                double tol_snap);

  const IndexedSet& domain() const { return domain_; }
  const IndexedSet& codomain() const { return codomain_; }
  bool is_affine() const { return affine_.has_value(); }

  /// Throws OutOfRange when x is not in the domain.
  MapImage evaluate(PointId x) const;

  /// d(Tx, Ty) for the map as declared: exact affine images for affine maps,
  /// stored codomain members for tables. Certification measures with this.
  double image_distance(PointId x, PointId y) const;

 private:
  SingleValuedMap(IndexedSet domain, IndexedSet codomain);
  std::size_t position(PointId x) const;

  IndexedSet domain_;
  IndexedSet codomain_;
  std::vector<MapImage> images_;
  std::optional<AffineForm> affine_;
  std::vector<std::vector<double>> exact_;
};

/// A multivalued non-self map T: A -> 2^B with finite image sets.
class MultiValuedMap {
 public:
  static MultiValuedMap table(IndexedSet domain, IndexedSet codomain,
                              std::vector<std::vector<PointId>> images);
  /// T x = { branch_k(x) }, each branch snapped to the codomain.
  static MultiValuedMap affine_branches(IndexedSet domain, IndexedSet codomain,
                                        std::vector<AffineForm> branches, double tol_snap);

  const IndexedSet& domain() const { return domain_; }
  const IndexedSet& codomain() const { return codomain_; }
  bool is_affine() const { return !branches_.empty(); }

  /// Image members in codomain order, duplicates removed.
  const std::vector<MapImage>& evaluate(PointId x) const;
  std::vector<PointId> image_ids(PointId x) const;

  /// H(Tx, Ty) for the map as declared (exact branch images when affine).
  double image_hausdorff(PointId x, PointId y) const;

 private:
  MultiValuedMap(IndexedSet domain, IndexedSet codomain);
  std::size_t position(PointId x) const;

  IndexedSet domain_;
  IndexedSet codomain_;
  std::vector<std::vector<MapImage>> images_;
  std::vector<AffineForm> branches_;
  std::vector<std::vector<std::vector<double>>> exact_;
};

/// Hausdorff distance between two finite index sets of sizes nx and ny under
/// dist(i, j).
template <typename Dist>
double hausdorff_by(std::size_t nx, std::size_t ny, Dist&& dist) {
  double directed_xy = 0.0;
  std::vector<double> nearest_to_y(ny, std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < nx; ++i) {
    double nearest = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < ny; ++j) {
      const double d = dist(i, j);
      nearest = std::min(nearest, d);
      nearest_to_y[j] = std::min(nearest_to_y[j], d);
    }
    directed_xy = std::max(directed_xy, nearest);
  }
  double directed_yx = 0.0;
  for (double d : nearest_to_y) directed_yx = std::max(directed_yx, d);
  return std::max(directed_xy, directed_yx);
}

/// H(X, Y) = max(max_x D(x,Y), max_y D(y,X)). Throws InvalidArgument on an
/// empty set.
double hausdorff(const MetricSpace& space, std::span<const PointId> xs,
                 std::span<const PointId> ys);

/// The comparison function phi of a weakly contractive map.
class ComparisonFunction {
 public:
  enum class Kind { Linear, Rational };

  /// phi(t) = c t, c in (0, 1).
  static ComparisonFunction linear(double c);
  /// phi(t) = t^2 / (1 + t).
  static ComparisonFunction rational();

  double operator()(double t) const;
  Kind kind() const { return kind_; }
  double parameter() const { return c_; }
  std::string describe() const;

 private:
  ComparisonFunction(Kind kind, double c) : kind_(kind), c_(c) {}
  Kind kind_;
  double c_;
};

/// Samples phi on [0, t_max] with t_max = 1000 max(diameter, 1): phi(0) = 0,
/// positive and nondecreasing on the samples, phi(t_max) > diameter.
/// Returns an empty string on success, a description of the failure otherwise.
std::string check_comparison_function(const ComparisonFunction& phi, double diameter,
                                      std::size_t samples = 257);

/// delta(eps) of a Meir-Keeler map.
class MeirKeelerModulus {
 public:
  enum class Kind { Linear, Constant };

  /// delta(eps) = factor * eps. A k-contraction satisfies the implication
  /// with factor (1 - k) / k.
  static MeirKeelerModulus linear(double factor);
  static MeirKeelerModulus constant(double delta);

  double operator()(double eps) const;
  Kind kind() const { return kind_; }
  double parameter() const { return value_; }
  std::string describe() const;

 private:
  MeirKeelerModulus(Kind kind, double value) : kind_(kind), value_(value) {}
  Kind kind_;
  double value_;
};

struct CertificationWitness {
  PointId x;
  PointId y;
  double lhs;  // measured side
  double rhs;  // allowed bound
  std::optional<double> eps;
};

struct CertificationReport {
  std::string class_name;
  bool holds = true;
  std::optional<CertificationWitness> witness;  // worst pair scanned
  std::string sample;
  std::size_t checks = 0;
  double max_excess = 0.0;  // max of lhs - rhs over the scan (<= 0 when slack everywhere)
};

/// d(Tx,Ty) <= d(x,y) - phi(d(x,y)) + tol on all pairs of domain.
/// Throws InvalidArgument when domain is not inside T's domain or phi fails
/// check_comparison_function on the domain's diameter.
CertificationReport certify_weakly_contractive(const SingleValuedMap& t,
                                               const ComparisonFunction& phi,
                                               const IndexedSet& domain, double tol);

/// d(Tx,Ty) <= d(x,y) + tol on all pairs of domain.
CertificationReport certify_nonexpansive(const SingleValuedMap& t, const IndexedSet& domain,
                                         double tol);

/// For every eps in eps_grid and every pair with d(x,y) < eps + delta(eps):
/// d(Tx,Ty) <= eps + tol. Throws InvalidArgument on an empty or nonpositive
/// grid, or a nonpositive delta sample.
CertificationReport certify_meir_keeler(const SingleValuedMap& t, const MeirKeelerModulus& delta,
                                        const IndexedSet& domain,
                                        std::span<const double> eps_grid, double tol);

/// 32 log-spaced values over [min positive pairwise distance / 2, 2 diameter].
std::vector<double> default_eps_grid(const IndexedSet& domain);

/// H(Tx,Ty) <= alpha d(x,y) + tol on all pairs. alpha must lie in (0, 1).
CertificationReport certify_multivalued_contraction(const MultiValuedMap& t, double alpha,
                                                    const IndexedSet& domain, double tol);

}  // namespace proxpoint
