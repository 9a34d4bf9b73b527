#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

namespace proxpoint {

/// Index of a point inside a MetricSpace.
using PointId = std::size_t;

/// A point of R^n with finite coordinates.
class EuclideanPoint {
 public:
  explicit EuclideanPoint(std::vector<double> coords);

  std::size_t dimension() const { return coords_.size(); }
  std::span<const double> coords() const { return coords_; }
  double operator[](std::size_t i) const { return coords_[i]; }

  bool operator==(const EuclideanPoint&) const = default;

 private:
  std::vector<double> coords_;
};

/// Throws DimensionMismatch when the spans differ in length.
double euclidean_distance(std::span<const double> p, std::span<const double> q);
double euclidean_distance(const EuclideanPoint& p, const EuclideanPoint& q);

/// A finite metric space given by its distance table.
///
/// The constructor enforces shape (square, nonempty) and that every entry is
/// finite and nonnegative. The metric axioms proper are not enforced here;
/// call verify_metric_axioms() to get a report.
class FiniteSpace {
 public:
  explicit FiniteSpace(std::vector<std::vector<double>> dmat);

  std::size_t size() const { return size_; }
  double operator()(PointId i, PointId j) const { return dmat_[i * size_ + j]; }
  std::vector<std::vector<double>> rows() const;

 private:
  std::size_t size_;
  std::vector<double> dmat_;
};

enum class AxiomKind { Diagonal, Separation, Symmetry, Triangle };

const char* to_string(AxiomKind kind);

/// One failed axiom instance. Symmetry and separation use (i, j); the
/// triangle witness is d(i,k) > d(i,j) + d(j,k).
struct AxiomViolation {
  AxiomKind kind;
  std::size_t i;
  std::size_t j;
  std::size_t k;
  double excess;
};

struct AxiomReport {
  std::vector<AxiomViolation> violations;
  std::size_t total = 0;  // may exceed violations.size() when truncated

  bool ok() const { return total == 0; }
};

/// Checks every axiom instance. With tolerance 0 the checks are exact.
/// Violations are listed in lexicographic (i, j, k) order per kind, capped at
/// max_witnesses entries.
AxiomReport verify_metric_axioms(const FiniteSpace& space, double tolerance = 0.0,
                                 std::size_t max_witnesses = 1000);

/// Point store for R^n. Adding a point with coordinates identical to an
/// existing one returns the existing id.
class EuclideanSpace {
 public:
  explicit EuclideanSpace(std::size_t dimension);

  PointId add(EuclideanPoint p);
  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return points_.size(); }
  const EuclideanPoint& point(PointId id) const { return points_[id]; }

 private:
  std::size_t dimension_;
  std::vector<EuclideanPoint> points_;
  std::map<std::vector<double>, PointId> index_;
};

/// The backend every other module measures with.
class MetricSpace {
 public:
  explicit MetricSpace(FiniteSpace space);
  explicit MetricSpace(EuclideanSpace space);

  std::size_t size() const;
  bool is_euclidean() const { return std::holds_alternative<EuclideanSpace>(backend_); }

  /// Throws OutOfRange for identifiers outside the space.
  double distance(PointId p, PointId q) const;

  /// Euclidean backend only; BackendUnsupported otherwise.
  const EuclideanPoint& point(PointId p) const;
  std::size_t dimension() const;

  /// Nearest candidate to a free coordinate vector, lowest position on ties.
  /// Returns the candidate and its distance. Euclidean backend only.
  std::pair<PointId, double> nearest(std::span<const double> coords,
                                     std::span<const PointId> candidates) const;

  const FiniteSpace* finite() const { return std::get_if<FiniteSpace>(&backend_); }

 private:
  void check(PointId p) const;

  std::variant<FiniteSpace, EuclideanSpace> backend_;
};

/// A nonempty, duplicate-free list of points of one space.
class IndexedSet {
 public:
  IndexedSet(std::shared_ptr<const MetricSpace> space, std::vector<PointId> members);

  const MetricSpace& space() const { return *space_; }
  const std::shared_ptr<const MetricSpace>& space_ptr() const { return space_; }
  bool same_space(const IndexedSet& other) const { return space_ == other.space_; }

  std::span<const PointId> members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  PointId operator[](std::size_t pos) const { return members_[pos]; }

  std::optional<std::size_t> position(PointId p) const;
  bool contains(PointId p) const { return position(p).has_value(); }

  /// True when every member of this set belongs to other.
  bool subset_of(const IndexedSet& other) const;

 private:
  std::shared_ptr<const MetricSpace> space_;
  std::vector<PointId> members_;
  std::unordered_map<PointId, std::size_t> positions_;
};

}  // namespace proxpoint
