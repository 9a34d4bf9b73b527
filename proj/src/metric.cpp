#include "proxpoint/metric.hpp"

#include <cmath>
#include <string>

#include "proxpoint/error.hpp"

namespace proxpoint {

EuclideanPoint::EuclideanPoint(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) {
    throw Error(ErrorCode::InvalidArgument, "point must have dimension >= 1");
  }
  for (double c : coords_) {
    if (!std::isfinite(c)) {
      throw Error(ErrorCode::InvalidArgument, "point coordinates must be finite");
    }
  }
}

double euclidean_distance(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) {
    throw Error(ErrorCode::DimensionMismatch, "cannot measure a " + std::to_string(p.size()) +
                                                  "-dimensional point against a " +
                                                  std::to_string(q.size()) + "-dimensional one");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double diff = p[i] - q[i];
    sum += diff * diff;
  }
  return std::sqrt(sum);
}

double euclidean_distance(const EuclideanPoint& p, const EuclideanPoint& q) {
  return euclidean_distance(p.coords(), q.coords());
}

FiniteSpace::FiniteSpace(std::vector<std::vector<double>> dmat) : size_(dmat.size()) {
  if (size_ == 0) {
    throw Error(ErrorCode::InvalidArgument, "distance matrix must be nonempty");
  }
  dmat_.reserve(size_ * size_);
  for (std::size_t i = 0; i < size_; ++i) {
    if (dmat[i].size() != size_) {
      throw Error(ErrorCode::InvalidArgument,
                  "distance matrix row " + std::to_string(i) + " has " +
                      std::to_string(dmat[i].size()) + " entries, expected " +
                      std::to_string(size_));
    }
    for (std::size_t j = 0; j < size_; ++j) {
      const double v = dmat[i][j];
      if (!std::isfinite(v) || v < 0.0) {
        throw Error(ErrorCode::InvalidArgument, "distance matrix entry (" + std::to_string(i) +
                                                    "," + std::to_string(j) +
                                                    ") must be finite and nonnegative");
      }
      dmat_.push_back(v);
    }
  }
}

std::vector<std::vector<double>> FiniteSpace::rows() const {
  std::vector<std::vector<double>> out(size_, std::vector<double>(size_));
  for (std::size_t i = 0; i < size_; ++i) {
    for (std::size_t j = 0; j < size_; ++j) out[i][j] = (*this)(i, j);
  }
  return out;
}

const char* to_string(AxiomKind kind) {
  switch (kind) {
    case AxiomKind::Diagonal: return "diagonal";
    case AxiomKind::Separation: return "separation";
    case AxiomKind::Symmetry: return "symmetry";
    case AxiomKind::Triangle: return "triangle";
  }
  return "unknown";
}

AxiomReport verify_metric_axioms(const FiniteSpace& space, double tolerance,
                                 std::size_t max_witnesses) {
  AxiomReport report;
  auto record = [&](AxiomKind kind, std::size_t i, std::size_t j, std::size_t k, double excess) {
    ++report.total;
    if (report.violations.size() < max_witnesses) {
      report.violations.push_back({kind, i, j, k, excess});
    }
  };

  const std::size_t n = space.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (space(i, i) > tolerance) record(AxiomKind::Diagonal, i, i, i, space(i, i));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double gap = std::abs(space(i, j) - space(j, i));
      if (gap > tolerance) record(AxiomKind::Symmetry, i, j, j, gap);
      if (space(i, j) == 0.0 || space(j, i) == 0.0) record(AxiomKind::Separation, i, j, j, 0.0);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        const double excess = space(i, k) - (space(i, j) + space(j, k));
        if (excess > tolerance) record(AxiomKind::Triangle, i, j, k, excess);
      }
    }
  }
  return report;
}

EuclideanSpace::EuclideanSpace(std::size_t dimension) : dimension_(dimension) {
  if (dimension_ == 0) {
    throw Error(ErrorCode::InvalidArgument, "Euclidean dimension must be >= 1");
  }
}

PointId EuclideanSpace::add(EuclideanPoint p) {
  if (p.dimension() != dimension_) {
    throw Error(ErrorCode::DimensionMismatch, "point of dimension " + std::to_string(p.dimension()) +
                                                  " added to a " + std::to_string(dimension_) +
                                                  "-dimensional space");
  }
  std::vector<double> key(p.coords().begin(), p.coords().end());
  // -0.0 and 0.0 are the same point.
  for (double& c : key) c += 0.0;
  auto [it, inserted] = index_.try_emplace(std::move(key), points_.size());
  if (inserted) points_.push_back(std::move(p));
  return it->second;
}

MetricSpace::MetricSpace(FiniteSpace space) : backend_(std::move(space)) {}
MetricSpace::MetricSpace(EuclideanSpace space) : backend_(std::move(space)) {}

std::size_t MetricSpace::size() const {
  return std::visit([](const auto& s) { return s.size(); }, backend_);
}

std::size_t MetricSpace::dimension() const {
  if (const auto* e = std::get_if<EuclideanSpace>(&backend_)) return e->dimension();
  throw Error(ErrorCode::BackendUnsupported, "finite backends have no coordinates");
}

void MetricSpace::check(PointId p) const {
  if (p >= size()) {
    throw Error(ErrorCode::OutOfRange, "point id " + std::to_string(p) + " outside a space of " +
                                           std::to_string(size()) + " points");
  }
}

double MetricSpace::distance(PointId p, PointId q) const {
  check(p);
  check(q);
  if (const auto* f = std::get_if<FiniteSpace>(&backend_)) return (*f)(p, q);
  const auto& e = std::get<EuclideanSpace>(backend_);
  return euclidean_distance(e.point(p), e.point(q));
}

const EuclideanPoint& MetricSpace::point(PointId p) const {
  const auto* e = std::get_if<EuclideanSpace>(&backend_);
  if (e == nullptr) {
    throw Error(ErrorCode::BackendUnsupported, "finite backends have no coordinates");
  }
  check(p);
  return e->point(p);
}

std::pair<PointId, double> MetricSpace::nearest(std::span<const double> coords,
                                                std::span<const PointId> candidates) const {
  if (candidates.empty()) {
    throw Error(ErrorCode::InvalidArgument, "nearest-point query over an empty candidate list");
  }
  PointId best = candidates.front();
  double best_d = euclidean_distance(coords, point(best).coords());
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    const double d = euclidean_distance(coords, point(candidates[i]).coords());
    if (d < best_d) {
      best = candidates[i];
      best_d = d;
    }
  }
  return {best, best_d};
}

IndexedSet::IndexedSet(std::shared_ptr<const MetricSpace> space, std::vector<PointId> members)
    : space_(std::move(space)), members_(std::move(members)) {
  if (!space_) throw Error(ErrorCode::InvalidArgument, "set has no backend");
  if (members_.empty()) throw Error(ErrorCode::InvalidArgument, "sets must be nonempty");
  positions_.reserve(members_.size());
  for (std::size_t pos = 0; pos < members_.size(); ++pos) {
    if (members_[pos] >= space_->size()) {
      throw Error(ErrorCode::OutOfRange, "member " + std::to_string(members_[pos]) +
                                             " outside a space of " +
                                             std::to_string(space_->size()) + " points");
    }
    if (!positions_.emplace(members_[pos], pos).second) {
      throw Error(ErrorCode::InvalidArgument,
                  "duplicate member " + std::to_string(members_[pos]) + " at position " +
                      std::to_string(pos));
    }
  }
  for (std::size_t i = 0; i < members_.size(); ++i) {
    for (std::size_t j = i + 1; j < members_.size(); ++j) {
      if (space_->distance(members_[i], members_[j]) == 0.0) {
        throw Error(ErrorCode::InvalidArgument, "members at positions " + std::to_string(i) +
                                                    " and " + std::to_string(j) +
                                                    " are at distance 0");
      }
    }
  }
}

std::optional<std::size_t> IndexedSet::position(PointId p) const {
  auto it = positions_.find(p);
  if (it == positions_.end()) return std::nullopt;
  return it->second;
}

bool IndexedSet::subset_of(const IndexedSet& other) const {
  if (!same_space(other)) return false;
  for (PointId p : members_) {
    if (!other.contains(p)) return false;
  }
  return true;
}

}  // namespace proxpoint
