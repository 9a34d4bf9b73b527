#include "proxpoint/maps.hpp"

#include <cmath>
#include <string>

#include "proxpoint/error.hpp"
#include "proxpoint/format.hpp"

namespace proxpoint {

void AffineForm::validate(std::size_t dimension) const {
  bool ok = matrix.size() == dimension && offset.size() == dimension;
  for (const auto& row : matrix) ok = ok && row.size() == dimension;
  if (!ok) {
    throw Error(ErrorCode::DimensionMismatch,
                "affine form must be " + std::to_string(dimension) + "x" +
                    std::to_string(dimension) + " with a " + std::to_string(dimension) +
                    "-vector offset");
  }
  for (const auto& row : matrix) {
    for (double v : row) {
      if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "affine matrix entry is not finite");
    }
  }
  for (double v : offset) {
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "affine offset entry is not finite");
  }
}

std::vector<double> AffineForm::apply(std::span<const double> x) const {
  std::vector<double> y(offset);
  for (std::size_t r = 0; r < y.size(); ++r) {
    for (std::size_t c = 0; c < x.size(); ++c) y[r] += matrix[r][c] * x[c];
  }
  return y;
}

namespace {

void require_euclidean(const IndexedSet& s, const char* what) {
  if (!s.space().is_euclidean()) {
    throw Error(ErrorCode::BackendUnsupported, std::string(what) + " needs a Euclidean backend");
  }
}

MapImage snap_to(const IndexedSet& codomain, std::span<const double> exact, double tol_snap,
                 PointId source) {
  auto [nearest, d] = codomain.space().nearest(exact, codomain.members());
  if (d > tol_snap) {
    throw Error(ErrorCode::Resolution, "image of point " + std::to_string(source) +
                                           " lies " + format_number(d) +
                                           " from the nearest member of B (tol_snap " +
                                           format_number(tol_snap) + ")");
  }
  return {nearest, d};
}

void require_in_codomain(const IndexedSet& codomain, PointId image, PointId source) {
  if (!codomain.contains(image)) {
    throw Error(ErrorCode::Resolution,
                "image " + std::to_string(image) + " of point " + std::to_string(source) +
                    " is not a member of B");
  }
}

void require_domain_subset(const IndexedSet& domain, const IndexedSet& map_domain) {
  if (!domain.subset_of(map_domain)) {
    throw Error(ErrorCode::InvalidArgument, "certification domain is not contained in A");
  }
}

double diameter(const IndexedSet& s) {
  double diam = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      diam = std::max(diam, s.space().distance(s[i], s[j]));
    }
  }
  return diam;
}

std::string sample_note(bool exact_form, const IndexedSet& domain, std::size_t checks) {
  std::string note = (exact_form ? "affine form evaluated exactly on a " : "exhaustive over a ") +
                     std::to_string(domain.size()) + "-point domain, " + std::to_string(checks) +
                     " checks";
  if (exact_form) note += " (certifies the sample only)";
  return note;
}

// Scans pairs i < j of domain and keeps the first largest excess.
template <typename Bound>
CertificationReport scan_pairs(std::string class_name, const IndexedSet& domain, double tol,
                               Bound&& bound) {
  CertificationReport report;
  report.class_name = std::move(class_name);
  report.max_excess = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < domain.size(); ++i) {
    for (std::size_t j = i + 1; j < domain.size(); ++j) {
      auto [lhs, rhs] = bound(domain[i], domain[j]);
      ++report.checks;
      const double excess = lhs - rhs;
      if (excess > report.max_excess) {
        report.max_excess = excess;
        report.witness = CertificationWitness{domain[i], domain[j], lhs, rhs, std::nullopt};
      }
    }
  }
  if (report.checks == 0) report.max_excess = 0.0;
  report.holds = report.max_excess <= tol;
  return report;
}

}  // namespace

SingleValuedMap::SingleValuedMap(IndexedSet domain, IndexedSet codomain)
    : domain_(std::move(domain)), codomain_(std::move(codomain)) {
  if (!domain_.same_space(codomain_)) {
    throw Error(ErrorCode::InvalidArgument, "map domain and codomain belong to different backends");
  }
}

SingleValuedMap SingleValuedMap::table(IndexedSet domain, IndexedSet codomain,
                                       std::vector<PointId> images) {
  SingleValuedMap t(std::move(domain), std::move(codomain));
  if (images.size() != t.domain_.size()) {
    throw Error(ErrorCode::Resolution, "map table has " + std::to_string(images.size()) +
                                           " entries for a domain of " +
                                           std::to_string(t.domain_.size()) + " points");
  }
  t.images_.reserve(images.size());
  for (std::size_t i = 0; i < images.size(); ++i) {
    require_in_codomain(t.codomain_, images[i], t.domain_[i]);
    t.images_.push_back({images[i], 0.0});
  }
  return t;
}

SingleValuedMap SingleValuedMap::affine(IndexedSet domain, IndexedSet codomain, AffineForm form,
                                        double tol_snap) {
  SingleValuedMap t(std::move(domain), std::move(codomain));
  require_euclidean(t.domain_, "an affine map");
  form.validate(t.domain_.space().dimension());
  const MetricSpace& space = t.domain_.space();
  for (PointId x : t.domain_.members()) {
    t.exact_.push_back(form.apply(space.point(x).coords()));
    t.images_.push_back(snap_to(t.codomain_, t.exact_.back(), tol_snap, x));
  }
  t.affine_ = std::move(form);
  return t;
}

std::size_t SingleValuedMap::position(PointId x) const {
  auto pos = domain_.position(x);
  if (!pos) throw Error(ErrorCode::OutOfRange, "point " + std::to_string(x) + " is not in A");
  return *pos;
}

MapImage SingleValuedMap::evaluate(PointId x) const { return images_[position(x)]; }

double SingleValuedMap::image_distance(PointId x, PointId y) const {
  const std::size_t px = position(x);
  const std::size_t py = position(y);
  if (affine_) return euclidean_distance(exact_[px], exact_[py]);
  return domain_.space().distance(images_[px].point, images_[py].point);
}

MultiValuedMap::MultiValuedMap(IndexedSet domain, IndexedSet codomain)
    : domain_(std::move(domain)), codomain_(std::move(codomain)) {
  if (!domain_.same_space(codomain_)) {
    throw Error(ErrorCode::InvalidArgument, "map domain and codomain belong to different backends");
  }
}

namespace {

std::vector<MapImage> normalize_images(const IndexedSet& codomain, std::vector<MapImage> images) {
  std::sort(images.begin(), images.end(), [&](const MapImage& l, const MapImage& r) {
    const auto pl = *codomain.position(l.point);
    const auto pr = *codomain.position(r.point);
    return pl != pr ? pl < pr : l.snap < r.snap;
  });
  std::vector<MapImage> unique;
  for (const MapImage& m : images) {
    if (unique.empty() || unique.back().point != m.point) unique.push_back(m);
  }
  return unique;
}

}  // namespace

MultiValuedMap MultiValuedMap::table(IndexedSet domain, IndexedSet codomain,
                                     std::vector<std::vector<PointId>> images) {
  MultiValuedMap t(std::move(domain), std::move(codomain));
  if (images.size() != t.domain_.size()) {
    throw Error(ErrorCode::Resolution, "multivalued table has " + std::to_string(images.size()) +
                                           " entries for a domain of " +
                                           std::to_string(t.domain_.size()) + " points");
  }
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (images[i].empty()) {
      throw Error(ErrorCode::Resolution,
                  "image set of point " + std::to_string(t.domain_[i]) + " is empty");
    }
    std::vector<MapImage> row;
    for (PointId y : images[i]) {
      require_in_codomain(t.codomain_, y, t.domain_[i]);
      row.push_back({y, 0.0});
    }
    t.images_.push_back(normalize_images(t.codomain_, std::move(row)));
  }
  return t;
}

MultiValuedMap MultiValuedMap::affine_branches(IndexedSet domain, IndexedSet codomain,
                                               std::vector<AffineForm> branches,
                                               double tol_snap) {
  MultiValuedMap t(std::move(domain), std::move(codomain));
  require_euclidean(t.domain_, "a multivalued affine map");
  if (branches.empty()) {
    throw Error(ErrorCode::InvalidArgument, "a multivalued affine map needs at least one branch");
  }
  const MetricSpace& space = t.domain_.space();
  for (const AffineForm& branch : branches) branch.validate(space.dimension());
  for (PointId x : t.domain_.members()) {
    std::vector<std::vector<double>> exact;
    std::vector<MapImage> row;
    for (const AffineForm& branch : branches) {
      exact.push_back(branch.apply(space.point(x).coords()));
      row.push_back(snap_to(t.codomain_, exact.back(), tol_snap, x));
    }
    t.exact_.push_back(std::move(exact));
    t.images_.push_back(normalize_images(t.codomain_, std::move(row)));
  }
  t.branches_ = std::move(branches);
  return t;
}

std::size_t MultiValuedMap::position(PointId x) const {
  auto pos = domain_.position(x);
  if (!pos) throw Error(ErrorCode::OutOfRange, "point " + std::to_string(x) + " is not in A");
  return *pos;
}

const std::vector<MapImage>& MultiValuedMap::evaluate(PointId x) const {
  return images_[position(x)];
}

std::vector<PointId> MultiValuedMap::image_ids(PointId x) const {
  std::vector<PointId> ids;
  for (const MapImage& m : evaluate(x)) ids.push_back(m.point);
  return ids;
}

double MultiValuedMap::image_hausdorff(PointId x, PointId y) const {
  const std::size_t px = position(x);
  const std::size_t py = position(y);
  if (!branches_.empty()) {
    const auto& ex = exact_[px];
    const auto& ey = exact_[py];
    return hausdorff_by(ex.size(), ey.size(), [&](std::size_t i, std::size_t j) {
      return euclidean_distance(ex[i], ey[j]);
    });
  }
  const auto& ix = images_[px];
  const auto& iy = images_[py];
  const MetricSpace& space = domain_.space();
  return hausdorff_by(ix.size(), iy.size(), [&](std::size_t i, std::size_t j) {
    return space.distance(ix[i].point, iy[j].point);
  });
}

double hausdorff(const MetricSpace& space, std::span<const PointId> xs,
                 std::span<const PointId> ys) {
  if (xs.empty() || ys.empty()) {
    throw Error(ErrorCode::InvalidArgument, "Hausdorff distance of an empty set");
  }
  return hausdorff_by(xs.size(), ys.size(),
                      [&](std::size_t i, std::size_t j) { return space.distance(xs[i], ys[j]); });
}

ComparisonFunction ComparisonFunction::linear(double c) {
  if (!(c > 0.0 && c < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "linear phi needs c in (0,1), got " + format_number(c));
  }
  return ComparisonFunction(Kind::Linear, c);
}

ComparisonFunction ComparisonFunction::rational() { return ComparisonFunction(Kind::Rational, 0.0); }

double ComparisonFunction::operator()(double t) const {
  switch (kind_) {
    case Kind::Linear: return c_ * t;
    case Kind::Rational: return t * t / (1.0 + t);
  }
  return 0.0;
}

std::string ComparisonFunction::describe() const {
  if (kind_ == Kind::Linear) return "phi(t) = " + format_number(c_) + " t";
  return "phi(t) = t^2/(1+t)";
}

std::string check_comparison_function(const ComparisonFunction& phi, double diameter,
                                      std::size_t samples) {
  if (phi(0.0) != 0.0) return "phi(0) != 0";
  const double t_max = 1000.0 * std::max(diameter, 1.0);
  double previous = 0.0;
  for (std::size_t i = 1; i < samples; ++i) {
    const double t = t_max * static_cast<double>(i) / static_cast<double>(samples - 1);
    const double v = phi(t);
    if (!(v > 0.0)) return "phi is not positive at t = " + format_number(t);
    if (v < previous) return "phi decreases at t = " + format_number(t);
    previous = v;
  }
  if (!(phi(t_max) > diameter)) return "phi(t_max) does not exceed the domain diameter";
  return {};
}

MeirKeelerModulus MeirKeelerModulus::linear(double factor) {
  if (!(factor > 0.0) || !std::isfinite(factor)) {
    throw Error(ErrorCode::InvalidArgument, "delta factor must be positive");
  }
  return MeirKeelerModulus(Kind::Linear, factor);
}

MeirKeelerModulus MeirKeelerModulus::constant(double delta) {
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw Error(ErrorCode::InvalidArgument, "constant delta must be positive");
  }
  return MeirKeelerModulus(Kind::Constant, delta);
}

double MeirKeelerModulus::operator()(double eps) const {
  return kind_ == Kind::Linear ? value_ * eps : value_;
}

std::string MeirKeelerModulus::describe() const {
  if (kind_ == Kind::Linear) return "delta(eps) = " + format_number(value_) + " eps";
  return "delta(eps) = " + format_number(value_);
}

CertificationReport certify_weakly_contractive(const SingleValuedMap& t,
                                               const ComparisonFunction& phi,
                                               const IndexedSet& domain, double tol) {
  require_domain_subset(domain, t.domain());
  if (auto failure = check_comparison_function(phi, diameter(domain)); !failure.empty()) {
    throw Error(ErrorCode::InvalidArgument, "comparison function rejected: " + failure);
  }
  const MetricSpace& space = domain.space();
  auto report = scan_pairs("weakly_contractive", domain, tol, [&](PointId x, PointId y) {
    const double d = space.distance(x, y);
    return std::pair{t.image_distance(x, y), d - phi(d)};
  });
  report.sample = sample_note(t.is_affine(), domain, report.checks) + "; " + phi.describe();
  return report;
}

CertificationReport certify_nonexpansive(const SingleValuedMap& t, const IndexedSet& domain,
                                         double tol) {
  require_domain_subset(domain, t.domain());
  const MetricSpace& space = domain.space();
  auto report = scan_pairs("nonexpansive", domain, tol, [&](PointId x, PointId y) {
    return std::pair{t.image_distance(x, y), space.distance(x, y)};
  });
  report.sample = sample_note(t.is_affine(), domain, report.checks);
  return report;
}

CertificationReport certify_meir_keeler(const SingleValuedMap& t, const MeirKeelerModulus& delta,
                                        const IndexedSet& domain,
                                        std::span<const double> eps_grid, double tol) {
  require_domain_subset(domain, t.domain());
  if (eps_grid.empty()) throw Error(ErrorCode::InvalidArgument, "eps grid is empty");
  for (double eps : eps_grid) {
    if (!(eps > 0.0)) throw Error(ErrorCode::InvalidArgument, "eps grid values must be positive");
    if (!(delta(eps) > 0.0)) {
      throw Error(ErrorCode::InvalidArgument,
                  "delta is not positive at eps = " + format_number(eps));
    }
  }

  const MetricSpace& space = domain.space();
  CertificationReport report;
  report.class_name = "meir_keeler";
  report.max_excess = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < domain.size(); ++i) {
    for (std::size_t j = i + 1; j < domain.size(); ++j) {
      const double d = space.distance(domain[i], domain[j]);
      const double image_d = t.image_distance(domain[i], domain[j]);
      for (double eps : eps_grid) {
        if (!(d < eps + delta(eps))) continue;
        ++report.checks;
        const double excess = image_d - eps;
        if (excess > report.max_excess) {
          report.max_excess = excess;
          report.witness = CertificationWitness{domain[i], domain[j], image_d, eps, eps};
        }
      }
    }
  }
  if (report.checks == 0) report.max_excess = 0.0;
  report.holds = report.max_excess <= tol;
  report.sample = sample_note(t.is_affine(), domain, report.checks) + "; " +
                  std::to_string(eps_grid.size()) + " eps values; " + delta.describe();
  return report;
}

std::vector<double> default_eps_grid(const IndexedSet& domain) {
  constexpr std::size_t kCount = 32;
  double min_positive = std::numeric_limits<double>::infinity();
  double diam = 0.0;
  for (std::size_t i = 0; i < domain.size(); ++i) {
    for (std::size_t j = i + 1; j < domain.size(); ++j) {
      const double d = domain.space().distance(domain[i], domain[j]);
      if (d > 0.0) min_positive = std::min(min_positive, d);
      diam = std::max(diam, d);
    }
  }
  if (diam == 0.0) return {1.0};
  const double lo = std::log(min_positive / 2.0);
  const double hi = std::log(diam * 2.0);
  std::vector<double> grid;
  grid.reserve(kCount);
  for (std::size_t i = 0; i < kCount; ++i) {
    grid.push_back(std::exp(lo + (hi - lo) * static_cast<double>(i) / (kCount - 1)));
  }
  return grid;
}

CertificationReport certify_multivalued_contraction(const MultiValuedMap& t, double alpha,
                                                    const IndexedSet& domain, double tol) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "alpha must lie in (0,1), got " + format_number(alpha));
  }
  require_domain_subset(domain, t.domain());
  const MetricSpace& space = domain.space();
  auto report = scan_pairs("multivalued", domain, tol, [&](PointId x, PointId y) {
    return std::pair{t.image_hausdorff(x, y), alpha * space.distance(x, y)};
  });
  report.sample = sample_note(t.is_affine(), domain, report.checks) +
                  "; alpha = " + format_number(alpha);
  return report;
}

}  // namespace proxpoint
