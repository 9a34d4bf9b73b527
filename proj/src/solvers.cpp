#include "proxpoint/solvers.hpp"

#include <memory>
#include <string>

#include "proxpoint/error.hpp"
#include "proxpoint/format.hpp"

namespace proxpoint {

SelfMap SelfMap::single(IndexedSet domain, Single f, Residual residual) {
  SelfMap m(std::move(domain));
  m.single_ = std::move(f);
  m.residual_ = std::move(residual);
  return m;
}

SelfMap SelfMap::multi(IndexedSet domain, Multi f, Residual residual) {
  SelfMap m(std::move(domain));
  m.multi_ = std::move(f);
  m.residual_ = std::move(residual);
  return m;
}

PointId SelfMap::operator()(PointId x) const {
  if (single_) return single_(x);
  const std::vector<PointId> imgs = multi_(x);
  const MetricSpace& space = domain_.space();
  PointId best = imgs.front();
  double best_d = space.distance(x, best);
  for (std::size_t i = 1; i < imgs.size(); ++i) {
    const double d = space.distance(x, imgs[i]);
    if (d < best_d) {
      best = imgs[i];
      best_d = d;
    }
  }
  return best;
}

std::vector<PointId> SelfMap::images(PointId x) const {
  if (single_) return {single_(x)};
  return multi_(x);
}

double SelfMap::residual(PointId x) const {
  if (residual_) return residual_(x);
  return domain_.space().distance(x, (*this)(x));
}

namespace {

struct ReducedTables {
  IndexedSet domain;
  std::vector<std::vector<PointId>> images;  // by domain position
  std::vector<double> residuals;             // by domain position

  std::size_t position(PointId x) const {
    auto pos = domain.position(x);
    if (!pos) throw Error(ErrorCode::OutOfRange, "point " + std::to_string(x) + " is not in A0");
    return *pos;
  }
};

[[noreturn]] void image_outside(PointId x, PointId y) {
  throw Error(ErrorCode::ImageOutsideB0, "T maps point " + std::to_string(x) +
                                             " of A0 to " + std::to_string(y) +
                                             ", which is not in B0");
}

}  // namespace

SelfMap reduce(const SingleValuedMap& t, const ProximityIsometry& g) {
  auto tables = std::make_shared<ReducedTables>(ReducedTables{g.a0, {}, {}});
  const MetricSpace& space = g.a0.space();
  for (PointId x : g.a0.members()) {
    const PointId y = t.evaluate(x).point;
    auto back = g.invert(y);
    if (!back) image_outside(x, y);
    tables->images.push_back({*back});
    tables->residuals.push_back(space.distance(x, y) - g.dist_ab);
  }
  SelfMap f = SelfMap::single(
      g.a0, [tables](PointId x) { return tables->images[tables->position(x)].front(); },
      [tables](PointId x) { return tables->residuals[tables->position(x)]; });
  f.set_provenance("g^-1 o T (single-valued)");
  return f;
}

SelfMap reduce_multi(const MultiValuedMap& t, const ProximityIsometry& g) {
  auto tables = std::make_shared<ReducedTables>(ReducedTables{g.a0, {}, {}});
  const MetricSpace& space = g.a0.space();
  for (PointId x : g.a0.members()) {
    std::vector<PointId> row;
    double nearest = std::numeric_limits<double>::infinity();
    for (const MapImage& m : t.evaluate(x)) {
      auto back = g.invert(m.point);
      if (!back) image_outside(x, m.point);
      row.push_back(*back);
      nearest = std::min(nearest, space.distance(x, m.point));
    }
    std::sort(row.begin(), row.end(), [&](PointId l, PointId r) {
      return *g.a0.position(l) < *g.a0.position(r);
    });
    tables->images.push_back(std::move(row));
    tables->residuals.push_back(nearest - g.dist_ab);
  }
  SelfMap f = SelfMap::multi(
      g.a0, [tables](PointId x) { return tables->images[tables->position(x)]; },
      [tables](PointId x) { return tables->residuals[tables->position(x)]; });
  f.set_provenance("g^-1 o T (multivalued)");
  return f;
}

void StoppingRule::validate() const {
  if (!(step_tol > 0.0) || !(residual_tol > 0.0) || max_iters < 1) {
    throw Error(ErrorCode::InvalidArgument,
                "stopping rule needs positive step_tol, residual_tol and max_iters");
  }
}

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::ConvergedStep: return "CONVERGED_STEP";
    case Termination::ConvergedResidual: return "CONVERGED_RESIDUAL";
    case Termination::MaxIters: return "MAX_ITERS";
  }
  return "UNKNOWN";
}

namespace {

void require_start(const SelfMap& f, PointId x0) {
  if (!f.domain().contains(x0)) {
    throw Error(ErrorCode::InvalidArgument,
                "start point " + std::to_string(x0) + " is not in the map's domain");
  }
}

// Shared loop: next(x) produces the following iterate and its snap distance.
template <typename Next>
BestProximityResult iterate(const SelfMap& f, PointId x0, const StoppingRule& stop, Next&& next) {
  stop.validate();
  require_start(f, x0);
  const MetricSpace& space = f.domain().space();
  BestProximityResult result{x0, f.residual(x0), 0, {}, Termination::MaxIters};
  PointId x = x0;
  for (std::size_t n = 0; n < stop.max_iters; ++n) {
    auto [x_next, snap] = next(x);
    const double step = space.distance(x, x_next);
    const double residual = f.residual(x_next);
    result.trace.push_back({x_next, step, residual, snap});
    x = x_next;
    result.x_star = x;
    result.residual = residual;
    result.iterations = n + 1;
    if (step <= stop.step_tol) {
      result.termination = Termination::ConvergedStep;
      break;
    }
    if (residual <= stop.residual_tol) {
      result.termination = Termination::ConvergedResidual;
      break;
    }
  }
  return result;
}

}  // namespace

BestProximityResult picard_solve(const SelfMap& f, PointId x0, const StoppingRule& stop) {
  if (f.is_multivalued()) {
    throw Error(ErrorCode::InvalidArgument, "Picard iteration needs a single-valued map");
  }
  return iterate(f, x0, stop, [&](PointId x) { return std::pair{f(x), 0.0}; });
}

BestProximityResult krasnoselskii_solve(const SelfMap& f, PointId x0, double lambda,
                                        const StoppingRule& stop) {
  const MetricSpace& space = f.domain().space();
  if (!space.is_euclidean()) {
    throw Error(ErrorCode::BackendUnsupported,
                "averaged iteration needs a Euclidean backend to form convex combinations");
  }
  if (!(lambda > 0.0 && lambda < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "lambda must lie in (0,1), got " + format_number(lambda));
  }
  if (f.is_multivalued()) {
    throw Error(ErrorCode::InvalidArgument, "averaged iteration needs a single-valued map");
  }
  const auto members = f.domain().members();
  return iterate(f, x0, stop, [&](PointId x) {
    const auto xc = space.point(x).coords();
    const auto fc = space.point(f(x)).coords();
    std::vector<double> avg(xc.size());
    for (std::size_t i = 0; i < avg.size(); ++i) avg[i] = (1.0 - lambda) * xc[i] + lambda * fc[i];
    return space.nearest(avg, members);
  });
}

BestProximityResult nadler_solve(const SelfMap& f, PointId x0, const StoppingRule& stop) {
  // operator() on a multivalued map already returns the nearest image member.
  return iterate(f, x0, stop, [&](PointId x) { return std::pair{f(x), 0.0}; });
}

std::string_view to_string(MapClass c) {
  switch (c) {
    case MapClass::WeaklyContractive: return "weakly_contractive";
    case MapClass::Nonexpansive: return "nonexpansive";
    case MapClass::MeirKeeler: return "meir_keeler";
    case MapClass::Multivalued: return "multivalued";
  }
  return "unknown";
}

MapClass parse_map_class(std::string_view name) {
  for (MapClass c : {MapClass::WeaklyContractive, MapClass::Nonexpansive, MapClass::MeirKeeler,
                     MapClass::Multivalued}) {
    if (to_string(c) == name) return c;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown map class '" + std::string(name) + "'");
}

namespace {

const SingleValuedMap& require_single(const NonSelfMap& t, MapClass c) {
  if (const auto* s = std::get_if<SingleValuedMap>(&t)) return *s;
  throw Error(ErrorCode::InvalidArgument,
              "class " + std::string(to_string(c)) + " needs a single-valued map");
}

const MultiValuedMap& require_multi(const NonSelfMap& t) {
  if (const auto* m = std::get_if<MultiValuedMap>(&t)) return *m;
  throw Error(ErrorCode::InvalidArgument, "class multivalued needs a multivalued map");
}

const IndexedSet& map_domain(const NonSelfMap& t) {
  return std::visit([](const auto& m) -> const IndexedSet& { return m.domain(); }, t);
}

const IndexedSet& map_codomain(const NonSelfMap& t) {
  return std::visit([](const auto& m) -> const IndexedSet& { return m.codomain(); }, t);
}

}  // namespace

CertificationReport certify_class(const NonSelfMap& t, MapClass map_class,
                                  const ClassParameters& params, const IndexedSet& domain,
                                  double tol) {
  switch (map_class) {
    case MapClass::WeaklyContractive:
      return certify_weakly_contractive(require_single(t, map_class), params.phi, domain, tol);
    case MapClass::Nonexpansive:
      return certify_nonexpansive(require_single(t, map_class), domain, tol);
    case MapClass::MeirKeeler: {
      const auto grid = params.eps_grid.empty() ? default_eps_grid(domain) : params.eps_grid;
      return certify_meir_keeler(require_single(t, map_class), params.delta, domain, grid, tol);
    }
    case MapClass::Multivalued:
      return certify_multivalued_contraction(require_multi(t), params.alpha, domain, tol);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown map class");
}

PreparedProblem prepare(const IndexedSet& a, const IndexedSet& b, const NonSelfMap& t,
                        const SolveConfig& config) {
  config.stop.validate();
  const IndexedSet& dom = map_domain(t);
  const IndexedSet& cod = map_codomain(t);
  if (dom.size() != a.size() || !a.subset_of(dom) || cod.size() != b.size() ||
      !b.subset_of(cod)) {
    throw Error(ErrorCode::InvalidArgument, "the map must be defined on A with values in B");
  }
  if (config.map_class == MapClass::Multivalued) {
    require_multi(t);
  } else {
    require_single(t, config.map_class);
  }
  if (config.map_class == MapClass::Nonexpansive && !a.space().is_euclidean()) {
    throw Error(ErrorCode::BackendUnsupported,
                "the nonexpansive path averages iterates and needs a Euclidean backend");
  }

  ProximityStructure proximity = proximal_sets(a, b, config.tol);
  PPropertyVerdict verdict = check_p_property(proximity);
  ProximityIsometry isometry = build_isometry(proximity);
  std::vector<std::string> warnings = isometry.warnings;

  CertificationReport certification =
      certify_class(t, config.map_class, config.params, proximity.a0, config.tol);
  if (!certification.holds) {
    std::string what = "map is not certified " + certification.class_name + " on A0";
    if (certification.witness) {
      const auto& w = *certification.witness;
      what += " (pair " + std::to_string(w.x) + "," + std::to_string(w.y) + ": " +
              format_number(w.lhs) + " > " + format_number(w.rhs) + ")";
    }
    if (config.require_certified) throw Error(ErrorCode::CertificationFailed, what);
    warnings.push_back(what);
  }

  SelfMap reduced = config.map_class == MapClass::Multivalued
                        ? reduce_multi(std::get<MultiValuedMap>(t), isometry)
                        : reduce(std::get<SingleValuedMap>(t), isometry);
  return PreparedProblem{std::move(proximity), std::move(verdict),  std::move(isometry),
                         std::move(certification), std::move(reduced), std::move(warnings)};
}

BestProximityResult solve_from(const PreparedProblem& problem, const SolveConfig& config,
                               PointId x0) {
  if (!problem.proximity.a0.contains(x0)) {
    throw Error(ErrorCode::InvalidArgument, "start point " + std::to_string(x0) + " is not in A0");
  }
  switch (config.map_class) {
    case MapClass::WeaklyContractive:
    case MapClass::MeirKeeler:
      return picard_solve(problem.reduced, x0, config.stop);
    case MapClass::Nonexpansive:
      return krasnoselskii_solve(problem.reduced, x0, config.params.lambda, config.stop);
    case MapClass::Multivalued:
      return nadler_solve(problem.reduced, x0, config.stop);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown map class");
}

SolveOutcome best_proximity_solve(const IndexedSet& a, const IndexedSet& b, const NonSelfMap& t,
                                  const SolveConfig& config) {
  PreparedProblem problem = prepare(a, b, t, config);
  const PointId x0 = config.start.value_or(problem.proximity.a0[0]);
  BestProximityResult result = solve_from(problem, config, x0);
  return SolveOutcome{std::move(problem), std::move(result)};
}

std::vector<PointId> strided_starts(const IndexedSet& a0, std::size_t k) {
  k = std::min(std::max<std::size_t>(k, 1), a0.size());
  std::vector<PointId> starts;
  starts.reserve(k);
  for (std::size_t i = 0; i < k; ++i) starts.push_back(a0[i * a0.size() / k]);
  return starts;
}

MultiStartOutcome multi_start_solve(const PreparedProblem& problem, const SolveConfig& config,
                                    std::size_t k) {
  MultiStartOutcome out;
  out.starts = strided_starts(problem.proximity.a0, k);
  for (PointId x0 : out.starts) out.runs.push_back(solve_from(problem, config, x0));
  const MetricSpace& space = problem.proximity.a0.space();
  for (std::size_t i = 0; i < out.runs.size(); ++i) {
    for (std::size_t j = i + 1; j < out.runs.size(); ++j) {
      out.max_disagreement = std::max(
          out.max_disagreement, space.distance(out.runs[i].x_star, out.runs[j].x_star));
    }
  }
  return out;
}

}  // namespace proxpoint
