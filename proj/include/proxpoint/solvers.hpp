#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "proxpoint/maps.hpp"
#include "proxpoint/metric.hpp"
#include "proxpoint/proximity.hpp"

namespace proxpoint {

/// A self-map of a finite set, single- or multivalued.
///
/// The residual defaults to the fixed-point residual d(x, Fx) (D(x, Fx) when
/// multivalued). Maps produced by reduce() measure the best proximity residual
/// d(x, Tx) - dist(A,B) of the map they were reduced from instead.
class SelfMap {
 public:
  using Single = std::function<PointId(PointId)>;
  using Multi = std::function<std::vector<PointId>(PointId)>;
  using Residual = std::function<double(PointId)>;

  static SelfMap single(IndexedSet domain, Single f, Residual residual = {});
  static SelfMap multi(IndexedSet domain, Multi f, Residual residual = {});

  const IndexedSet& domain() const { return domain_; }
  bool is_multivalued() const { return static_cast<bool>(multi_); }

  /// Single-valued image. For multivalued maps, the nearest image member.
  PointId operator()(PointId x) const;
  /// Image set (a single member for single-valued maps).
  std::vector<PointId> images(PointId x) const;
  double residual(PointId x) const;

  const std::string& provenance() const { return provenance_; }
  void set_provenance(std::string p) { provenance_ = std::move(p); }

 private:
  explicit SelfMap(IndexedSet domain) : domain_(std::move(domain)) {}

  IndexedSet domain_;
  Single single_;
  Multi multi_;
  Residual residual_;
  std::string provenance_;
};

/// g^{-1} o T on A0. Throws ImageOutsideB0 naming the first x in A0 whose
/// image misses B0.
SelfMap reduce(const SingleValuedMap& t, const ProximityIsometry& g);
/// x -> { g^{-1} y : y in T x } on A0.
SelfMap reduce_multi(const MultiValuedMap& t, const ProximityIsometry& g);

struct StoppingRule {
  double step_tol = 1e-10;
  double residual_tol = 1e-8;
  std::size_t max_iters = 100000;

  /// Throws InvalidArgument unless all fields are strictly positive.
  void validate() const;
};

enum class Termination { ConvergedStep, ConvergedResidual, MaxIters };

std::string_view to_string(Termination t);

struct TraceEntry {
  PointId iterate;
  double step;      // d(x_n, x_{n+1})
  double residual;  // residual at x_{n+1}
  double snap;      // snap distance of the averaged point (Krasnoselskii only)
};

struct BestProximityResult {
  PointId x_star;
  double residual;
  std::size_t iterations;
  std::vector<TraceEntry> trace;  // one entry per iteration
  Termination termination;

  bool converged() const { return termination != Termination::MaxIters; }
};

/// x_{n+1} = F(x_n). The step test runs before the residual test.
BestProximityResult picard_solve(const SelfMap& f, PointId x0, const StoppingRule& stop);

/// x_{n+1} = snap((1 - lambda) x_n + lambda F(x_n)) with the average snapped
/// to the nearest domain member. Euclidean backends only (BackendUnsupported).
BestProximityResult krasnoselskii_solve(const SelfMap& f, PointId x0, double lambda,
                                        const StoppingRule& stop);

/// x_{n+1} = nearest member of F(x_n) to x_n, lowest position on ties.
BestProximityResult nadler_solve(const SelfMap& f, PointId x0, const StoppingRule& stop);

enum class MapClass { WeaklyContractive, Nonexpansive, MeirKeeler, Multivalued };

std::string_view to_string(MapClass c);
/// Throws InvalidArgument for unknown names.
MapClass parse_map_class(std::string_view name);

using NonSelfMap = std::variant<SingleValuedMap, MultiValuedMap>;

struct ClassParameters {
  ComparisonFunction phi = ComparisonFunction::linear(0.5);
  MeirKeelerModulus delta = MeirKeelerModulus::linear(1.0);
  double alpha = 0.5;
  double lambda = 0.5;
  std::vector<double> eps_grid;  // empty: default_eps_grid(A0)
};

/// Runs the certifier matching map_class on domain.
CertificationReport certify_class(const NonSelfMap& t, MapClass map_class,
                                  const ClassParameters& params, const IndexedSet& domain,
                                  double tol);

struct SolveConfig {
  MapClass map_class = MapClass::WeaklyContractive;
  ClassParameters params;
  double tol = 1e-9;
  StoppingRule stop;
  std::optional<PointId> start;  // default: first member of A0
  bool require_certified = true;
};

/// Everything up to (and including) the reduced self-map.
struct PreparedProblem {
  ProximityStructure proximity;
  PPropertyVerdict verdict;
  ProximityIsometry isometry;
  CertificationReport certification;
  SelfMap reduced;
  std::vector<std::string> warnings;
};

/// proximal_sets -> check_p_property -> build_isometry -> certify on A0 ->
/// reduce. Errors: NotP, NonFunctional, CertificationFailed (when
/// config.require_certified), ImageOutsideB0, InvalidArgument on a map/class
/// mismatch.
PreparedProblem prepare(const IndexedSet& a, const IndexedSet& b, const NonSelfMap& t,
                        const SolveConfig& config);

/// Dispatches the iteration for the configured class from x0 (must be in A0).
/// The residual of the result is the lifted one, d(x*, Tx*) - dist(A,B) or
/// D(x*, Tx*) - dist(A,B), and is reported whatever the termination.
BestProximityResult solve_from(const PreparedProblem& problem, const SolveConfig& config,
                               PointId x0);

struct SolveOutcome {
  PreparedProblem problem;
  BestProximityResult result;
};

SolveOutcome best_proximity_solve(const IndexedSet& a, const IndexedSet& b, const NonSelfMap& t,
                                  const SolveConfig& config);

/// k members of a0 spread by index striding: positions floor(i |a0| / k).
/// k is clamped to |a0|.
std::vector<PointId> strided_starts(const IndexedSet& a0, std::size_t k);

struct MultiStartOutcome {
  std::vector<PointId> starts;
  std::vector<BestProximityResult> runs;
  double max_disagreement = 0.0;  // max pairwise d(x*_i, x*_j)
};

MultiStartOutcome multi_start_solve(const PreparedProblem& problem, const SolveConfig& config,
                                    std::size_t k);

}  // namespace proxpoint
