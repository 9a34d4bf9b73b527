#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "proxpoint/maps.hpp"
#include "proxpoint/metric.hpp"
#include "proxpoint/solvers.hpp"

namespace proxpoint {

/// Schema identifier every scenario document must carry.
inline constexpr std::string_view kScenarioSchema = "proxpoint-scenario/1";

// Logical scenario document. The on-disk format is JSON; see
// docs/scenario-format.md for the exact schema.

struct PointListSpec {
  std::vector<std::vector<double>> points;
  bool operator==(const PointListSpec&) const = default;
};

/// count points from `from` to `to` inclusive, evenly spaced.
struct SegmentSpec {
  std::vector<double> from;
  std::vector<double> to;
  std::size_t count;
  bool operator==(const SegmentSpec&) const = default;
};

/// Cartesian grid, last coordinate varying fastest.
struct BoxSpec {
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<std::size_t> counts;
  bool operator==(const BoxSpec&) const = default;
};

/// count points on a circle in the plane, starting at angle 0.
struct CircleSpec {
  std::vector<double> center;
  double radius;
  std::size_t count;
  bool operator==(const CircleSpec&) const = default;
};

/// Indices into a finite distance matrix.
struct MemberListSpec {
  std::vector<std::size_t> members;
  bool operator==(const MemberListSpec&) const = default;
};

using SetSpec = std::variant<PointListSpec, SegmentSpec, BoxSpec, CircleSpec, MemberListSpec>;

struct EuclideanBackendSpec {
  std::size_t dimension;
  bool operator==(const EuclideanBackendSpec&) const = default;
};

struct FiniteBackendSpec {
  std::vector<std::vector<double>> dmat;
  bool operator==(const FiniteBackendSpec&) const = default;
};

using BackendSpec = std::variant<EuclideanBackendSpec, FiniteBackendSpec>;

/// images[i] is the position in B of T(A[i]).
struct TableMapSpec {
  std::vector<std::size_t> images;
  bool operator==(const TableMapSpec&) const = default;
};

struct AffineMapSpec {
  AffineForm form;
  bool operator==(const AffineMapSpec&) const = default;
};

struct MultiTableMapSpec {
  std::vector<std::vector<std::size_t>> images;
  bool operator==(const MultiTableMapSpec&) const = default;
};

struct MultiAffineMapSpec {
  std::vector<AffineForm> branches;
  bool operator==(const MultiAffineMapSpec&) const = default;
};

using MapSpec = std::variant<TableMapSpec, AffineMapSpec, MultiTableMapSpec, MultiAffineMapSpec>;

struct PhiSpec {
  std::string kind;  // "linear" | "rational"
  std::optional<double> c;
  bool operator==(const PhiSpec&) const = default;
};

struct DeltaSpec {
  std::string kind;  // "linear" | "constant"
  double value;
  bool operator==(const DeltaSpec&) const = default;
};

struct ClassSpec {
  MapClass name;
  std::optional<PhiSpec> phi;
  std::optional<DeltaSpec> delta;
  std::optional<std::vector<double>> eps_grid;
  std::optional<double> lambda;
  std::optional<double> alpha;
  bool operator==(const ClassSpec&) const = default;
};

struct ToleranceSpec {
  std::optional<double> tol;
  std::optional<double> step_tol;
  std::optional<double> residual_tol;
  std::optional<double> tol_snap;
  bool operator==(const ToleranceSpec&) const = default;
};

struct ScenarioDocument {
  std::string name;
  BackendSpec backend;
  SetSpec a;
  SetSpec b;
  MapSpec map;
  ClassSpec map_class;
  ToleranceSpec tolerances;
  std::optional<std::size_t> max_iters;
  std::optional<std::size_t> start;  // position in A
  std::optional<bool> require_certified;
  bool operator==(const ScenarioDocument&) const = default;
};

/// A document with its backend, sets and map built.
struct Scenario {
  ScenarioDocument document;
  std::shared_ptr<const MetricSpace> space;
  IndexedSet a;
  IndexedSet b;
  NonSelfMap map;
  SolveConfig config;
  double tol_snap;
};

/// Default tol: 1e-9.
double default_tolerance(const BackendSpec& backend);

/// Schema checks only. Throws Error(Schema) naming the offending path.
ScenarioDocument parse_document(std::string_view text);

/// Builds backend, sets and map. Errors: Schema (bad values), Resolution
/// (dangling indices, images outside B), Metric (finite matrix axioms).
Scenario instantiate(const ScenarioDocument& doc);

/// parse_document followed by a full instantiate() validation.
ScenarioDocument parse_scenario(std::string_view text);
Scenario load_scenario(std::string_view text);

/// Canonical form: sorted keys, two-space indentation, trailing newline.
std::string serialize_scenario(const ScenarioDocument& doc);

/// First 16 hex digits of the SHA-256 of the canonical form.
std::string scenario_digest(const ScenarioDocument& doc);

}  // namespace proxpoint
