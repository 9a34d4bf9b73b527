#include "proxpoint/scenario.hpp"

#include <openssl/sha.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "json.hpp"
#include "proxpoint/error.hpp"
#include "proxpoint/format.hpp"

namespace proxpoint {

using json = nlohmann::json;

namespace {

[[noreturn]] void fail(ErrorCode code, const std::string& path, const std::string& what) {
  throw Error(code, "at " + (path.empty() ? std::string("/") : path) + ": " + what);
}

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
  fail(ErrorCode::Schema, path, what);
}

void require_object(const json& v, const std::string& path) {
  if (!v.is_object()) schema_error(path, "expected an object");
}

void check_keys(const json& obj, const std::string& path,
                std::initializer_list<std::string_view> allowed) {
  require_object(obj, path);
  for (const auto& item : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
      schema_error(path + "/" + item.key(), "unknown field");
    }
  }
}

const json& field(const json& obj, const std::string& path, const std::string& key) {
  auto it = obj.find(key);
  if (it == obj.end()) schema_error(path + "/" + key, "missing field");
  return *it;
}

const json* optional_field(const json& obj, const std::string& key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

double get_number(const json& v, const std::string& path) {
  if (!v.is_number()) schema_error(path, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) schema_error(path, "expected a finite number");
  return d;
}

double get_positive(const json& v, const std::string& path) {
  const double d = get_number(v, path);
  if (!(d > 0.0)) schema_error(path, "expected a positive number");
  return d;
}

std::size_t get_index(const json& v, const std::string& path) {
  if (!v.is_number_integer() || (v.is_number_integer() && v.get<long long>() < 0)) {
    schema_error(path, "expected a nonnegative integer");
  }
  return v.get<std::size_t>();
}

std::size_t get_count(const json& v, const std::string& path) {
  const std::size_t n = get_index(v, path);
  if (n == 0) schema_error(path, "expected a positive integer");
  return n;
}

std::vector<double> get_vector(const json& v, const std::string& path) {
  if (!v.is_array()) schema_error(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(get_number(v[i], path + "/" + std::to_string(i)));
  return out;
}

std::vector<std::vector<double>> get_matrix(const json& v, const std::string& path) {
  if (!v.is_array()) schema_error(path, "expected an array of arrays");
  std::vector<std::vector<double>> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(get_vector(v[i], path + "/" + std::to_string(i)));
  return out;
}

std::vector<std::size_t> get_indices(const json& v, const std::string& path) {
  if (!v.is_array()) schema_error(path, "expected an array of indices");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(get_index(v[i], path + "/" + std::to_string(i)));
  return out;
}

AffineForm parse_affine(const json& v, const std::string& path,
                        std::initializer_list<std::string_view> allowed) {
  check_keys(v, path, allowed);
  return AffineForm{get_matrix(field(v, path, "matrix"), path + "/matrix"),
                    get_vector(field(v, path, "offset"), path + "/offset")};
}

BackendSpec parse_backend(const json& v, const std::string& path) {
  require_object(v, path);
  const json& kind = field(v, path, "kind");
  if (kind == "euclidean") {
    check_keys(v, path, {"kind", "dimension"});
    return EuclideanBackendSpec{get_count(field(v, path, "dimension"), path + "/dimension")};
  }
  if (kind == "finite") {
    check_keys(v, path, {"kind", "dmat"});
    return FiniteBackendSpec{get_matrix(field(v, path, "dmat"), path + "/dmat")};
  }
  schema_error(path + "/kind", "expected \"euclidean\" or \"finite\"");
}

SetSpec parse_set(const json& v, const std::string& path) {
  check_keys(v, path, {"points", "segment", "box", "circle", "members"});
  if (v.size() != 1) {
    schema_error(path, "expected exactly one of points, segment, box, circle, members");
  }
  const auto& [key, body] = *v.items().begin();
  const std::string sub = path + "/" + key;
  if (key == "points") return PointListSpec{get_matrix(body, sub)};
  if (key == "members") return MemberListSpec{get_indices(body, sub)};
  if (key == "segment") {
    check_keys(body, sub, {"from", "to", "count"});
    return SegmentSpec{get_vector(field(body, sub, "from"), sub + "/from"),
                       get_vector(field(body, sub, "to"), sub + "/to"),
                       get_count(field(body, sub, "count"), sub + "/count")};
  }
  if (key == "box") {
    check_keys(body, sub, {"lower", "upper", "counts"});
    BoxSpec box{get_vector(field(body, sub, "lower"), sub + "/lower"),
                get_vector(field(body, sub, "upper"), sub + "/upper"),
                get_indices(field(body, sub, "counts"), sub + "/counts")};
    for (std::size_t i = 0; i < box.counts.size(); ++i) {
      if (box.counts[i] == 0) schema_error(sub + "/counts/" + std::to_string(i), "expected a positive integer");
    }
    return box;
  }
  check_keys(body, sub, {"center", "radius", "count"});
  return CircleSpec{get_vector(field(body, sub, "center"), sub + "/center"),
                    get_positive(field(body, sub, "radius"), sub + "/radius"),
                    get_count(field(body, sub, "count"), sub + "/count")};
}

MapSpec parse_map(const json& v, const std::string& path) {
  require_object(v, path);
  const json& kind = field(v, path, "kind");
  if (kind == "table") {
    check_keys(v, path, {"kind", "images"});
    return TableMapSpec{get_indices(field(v, path, "images"), path + "/images")};
  }
  if (kind == "affine") {
    return AffineMapSpec{parse_affine(v, path, {"kind", "matrix", "offset"})};
  }
  if (kind == "multi_table") {
    check_keys(v, path, {"kind", "images"});
    const json& images = field(v, path, "images");
    if (!images.is_array()) schema_error(path + "/images", "expected an array of index arrays");
    MultiTableMapSpec spec;
    for (std::size_t i = 0; i < images.size(); ++i) {
      spec.images.push_back(get_indices(images[i], path + "/images/" + std::to_string(i)));
    }
    return spec;
  }
  if (kind == "multi_affine") {
    check_keys(v, path, {"kind", "branches"});
    const json& branches = field(v, path, "branches");
    if (!branches.is_array()) schema_error(path + "/branches", "expected an array");
    MultiAffineMapSpec spec;
    for (std::size_t i = 0; i < branches.size(); ++i) {
      spec.branches.push_back(
          parse_affine(branches[i], path + "/branches/" + std::to_string(i), {"matrix", "offset"}));
    }
    return spec;
  }
  schema_error(path + "/kind", "expected table, affine, multi_table or multi_affine");
}

ClassSpec parse_class(const json& v, const std::string& path) {
  require_object(v, path);
  const json& name = field(v, path, "name");
  if (!name.is_string()) schema_error(path + "/name", "expected a string");
  ClassSpec spec{};
  try {
    spec.name = parse_map_class(name.get<std::string>());
  } catch (const Error&) {
    schema_error(path + "/name",
                 "expected weakly_contractive, nonexpansive, meir_keeler or multivalued");
  }
  switch (spec.name) {
    case MapClass::WeaklyContractive: check_keys(v, path, {"name", "phi"}); break;
    case MapClass::Nonexpansive: check_keys(v, path, {"name", "lambda"}); break;
    case MapClass::MeirKeeler: check_keys(v, path, {"name", "delta", "eps_grid"}); break;
    case MapClass::Multivalued: check_keys(v, path, {"name", "alpha"}); break;
  }
  if (const json* phi = optional_field(v, "phi")) {
    const std::string sub = path + "/phi";
    require_object(*phi, sub);
    const json& kind = field(*phi, sub, "kind");
    if (kind == "linear") {
      check_keys(*phi, sub, {"kind", "c"});
      spec.phi = PhiSpec{"linear", get_number(field(*phi, sub, "c"), sub + "/c")};
    } else if (kind == "rational") {
      check_keys(*phi, sub, {"kind"});
      spec.phi = PhiSpec{"rational", std::nullopt};
    } else {
      schema_error(sub + "/kind", "expected \"linear\" or \"rational\"");
    }
  }
  if (const json* delta = optional_field(v, "delta")) {
    const std::string sub = path + "/delta";
    require_object(*delta, sub);
    const json& kind = field(*delta, sub, "kind");
    if (kind == "linear") {
      check_keys(*delta, sub, {"kind", "factor"});
      spec.delta = DeltaSpec{"linear", get_positive(field(*delta, sub, "factor"), sub + "/factor")};
    } else if (kind == "constant") {
      check_keys(*delta, sub, {"kind", "value"});
      spec.delta = DeltaSpec{"constant", get_positive(field(*delta, sub, "value"), sub + "/value")};
    } else {
      schema_error(sub + "/kind", "expected \"linear\" or \"constant\"");
    }
  }
  if (const json* grid = optional_field(v, "eps_grid")) {
    spec.eps_grid = get_vector(*grid, path + "/eps_grid");
    if (spec.eps_grid->empty()) schema_error(path + "/eps_grid", "expected a nonempty array");
    for (std::size_t i = 0; i < spec.eps_grid->size(); ++i) {
      if (!((*spec.eps_grid)[i] > 0.0)) {
        schema_error(path + "/eps_grid/" + std::to_string(i), "expected a positive number");
      }
    }
  }
  if (const json* lambda = optional_field(v, "lambda")) {
    spec.lambda = get_number(*lambda, path + "/lambda");
    if (!(*spec.lambda > 0.0 && *spec.lambda < 1.0)) schema_error(path + "/lambda", "expected a value in (0,1)");
  }
  if (const json* alpha = optional_field(v, "alpha")) {
    spec.alpha = get_number(*alpha, path + "/alpha");
    if (!(*spec.alpha > 0.0 && *spec.alpha < 1.0)) schema_error(path + "/alpha", "expected a value in (0,1)");
  }
  return spec;
}

ToleranceSpec parse_tolerances(const json& v, const std::string& path) {
  check_keys(v, path, {"tol", "step_tol", "residual_tol", "tol_snap"});
  ToleranceSpec spec;
  auto read = [&](const char* key, std::optional<double>& out) {
    if (const json* f = optional_field(v, key)) out = get_positive(*f, path + "/" + key);
  };
  read("tol", spec.tol);
  read("step_tol", spec.step_tol);
  read("residual_tol", spec.residual_tol);
  read("tol_snap", spec.tol_snap);
  return spec;
}

json affine_to_json(const AffineForm& form) {
  return json{{"matrix", form.matrix}, {"offset", form.offset}};
}

json to_json(const SetSpec& set) {
  return std::visit(
      [](const auto& s) -> json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, PointListSpec>) {
          return json{{"points", s.points}};
        } else if constexpr (std::is_same_v<T, SegmentSpec>) {
          return json{{"segment", {{"from", s.from}, {"to", s.to}, {"count", s.count}}}};
        } else if constexpr (std::is_same_v<T, BoxSpec>) {
          return json{{"box", {{"lower", s.lower}, {"upper", s.upper}, {"counts", s.counts}}}};
        } else if constexpr (std::is_same_v<T, CircleSpec>) {
          return json{{"circle", {{"center", s.center}, {"radius", s.radius}, {"count", s.count}}}};
        } else {
          return json{{"members", s.members}};
        }
      },
      set);
}

json to_json(const MapSpec& map) {
  return std::visit(
      [](const auto& m) -> json {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, TableMapSpec>) {
          return json{{"kind", "table"}, {"images", m.images}};
        } else if constexpr (std::is_same_v<T, AffineMapSpec>) {
          json j = affine_to_json(m.form);
          j["kind"] = "affine";
          return j;
        } else if constexpr (std::is_same_v<T, MultiTableMapSpec>) {
          return json{{"kind", "multi_table"}, {"images", m.images}};
        } else {
          json branches = json::array();
          for (const auto& b : m.branches) branches.push_back(affine_to_json(b));
          return json{{"kind", "multi_affine"}, {"branches", branches}};
        }
      },
      map);
}

json to_json(const ClassSpec& spec) {
  json j{{"name", std::string(to_string(spec.name))}};
  if (spec.phi) {
    j["phi"] = json{{"kind", spec.phi->kind}};
    if (spec.phi->c) j["phi"]["c"] = *spec.phi->c;
  }
  if (spec.delta) {
    j["delta"] = json{{"kind", spec.delta->kind},
                      {spec.delta->kind == "linear" ? "factor" : "value", spec.delta->value}};
  }
  if (spec.eps_grid) j["eps_grid"] = *spec.eps_grid;
  if (spec.lambda) j["lambda"] = *spec.lambda;
  if (spec.alpha) j["alpha"] = *spec.alpha;
  return j;
}

json to_json(const ScenarioDocument& doc) {
  json j;
  j["schema"] = std::string(kScenarioSchema);
  j["name"] = doc.name;
  j["backend"] = std::visit(
      [](const auto& b) -> json {
        if constexpr (std::is_same_v<std::decay_t<decltype(b)>, EuclideanBackendSpec>) {
          return json{{"kind", "euclidean"}, {"dimension", b.dimension}};
        } else {
          return json{{"kind", "finite"}, {"dmat", b.dmat}};
        }
      },
      doc.backend);
  j["A"] = to_json(doc.a);
  j["B"] = to_json(doc.b);
  j["map"] = to_json(doc.map);
  j["class"] = to_json(doc.map_class);
  json tol = json::object();
  if (doc.tolerances.tol) tol["tol"] = *doc.tolerances.tol;
  if (doc.tolerances.step_tol) tol["step_tol"] = *doc.tolerances.step_tol;
  if (doc.tolerances.residual_tol) tol["residual_tol"] = *doc.tolerances.residual_tol;
  if (doc.tolerances.tol_snap) tol["tol_snap"] = *doc.tolerances.tol_snap;
  if (!tol.empty()) j["tolerances"] = tol;
  if (doc.max_iters) j["max_iters"] = *doc.max_iters;
  if (doc.start) j["start"] = *doc.start;
  if (doc.require_certified) j["require_certified"] = *doc.require_certified;
  return j;
}

// --- instantiation -------------------------------------------------------

std::vector<std::vector<double>> generate_points(const SetSpec& set, std::size_t dim,
                                                 const std::string& path) {
  auto require_dim = [&](const std::vector<double>& v, const std::string& sub) {
    if (v.size() != dim) {
      schema_error(sub, "expected " + std::to_string(dim) + " coordinates, got " +
                            std::to_string(v.size()));
    }
  };
  std::vector<std::vector<double>> out;
  if (const auto* list = std::get_if<PointListSpec>(&set)) {
    for (std::size_t i = 0; i < list->points.size(); ++i) {
      require_dim(list->points[i], path + "/points/" + std::to_string(i));
    }
    out = list->points;
  } else if (const auto* seg = std::get_if<SegmentSpec>(&set)) {
    require_dim(seg->from, path + "/segment/from");
    require_dim(seg->to, path + "/segment/to");
    for (std::size_t i = 0; i < seg->count; ++i) {
      const double s = seg->count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(seg->count - 1);
      std::vector<double> p(dim);
      for (std::size_t k = 0; k < dim; ++k) p[k] = seg->from[k] + (seg->to[k] - seg->from[k]) * s;
      out.push_back(std::move(p));
    }
  } else if (const auto* box = std::get_if<BoxSpec>(&set)) {
    require_dim(box->lower, path + "/box/lower");
    require_dim(box->upper, path + "/box/upper");
    if (box->counts.size() != dim) {
      schema_error(path + "/box/counts", "expected " + std::to_string(dim) + " counts");
    }
    std::vector<std::size_t> idx(dim, 0);
    while (true) {
      std::vector<double> p(dim);
      for (std::size_t k = 0; k < dim; ++k) {
        const double s = box->counts[k] == 1
                             ? 0.0
                             : static_cast<double>(idx[k]) / static_cast<double>(box->counts[k] - 1);
        p[k] = box->lower[k] + (box->upper[k] - box->lower[k]) * s;
      }
      out.push_back(std::move(p));
      std::size_t k = dim;
      while (k > 0 && ++idx[k - 1] == box->counts[k - 1]) idx[--k] = 0;
      if (k == 0) break;
    }
  } else if (const auto* circle = std::get_if<CircleSpec>(&set)) {
    if (dim != 2) schema_error(path + "/circle", "circle grids need a 2-dimensional backend");
    require_dim(circle->center, path + "/circle/center");
    for (std::size_t i = 0; i < circle->count; ++i) {
      const double theta = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(circle->count);
      out.push_back({circle->center[0] + circle->radius * std::cos(theta),
                     circle->center[1] + circle->radius * std::sin(theta)});
    }
  } else {
    schema_error(path + "/members", "member lists need a finite backend");
  }
  if (out.empty()) schema_error(path, "set is empty");
  return out;
}

IndexedSet make_set(std::shared_ptr<const MetricSpace> space, std::vector<PointId> members,
                    const std::string& path) {
  try {
    return IndexedSet(std::move(space), std::move(members));
  } catch (const Error& e) {
    schema_error(path, e.message());
  }
}

template <typename Build>
auto with_path(const std::string& path, Build&& build) -> decltype(build()) {
  try {
    return build();
  } catch (const Error& e) {
    const ErrorCode code = e.code() == ErrorCode::Resolution ? ErrorCode::Resolution : ErrorCode::Schema;
    fail(code, path, e.message());
  }
}

}  // namespace

double default_tolerance(const BackendSpec& backend) {
  (void)backend;
  return 1e-9;
}

ScenarioDocument parse_document(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Schema, std::string("invalid JSON: ") + e.what());
  }
  check_keys(root, "", {"schema", "name", "backend", "A", "B", "map", "class", "tolerances",
                        "max_iters", "start", "require_certified"});
  const json& schema = field(root, "", "schema");
  if (schema != kScenarioSchema) {
    schema_error("/schema", "expected \"" + std::string(kScenarioSchema) + "\"");
  }
  const json& name = field(root, "", "name");
  if (!name.is_string()) schema_error("/name", "expected a string");

  ScenarioDocument doc{name.get<std::string>(),
                       parse_backend(field(root, "", "backend"), "/backend"),
                       parse_set(field(root, "", "A"), "/A"),
                       parse_set(field(root, "", "B"), "/B"),
                       parse_map(field(root, "", "map"), "/map"),
                       parse_class(field(root, "", "class"), "/class"),
                       {},
                       std::nullopt,
                       std::nullopt,
                       std::nullopt};
  if (const json* t = optional_field(root, "tolerances")) doc.tolerances = parse_tolerances(*t, "/tolerances");
  if (const json* m = optional_field(root, "max_iters")) doc.max_iters = get_count(*m, "/max_iters");
  if (const json* s = optional_field(root, "start")) doc.start = get_index(*s, "/start");
  if (const json* r = optional_field(root, "require_certified")) {
    if (!r->is_boolean()) schema_error("/require_certified", "expected true or false");
    doc.require_certified = r->get<bool>();
  }
  return doc;
}

Scenario instantiate(const ScenarioDocument& doc) {
  const double tol = doc.tolerances.tol.value_or(default_tolerance(doc.backend));
  const double tol_snap = doc.tolerances.tol_snap.value_or(tol);

  std::shared_ptr<const MetricSpace> space;
  std::vector<PointId> a_ids;
  std::vector<PointId> b_ids;
  if (const auto* finite = std::get_if<FiniteBackendSpec>(&doc.backend)) {
    FiniteSpace fs = with_path("/backend/dmat", [&] { return FiniteSpace(finite->dmat); });
    const AxiomReport axioms = verify_metric_axioms(fs, tol);
    if (!axioms.ok()) {
      const AxiomViolation& v = axioms.violations.front();
      std::string where = "(" + std::to_string(v.i) + "," + std::to_string(v.j);
      if (v.kind == AxiomKind::Triangle) where += "," + std::to_string(v.k);
      fail(ErrorCode::Metric, "/backend/dmat",
           std::string(to_string(v.kind)) + " axiom violated at " + where + ") by " +
               format_number(v.excess) + " (" + std::to_string(axioms.total) + " violations)");
    }
    const std::size_t n = fs.size();
    space = std::make_shared<const MetricSpace>(std::move(fs));
    auto members = [&](const SetSpec& set, const std::string& path) {
      const auto* list = std::get_if<MemberListSpec>(&set);
      if (list == nullptr) schema_error(path, "finite backends take member lists");
      for (std::size_t i = 0; i < list->members.size(); ++i) {
        if (list->members[i] >= n) {
          fail(ErrorCode::Resolution, path + "/members/" + std::to_string(i),
               "index " + std::to_string(list->members[i]) + " outside a " + std::to_string(n) +
                   "-point space");
        }
      }
      return std::vector<PointId>(list->members.begin(), list->members.end());
    };
    a_ids = members(doc.a, "/A");
    b_ids = members(doc.b, "/B");
  } else {
    const std::size_t dim = std::get<EuclideanBackendSpec>(doc.backend).dimension;
    EuclideanSpace es(dim);
    for (auto& p : generate_points(doc.a, dim, "/A")) a_ids.push_back(es.add(EuclideanPoint(std::move(p))));
    for (auto& p : generate_points(doc.b, dim, "/B")) b_ids.push_back(es.add(EuclideanPoint(std::move(p))));
    space = std::make_shared<const MetricSpace>(std::move(es));
  }

  IndexedSet a = make_set(space, std::move(a_ids), "/A");
  IndexedSet b = make_set(space, std::move(b_ids), "/B");

  auto resolve_b = [&](std::size_t pos, const std::string& path) -> PointId {
    if (pos >= b.size()) {
      fail(ErrorCode::Resolution, path,
           "position " + std::to_string(pos) + " outside B (" + std::to_string(b.size()) + " points)");
    }
    return b[pos];
  };
  auto require_domain = [&](std::size_t entries, const std::string& path) {
    if (entries != a.size()) {
      fail(ErrorCode::Resolution, path,
           "map has " + std::to_string(entries) + " entries but A has " + std::to_string(a.size()) +
               " points");
    }
  };

  NonSelfMap map = std::visit(
      [&](const auto& m) -> NonSelfMap {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, TableMapSpec>) {
          require_domain(m.images.size(), "/map/images");
          std::vector<PointId> images;
          for (std::size_t i = 0; i < m.images.size(); ++i) {
            images.push_back(resolve_b(m.images[i], "/map/images/" + std::to_string(i)));
          }
          return SingleValuedMap::table(a, b, std::move(images));
        } else if constexpr (std::is_same_v<T, AffineMapSpec>) {
          return with_path("/map", [&] { return SingleValuedMap::affine(a, b, m.form, tol_snap); });
        } else if constexpr (std::is_same_v<T, MultiTableMapSpec>) {
          require_domain(m.images.size(), "/map/images");
          std::vector<std::vector<PointId>> images;
          for (std::size_t i = 0; i < m.images.size(); ++i) {
            const std::string sub = "/map/images/" + std::to_string(i);
            if (m.images[i].empty()) fail(ErrorCode::Resolution, sub, "image set is empty");
            std::vector<PointId> row;
            for (std::size_t k = 0; k < m.images[i].size(); ++k) {
              row.push_back(resolve_b(m.images[i][k], sub + "/" + std::to_string(k)));
            }
            images.push_back(std::move(row));
          }
          return MultiValuedMap::table(a, b, std::move(images));
        } else {
          return with_path("/map", [&] {
            return MultiValuedMap::affine_branches(a, b, m.branches, tol_snap);
          });
        }
      },
      doc.map);

  const bool multivalued = std::holds_alternative<MultiValuedMap>(map);
  if (multivalued != (doc.map_class.name == MapClass::Multivalued)) {
    schema_error("/class/name", multivalued ? "a multivalued map needs class multivalued"
                                            : "class multivalued needs a multivalued map");
  }

  SolveConfig config;
  config.map_class = doc.map_class.name;
  config.tol = tol;
  if (doc.tolerances.step_tol) config.stop.step_tol = *doc.tolerances.step_tol;
  if (doc.tolerances.residual_tol) config.stop.residual_tol = *doc.tolerances.residual_tol;
  if (doc.max_iters) config.stop.max_iters = *doc.max_iters;
  if (doc.require_certified) config.require_certified = *doc.require_certified;
  if (doc.start) {
    if (*doc.start >= a.size()) {
      fail(ErrorCode::Resolution, "/start",
           "position " + std::to_string(*doc.start) + " outside A (" + std::to_string(a.size()) +
               " points)");
    }
    config.start = a[*doc.start];
  }
  const ClassSpec& cls = doc.map_class;
  if (cls.phi) {
    config.params.phi = cls.phi->kind == "rational"
                            ? ComparisonFunction::rational()
                            : with_path("/class/phi/c", [&] { return ComparisonFunction::linear(*cls.phi->c); });
  }
  if (cls.delta) {
    config.params.delta = cls.delta->kind == "linear" ? MeirKeelerModulus::linear(cls.delta->value)
                                                      : MeirKeelerModulus::constant(cls.delta->value);
  }
  if (cls.eps_grid) config.params.eps_grid = *cls.eps_grid;
  if (cls.lambda) config.params.lambda = *cls.lambda;
  if (cls.alpha) config.params.alpha = *cls.alpha;

  return Scenario{doc, std::move(space), std::move(a), std::move(b), std::move(map),
                  std::move(config), tol_snap};
}

ScenarioDocument parse_scenario(std::string_view text) {
  ScenarioDocument doc = parse_document(text);
  instantiate(doc);
  return doc;
}

Scenario load_scenario(std::string_view text) { return instantiate(parse_document(text)); }

std::string serialize_scenario(const ScenarioDocument& doc) { return to_json(doc).dump(2) + "\n"; }

std::string scenario_digest(const ScenarioDocument& doc) {
  const std::string canonical = serialize_scenario(doc);
  unsigned char hash[SHA256_DIGEST_LENGTH];
  SHA256(reinterpret_cast<const unsigned char*>(canonical.data()), canonical.size(), hash);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (int i = 0; i < 8; ++i) {
    out.push_back(kHex[hash[i] >> 4]);
    out.push_back(kHex[hash[i] & 0xf]);
  }
  return out;
}

}  // namespace proxpoint
