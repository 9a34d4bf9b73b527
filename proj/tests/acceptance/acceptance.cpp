// Acceptance suite: one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "instances.hpp"
#include "proxpoint/cli.hpp"
#include "proxpoint/error.hpp"
#include "proxpoint/format.hpp"
#include "proxpoint/oracle.hpp"
#include "proxpoint/scenario.hpp"

using namespace proxpoint;
namespace pt = proxpoint::testing;

namespace {

const std::string kSource = PROXPOINT_SOURCE_DIR;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Scenario fixture(const std::string& name) {
  return load_scenario(read_file(kSource + "/fixtures/" + name + ".json"));
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

// Every translate instance built by criteria 1 and 4, for criterion 5.
std::vector<std::string> p_property_failures;
std::size_t p_property_checked = 0;

void record_p_property(const PPropertyVerdict& v, const std::string& label) {
  ++p_property_checked;
  if (!v.holds) p_property_failures.push_back(label);
}

// --- 1 -----------------------------------------------------------------------

struct RandomInstance {
  pt::TranslateInstance inst;
  NonSelfMap map;
  MapClass map_class;
  ClassParameters params;
};

RandomInstance random_instance(pt::Rng& rng, int index) {
  const MapClass cls = static_cast<MapClass>(index % 4);
  const bool orthogonal = (index / 4) % 2 == 0;
  const std::size_t extra_a = pt::uniform_index(rng, 0, 3);
  const std::size_t extra_b = pt::uniform_index(rng, 0, 3);
  const bool large = index % 10 == 0;
  const std::size_t dim = large ? 4 : pt::uniform_index(rng, 3, 4);

  pt::PointMap f;
  if (cls == MapClass::Nonexpansive) {
    f = pt::mirror_isometry(rng, pt::uniform_index(rng, 1, 90), pt::uniform_index(rng, 0, 3),
                            dim);
  } else {
    // Up to 1 + 39 * 5 = 196 core points.
    const std::size_t seeds = pt::uniform_index(rng, 1, large ? 39 : 8);
    f = pt::self_similar_contraction(rng, seeds, pt::uniform_index(rng, 1, 5), dim);
  }
  pt::shuffle(rng, f);
  auto inst = pt::make_translate(rng, f.points, orthogonal, extra_a, extra_b);

  ClassParameters params;
  params.phi = index % 8 < 4 ? ComparisonFunction::linear(0.5) : ComparisonFunction::linear(0.3);
  params.delta = MeirKeelerModulus::linear(1.0);  // (1 - k) / k with k = 1/2
  params.alpha = 0.5;
  NonSelfMap map = cls == MapClass::Multivalued ? NonSelfMap(pt::lifted_two_step(inst, f))
                                                : NonSelfMap(pt::lifted_table(inst, f));
  return RandomInstance{std::move(inst), std::move(map), cls, params};
}

Outcome reduction_equivalence() {
  const auto start = std::chrono::steady_clock::now();
  constexpr int kInstances = 240;
  constexpr double kTol = 1e-9;
  pt::Rng rng(20240101);
  Outcome out;
  std::size_t largest = 0;
  std::size_t with_bpp = 0;
  for (int i = 0; i < kInstances; ++i) {
    RandomInstance r = random_instance(rng, i);
    largest = std::max(largest, r.inst.a.size());
    const std::string label = "instance " + std::to_string(i);
    out.require(r.inst.a.size() <= 200, label + " has more than 200 points");

    SolveConfig config;
    config.map_class = r.map_class;
    config.params = r.params;
    config.tol = kTol;
    PreparedProblem p = prepare(r.inst.a, r.inst.b, r.map, config);
    record_p_property(p.verdict, label);
    out.require(p.certification.holds, label + " not certified " + p.certification.class_name);

    const std::vector<PointId> bpp = brute_force_bpp(r.map, kTol).best_proximity_points(kTol);
    const std::vector<PointId> fixed = brute_force_fixed_points(p.reduced, kTol).minimizers;
    out.require(bpp == fixed, label + " (" + std::string(to_string(r.map_class)) + "): " +
                                  std::to_string(bpp.size()) + " best proximity points vs " +
                                  std::to_string(fixed.size()) + " fixed points");
    with_bpp += !bpp.empty();
  }
  const double secs = seconds_since(start);
  out.require(secs < 60.0, "took " + format_number(secs) + " s");
  if (out.pass) {
    out.detail = std::to_string(kInstances) + " instances, |A| <= " + std::to_string(largest) + ", " +
                 std::to_string(with_bpp) + " with best proximity points, " + format_number(secs) + " s";
  }
  return out;
}

// --- 2, 3 --------------------------------------------------------------------

Outcome segments_end_to_end() {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  Scenario s = fixture("segments");
  PreparedProblem p = prepare(s.a, s.b, s.map, s.config);
  BestProximityResult r = solve_from(p, s.config, *s.config.start);
  AgreementReport agreement = cross_check(r, brute_force_bpp(s.map, s.config.tol), *s.space, s.config.tol);
  const double secs = seconds_since(start);

  const double h = 1.0 / 1024;
  const auto& x = s.space->point(r.x_star);
  const double to_origin = std::hypot(x[0], x[1]);
  out.require(r.converged(), "did not converge");
  out.require(r.residual <= 1e-8, "residual " + format_number(r.residual));
  out.require(r.iterations <= 60, std::to_string(r.iterations) + " iterations");
  out.require(to_origin <= h, "x* is " + format_number(to_origin) + " from (0,0)");
  out.require(agreement.agrees, "oracle cross-check disagrees");
  out.require(secs < 1.0, "took " + format_number(secs) + " s");
  if (out.pass) {
    out.detail = "x* = (" + format_number(x[0]) + ", " + format_number(x[1]) + "), residual " +
                 format_number(r.residual) + ", " + std::to_string(r.iterations) + " iterations, " +
                 format_number(secs) + " s";
  }
  return out;
}

Outcome uniqueness_evidence() {
  Outcome out;
  Scenario s = fixture("segments");
  PreparedProblem p = prepare(s.a, s.b, s.map, s.config);
  MultiStartOutcome m = multi_start_solve(p, s.config, 20);
  const double bound = 10 * s.config.stop.step_tol;
  out.require(m.runs.size() == 20, std::to_string(m.runs.size()) + " starts");
  for (const auto& r : m.runs) out.require(r.converged(), "a start did not converge");
  out.require(m.max_disagreement <= bound, "max disagreement " + format_number(m.max_disagreement));
  if (out.pass) {
    out.detail = "20 starts, max pairwise disagreement " + format_number(m.max_disagreement) +
                 " <= " + format_number(bound);
  }
  return out;
}

// --- 4, 5 --------------------------------------------------------------------

Outcome isometry_invariants() {
  Outcome out;
  pt::Rng rng(4242);
  double worst_iso = 0.0;
  double worst_prox = 0.0;
  for (int i = 0; i < 100; ++i) {
    const std::size_t dim = pt::uniform_index(rng, 2, 5);
    auto core = pt::random_hyperplane_points(rng, pt::uniform_index(rng, 1, 120), dim);
    auto inst = pt::make_translate(rng, core, i % 2 == 0, pt::uniform_index(rng, 0, 4),
                                   pt::uniform_index(rng, 0, 4));
    const std::string label = "translate " + std::to_string(i);
    ProximityStructure ps = proximal_sets(inst.a, inst.b, 1e-9);
    PPropertyVerdict v = check_p_property(ps);
    record_p_property(v, label);
    if (!v.holds) {
      out.require(false, label + " fails the P-property");
      continue;
    }
    ProximityIsometry g = build_isometry(ps);
    IsometryReport rep = verify_isometry(g);
    worst_iso = std::max(worst_iso, rep.max_isometry_defect);
    worst_prox = std::max(worst_prox, rep.max_proximal_defect);
    out.require(rep.bijective, label + " pairing is not bijective");
    for (PointId x : g.a0.members()) out.require(g.invert(g.apply(x)) == x, label + " round trip on A0");
    for (PointId y : g.b0.members()) {
      auto x = g.invert(y);
      out.require(x && g.apply(*x) == y, label + " round trip on B0");
    }
  }
  out.require(worst_iso <= 1e-9, "isometry defect " + format_number(worst_iso));
  out.require(worst_prox <= 1e-9, "proximal defect " + format_number(worst_prox));
  if (out.pass) {
    out.detail = "100 instances, max isometry defect " + format_number(worst_iso) +
                 ", max proximal defect " + format_number(worst_prox) + ", round trips exact";
  }
  return out;
}

Outcome p_property_discrimination() {
  Outcome out;
  out.require(p_property_checked > 0, "no translate instances were checked");
  out.require(p_property_failures.empty(),
              p_property_failures.empty() ? "" : p_property_failures.front() + " fails the P-property");
  Scenario s = fixture("two_points_center");
  PPropertyVerdict v = check_p_property(proximal_sets(s.a, s.b, s.config.tol));
  out.require(!v.holds, "two-points-vs-center passes");
  out.require(v.witness.has_value(), "no witness");
  const double defect = v.witness ? v.witness->defect : NAN;
  out.require(std::abs(defect - 2.0) <= 1e-12, "witness defect " + format_number(defect));
  if (out.pass) {
    out.detail = std::to_string(p_property_checked) + " translate instances hold; two-points-vs-center fails with defect " +
                 format_number(defect);
  }
  return out;
}

// --- 6 -----------------------------------------------------------------------

Outcome hausdorff_properties() {
  Outcome out;
  pt::Rng rng(606);
  EuclideanSpace es(3);
  for (int i = 0; i < 200; ++i) {
    es.add(EuclideanPoint({pt::uniform(rng, -5, 5), pt::uniform(rng, -5, 5), pt::uniform(rng, -5, 5)}));
  }
  MetricSpace space(std::move(es));
  auto pick = [&] {
    std::vector<PointId> ids;
    const std::size_t n = pt::uniform_index(rng, 1, 12);
    while (ids.size() < n) {
      const PointId p = pt::uniform_index(rng, 0, space.size() - 1);
      if (std::find(ids.begin(), ids.end(), p) == ids.end()) ids.push_back(p);
    }
    return ids;
  };
  double worst_triangle = -INFINITY;
  for (int trial = 0; trial < 500; ++trial) {
    auto x = pick();
    auto y = pick();
    auto z = pick();
    const double hxy = hausdorff(space, x, y);
    const double hyx = hausdorff(space, y, x);
    out.require(hxy == hyx, "asymmetric at triple " + std::to_string(trial));

    auto x2 = x;
    std::shuffle(x2.begin(), x2.end(), rng);
    out.require(hausdorff(space, x, x2) == 0.0, "H(X,X) != 0 at triple " + std::to_string(trial));
    if (std::is_permutation(x.begin(), x.end(), y.begin(), y.end())) continue;
    out.require(hxy > 0.0, "distinct sets at distance 0");

    const double excess = hausdorff(space, x, z) - (hxy + hausdorff(space, y, z));
    worst_triangle = std::max(worst_triangle, excess);
    out.require(excess <= 1e-12, "triangle inequality off by " + format_number(excess));

    const std::vector<PointId> px{x[0]};
    const std::vector<PointId> py{y[0]};
    out.require(hausdorff(space, px, py) == space.distance(x[0], y[0]), "singleton case differs");
  }
  if (out.pass) {
    out.detail = "500 triples, worst triangle slack " + format_number(worst_triangle);
  }
  return out;
}

// --- 7, 8, 9 -----------------------------------------------------------------

Outcome multivalued_path() {
  Outcome out;
  Scenario s = fixture("segments_multi");
  PreparedProblem p = prepare(s.a, s.b, s.map, s.config);
  BestProximityResult r = solve_from(p, s.config, *s.config.start);
  AgreementReport agreement = cross_check(r, brute_force_bpp(s.map, s.config.tol), *s.space, s.config.tol);
  out.require(s.config.map_class == MapClass::Multivalued && s.config.params.alpha == 0.5,
              "fixture is not the alpha = 1/2 multivalued instance");
  out.require(p.certification.holds, "not certified");
  out.require(r.converged(), "did not converge");
  out.require(r.residual <= 1e-8, "residual " + format_number(r.residual));
  out.require(agreement.agrees, "oracle cross-check disagrees");
  if (out.pass) {
    const auto& x = s.space->point(r.x_star);
    out.detail = "x* = (" + format_number(x[0]) + ", " + format_number(x[1]) + "), D(x*,Tx*) - 1 = " +
                 format_number(r.residual) + ", " + std::to_string(r.iterations) + " iterations";
  }
  return out;
}

Outcome nonexpansive_path() {
  Outcome out;
  Scenario s = fixture("reflection");
  out.require(s.config.map_class == MapClass::Nonexpansive && s.config.params.lambda == 0.5,
              "fixture is not the lambda = 1/2 nonexpansive instance");
  PreparedProblem p = prepare(s.a, s.b, s.map, s.config);
  const PointId x0 = *s.config.start;
  BestProximityResult km = solve_from(p, s.config, x0);
  const double t = s.space->point(km.x_star)[1];
  out.require(km.converged(), "averaged iteration did not converge");
  out.require(std::abs(t - 0.5) <= s.config.stop.step_tol, "stopped at t = " + format_number(t));
  out.require(km.iterations <= 3, std::to_string(km.iterations) + " iterations");

  StoppingRule stop = s.config.stop;
  stop.max_iters = 1000;
  BestProximityResult picard = picard_solve(p.reduced, x0, stop);
  out.require(picard.termination == Termination::MaxIters, "plain Picard converged");
  if (out.pass) {
    out.detail = "averaged: t = " + format_number(t) + " after " + std::to_string(km.iterations) +
                 " iteration(s); Picard: " + std::string(to_string(picard.termination)) + " after " +
                 std::to_string(picard.iterations);
  }
  return out;
}

Outcome meir_keeler_certification() {
  Outcome out;
  constexpr double kTol = 1e-9;
  Scenario seg = fixture("segments");
  const auto& half = std::get<SingleValuedMap>(seg.map);
  const MeirKeelerModulus delta = MeirKeelerModulus::linear(1.0);  // eps (1 - k) / k, k = 1/2
  const std::vector<double> grid = default_eps_grid(seg.a);
  out.require(certify_meir_keeler(half, delta, seg.a, grid, kTol).holds, "k = 1/2 contraction refuted");
  for (double eps : grid) {
    const std::vector<double> one{eps};
    out.require(certify_meir_keeler(half, delta, seg.a, one, kTol).holds,
                "k = 1/2 contraction refuted at eps = " + format_number(eps));
  }

  Scenario dbl = fixture("doubling");
  const auto& doubling = std::get<SingleValuedMap>(dbl.map);
  CertificationReport r = certify_meir_keeler(doubling, delta, dbl.a, default_eps_grid(dbl.a), kTol);
  out.require(!r.holds, "doubling map certified");
  out.require(r.witness && r.witness->eps, "no witness");
  if (r.witness && r.witness->eps) {
    const auto& w = *r.witness;
    const double eps = *w.eps;
    const double d = dbl.space->distance(w.x, w.y);
    const double image_d = dbl.space->distance(doubling.evaluate(w.x).point, doubling.evaluate(w.y).point);
    out.require(d < eps + delta(eps), "witness pair is not within eps + delta");
    out.require(image_d > eps + kTol, "witness images are within eps");
    if (out.pass) {
      out.detail = std::to_string(grid.size()) + " grid eps certified; doubling refuted at eps = " +
                   format_number(eps) + " with d(x,y) = " + format_number(d) + ", d(Tx,Ty) = " +
                   format_number(image_d);
    }
  }
  return out;
}

// --- 10 ----------------------------------------------------------------------

Outcome golden_cli_runs() {
  Outcome out;
  std::istringstream cases(read_file(kSource + "/tests/golden/cases.txt"));
  std::string line;
  std::size_t count = 0;
  while (std::getline(cases, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    std::string golden;
    int expected_exit = 0;
    std::string command;
    std::string name;
    fields >> golden >> expected_exit >> command >> name;
    std::vector<std::string> args{command, kSource + "/fixtures/" + name + ".json", "--no-timings"};
    for (std::string extra; fields >> extra;) args.push_back(extra);

    std::ostringstream report;
    std::ostringstream err;
    const int code = cli::run(args, report, err);
    out.require(code == expected_exit,
                golden + ": exit " + std::to_string(code) + ", expected " + std::to_string(expected_exit));
    out.require(report.str() == read_file(kSource + "/tests/golden/" + golden), golden + ": report differs");
    ++count;
  }
  out.require(count > 0, "no golden cases");
  if (out.pass) out.detail = std::to_string(count) + " runs byte-identical with expected exit codes";
  return out;
}

}  // namespace

int main() {
  struct Criterion {
    const char* title;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"reduction equivalence on random finite instances", reduction_equivalence},
      {"segments end-to-end solve", segments_end_to_end},
      {"uniqueness evidence from 20 strided starts", uniqueness_evidence},
      {"isometry invariants on random translates", isometry_invariants},
      {"P-property discrimination", p_property_discrimination},
      {"Hausdorff metric properties", hausdorff_properties},
      {"multivalued path (Nadler selection)", multivalued_path},
      {"nonexpansive path (averaged iteration)", nonexpansive_path},
      {"Meir-Keeler certification", meir_keeler_certification},
      {"golden CLI runs", golden_cli_runs},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failed += !o.pass;
    std::printf("%s  %2zu  %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].title, o.detail.c_str());
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
