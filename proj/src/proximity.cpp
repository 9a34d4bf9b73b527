#include "proxpoint/proximity.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "proxpoint/error.hpp"
#include "proxpoint/format.hpp"

namespace proxpoint {

namespace {

void require_same_space(const IndexedSet& a, const IndexedSet& b) {
  if (!a.same_space(b)) {
    throw Error(ErrorCode::InvalidArgument, "sets belong to different backends");
  }
}

}  // namespace

double point_set_distance(PointId x, const IndexedSet& s) {
  const MetricSpace& space = s.space();
  double best = std::numeric_limits<double>::infinity();
  for (PointId y : s.members()) best = std::min(best, space.distance(x, y));
  return best;
}

double set_distance(const IndexedSet& a, const IndexedSet& b) {
  require_same_space(a, b);
  double best = std::numeric_limits<double>::infinity();
  for (PointId x : a.members()) best = std::min(best, point_set_distance(x, b));
  return best;
}

ProximityStructure proximal_sets(const IndexedSet& a, const IndexedSet& b, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
  const double dist_ab = set_distance(a, b);
  const MetricSpace& space = a.space();

  std::vector<ProximalPair> pairs;
  std::vector<bool> in_a0(a.size(), false);
  std::vector<bool> in_b0(b.size(), false);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      const double d = space.distance(a[i], b[j]);
      if (d <= dist_ab + tol) {
        pairs.push_back({a[i], b[j], d});
        in_a0[i] = true;
        in_b0[j] = true;
      }
    }
  }

  std::vector<PointId> a0;
  std::vector<PointId> b0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (in_a0[i]) a0.push_back(a[i]);
  }
  for (std::size_t j = 0; j < b.size(); ++j) {
    if (in_b0[j]) b0.push_back(b[j]);
  }
  return ProximityStructure{a,
                            b,
                            dist_ab,
                            IndexedSet(a.space_ptr(), std::move(a0)),
                            IndexedSet(b.space_ptr(), std::move(b0)),
                            std::move(pairs),
                            tol};
}

PPropertyVerdict check_p_property(const ProximityStructure& ps) {
  return check_p_property(ps, ps.tol);
}

PPropertyVerdict check_p_property(const ProximityStructure& ps, double tol) {
  const MetricSpace& space = ps.a.space();
  PPropertyVerdict verdict{true, 0.0, std::nullopt};
  PPropertyWitness worst{};
  bool have_worst = false;
  for (std::size_t p = 0; p < ps.pairs.size(); ++p) {
    for (std::size_t q = p + 1; q < ps.pairs.size(); ++q) {
      const ProximalPair& first = ps.pairs[p];
      const ProximalPair& second = ps.pairs[q];
      const double defect = std::abs(space.distance(first.x, second.x) -
                                     space.distance(first.y, second.y));
      if (!have_worst || defect > worst.defect) {
        worst = {first, second, defect};
        have_worst = true;
      }
    }
  }
  if (have_worst) verdict.max_defect = worst.defect;
  if (verdict.max_defect > tol) {
    verdict.holds = false;
    verdict.witness = worst;
  }
  return verdict;
}

PointId ProximityIsometry::apply(PointId x) const {
  auto pos = a0.position(x);
  if (!pos) {
    throw Error(ErrorCode::OutOfRange, "point " + std::to_string(x) + " is not in A0");
  }
  return forward[*pos];
}

std::optional<PointId> ProximityIsometry::invert(PointId y) const {
  auto pos = b0.position(y);
  if (!pos) return std::nullopt;
  return inverse[*pos];
}

ProximityIsometry build_isometry(const ProximityStructure& ps) {
  const PPropertyVerdict verdict = check_p_property(ps);
  if (!verdict.holds) {
    const auto& w = *verdict.witness;
    throw Error(ErrorCode::NotP,
                "P-property fails: pairs (" + std::to_string(w.first.x) + "," +
                    std::to_string(w.first.y) + ") and (" + std::to_string(w.second.x) + "," +
                    std::to_string(w.second.y) + ") have distance defect " +
                    format_number(w.defect));
  }

  std::vector<PointId> forward(ps.a0.size());
  std::vector<double> chosen_d(ps.a0.size(), std::numeric_limits<double>::infinity());
  std::vector<std::size_t> partner_count(ps.a0.size(), 0);
  for (const ProximalPair& pair : ps.pairs) {
    const std::size_t pos = *ps.a0.position(pair.x);
    ++partner_count[pos];
    // Pairs arrive in B order per x, so strict < keeps the lowest B position.
    if (pair.distance < chosen_d[pos]) {
      chosen_d[pos] = pair.distance;
      forward[pos] = pair.y;
    }
  }

  std::vector<std::string> warnings;
  for (std::size_t pos = 0; pos < ps.a0.size(); ++pos) {
    if (partner_count[pos] > 1) {
      warnings.push_back("point " + std::to_string(ps.a0[pos]) + " has " +
                         std::to_string(partner_count[pos]) +
                         " proximal partners within tol; kept the nearest");
    }
  }

  constexpr PointId kUnset = std::numeric_limits<PointId>::max();
  std::vector<PointId> inverse(ps.b0.size(), kUnset);
  for (std::size_t pos = 0; pos < ps.a0.size(); ++pos) {
    const std::size_t ypos = *ps.b0.position(forward[pos]);
    if (inverse[ypos] != kUnset) {
      throw Error(ErrorCode::NonFunctional,
                  "points " + std::to_string(inverse[ypos]) + " and " +
                      std::to_string(ps.a0[pos]) + " share the partner " +
                      std::to_string(forward[pos]));
    }
    inverse[ypos] = ps.a0[pos];
  }
  for (std::size_t ypos = 0; ypos < ps.b0.size(); ++ypos) {
    if (inverse[ypos] == kUnset) {
      throw Error(ErrorCode::NonFunctional, "point " + std::to_string(ps.b0[ypos]) +
                                                " of B0 is not the selected partner of any point");
    }
  }

  ProximityIsometry g{ps.a0, ps.b0, std::move(forward), std::move(inverse),
                      ps.dist_ab, ps.tol, std::move(warnings)};
  const IsometryReport report = verify_isometry(g);
  if (!report.passes(ps.tol)) {
    throw Error(ErrorCode::NonFunctional,
                "pairing is not an isometry within tol (defect " +
                    format_number(report.max_isometry_defect) + ")");
  }
  return g;
}

IsometryReport verify_isometry(const ProximityIsometry& g) {
  const MetricSpace& space = g.a0.space();
  IsometryReport report;

  bool bijective = g.forward.size() == g.a0.size() && g.inverse.size() == g.b0.size() &&
                   g.a0.size() == g.b0.size();
  for (std::size_t pos = 0; bijective && pos < g.a0.size(); ++pos) {
    auto ypos = g.b0.position(g.forward[pos]);
    bijective = ypos && g.inverse[*ypos] == g.a0[pos];
  }
  for (std::size_t ypos = 0; bijective && ypos < g.b0.size(); ++ypos) {
    auto xpos = g.a0.position(g.inverse[ypos]);
    bijective = xpos && g.forward[*xpos] == g.b0[ypos];
  }
  report.bijective = bijective;

  for (std::size_t i = 0; i < g.a0.size() && i < g.forward.size(); ++i) {
    const double proximal = std::abs(space.distance(g.a0[i], g.forward[i]) - g.dist_ab);
    report.max_proximal_defect = std::max(report.max_proximal_defect, proximal);
    for (std::size_t j = i + 1; j < g.a0.size() && j < g.forward.size(); ++j) {
      const double defect = std::abs(space.distance(g.a0[i], g.a0[j]) -
                                     space.distance(g.forward[i], g.forward[j]));
      if (defect > report.max_isometry_defect) {
        report.max_isometry_defect = defect;
        report.isometry_witness = std::make_pair(g.a0[i], g.a0[j]);
      }
    }
  }
  return report;
}

}  // namespace proxpoint
