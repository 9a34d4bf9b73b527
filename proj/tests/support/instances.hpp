#pragma once

// Random instance builders shared by the unit tests and the acceptance suite.

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>
#include <random>
#include <span>
#include <vector>

#include "proxpoint/maps.hpp"
#include "proxpoint/metric.hpp"
#include "proxpoint/solvers.hpp"

namespace proxpoint::testing {

using Coords = std::vector<double>;
using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline double plain_distance(const Coords& p, const Coords& q) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += (p[i] - q[i]) * (p[i] - q[i]);
  return std::sqrt(s);
}

inline double min_separation(const std::vector<Coords>& pts) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) best = std::min(best, plain_distance(pts[i], pts[j]));
  }
  return best;
}

/// n random points of [-10,10]^dim whose last coordinate is 0, pairwise at
/// least min_sep apart.
inline std::vector<Coords> random_hyperplane_points(Rng& rng, std::size_t n, std::size_t dim,
                                                    double min_sep = 1e-2) {
  std::vector<Coords> pts;
  while (pts.size() < n) {
    Coords p(dim, 0.0);
    for (std::size_t k = 0; k + 1 < dim; ++k) p[k] = uniform(rng, -10.0, 10.0);
    bool far = std::all_of(pts.begin(), pts.end(),
                           [&](const Coords& q) { return plain_distance(p, q) >= min_sep; });
    if (far) pts.push_back(std::move(p));
  }
  return pts;
}

/// Two sets in one Euclidean space with B = A + v (plus optional extras).
struct TranslateInstance {
  std::shared_ptr<const MetricSpace> space;
  std::vector<Coords> core;  // the translated points of A, in A order
  Coords v;
  IndexedSet a;              // core followed by extra_a
  IndexedSet b;              // core + v followed by extra_b
  std::size_t core_size;
};

/// B = A + v. With orthogonal = true, A lies in {last coordinate = 0} and v
/// is a multiple of the last unit vector, so every distance used by the
/// proximity checks is computed exactly. Otherwise v is a random vector of
/// length a quarter of A's separation. extra_a points of A have no partner
/// in B; extra_b points of B have none in A.
inline TranslateInstance make_translate(Rng& rng, std::vector<Coords> core, bool orthogonal,
                                        std::size_t extra_a = 0, std::size_t extra_b = 0) {
  const std::size_t dim = core.front().size();
  Coords v(dim, 0.0);
  if (orthogonal) {
    v[dim - 1] = uniform(rng, 0.5, 2.0);
  } else {
    const double sep = min_separation(core);
    double norm = 0.0;
    for (auto& x : v) {
      x = uniform(rng, -1.0, 1.0);
      norm += x * x;
    }
    norm = std::sqrt(norm);
    const double len = (std::isfinite(sep) ? sep : 1.0) / 4.0;
    for (auto& x : v) x *= len / norm;
  }

  // Extras are placed well away from everything in the opposite set.
  std::vector<Coords> far_a;
  std::vector<Coords> far_b;
  for (std::size_t i = 0; i < extra_a; ++i) {
    Coords p(dim, 0.0);
    p[0] = 100.0 + 10.0 * static_cast<double>(i);
    far_a.push_back(p);
  }
  for (std::size_t i = 0; i < extra_b; ++i) {
    Coords p(dim, 0.0);
    p[0] = -100.0 - 10.0 * static_cast<double>(i);
    for (std::size_t k = 0; k < dim; ++k) p[k] += v[k];
    far_b.push_back(p);
  }

  EuclideanSpace es(dim);
  std::vector<PointId> a_ids;
  std::vector<PointId> b_ids;
  for (const auto& p : core) a_ids.push_back(es.add(EuclideanPoint(p)));
  for (const auto& p : far_a) a_ids.push_back(es.add(EuclideanPoint(p)));
  for (const auto& p : core) {
    Coords q = p;
    for (std::size_t k = 0; k < dim; ++k) q[k] += v[k];
    b_ids.push_back(es.add(EuclideanPoint(q)));
  }
  for (const auto& p : far_b) b_ids.push_back(es.add(EuclideanPoint(p)));
  auto space = std::make_shared<const MetricSpace>(std::move(es));
  IndexedSet a(space, std::move(a_ids));
  IndexedSet b(space, std::move(b_ids));
  const std::size_t n = core.size();
  return TranslateInstance{space, std::move(core), std::move(v), std::move(a), std::move(b), n};
}

/// A self-map of a finite point list as a table of positions.
struct PointMap {
  std::vector<Coords> points;
  std::vector<std::size_t> image;  // image[i] = position of f(points[i])
  std::size_t fixed;                // position of a fixed point
};

/// Self-similar contraction: points c + r^j (s_i - c) for j < levels, plus c.
/// f sends level j to level j + 1 and the last level to c. With seeds at
/// distance in [rho, 1.1 rho] from c and r <= 0.3 this is a 1/2-Lipschitz
/// map. Points lie in {last coordinate = 0}. The seeds must fit on that
/// hyperplane: dim 2 allows at most two, dim 3 about twenty.
inline PointMap self_similar_contraction(Rng& rng, std::size_t seeds, std::size_t levels,
                                         std::size_t dim, double r = 0.3) {
  PointMap m;
  Coords c(dim, 0.0);
  for (std::size_t k = 0; k + 1 < dim; ++k) c[k] = uniform(rng, -5.0, 5.0);
  const double rho = uniform(rng, 1.0, 5.0);

  std::vector<Coords> dirs;
  while (dirs.size() < seeds) {
    Coords d(dim, 0.0);
    double norm = 0.0;
    for (std::size_t k = 0; k + 1 < dim; ++k) {
      d[k] = uniform(rng, -1.0, 1.0);
      norm += d[k] * d[k];
    }
    if (norm < 1e-4) continue;
    const double len = rho * uniform(rng, 1.0, 1.1) / std::sqrt(norm);
    for (auto& x : d) x *= len;
    // Keep seeds apart so the finest level stays well separated.
    bool ok = std::all_of(dirs.begin(), dirs.end(),
                          [&](const Coords& e) { return plain_distance(d, e) > 0.2 * rho; });
    if (ok) dirs.push_back(std::move(d));
  }

  m.points.push_back(c);
  m.image.push_back(0);
  m.fixed = 0;
  for (std::size_t j = 0; j < levels; ++j) {
    const double scale = std::pow(r, static_cast<double>(j));
    for (const auto& d : dirs) {
      Coords p = c;
      for (std::size_t k = 0; k < dim; ++k) p[k] += scale * d[k];
      m.points.push_back(std::move(p));
    }
  }
  for (std::size_t j = 0; j < levels; ++j) {
    for (std::size_t i = 0; i < seeds; ++i) {
      m.image.push_back(j + 1 < levels ? 1 + (j + 1) * seeds + i : 0);
    }
  }
  return m;
}

/// Reflection x_0 -> -x_0 on a point list closed under it. zeros points sit
/// on the mirror and are fixed.
inline PointMap mirror_isometry(Rng& rng, std::size_t pairs, std::size_t zeros, std::size_t dim) {
  while (true) {
    PointMap m;
    auto base = random_hyperplane_points(rng, pairs + zeros, dim, 0.05);
    for (std::size_t i = 0; i < pairs; ++i) {
      Coords p = base[i];
      p[0] = std::abs(p[0]) + 0.05;
      Coords q = p;
      q[0] = -p[0];
      m.points.push_back(p);
      m.points.push_back(q);
      m.image.push_back(2 * i + 1);
      m.image.push_back(2 * i);
    }
    for (std::size_t i = 0; i < zeros; ++i) {
      Coords p = base[pairs + i];
      p[0] = 0.0;
      m.image.push_back(m.points.size());
      m.points.push_back(std::move(p));
    }
    m.fixed = m.points.size();  // not meaningful: zero or several fixed points
    if (min_separation(m.points) > 1e-2) return m;
  }
}

/// Randomly permutes the point list of a PointMap, keeping it consistent.
inline void shuffle(Rng& rng, PointMap& m) {
  std::vector<std::size_t> perm(m.points.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::size_t> where(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) where[perm[i]] = i;
  PointMap out;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    out.points.push_back(m.points[perm[i]]);
    out.image.push_back(where[m.image[perm[i]]]);
  }
  out.fixed = m.fixed < where.size() ? where[m.fixed] : m.fixed;
  m = std::move(out);
}

/// T x = g(f x) as a table from A to B, for a translate instance built on
/// the points of f. Extra points of A are sent to the first member of B.
inline SingleValuedMap lifted_table(const TranslateInstance& inst, const PointMap& f) {
  std::vector<PointId> images;
  for (std::size_t i = 0; i < inst.a.size(); ++i) {
    images.push_back(i < inst.core_size ? inst.b[f.image[i]] : inst.b[0]);
  }
  return SingleValuedMap::table(inst.a, inst.b, std::move(images));
}

/// T x = { g(f x), g(f f x) }.
inline MultiValuedMap lifted_two_step(const TranslateInstance& inst, const PointMap& f) {
  std::vector<std::vector<PointId>> images;
  for (std::size_t i = 0; i < inst.a.size(); ++i) {
    if (i < inst.core_size) {
      images.push_back({inst.b[f.image[i]], inst.b[f.image[f.image[i]]]});
    } else {
      images.push_back({inst.b[0]});
    }
  }
  return MultiValuedMap::table(inst.a, inst.b, std::move(images));
}

/// Segment grid {(0, i/(n-1))} paired with {(1, i/(n-1))}, as in the shipped
/// segments fixture.
struct SegmentPair {
  std::shared_ptr<const MetricSpace> space;
  IndexedSet a;
  IndexedSet b;
};

inline SegmentPair segment_pair(std::size_t n) {
  EuclideanSpace es(2);
  std::vector<PointId> a;
  std::vector<PointId> b;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(n - 1);
    a.push_back(es.add(EuclideanPoint({0.0, t})));
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(n - 1);
    b.push_back(es.add(EuclideanPoint({1.0, t})));
  }
  auto space = std::make_shared<const MetricSpace>(std::move(es));
  return SegmentPair{space, IndexedSet(space, a), IndexedSet(space, b)};
}

/// (0,t) -> (1, s t + shift).
inline AffineForm vertical_affine(double s, double shift = 0.0) {
  return AffineForm{{{1.0, 0.0}, {0.0, s}}, {1.0, shift}};
}

}  // namespace proxpoint::testing
