#pragma once

// Scattering diagrams on a rational planar chart with focus-focus
// singularities: initial rays, loop products at collision points, order by
// order completion, consistency reports and invariant queries.

#include "kswall/automorphism.hpp"
#include "kswall/lattice.hpp"
#include "kswall/novikov.hpp"
#include "kswall/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace kswall {

struct SceneError : Error {
  using Error::Error;
};

struct GenericityError : Error {
  using Error::Error;
};

struct CompletionError : Error {
  using Error::Error;
};

struct Point {
  Rational x{0};
  Rational y{0};

  friend bool operator==(const Point& p, const Point& q) { return p.x == q.x && p.y == q.y; }
  friend bool operator<(const Point& p, const Point& q) {
    const int c = cmp(p.x, q.x);
    return c != 0 ? c < 0 : p.y < q.y;
  }
  friend Point operator-(const Point& p) { return {-p.x, -p.y}; }
};

/// p + t v
inline Point advance(const Point& p, const Rational& t, const BoundaryVector& v) {
  return {p.x + t * Rational(static_cast<long>(v.a)), p.y + t * Rational(static_cast<long>(v.b))};
}

inline std::string to_string(const Point& p) { return "(" + p.x.get_str() + "," + p.y.get_str() + ")"; }

struct Singularity {
  Point pos;
  BoundaryVector direction;  // monodromy-invariant direction
  int multiplicity{1};       // I_n type

  friend bool operator==(const Singularity& x, const Singularity& y) {
    return x.pos == y.pos && x.direction == y.direction && x.multiplicity == y.multiplicity;
  }
};

struct Viewport {
  Point lower;
  Point upper;
};

struct Scene {
  std::vector<Singularity> singularities;
  Truncation truncation{Truncation::energy(Rational(4))};
  int epsilon{1};
  QuadraticRefinement sigma;
  std::optional<Viewport> viewport;
};

inline void validate_scene(const Scene& scene) {
  if (scene.epsilon != 0 && scene.epsilon != 1) throw SceneError("epsilon must be 0 or 1");
  if (scene.truncation.mode == FiltrationMode::degree && !is_integer(scene.truncation.cutoff))
    throw SceneError("degree cutoff must be an integer");
  for (std::size_t i = 0; i < scene.singularities.size(); ++i) {
    const auto& s = scene.singularities[i];
    if (!is_primitive(s.direction))
      throw SceneError("singularity " + std::to_string(i) + " at " + to_string(s.pos) + ": direction " +
                       to_string(s.direction) + " is not primitive");
    if (s.multiplicity < 1)
      throw SceneError("singularity " + std::to_string(i) + " at " + to_string(s.pos) + ": multiplicity must be positive");
    for (std::size_t j = 0; j < i; ++j)
      if (scene.singularities[j].pos == s.pos)
        throw SceneError("singularities " + std::to_string(j) + " and " + std::to_string(i) + " share position " +
                         to_string(s.pos));
  }
  if (scene.viewport && !(scene.viewport->lower.x < scene.viewport->upper.x &&
                          scene.viewport->lower.y < scene.viewport->upper.y))
    throw SceneError("viewport must have positive extent");
}

/// One monomial c z^{l d} T^{base + rate l t} of a slab, t the lattice
/// parameter along the ray (rate 1 in energy mode, 0 in degree mode).
struct SlabTerm {
  Rational coeff;
  std::int64_t l{1};
  Rational base{0};

  friend bool operator==(const SlabTerm& x, const SlabTerm& y) {
    return x.coeff == y.coeff && x.l == y.l && x.base == y.base;
  }
};

struct Ray {
  Point origin;
  BoundaryVector direction;  // primitive
  std::vector<SlabTerm> slab;
  int generation{0};
  std::vector<std::size_t> parents;
  std::optional<std::size_t> singularity;  // set for initial rays

  friend bool operator==(const Ray& r, const Ray& s) {
    return r.origin == s.origin && r.direction == s.direction && r.slab == s.slab && r.generation == s.generation &&
           r.parents == s.parents && r.singularity == s.singularity;
  }
};

inline Rational growth_rate(FiltrationMode mode) { return mode == FiltrationMode::energy ? Rational(1) : Rational(0); }

inline Rational term_exponent(const SlabTerm& term, const Rational& t, FiltrationMode mode) {
  return term.base + growth_rate(mode) * Rational(static_cast<long>(term.l)) * t;
}

/// Lattice parameter t >= 0 with p = origin + t direction, if p lies on the ray.
inline std::optional<Rational> parameter_on(const Ray& ray, const Point& p) {
  const Rational dx = p.x - ray.origin.x;
  const Rational dy = p.y - ray.origin.y;
  const Rational da(static_cast<long>(ray.direction.a));
  const Rational db(static_cast<long>(ray.direction.b));
  if (dx * db != dy * da) return std::nullopt;
  Rational t = ray.direction.a != 0 ? Rational(dx / da) : Rational(dy / db);
  if (t < 0) return std::nullopt;
  return t;
}

inline TruncatedSeries slab_at(const Ray& ray, const Rational& t, const Truncation& trunc) {
  TruncatedSeries f = TruncatedSeries::one(trunc);
  for (const auto& term : ray.slab)
    f.add_term(term.coeff, term.l * ray.direction, term_exponent(term, t, trunc.mode));
  return f;
}

inline std::optional<Rational> lowest_exponent_at(const Ray& ray, const Rational& t, FiltrationMode mode) {
  std::optional<Rational> best;
  for (const auto& term : ray.slab) {
    Rational e = term_exponent(term, t, mode);
    if (!best || e < *best) best = std::move(e);
  }
  return best;
}

inline bool nontrivial_at(const Ray& ray, const Rational& t, const Truncation& trunc) {
  const auto e = lowest_exponent_at(ray, t, trunc.mode);
  return e && trunc.admits(*e);
}

struct Diagram {
  Scene scene;
  std::vector<Ray> rays;
  Truncation completed_to;

  const Truncation& truncation() const { return completed_to; }
};

/// Two rays per singularity along +-m with slab (1 + z^{+-m} T^t)^n.
inline Diagram initial_diagram(const Scene& scene) {
  validate_scene(scene);
  Diagram d{scene, {}, scene.truncation};
  const bool degree = scene.truncation.mode == FiltrationMode::degree;
  for (std::size_t i = 0; i < scene.singularities.size(); ++i) {
    const auto& s = scene.singularities[i];
    for (const BoundaryVector dir : {s.direction, -s.direction}) {
      Ray r;
      r.origin = s.pos;
      r.direction = dir;
      r.singularity = i;
      mpz_class binom = 1;
      for (int l = 1; l <= s.multiplicity; ++l) {
        binom = binom * (s.multiplicity - l + 1) / l;
        r.slab.push_back({Rational(binom), l, degree ? Rational(l) : Rational(0)});
      }
      d.rays.push_back(std::move(r));
    }
  }
  return d;
}

/// Slab function of `ray` at a point on it.
inline TruncatedSeries evaluate_slab(const Ray& ray, const Point& p, const Truncation& trunc) {
  const auto t = parameter_on(ray, p);
  if (!t) throw Error("point " + to_string(p) + " is not on the ray from " + to_string(ray.origin));
  return slab_at(ray, *t, trunc);
}

namespace detail {

// Counterclockwise angular order starting at the positive first axis.
inline bool angle_less(const BoundaryVector& u, const BoundaryVector& v) {
  auto half = [](const BoundaryVector& w) { return (w.b > 0 || (w.b == 0 && w.a > 0)) ? 0 : 1; };
  const int hu = half(u);
  const int hv = half(v);
  if (hu != hv) return hu < hv;
  return sympl_pairing(u, v) > 0;
}

inline std::optional<Point> intersect(const Ray& r, const Ray& s) {
  const std::int64_t det = sympl_pairing(r.direction, s.direction);
  if (det == 0) return std::nullopt;
  // r.o + t r.d = s.o + u s.d
  const Rational ex = s.origin.x - r.origin.x;
  const Rational ey = s.origin.y - r.origin.y;
  const Rational dt(static_cast<long>(det));
  Rational t = (ex * Rational(static_cast<long>(s.direction.b)) - ey * Rational(static_cast<long>(s.direction.a))) / dt;
  Rational u = (ex * Rational(static_cast<long>(r.direction.b)) - ey * Rational(static_cast<long>(r.direction.a))) / dt;
  if (t < 0 || u < 0) return std::nullopt;
  return advance(r.origin, t, r.direction);
}

}  // namespace detail

/// One crossing of the small loop around a point: an outgoing half-ray.
struct LoopCrossing {
  std::size_t ray;
  BoundaryVector outgoing;  // direction of the half-ray leaving the point
  WallCrossingMap map;
};

/// Wall maps met by a small counterclockwise loop around p, in crossing
/// order. A ray through p contributes two crossings, a ray starting at p one.
/// Each map uses the normal <outgoing, .>, positive on the loop tangent.
inline std::vector<LoopCrossing> loop_crossings(const Diagram& d, const Point& p,
                                                const std::optional<Truncation>& cutoff = std::nullopt) {
  const Truncation& trunc = cutoff ? *cutoff : d.completed_to;
  std::vector<LoopCrossing> out;
  for (std::size_t i = 0; i < d.rays.size(); ++i) {
    const auto& r = d.rays[i];
    const auto t = parameter_on(r, p);
    if (!t || !nontrivial_at(r, *t, trunc)) continue;
    TruncatedSeries f = slab_at(r, *t, trunc);
    if (sgn(*t) > 0) out.push_back({i, -r.direction, {r.direction, pairing_with(-r.direction), f}});
    out.push_back({i, r.direction, {r.direction, pairing_with(r.direction), std::move(f)}});
  }
  std::stable_sort(out.begin(), out.end(), [](const LoopCrossing& a, const LoopCrossing& b) {
    if (a.outgoing == b.outgoing) return a.ray < b.ray;
    return detail::angle_less(a.outgoing, b.outgoing);
  });
  return out;
}

/// Composite of the crossings in loop order, the first crossing acting first.
inline Endomorphism loop_product(const Diagram& d, const Point& p, const std::optional<Truncation>& cutoff = std::nullopt) {
  const Truncation& trunc = cutoff ? *cutoff : d.completed_to;
  for (const auto& s : d.scene.singularities)
    if (s.pos == p) throw GenericityError("loop product requested at singularity " + to_string(p));
  std::vector<WallCrossingMap> maps;
  for (auto& c : loop_crossings(d, p, trunc)) maps.push_back(std::move(c.map));
  return compose(maps, trunc);
}

/// Lowest-order part of log(loop product): c z^v T^a (x) <prim(v), .>.
struct DefectTerm {
  BoundaryVector zvec;
  Rational texp;
  Rational coeff;

  friend bool operator==(const DefectTerm& x, const DefectTerm& y) {
    return x.zvec == y.zvec && x.texp == y.texp && x.coeff == y.coeff;
  }
};

inline std::string to_string(const DefectTerm& t) {
  return t.coeff.get_str() + "·z^" + to_string(t.zvec) + "·T^{" + t.texp.get_str() + "}";
}

/// Terms of lowest T-order by which `e` differs from the identity.
inline std::vector<DefectTerm> lowest_defect(const Endomorphism& e) {
  std::optional<Rational> level;
  for (const auto* u : {&e.x_unit, &e.y_unit}) {
    const auto o = u->lowest_positive_order();
    if (o && (!level || *o < *level)) level = o;
  }
  std::vector<DefectTerm> out;
  if (!level) return out;
  std::set<BoundaryVector> classes;
  for (const auto* u : {&e.x_unit, &e.y_unit})
    for (const auto& [k, c] : u->terms())
      if (k.texp == *level && !k.zvec.is_zero()) classes.insert(k.zvec);
  for (const auto& [k, c] : e.x_unit.terms())
    if (k.texp == *level && k.zvec.is_zero()) throw CompletionError("defect with trivial boundary class");
  for (const auto& v : classes) {
    const Rational A = e.x_unit.coefficient(v, *level);
    const Rational B = e.y_unit.coefficient(v, *level);
    const BoundaryVector prim = primitive_decompose(v).primitive;
    // derivation c z^v <prim, w>:  x-coefficient -c prim.b, y-coefficient c prim.a
    if (A * Rational(static_cast<long>(prim.a)) + B * Rational(static_cast<long>(prim.b)) != 0)
      throw CompletionError("defect in class " + to_string(v) + " does not annihilate its own direction");
    Rational c = prim.a != 0 ? Rational(B / Rational(static_cast<long>(prim.a)))
                             : Rational(-A / Rational(static_cast<long>(prim.b)));
    out.push_back({v, *level, std::move(c)});
  }
  return out;
}

struct CollisionPoint {
  Point point;
  std::vector<std::pair<BoundaryVector, BoundaryVector>> direction_pairs;
};

namespace detail {

inline std::set<Point> raw_intersections(const std::vector<Ray>& rays) {
  std::set<Point> pts;
  for (std::size_t i = 0; i < rays.size(); ++i)
    for (std::size_t j = i + 1; j < rays.size(); ++j)
      if (auto p = intersect(rays[i], rays[j])) pts.insert(*p);
  return pts;
}

}  // namespace detail

/// Points where two non-parallel rays with nontrivial slabs meet.
inline std::vector<CollisionPoint> collision_points(const Diagram& d) {
  std::vector<CollisionPoint> out;
  for (const auto& p : detail::raw_intersections(d.rays)) {
    std::vector<std::size_t> live;
    for (std::size_t i = 0; i < d.rays.size(); ++i) {
      const auto t = parameter_on(d.rays[i], p);
      if (t && nontrivial_at(d.rays[i], *t, d.completed_to)) live.push_back(i);
    }
    CollisionPoint cp{p, {}};
    std::set<std::pair<BoundaryVector, BoundaryVector>> seen;
    for (std::size_t a = 0; a < live.size(); ++a)
      for (std::size_t b = a + 1; b < live.size(); ++b) {
        const auto& u = d.rays[live[a]].direction;
        const auto& v = d.rays[live[b]].direction;
        if (sympl_pairing(u, v) == 0) continue;
        auto key = u < v ? std::make_pair(u, v) : std::make_pair(v, u);
        if (seen.insert(key).second) cp.direction_pairs.push_back(key);
      }
    if (!cp.direction_pairs.empty()) out.push_back(std::move(cp));
  }
  return out;
}

struct PointDefect {
  Point point;
  std::vector<DefectTerm> terms;
};

struct ConsistencyReport {
  std::size_t points_checked{0};
  std::vector<PointDefect> defects;

  bool consistent() const { return defects.empty(); }
};

inline ConsistencyReport check_consistency(const Diagram& d, const std::optional<Truncation>& cutoff = std::nullopt) {
  Diagram view = d;
  if (cutoff) view.completed_to = *cutoff;
  ConsistencyReport report;
  for (const auto& cp : collision_points(view)) {
    ++report.points_checked;
    auto terms = lowest_defect(loop_product(view, cp.point));
    if (!terms.empty()) report.defects.push_back({cp.point, std::move(terms)});
  }
  return report;
}

/// Throws GenericityError if a ray with nontrivial slab passes through a
/// singularity other than its own origin.
inline void check_genericity(const Diagram& d, std::size_t ray_index) {
  const auto& r = d.rays[ray_index];
  for (std::size_t s = 0; s < d.scene.singularities.size(); ++s) {
    const auto& sing = d.scene.singularities[s];
    if (r.singularity && *r.singularity == s) continue;
    const auto t = parameter_on(r, sing.pos);
    if (!t) continue;
    if (sgn(*t) == 0 && !r.singularity) {
      throw GenericityError("ray " + std::to_string(ray_index) + " starts at singularity " + std::to_string(s) + " " +
                            to_string(sing.pos));
    }
    if (nontrivial_at(r, *t, d.completed_to))
      throw GenericityError("ray hits singularity: ray " + std::to_string(ray_index) + " from " + to_string(r.origin) +
                            " in direction " + to_string(r.direction) + " passes through singularity " +
                            std::to_string(s) + " at " + to_string(sing.pos));
  }
}

struct CompletionOptions {
  std::size_t max_rays{20000};
  std::size_t max_stages{200000};
};

namespace detail {

class Completer {
 public:
  Completer(Diagram d, CompletionOptions opts) : d_(std::move(d)), opts_(opts) {}

  Diagram run() {
    for (std::size_t i = 0; i < d_.rays.size(); ++i) {
      check_genericity(d_, i);
      versions_.push_back(0);
    }
    for (const auto& p : raw_intersections(d_.rays)) register_point(p);

    std::optional<Rational> last_level;
    for (std::size_t stage = 0;; ++stage) {
      if (stage >= opts_.max_stages) throw CompletionError("non-terminating stage: stage limit reached");
      std::optional<Rational> level;
      for (auto& [p, st] : points_) {
        refresh(p, st);
        if (!st.defects.empty() && (!level || st.defects.front().texp < *level)) level = st.defects.front().texp;
      }
      if (!level) break;
      if (last_level && *level < *last_level)
        throw CompletionError("non-terminating stage: defect at level " + level->get_str() + " below stage level " +
                              last_level->get_str());
      last_level = level;

      std::vector<std::pair<Point, DefectTerm>> insertions;
      for (auto& [p, st] : points_)
        if (!st.defects.empty() && st.defects.front().texp == *level)
          for (const auto& t : st.defects) insertions.emplace_back(p, t);
      for (const auto& [p, t] : insertions) insert(p, t);
      if (d_.rays.size() > opts_.max_rays) throw CompletionError("non-terminating stage: ray limit reached");
    }
    return std::move(d_);
  }

 private:
  struct PointState {
    std::vector<std::size_t> rays;  // every ray whose support contains the point
    std::vector<std::pair<std::size_t, std::uint64_t>> signature;
    bool fresh{false};
    std::vector<DefectTerm> defects;
  };

  void register_point(const Point& p) {
    if (points_.count(p) != 0) return;
    PointState st;
    for (std::size_t i = 0; i < d_.rays.size(); ++i)
      if (parameter_on(d_.rays[i], p)) st.rays.push_back(i);
    points_.emplace(p, std::move(st));
  }

  void refresh(const Point& p, PointState& st) {
    std::vector<std::pair<std::size_t, std::uint64_t>> sig;
    std::vector<std::size_t> live;
    for (const auto i : st.rays) {
      const auto t = parameter_on(d_.rays[i], p);
      if (nontrivial_at(d_.rays[i], *t, d_.completed_to)) {
        sig.emplace_back(i, versions_[i]);
        live.push_back(i);
      }
    }
    if (st.fresh && sig == st.signature) return;
    st.signature = std::move(sig);
    st.fresh = true;
    st.defects.clear();
    if (!may_scatter(p, live)) return;
    for (const auto& s : d_.scene.singularities)
      if (s.pos == p) throw GenericityError("collision at singularity " + to_string(p));
    st.defects = lowest_defect(loop_product(d_, p));
  }

  // Two non-parallel walls whose lowest orders sum below the cutoff.
  bool may_scatter(const Point& p, const std::vector<std::size_t>& live) const {
    for (std::size_t a = 0; a < live.size(); ++a)
      for (std::size_t b = a + 1; b < live.size(); ++b) {
        const auto& r = d_.rays[live[a]];
        const auto& s = d_.rays[live[b]];
        if (sympl_pairing(r.direction, s.direction) == 0) continue;
        const auto er = lowest_exponent_at(r, *parameter_on(r, p), d_.completed_to.mode);
        const auto es = lowest_exponent_at(s, *parameter_on(s, p), d_.completed_to.mode);
        if (d_.completed_to.admits(*er + *es)) return true;
      }
    return false;
  }

  void insert(const Point& p, const DefectTerm& t) {
    const auto [l, dir] = primitive_decompose(t.zvec);
    const PointState& st = points_.at(p);
    std::vector<std::size_t> parents;
    int generation = 0;
    for (const auto& [i, v] : st.signature) {
      parents.push_back(i);
      generation = std::max(generation, d_.rays[i].generation + 1);
    }
    SlabTerm term{-t.coeff, l, t.texp};

    for (std::size_t i = 0; i < d_.rays.size(); ++i) {
      Ray& r = d_.rays[i];
      if (r.singularity || !(r.origin == p) || !(r.direction == dir)) continue;
      auto it = std::find_if(r.slab.begin(), r.slab.end(),
                             [&](const SlabTerm& s) { return s.l == term.l && s.base == term.base; });
      if (it != r.slab.end()) {
        it->coeff += term.coeff;
        if (sgn(it->coeff) == 0) r.slab.erase(it);
      } else {
        r.slab.push_back(term);
        std::sort(r.slab.begin(), r.slab.end(), [](const SlabTerm& x, const SlabTerm& y) {
          return x.l != y.l ? x.l < y.l : x.base < y.base;
        });
      }
      for (const auto q : parents)
        if (q != i && std::find(r.parents.begin(), r.parents.end(), q) == r.parents.end()) r.parents.push_back(q);
      std::sort(r.parents.begin(), r.parents.end());
      ++versions_[i];
      check_genericity(d_, i);
      return;
    }

    Ray r;
    r.origin = p;
    r.direction = dir;
    r.slab.push_back(term);
    r.generation = generation;
    r.parents = std::move(parents);
    d_.rays.push_back(std::move(r));
    versions_.push_back(0);
    const std::size_t idx = d_.rays.size() - 1;
    check_genericity(d_, idx);
    for (auto& [q, st2] : points_)
      if (parameter_on(d_.rays[idx], q)) st2.rays.push_back(idx);
    for (std::size_t j = 0; j < idx; ++j)
      if (auto q = intersect(d_.rays[idx], d_.rays[j])) register_point(*q);
  }

  Diagram d_;
  CompletionOptions opts_;
  std::vector<std::uint64_t> versions_;
  std::map<Point, PointState> points_;
};

}  // namespace detail

/// Adds rays order by order in the filtration until every loop product is
/// the identity modulo the cutoff. Collision points are processed in
/// lexicographic order and all defects of the lowest level are cancelled
/// together, so the output is deterministic.
inline Diagram complete(const Diagram& d, const std::optional<Truncation>& cutoff = std::nullopt,
                        CompletionOptions opts = {}) {
  Diagram work = d;
  if (cutoff) {
    if (cutoff->mode != d.completed_to.mode) throw CompletionError("cannot change filtration mode of a diagram");
    work.completed_to = *cutoff;
  }
  return detail::Completer(std::move(work), opts).run();
}

inline Diagram complete(const Scene& scene, CompletionOptions opts = {}) {
  return complete(initial_diagram(scene), std::nullopt, opts);
}

// ---------------------------------------------------------------------------
// Queries.

/// Omega / Omega~ along `direction` at a generic point u.
inline InvariantTable invariants_at(const Diagram& d, const Point& u, const BoundaryVector& direction) {
  if (!is_primitive(direction)) throw Error("query direction " + to_string(direction) + " is not primitive");
  for (const auto& s : d.scene.singularities)
    if (s.pos == u) throw GenericityError("query point " + to_string(u) + " is a singularity");
  TruncatedSeries F = TruncatedSeries::one(d.completed_to);
  for (const auto& r : d.rays) {
    if (!(r.direction == direction)) continue;
    const auto t = parameter_on(r, u);
    if (!t) continue;
    if (sgn(*t) == 0) throw GenericityError("query point " + to_string(u) + " is the origin of a ray");
    F *= slab_at(r, *t, d.completed_to);
  }
  return extract_invariants(F, direction, d.scene.epsilon, d.scene.sigma);
}

struct WallDelta {
  BoundaryVector klass;
  InvariantPair incoming;
  InvariantPair outgoing;
  InvariantPair delta;
};

/// Jump of (Omega, Omega~) of class gamma across the collision point p:
/// walls in direction prim(gamma) that continue past p minus those that
/// reach p from behind, both evaluated at p.
inline WallDelta wall_delta(const Diagram& d, const Point& p, const BoundaryVector& klass) {
  const auto [l, dir] = primitive_decompose(klass);
  TruncatedSeries out = TruncatedSeries::one(d.completed_to);
  TruncatedSeries in = TruncatedSeries::one(d.completed_to);
  for (const auto& r : d.rays) {
    if (!(r.direction == dir)) continue;
    const auto t = parameter_on(r, p);
    if (!t) continue;
    const TruncatedSeries f = slab_at(r, *t, d.completed_to);
    out *= f;
    if (sgn(*t) > 0) in *= f;
  }
  WallDelta w;
  w.klass = klass;
  const auto before = extract_invariants(in, dir, d.scene.epsilon, d.scene.sigma);
  const auto after = extract_invariants(out, dir, d.scene.epsilon, d.scene.sigma);
  w.incoming = before.unit_energy ? before.at(l) : InvariantPair{};
  w.outgoing = after.unit_energy ? after.at(l) : InvariantPair{};
  w.delta = {w.outgoing.omega - w.incoming.omega, w.outgoing.omega_tilde - w.incoming.omega_tilde};
  return w;
}

/// Rays whose slab is nontrivial somewhere below the cutoff.
inline std::size_t nontrivial_ray_count(const Diagram& d) {
  std::size_t n = 0;
  for (const auto& r : d.rays)
    if (nontrivial_at(r, Rational(0), d.completed_to)) ++n;
  return n;
}

}  // namespace kswall
