#include "kswall/engine.hpp"
#include "kswall/scenes.hpp"
#include "random_scenes.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace kswall;
using kswall::testing::interior_point;
using kswall::testing::mirrored;
using kswall::testing::negate;
using kswall::testing::random_completed;

namespace {

Point pt(long x, long y) { return {Rational(x), Rational(y)}; }

struct Sample {
  std::vector<std::pair<Scene, Diagram>> scenes;
  int rejected{0};
};

const Sample& sample() {
  static const Sample s = [] {
    Sample out;
    std::mt19937_64 rng(20261015);
    for (int i = 0; i < 10; ++i) out.scenes.push_back(random_completed(rng, Truncation::degree(4), out.rejected));
    out.scenes.emplace_back(two_singularity_scene({1, 0}, {1, 2}, Truncation::degree(5)),
                            complete(two_singularity_scene({1, 0}, {1, 2}, Truncation::degree(5))));
    return out;
  }();
  return s;
}

// Exponent of the lowest-weight terms of parent ray j at point p, one entry
// per slab term: (class, exponent).
std::vector<std::pair<BoundaryVector, Rational>> parent_terms(const Diagram& d, std::size_t j, const Point& p) {
  const auto& r = d.rays[j];
  const auto t = parameter_on(r, p);
  std::vector<std::pair<BoundaryVector, Rational>> out;
  for (const auto& term : r.slab) out.emplace_back(term.l * r.direction, term_exponent(term, *t, d.completed_to.mode));
  return out;
}

// Is (klass, energy) a nonnegative integer combination, with at least two
// summands, of the given (class, exponent) pairs?
bool additive(const std::vector<std::pair<BoundaryVector, Rational>>& items, const BoundaryVector& klass,
              const Rational& energy) {
  std::set<std::tuple<std::int64_t, std::int64_t, Rational, int>> seen;
  std::vector<std::tuple<BoundaryVector, Rational, int>> frontier{{BoundaryVector{0, 0}, Rational(0), 0}};
  while (!frontier.empty()) {
    auto [v, e, n] = frontier.back();
    frontier.pop_back();
    if (v == klass && e == energy && n >= 2) return true;
    for (const auto& [c, x] : items) {
      if (sgn(x) <= 0) continue;
      const BoundaryVector w = v + c;
      const Rational f = e + x;
      if (f > energy) continue;
      const int m = std::min(n + 1, 2);
      if (seen.insert({w.a, w.b, f, m}).second) frontier.emplace_back(w, f, m);
    }
  }
  return false;
}

}  // namespace

TEST(RandomScenes, CompletedDiagramsAreConsistentFixedPoints) {
  for (const auto& [scene, d] : sample().scenes) {
    EXPECT_TRUE(check_consistency(d).consistent());
    EXPECT_EQ(complete(d).rays, d.rays);
  }
}

TEST(RandomScenes, ProvenanceAdditivity) {
  std::size_t checked = 0;
  for (const auto& [scene, d] : sample().scenes)
    for (const auto& r : d.rays) {
      if (r.singularity) continue;
      std::vector<std::pair<BoundaryVector, Rational>> items;
      for (const auto j : r.parents)
        for (const auto& it : parent_terms(d, j, r.origin)) items.push_back(it);
      for (const auto& term : r.slab) {
        EXPECT_TRUE(additive(items, term.l * r.direction, term.base))
            << to_string(term.l * r.direction) << " at " << to_string(r.origin);
        ++checked;
      }
    }
  EXPECT_GT(checked, 10u);
}

TEST(RandomScenes, FiltrationSoundness) {
  // every inserted term sits strictly above the lowest order of the walls it came from
  for (const auto& [scene, d] : sample().scenes)
    for (const auto& r : d.rays) {
      if (r.singularity) continue;
      std::optional<Rational> lowest;
      for (const auto j : r.parents) {
        const auto e = lowest_exponent_at(d.rays[j], *parameter_on(d.rays[j], r.origin), d.completed_to.mode);
        if (e && (!lowest || *e < *lowest)) lowest = e;
      }
      ASSERT_TRUE(lowest);
      for (const auto& term : r.slab) EXPECT_GT(term.base, *lowest);
    }
}

TEST(RandomScenes, EngineWallMapsAreSymplectic) {
  for (const auto& [scene, d] : sample().scenes)
    for (const auto& cp : collision_points(d))
      for (const auto& c : loop_crossings(d, cp.point)) EXPECT_TRUE(check_symplectic(c.map));
}

TEST(Reality, MirroredScenesNegateClasses) {
  std::size_t checked = 0;
  for (const auto& [scene, d] : sample().scenes) {
    const auto m = complete(mirrored(scene));
    ASSERT_EQ(m.rays.size(), d.rays.size());
    for (const auto& r : d.rays) {
      const auto u = interior_point(d, r);
      if (!u) continue;
      const auto a = invariants_at(d, *u, r.direction);
      const auto b = invariants_at(m, negate(*u), -r.direction);
      EXPECT_EQ(a.values, b.values);
      ++checked;
    }
  }
  EXPECT_GT(checked, 20u);
}

TEST(ModeAgreement, Pentagon) {
  const auto deg = complete(pentagon_scene(Truncation::degree(8)));
  const auto en = complete(pentagon_scene(Truncation::energy(Rational(19))));
  for (const auto& [u, dir] : std::vector<std::pair<Point, BoundaryVector>>{{pt(1, 1), {1, 1}},
                                                                             {pt(1, 0), {1, 0}},
                                                                             {pt(0, 2), {0, 1}},
                                                                             {pt(-2, 0), {-1, 0}}}) {
    const auto a = invariants_at(deg, u, dir);
    const auto b = invariants_at(en, u, dir);
    const auto n = std::min(a.order, b.order);
    ASSERT_GE(n, 4u);
    for (std::int64_t l = 1; l <= static_cast<std::int64_t>(n); ++l) EXPECT_EQ(a.at(l), b.at(l)) << l;
  }
}

TEST(Finiteness, RayCountMonotoneInCutoff) {
  const auto scene = [](const Rational& lambda) {
    Scene s;
    s.truncation = Truncation::energy(lambda);
    s.singularities = {{{Rational(-1), Rational(0)}, {1, 0}, 1}, {{Rational(-1, 2), Rational(-1)}, {1, 2}, 1}};
    return s;
  };
  std::size_t last = 0;
  for (int k = 2; k <= 12; ++k) {
    const auto d = complete(scene(Rational(k, 2)));
    EXPECT_GE(nontrivial_ray_count(d), last);
    last = nontrivial_ray_count(d);
  }
  EXPECT_GT(last, 4u);
}

TEST(Flavor, DecouplesFromComposition) {
  const auto t = Truncation::degree(6);
  const QuadraticRefinement s;
  std::mt19937_64 rng(4);
  for (int i = 0; i < 20; ++i) {
    const Charge a(kswall::testing::random_direction(rng), Rational(1));
    const Charge b(kswall::testing::random_direction(rng), Rational(2));
    const Charge f({0, 0}, Rational(static_cast<long>(1 + rng() % 3)));
    const auto plain = compose({{a}, {b}}, s, t);
    EXPECT_EQ(compose({{a}, {f, Rational(3)}, {b}}, s, t), plain);
    EXPECT_EQ(compose({{f}, {a}, {b}, {f, Rational(-2)}}, s, t), plain);
    // invariants read off a wall are unchanged as well
    const auto with = compose({{a}, {f}}, s, t);
    const auto x = TruncatedSeries::monomial(t, Rational(1), {1, 0}, Rational(0));
    const auto y = TruncatedSeries::monomial(t, Rational(1), {0, 1}, Rational(0));
    EXPECT_EQ(apply(with, x), apply(compose({{a}}, s, t), x));
    EXPECT_EQ(apply(with, y), apply(compose({{a}}, s, t), y));
  }
}
