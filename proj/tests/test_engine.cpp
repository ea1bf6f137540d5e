#include "kswall/engine.hpp"
#include "kswall/scenes.hpp"

#include <gtest/gtest.h>

using namespace kswall;

namespace {

Point pt(long x, long y) { return {Rational(x), Rational(y)}; }

Scene single(int n, const Truncation& t) {
  Scene s;
  s.truncation = t;
  s.singularities = {{pt(0, 0), {1, 0}, n}};
  return s;
}

}  // namespace

TEST(Scene, Validation) {
  Scene s = pentagon_scene(Truncation::degree(3));
  EXPECT_NO_THROW(validate_scene(s));
  s.singularities[1].pos = s.singularities[0].pos;
  EXPECT_THROW(validate_scene(s), SceneError);
  s = pentagon_scene(Truncation::degree(3));
  s.singularities[0].direction = {2, 0};
  EXPECT_THROW(validate_scene(s), SceneError);
  s = pentagon_scene(Truncation::degree(3));
  s.singularities[0].multiplicity = 0;
  EXPECT_THROW(validate_scene(s), SceneError);
}

TEST(InitialDiagram, SingleI1) {
  const auto d = initial_diagram(single(1, Truncation::energy(Rational(4))));
  ASSERT_EQ(d.rays.size(), 2u);
  EXPECT_EQ(d.rays[0].direction, (BoundaryVector{1, 0}));
  EXPECT_EQ(d.rays[1].direction, (BoundaryVector{-1, 0}));
  for (const auto& r : d.rays) {
    ASSERT_EQ(r.slab.size(), 1u);
    EXPECT_EQ(r.slab[0], (SlabTerm{Rational(1), 1, Rational(0)}));
    EXPECT_EQ(r.generation, 0);
  }
  const auto t = Truncation::energy(Rational(4));
  EXPECT_EQ(evaluate_slab(d.rays[0], pt(2, 0), t).to_string(), "1 + 1·z^(1,0)·T^{2}");
  EXPECT_EQ(evaluate_slab(d.rays[1], pt(-2, 0), t).to_string(), "1 + 1·z^(-1,0)·T^{2}");
}

TEST(InitialDiagram, I2IsSquare) {
  const auto t = Truncation::energy(Rational(5));
  const auto d = initial_diagram(single(2, t));
  const auto f = evaluate_slab(d.rays[0], pt(1, 0), t);
  auto base = TruncatedSeries::one(t);
  base.add_term(Rational(1), {1, 0}, Rational(1));
  EXPECT_EQ(f, base * base);
}

TEST(InitialDiagram, Empty) {
  Scene s;
  EXPECT_TRUE(initial_diagram(s).rays.empty());
}

TEST(EvaluateSlab, Examples) {
  const auto t = Truncation::energy(Rational(10));
  Ray r;
  r.origin = pt(0, 0);
  r.direction = {1, 0};
  r.slab = {{Rational(1), 1, Rational(0)}};
  EXPECT_EQ(evaluate_slab(r, pt(2, 0), t).to_string(), "1 + 1·z^(1,0)·T^{2}");
  // at the origin the exponent is zero
  EXPECT_EQ(evaluate_slab(r, pt(0, 0), t).to_string(), "1 + 1·z^(1,0)·T^{0}");
  r.slab = {{Rational(1), 2, Rational(1)}};
  EXPECT_EQ(evaluate_slab(r, {Rational(1, 2), Rational(0)}, t).coefficient({2, 0}, Rational(2)), Rational(1));
  EXPECT_THROW(evaluate_slab(r, pt(0, 1), t), Error);
  EXPECT_THROW(evaluate_slab(r, pt(-1, 0), t), Error);
}

TEST(LoopProduct, LineIsConsistent) {
  const auto d = initial_diagram(single(1, Truncation::energy(Rational(6))));
  EXPECT_TRUE(loop_product(d, pt(3, 0)).is_identity());
  EXPECT_TRUE(loop_product(d, pt(1, 1)).is_identity());
}

TEST(LoopProduct, PentagonBeforeCompletion) {
  const auto d = initial_diagram(pentagon_scene(Truncation::degree(4)));
  const auto e = loop_product(d, pt(0, 0));
  EXPECT_FALSE(e.is_identity());
  const auto defect = lowest_defect(e);
  ASSERT_EQ(defect.size(), 1u);
  EXPECT_EQ(defect[0].zvec, (BoundaryVector{1, 1}));
}

TEST(LoopProduct, EmptyAndSingularity) {
  Scene s;
  EXPECT_TRUE(loop_product(initial_diagram(s), pt(0, 0)).is_identity());
  const auto d = initial_diagram(pentagon_scene(Truncation::degree(2)));
  EXPECT_THROW(loop_product(d, pt(-1, 0)), GenericityError);
}

TEST(Complete, PentagonInsertsOneRay) {
  for (const auto& t : {Truncation::degree(2), Truncation::degree(8), Truncation::energy(Rational(3)),
                        Truncation::energy(Rational(19, 2))}) {
    const auto d = complete(pentagon_scene(t));
    ASSERT_EQ(d.rays.size(), 5u) << to_string(t);
    const auto& r = d.rays[4];
    EXPECT_EQ(r.origin, pt(0, 0));
    EXPECT_EQ(r.direction, (BoundaryVector{1, 1}));
    ASSERT_EQ(r.slab.size(), 1u);
    EXPECT_EQ(r.slab[0].coeff, Rational(1));
    EXPECT_EQ(r.slab[0].l, 1);
    EXPECT_EQ(r.slab[0].base, Rational(2));
    EXPECT_EQ(r.generation, 1);
    EXPECT_EQ(r.parents, (std::vector<std::size_t>{0, 2}));
  }
}

TEST(Complete, NoIntersectionsLeavesDiagram) {
  const auto one = initial_diagram(single(1, Truncation::degree(4)));
  EXPECT_EQ(complete(one).rays, one.rays);
  Scene par;
  par.truncation = Truncation::degree(4);
  par.singularities = {{pt(0, 0), {1, 0}, 1}, {pt(0, 1), {1, 0}, 1}};
  const auto d = initial_diagram(par);
  EXPECT_EQ(complete(d).rays, d.rays);
}

TEST(Complete, TooLowCutoffInsertsNothing) {
  // the crossing happens at total energy 2
  const auto d = complete(pentagon_scene(Truncation::energy(Rational(2))));
  EXPECT_EQ(d.rays.size(), 4u);
}

TEST(Complete, RayThroughSingularityIsRejected) {
  Scene s;
  s.truncation = Truncation::degree(3);
  s.singularities = {{pt(0, 0), {1, 0}, 1}, {pt(2, 0), {0, 1}, 1}};
  try {
    complete(s);
    FAIL();
  } catch (const GenericityError& e) {
    EXPECT_NE(std::string(e.what()).find("ray hits singularity"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("(2,0)"), std::string::npos);
  }
}

TEST(Complete, FarSingularityIsHarmlessInEnergyMode) {
  // the ray reaches (5,0) only at energy 5, beyond the cutoff
  Scene s;
  s.truncation = Truncation::energy(Rational(4));
  s.singularities = {{pt(0, 0), {1, 0}, 1}, {pt(5, 0), {0, 1}, 1}};
  EXPECT_NO_THROW(complete(s));
}

TEST(Complete, FixedPointAndDeterminism) {
  Scene s;
  s.truncation = Truncation::degree(5);
  s.singularities = {{{Rational(-2), Rational(1, 3)}, {1, 0}, 1},
                     {{Rational(1, 2), Rational(-2)}, {0, 1}, 2},
                     {{Rational(3), Rational(5, 7)}, {-1, 1}, 1}};
  const auto d = complete(s);
  EXPECT_TRUE(check_consistency(d).consistent());
  EXPECT_EQ(complete(d).rays, d.rays);
  EXPECT_EQ(complete(s).rays, d.rays);
}

TEST(Complete, CutoffMonotone) {
  const auto s = two_singularity_scene({1, 0}, {1, 2}, Truncation::degree(3));
  std::size_t last = 0;
  for (int k = 1; k <= 6; ++k) {
    const auto d = complete(two_singularity_scene({1, 0}, {1, 2}, Truncation::degree(k)));
    EXPECT_GE(nontrivial_ray_count(d), last);
    last = nontrivial_ray_count(d);
  }
  EXPECT_GT(last, 4u);
  // completing further from a lower cutoff reaches the same diagram
  EXPECT_EQ(complete(complete(s), Truncation::degree(6)).rays,
            complete(two_singularity_scene({1, 0}, {1, 2}, Truncation::degree(6))).rays);
  EXPECT_THROW(complete(complete(s), Truncation::energy(Rational(3))), CompletionError);
}

TEST(Consistency, Reports) {
  const auto init = initial_diagram(pentagon_scene(Truncation::degree(3)));
  const auto report = check_consistency(init);
  ASSERT_EQ(report.defects.size(), 1u);
  EXPECT_EQ(report.defects[0].point, pt(0, 0));
  EXPECT_EQ(report.defects[0].terms[0].zvec, (BoundaryVector{1, 1}));
  EXPECT_TRUE(check_consistency(complete(init)).consistent());
  Scene empty;
  EXPECT_TRUE(check_consistency(initial_diagram(empty)).consistent());
}

TEST(CollisionPoints, Examples) {
  const auto d = initial_diagram(pentagon_scene(Truncation::degree(3)));
  const auto cps = collision_points(d);
  ASSERT_EQ(cps.size(), 1u);
  EXPECT_EQ(cps[0].point, pt(0, 0));
  Scene par;
  par.truncation = Truncation::degree(4);
  par.singularities = {{pt(0, 0), {1, 0}, 1}, {pt(0, 1), {1, 0}, 1}};
  EXPECT_TRUE(collision_points(initial_diagram(par)).empty());
}

TEST(CollisionPoints, ThreeSingularitiesExactGeometry) {
  Scene s;
  s.truncation = Truncation::degree(3);
  s.singularities = {{pt(0, 0), {1, 0}, 1}, {{Rational(1, 2), Rational(-3)}, {0, 1}, 1}, {pt(4, 1), {1, 1}, 1}};
  const auto cps = collision_points(initial_diagram(s));
  // lines y=0, x=1/2 and y=x-3 pairwise
  std::vector<Point> want{{Rational(1, 2), Rational(0)}, {Rational(1, 2), Rational(-5, 2)}, pt(3, 0)};
  std::vector<Point> got;
  for (const auto& c : cps) got.push_back(c.point);
  std::sort(want.begin(), want.end());
  EXPECT_EQ(got, want);
}

TEST(Invariants, PentagonNewRay) {
  const auto d = complete(pentagon_scene(Truncation::degree(6)));
  const auto t = invariants_at(d, pt(1, 1), {1, 1});
  EXPECT_EQ(t.at(1), (InvariantPair{Rational(1), Rational(1)}));
  EXPECT_EQ(t.at(2), (InvariantPair{Rational(0), Rational(-1, 4)}));
  // class (1,1) has weight 2, so degree 6 reaches l = 3
  EXPECT_EQ(t.order, 3u);
  EXPECT_EQ(t.at(3).omega, Rational(0));
}

TEST(Invariants, OffRaysAllZero) {
  const auto d = complete(pentagon_scene(Truncation::degree(6)));
  EXPECT_TRUE(invariants_at(d, pt(2, 5), {1, 1}).values.empty());
  EXPECT_THROW(invariants_at(d, pt(0, 0), {1, 1}), GenericityError);
}

TEST(Invariants, InitialRayMultipleCover) {
  const auto d = complete(pentagon_scene(Truncation::energy(Rational(13, 2))));
  // t = 1 on the ray from (-1,0): unit energy 1, order 6
  const auto t = invariants_at(d, pt(0, 0) , {1, 0});
  EXPECT_EQ(t.order, 6u);
  for (std::int64_t l = 1; l <= 6; ++l) EXPECT_EQ(t.at(l).omega_tilde, Rational(l % 2 == 1 ? 1 : -1, l * l));
}

TEST(WallDelta, PentagonTable) {
  const auto d = complete(pentagon_scene(Truncation::degree(6)));
  const auto p = pt(0, 0);
  EXPECT_EQ(wall_delta(d, p, {1, 1}).delta.omega, Rational(1));
  EXPECT_EQ(wall_delta(d, p, {1, 2}).delta, (InvariantPair{Rational(0), Rational(0)}));
  EXPECT_EQ(wall_delta(d, p, {2, 2}).delta, (InvariantPair{Rational(0), Rational(-1, 4)}));
  EXPECT_EQ(wall_delta(d, p, {1, 0}).delta, InvariantPair{});
  EXPECT_EQ(wall_delta(d, p, {3, -1}).delta, InvariantPair{});
}

TEST(Provenance, ParentsAreOtherRays) {
  const auto d = complete(two_singularity_scene({1, 0}, {1, 2}, Truncation::degree(5)));
  for (std::size_t i = 0; i < d.rays.size(); ++i) {
    const auto& r = d.rays[i];
    if (r.singularity) {
      EXPECT_TRUE(r.parents.empty());
      continue;
    }
    EXPECT_GE(r.parents.size(), 2u);
    EXPECT_GE(r.generation, 1);
    for (const auto q : r.parents) {
      EXPECT_NE(q, i);
      EXPECT_TRUE(parameter_on(d.rays[q], r.origin).has_value());
    }
  }
}
