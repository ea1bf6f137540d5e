#pragma once

// Shared helpers for the randomized suites.

#include "kswall/engine.hpp"

#include <random>

namespace kswall::testing {

inline Rational random_rational(std::mt19937_64& rng, long range, long max_den) {
  std::uniform_int_distribution<long> den(1, max_den);
  const long q = den(rng);
  std::uniform_int_distribution<long> num(-range * q, range * q);
  Rational r(num(rng), q);
  r.canonicalize();
  return r;
}

inline BoundaryVector random_direction(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> c(-2, 2);
  for (;;) {
    BoundaryVector v{c(rng), c(rng)};
    if (is_primitive(v)) return v;
  }
}

/// 2 to max_sing I_1 singularities at rational points of [-3,3]^2 with
/// denominators at most 7.
inline Scene random_scene(std::mt19937_64& rng, const Truncation& t, int max_sing = 4) {
  std::uniform_int_distribution<int> count(2, max_sing);
  for (;;) {
    Scene s;
    s.truncation = t;
    const int n = count(rng);
    for (int i = 0; i < n; ++i) s.singularities.push_back({{random_rational(rng, 3, 7), random_rational(rng, 3, 7)}, random_direction(rng), 1});
    try {
      validate_scene(s);
      return s;
    } catch (const SceneError&) {
    }
  }
}

/// Completion of a fresh random scene, resampling scenes the engine rejects as
/// non-generic. `rejected` counts the resamples.
inline std::pair<Scene, Diagram> random_completed(std::mt19937_64& rng, const Truncation& t, int& rejected,
                                                  int max_sing = 4) {
  for (;;) {
    Scene s = random_scene(rng, t, max_sing);
    try {
      Diagram d = complete(s);
      return {std::move(s), std::move(d)};
    } catch (const GenericityError&) {
      ++rejected;
    }
  }
}

/// Point reflection through the origin.
inline Scene mirrored(const Scene& s) {
  Scene m = s;
  for (auto& g : m.singularities) {
    g.pos = {Rational(-g.pos.x), Rational(-g.pos.y)};
    g.direction = -g.direction;
  }
  return m;
}

inline Point negate(const Point& p) { return {Rational(-p.x), Rational(-p.y)}; }

/// A point strictly inside ray r that is neither a singularity, a ray
/// origin, nor a crossing with another ray.
inline std::optional<Point> interior_point(const Diagram& d, const Ray& r) {
  for (const long den : {3L, 7L, 11L, 13L, 17L, 19L}) {
    const Point p = advance(r.origin, Rational(1, den), r.direction);
    bool ok = true;
    for (const auto& g : d.scene.singularities) ok = ok && !(g.pos == p);
    for (const auto& s : d.rays) {
      if (s.origin == p) ok = false;
      if (sympl_pairing(s.direction, r.direction) != 0 && parameter_on(s, p)) ok = false;
    }
    if (ok) return p;
  }
  return std::nullopt;
}

}  // namespace kswall::testing
