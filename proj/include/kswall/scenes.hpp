#pragma once

#include "kswall/engine.hpp"

namespace kswall {

/// Two singularities whose forward rays meet at the origin at lattice
/// parameter 1: s1 at -m1 with direction m1, s2 at -m2 with direction m2.
inline Scene two_singularity_scene(const BoundaryVector& m1, const BoundaryVector& m2, const Truncation& t,
                                   int n1 = 1, int n2 = 1) {
  Scene s;
  s.truncation = t;
  s.singularities = {{{Rational(static_cast<long>(-m1.a)), Rational(static_cast<long>(-m1.b))}, m1, n1},
                     {{Rational(static_cast<long>(-m2.a)), Rational(static_cast<long>(-m2.b))}, m2, n2}};
  s.viewport = Viewport{{Rational(-3), Rational(-3)}, {Rational(4), Rational(4)}};
  return s;
}

/// I_1 at (-1,0) along (1,0) and I_1 at (0,-1) along (0,1).
inline Scene pentagon_scene(const Truncation& t) { return two_singularity_scene({1, 0}, {0, 1}, t); }

}  // namespace kswall
