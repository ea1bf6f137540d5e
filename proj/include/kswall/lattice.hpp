#pragma once

// Rank-two lattice of boundary classes with its unimodular symplectic pairing.

#include "kswall/rational.hpp"

#include <compare>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>

namespace kswall {

struct LatticeError : Error {
  using Error::Error;
};

struct BoundaryVector {
  std::int64_t a{0};
  std::int64_t b{0};

  constexpr bool is_zero() const noexcept { return a == 0 && b == 0; }

  constexpr BoundaryVector operator-() const noexcept { return {-a, -b}; }
  constexpr BoundaryVector& operator+=(const BoundaryVector& o) noexcept {
    a += o.a;
    b += o.b;
    return *this;
  }
  friend constexpr BoundaryVector operator+(BoundaryVector v, const BoundaryVector& w) noexcept { return v += w; }
  friend constexpr BoundaryVector operator-(BoundaryVector v, const BoundaryVector& w) noexcept { return v += -w; }
  friend constexpr BoundaryVector operator*(std::int64_t k, const BoundaryVector& v) noexcept {
    return {k * v.a, k * v.b};
  }

  constexpr auto operator<=>(const BoundaryVector&) const = default;
};

inline std::string to_string(const BoundaryVector& v) {
  return "(" + std::to_string(v.a) + "," + std::to_string(v.b) + ")";
}

// Linear functional on the lattice, n(v) = a*v.a + b*v.b.
struct Covector {
  std::int64_t a{0};
  std::int64_t b{0};

  constexpr std::int64_t operator()(const BoundaryVector& v) const noexcept { return a * v.a + b * v.b; }
  constexpr Covector operator-() const noexcept { return {-a, -b}; }
  constexpr auto operator<=>(const Covector&) const = default;
};

/// A boundary class together with its energy (the Novikov exponent standing
/// in for the modulus of the central charge at a fixed point).
struct Charge {
  BoundaryVector boundary;
  Rational energy{0};

  Charge() = default;
  Charge(BoundaryVector v, Rational e) : boundary(v), energy(std::move(e)) {
    if (energy < 0) throw LatticeError("charge energy must be nonnegative");
  }

  friend Charge operator+(const Charge& x, const Charge& y) {
    return Charge(x.boundary + y.boundary, Rational(x.energy + y.energy));
  }
  friend bool operator==(const Charge& x, const Charge& y) {
    return x.boundary == y.boundary && x.energy == y.energy;
  }
};

/// <v,w> = v.a*w.b - v.b*w.a.
constexpr std::int64_t sympl_pairing(const BoundaryVector& v, const BoundaryVector& w) noexcept {
  return v.a * w.b - v.b * w.a;
}

/// The functional <v, .>.
constexpr Covector pairing_with(const BoundaryVector& v) noexcept { return {-v.b, v.a}; }

inline std::int64_t lattice_gcd(const BoundaryVector& v) noexcept {
  return std::gcd(v.a < 0 ? -v.a : v.a, v.b < 0 ? -v.b : v.b);
}

inline bool is_primitive(const BoundaryVector& v) noexcept { return lattice_gcd(v) == 1; }

struct PrimitiveDecomposition {
  std::int64_t multiple{1};
  BoundaryVector primitive;
};

/// v = multiple * primitive with primitive having coprime entries.
inline PrimitiveDecomposition primitive_decompose(const BoundaryVector& v) {
  if (v.is_zero()) throw LatticeError("flavor direction has no primitive decomposition");
  const std::int64_t l = lattice_gcd(v);
  return {l, {v.a / l, v.b / l}};
}

/// Sign function on charges satisfying
/// sigma(v) sigma(w) = (-1)^<v,w> sigma(v+w).
///
/// The standard choice is (-1)^{ab}; any other solution differs from it by a
/// character (-1)^{c_a a + c_b b}, which is exposed through the two shifts.
/// `trivial()` (sigma = +1) is kept for experiments and fails the relation.
class QuadraticRefinement {
 public:
  enum class Kind { standard, trivial };

  QuadraticRefinement() = default;
  static QuadraticRefinement standard(int shift_a = 0, int shift_b = 0) {
    QuadraticRefinement q;
    q.shift_a_ = shift_a & 1;
    q.shift_b_ = shift_b & 1;
    return q;
  }
  static QuadraticRefinement trivial() {
    QuadraticRefinement q;
    q.kind_ = Kind::trivial;
    return q;
  }

  int operator()(const BoundaryVector& v) const noexcept {
    if (kind_ == Kind::trivial) return 1;
    const std::int64_t parity = (v.a * v.b + shift_a_ * v.a + shift_b_ * v.b) & 1;
    return parity == 0 ? 1 : -1;
  }

  bool satisfies_relation(const BoundaryVector& v, const BoundaryVector& w) const noexcept {
    const int twist = (sympl_pairing(v, w) & 1) == 0 ? 1 : -1;
    return (*this)(v) * (*this)(w) == twist * (*this)(v + w);
  }

  Kind kind() const noexcept { return kind_; }
  std::string name() const {
    if (kind_ == Kind::trivial) return "trivial";
    if (shift_a_ == 0 && shift_b_ == 0) return "default";
    return "default+(" + std::to_string(shift_a_) + "," + std::to_string(shift_b_) + ")";
  }

  bool operator==(const QuadraticRefinement&) const = default;

 private:
  Kind kind_{Kind::standard};
  int shift_a_{0};
  int shift_b_{0};
};

inline int quadratic_refinement(const BoundaryVector& v) { return QuadraticRefinement{}(v); }

/// Monodromy around a focus-focus singularity with invariant direction m:
/// v -> v + <m,v> m. Fixes m, preserves the pairing, and
/// `picard_lefschetz_inverse` undoes it.
inline BoundaryVector picard_lefschetz(const BoundaryVector& v, const BoundaryVector& m) {
  if (!is_primitive(m)) throw LatticeError("monodromy direction " + to_string(m) + " is not primitive");
  return v + sympl_pairing(m, v) * m;
}

inline BoundaryVector picard_lefschetz_inverse(const BoundaryVector& v, const BoundaryVector& m) {
  if (!is_primitive(m)) throw LatticeError("monodromy direction " + to_string(m) + " is not primitive");
  return v - sympl_pairing(m, v) * m;
}

}  // namespace kswall
