#pragma once

// Automorphisms of the twisted torus ring Q[Gamma_g] (x) Lambda_0 generated by
// wall-crossing transformations z^v -> z^v f^{n(v)}.

#include "kswall/lattice.hpp"
#include "kswall/novikov.hpp"
#include "kswall/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace kswall {

/// z^v -> z^v * func^{normal(v)} with func a series in z^{direction}.
struct WallCrossingMap {
  BoundaryVector direction;
  Covector normal;
  TruncatedSeries func;

  static WallCrossingMap identity(const Truncation& t) {
    return {{0, 0}, {0, 0}, TruncatedSeries::one(t)};
  }

  bool normal_annihilates_direction() const { return normal(direction) == 0; }
};

inline TruncatedSeries apply(const WallCrossingMap& map, const TruncatedSeries& f) {
  PowerCache powers(map.func);
  TruncatedSeries out(f.truncation());
  for (const auto& [k, c] : f.terms()) {
    TruncatedSeries term = TruncatedSeries::monomial(f.truncation(), c, k.zvec, k.texp);
    out += term * powers.get(map.normal(k.zvec));
  }
  return out;
}

/// A ring endomorphism determined by x -> x * x_unit and y -> y * y_unit.
struct Endomorphism {
  TruncatedSeries x_unit;
  TruncatedSeries y_unit;

  static Endomorphism identity(const Truncation& t) {
    return {TruncatedSeries::one(t), TruncatedSeries::one(t)};
  }

  const Truncation& truncation() const { return x_unit.truncation(); }

  bool is_identity() const { return x_unit.is_one() && y_unit.is_one(); }

  TruncatedSeries image_x() const { return x_unit.shifted({1, 0}); }
  TruncatedSeries image_y() const { return y_unit.shifted({0, 1}); }

  friend bool operator==(const Endomorphism& p, const Endomorphism& q) {
    return p.x_unit == q.x_unit && p.y_unit == q.y_unit;
  }
};

inline Endomorphism to_endomorphism(const WallCrossingMap& map) {
  PowerCache powers(map.func);
  return {powers.get(map.normal({1, 0})), powers.get(map.normal({0, 1}))};
}

/// Image of an arbitrary series: z^v -> z^v x_unit^{v.a} y_unit^{v.b}.
inline TruncatedSeries apply(const Endomorphism& e, const TruncatedSeries& f) {
  PowerCache xs(e.x_unit);
  PowerCache ys(e.y_unit);
  TruncatedSeries out(f.truncation());
  for (const auto& [k, c] : f.terms()) {
    TruncatedSeries term = TruncatedSeries::monomial(f.truncation(), c, k.zvec, k.texp);
    out += term * xs.get(k.zvec.a) * ys.get(k.zvec.b);
  }
  return out;
}

/// outer o inner, i.e. the map f -> outer(inner(f)).
inline Endomorphism compose(const Endomorphism& outer, const Endomorphism& inner) {
  return {apply(outer, inner.image_x()).shifted({-1, 0}), apply(outer, inner.image_y()).shifted({0, -1})};
}

/// Left-to-right product: maps[0] acts first, so the result is
/// maps[s-1] o ... o maps[1] o maps[0] as substitution homomorphisms.
inline Endomorphism compose(const std::vector<WallCrossingMap>& maps, const Truncation& t) {
  TruncatedSeries x = TruncatedSeries::monomial(t, Rational(1), {1, 0}, Rational(0));
  TruncatedSeries y = TruncatedSeries::monomial(t, Rational(1), {0, 1}, Rational(0));
  for (const auto& m : maps) {
    x = apply(m, x);
    y = apply(m, y);
  }
  return {x.shifted({-1, 0}), y.shifted({0, -1})};
}

inline Endomorphism compose(const std::vector<WallCrossingMap>& maps) {
  if (maps.empty()) throw SeriesError("compose of an empty list needs an explicit truncation");
  return compose(maps, maps.front().func.truncation());
}

/// K_gamma^Omega with gamma = charge: z^v -> z^v (1 - sigma(gamma) z^gamma T^E)^{Omega <v,gamma>}.
struct KFactor {
  Charge charge;
  Rational exponent{1};
};

struct ElementaryTransform {
  WallCrossingMap map;
  std::optional<std::string> warning;
};

inline ElementaryTransform elementary_K(const Charge& charge, const Rational& omega, const QuadraticRefinement& sigma,
                                        const Truncation& t) {
  if (charge.boundary.is_zero())
    return {WallCrossingMap::identity(t), "pure flavor charge acts as the identity"};
  const auto [l, prim] = primitive_decompose(charge.boundary);
  TruncatedSeries base = TruncatedSeries::one(t);
  base.add_term(Rational(-sigma(charge.boundary)), charge.boundary, charge.energy);
  if (charge.energy == 0) throw SeriesError("elementary transform needs positive energy");
  WallCrossingMap map{prim, {prim.b, -prim.a}, pow_rational(base, omega * Rational(static_cast<long>(l)))};
  return {std::move(map), std::nullopt};
}

inline WallCrossingMap elementary_K(const KFactor& k, const QuadraticRefinement& sigma, const Truncation& t) {
  return elementary_K(k.charge, k.exponent, sigma, t).map;
}

inline Endomorphism compose(const std::vector<KFactor>& factors, const QuadraticRefinement& sigma,
                            const Truncation& t) {
  std::vector<WallCrossingMap> maps;
  maps.reserve(factors.size());
  for (const auto& f : factors) maps.push_back(elementary_K(f, sigma, t));
  return compose(maps, t);
}

/// "K[(0,1),E=1]^1 · K[(1,1),E=2]^1"
inline std::string to_string(const std::vector<KFactor>& factors) {
  std::string out;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i > 0) out += " · ";
    out += "K[" + to_string(factors[i].charge.boundary) + ",E=" + factors[i].charge.energy.get_str() + "]^" +
           factors[i].exponent.get_str();
  }
  return out;
}

// ---------------------------------------------------------------------------
// One-variable factorization and the Moebius-type transform.

/// Dense truncated power series in one variable, coefficients a[0..N].
using UnivariateSeries = std::vector<Rational>;

namespace detail {

inline UnivariateSeries univariate_mul(const UnivariateSeries& f, const UnivariateSeries& g, std::size_t order) {
  UnivariateSeries out(order + 1, Rational(0));
  for (std::size_t i = 0; i < f.size() && i <= order; ++i) {
    if (sgn(f[i]) == 0) continue;
    for (std::size_t j = 0; j < g.size() && i + j <= order; ++j) out[i + j] += f[i] * g[j];
  }
  return out;
}

// (1 + c x^k)^r by the generalized binomial series, up to x^order.
inline UnivariateSeries binomial_power(const Rational& c, std::size_t k, const Rational& r, std::size_t order) {
  UnivariateSeries out(order + 1, Rational(0));
  out[0] = 1;
  Rational binom(1);
  Rational cpow(1);
  for (std::size_t j = 1; j * k <= order; ++j) {
    binom *= (r - Rational(static_cast<long>(j - 1))) / Rational(static_cast<long>(j));
    cpow *= c;
    out[j * k] = binom * cpow;
  }
  return out;
}

inline Rational eps_sign(int epsilon, std::size_t k) { return (epsilon == 1 && k % 2 == 1) ? Rational(-1) : Rational(1); }

}  // namespace detail

/// Unique d_1..d_N with f = prod_k (1 - (-1)^{k eps} x^k)^{k d_k} mod x^{N+1}.
/// Returned vector is indexed by k (entry 0 unused and zero).
inline std::vector<Rational> factorize_product(const UnivariateSeries& f, int epsilon, std::size_t order) {
  if (epsilon != 0 && epsilon != 1) throw SeriesError("epsilon must be 0 or 1");
  if (f.empty() || f[0] != 1) throw SeriesError("factorization needs constant term 1");
  UnivariateSeries g(order + 1, Rational(0));
  for (std::size_t i = 0; i < f.size() && i <= order; ++i) g[i] = f[i];
  std::vector<Rational> d(order + 1, Rational(0));
  for (std::size_t k = 1; k <= order; ++k) {
    if (sgn(g[k]) == 0) continue;
    const Rational s = detail::eps_sign(epsilon, k);
    const Rational kk(static_cast<long>(k));
    // (1 - s x^k)^{k d} = 1 - s k d x^k + O(x^{2k})
    d[k] = -g[k] / (s * kk);
    g = detail::univariate_mul(g, detail::binomial_power(-s, k, -kk * d[k], order), order);
  }
  return d;
}

/// prod_k (1 - (-1)^{k eps} x^k)^{k d_k} expanded to x^order.
inline UnivariateSeries expand_product(const std::vector<Rational>& d, int epsilon, std::size_t order) {
  UnivariateSeries out(order + 1, Rational(0));
  out[0] = 1;
  for (std::size_t k = 1; k < d.size() && k <= order; ++k) {
    if (sgn(d[k]) == 0) continue;
    const Rational s = detail::eps_sign(epsilon, k);
    out = detail::univariate_mul(out, detail::binomial_power(-s, k, Rational(static_cast<long>(k)) * d[k], order),
                                 order);
  }
  return out;
}

/// c(n) = sum_{k | n} d_{n/k} / k^2 for n = 1..N (index 0 unused).
inline std::vector<Rational> mobius_transform(const std::vector<Rational>& d) {
  std::vector<Rational> c(d.size(), Rational(0));
  for (std::size_t n = 1; n < d.size(); ++n)
    for (std::size_t k = 1; k <= n; ++k)
      if (n % k == 0) c[n] += d[n / k] / Rational(static_cast<long>(k * k));
  return c;
}

/// Checks sum_k k d_k log(1 - (-1)^{k eps} x^k) = -sum_n n c(n) u^n with
/// u = (-1)^eps x, coefficient by coefficient up to x^order.
inline bool verify_log_identity(const std::vector<Rational>& d, int epsilon, std::size_t order) {
  UnivariateSeries lhs(order + 1, Rational(0));
  for (std::size_t k = 1; k < d.size() && k <= order; ++k) {
    const Rational s = detail::eps_sign(epsilon, k);
    // log(1 - s x^k) = -sum_m s^m x^{km} / m
    Rational sm(1);
    for (std::size_t m = 1; k * m <= order; ++m) {
      sm *= s;
      lhs[k * m] -= Rational(static_cast<long>(k)) * d[k] * sm / Rational(static_cast<long>(m));
    }
  }
  std::vector<Rational> dd(order + 1, Rational(0));
  for (std::size_t k = 1; k < d.size() && k <= order; ++k) dd[k] = d[k];
  const auto c = mobius_transform(dd);
  for (std::size_t n = 1; n <= order; ++n) {
    const Rational u_n = (epsilon == 1 && n % 2 == 1) ? Rational(-1) : Rational(1);
    if (lhs[n] != -Rational(static_cast<long>(n)) * c[n] * u_n) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Invariant extraction along one direction.

struct InvariantPair {
  Rational omega{0};
  Rational omega_tilde{0};

  friend bool operator==(const InvariantPair&, const InvariantPair&) = default;
};

struct InvariantTable {
  BoundaryVector direction;
  std::map<std::int64_t, InvariantPair> values;  // keyed by the multiple l
  std::size_t order{0};                          // largest l determined by the truncation
  std::optional<Rational> unit_energy;           // T-exponent per unit of l
  int epsilon{1};
  std::string sigma{"default"};

  InvariantPair at(std::int64_t l) const {
    if (l < 1) throw SeriesError("multiple must be positive");
    if (unit_energy && static_cast<std::size_t>(l) > order)
      throw SeriesError("multiple " + std::to_string(l) + " lies beyond the truncation order " + std::to_string(order));
    auto it = values.find(l);
    return it == values.end() ? InvariantPair{} : it->second;
  }
};

/// Largest l with l * unit still inside the truncation.
inline std::size_t truncation_order(const Truncation& t, const Rational& unit) {
  if (unit <= 0) throw SeriesError("unit energy must be positive");
  Rational q = t.cutoff / unit;
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  if (t.mode == FiltrationMode::energy && Rational(fl) == q) fl -= 1;
  return fl.fits_ulong_p() ? fl.get_ui() : 0;
}

/// Splits the product F of the slab functions in one direction into
/// elementary factors: Omega_l are the exponents of the unique product
/// factorization, Omega~_l the normalized logarithm coefficients,
/// log F = sum_l l Omega~_l X^l with X = z^{direction} T^{unit}.
inline InvariantTable extract_invariants(const TruncatedSeries& F, const BoundaryVector& direction, int epsilon,
                                         const QuadraticRefinement& sigma,
                                         std::optional<std::size_t> max_order = std::nullopt) {
  if (!is_primitive(direction)) throw SeriesError("extraction direction " + to_string(direction) + " is not primitive");
  InvariantTable table;
  table.direction = direction;
  table.epsilon = epsilon;
  table.sigma = sigma.name();
  if (F.constant_term() != 1) throw SeriesError("slab product must have constant term 1");

  std::map<std::int64_t, std::pair<Rational, Rational>> by_multiple;  // l -> (coeff, texp)
  for (const auto& [k, c] : F.terms()) {
    if (k.zvec.is_zero() && k.texp == 0) continue;
    std::int64_t l = 0;
    if (!k.zvec.is_zero()) {
      const auto [m, prim] = primitive_decompose(k.zvec);
      if (prim == direction) l = m;
    }
    if (l <= 0) throw SeriesError("term z^" + to_string(k.zvec) + " is not a positive power of z^" + to_string(direction));
    if (by_multiple.count(l) != 0) throw SeriesError("incoherent energies at query point");
    by_multiple.emplace(l, std::make_pair(c, k.texp));
  }
  if (by_multiple.empty()) return table;

  Rational unit = by_multiple.begin()->second.second / Rational(static_cast<long>(by_multiple.begin()->first));
  for (const auto& [l, ce] : by_multiple)
    if (ce.second != unit * Rational(static_cast<long>(l))) throw SeriesError("incoherent energies at query point");
  if (unit <= 0) throw SeriesError("slab product has terms of zero T-order");
  table.unit_energy = unit;
  std::size_t order = truncation_order(F.truncation(), unit);
  if (max_order) order = std::min(order, *max_order);
  table.order = order;

  UnivariateSeries f(order + 1, Rational(0));
  f[0] = 1;
  for (const auto& [l, ce] : by_multiple)
    if (static_cast<std::size_t>(l) <= order) f[static_cast<std::size_t>(l)] = ce.first;

  const auto d = factorize_product(f, epsilon, order);
  // log F by the Mercator series in the single variable X.
  UnivariateSeries g = f;
  g[0] = 0;
  UnivariateSeries logf(order + 1, Rational(0));
  UnivariateSeries power = g;
  for (std::size_t n = 1; n <= order; ++n) {
    const Rational coef(n % 2 == 1 ? 1 : -1, static_cast<long>(n));
    for (std::size_t i = 0; i <= order; ++i) logf[i] += coef * power[i];
    power = detail::univariate_mul(power, g, order);
  }
  for (std::size_t l = 1; l <= order; ++l) {
    InvariantPair p{d[l], logf[l] / Rational(static_cast<long>(l))};
    if (sgn(p.omega) != 0 || sgn(p.omega_tilde) != 0) table.values.emplace(static_cast<std::int64_t>(l), p);
  }
  return table;
}

/// Omega~ predicted from Omega through the Moebius transform:
/// Omega~_n = -(-1)^{n eps} sum_{k|n} Omega_{n/k} / k^2.
inline std::vector<Rational> omega_tilde_from_omega(const std::vector<Rational>& omega, int epsilon) {
  auto c = mobius_transform(omega);
  for (std::size_t n = 1; n < c.size(); ++n)
    c[n] *= (epsilon == 1 && n % 2 == 1) ? Rational(1) : Rational(-1);
  return c;
}

// ---------------------------------------------------------------------------
// Symplectic check: pullback of dlog x ^ dlog y.

namespace detail {

// sum c * (weight . v) z^v T^a
inline TruncatedSeries log_derivative(const TruncatedSeries& f, bool along_a) {
  TruncatedSeries out(f.truncation());
  for (const auto& [k, c] : f.terms()) {
    const std::int64_t w = along_a ? k.zvec.a : k.zvec.b;
    if (w != 0) out.add_term(c * Rational(static_cast<long>(w)), k.zvec, k.texp);
  }
  return out;
}

}  // namespace detail

/// Jacobian factor J with e^*(dlog x ^ dlog y) = J dlog x ^ dlog y.
inline TruncatedSeries symplectic_jacobian(const Endomorphism& e) {
  const auto lx = log1(e.x_unit);
  const auto ly = log1(e.y_unit);
  const auto one = TruncatedSeries::one(e.truncation());
  return (one + detail::log_derivative(lx, true)) * (one + detail::log_derivative(ly, false)) -
         detail::log_derivative(lx, false) * detail::log_derivative(ly, true);
}

inline bool check_symplectic(const Endomorphism& e) { return symplectic_jacobian(e).is_one(); }
inline bool check_symplectic(const WallCrossingMap& m) { return check_symplectic(to_endomorphism(m)); }

}  // namespace kswall
