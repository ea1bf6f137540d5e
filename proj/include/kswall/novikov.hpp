#pragma once

// Truncated formal series  sum c z^v T^a  with rational c and a >= 0,
// taken modulo a filtration level of the Novikov parameter T.
//
// Two filtrations are supported:
//   energy: terms with a >= cutoff vanish (T^cutoff Lambda_0 is killed);
//   degree: T counts the total weight of a term and terms with a > cutoff
//           vanish.  This is the classical degree truncation used by tropical
//           counts; exponents are integral in this mode.

#include "kswall/lattice.hpp"
#include "kswall/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace kswall {

struct SeriesError : Error {
  using Error::Error;
};

enum class FiltrationMode { energy, degree };

inline std::string to_string(FiltrationMode m) { return m == FiltrationMode::energy ? "energy" : "degree"; }

struct Truncation {
  FiltrationMode mode{FiltrationMode::energy};
  Rational cutoff{1};

  static Truncation energy(Rational lambda) {
    if (lambda <= 0) throw SeriesError("energy cutoff must be positive");
    return {FiltrationMode::energy, std::move(lambda)};
  }
  static Truncation degree(std::int64_t k) {
    if (k <= 0) throw SeriesError("degree cutoff must be a positive integer");
    return {FiltrationMode::degree, Rational(static_cast<long>(k))};
  }

  bool admits(const Rational& texp) const {
    return mode == FiltrationMode::energy ? texp < cutoff : texp <= cutoff;
  }

  friend bool operator==(const Truncation& x, const Truncation& y) {
    return x.mode == y.mode && x.cutoff == y.cutoff;
  }
};

inline std::string to_string(const Truncation& t) {
  return to_string(t.mode) + "(" + to_string(t.cutoff) + ")";
}

struct Monomial {
  Rational coeff;
  BoundaryVector zvec;
  Rational texp;

  friend bool operator==(const Monomial& x, const Monomial& y) {
    return x.coeff == y.coeff && x.zvec == y.zvec && x.texp == y.texp;
  }
};

struct TermKey {
  Rational texp;
  BoundaryVector zvec;

  friend bool operator<(const TermKey& x, const TermKey& y) {
    const int c = cmp(x.texp, y.texp);
    if (c != 0) return c < 0;
    return x.zvec < y.zvec;
  }
  friend bool operator==(const TermKey& x, const TermKey& y) { return x.texp == y.texp && x.zvec == y.zvec; }
};

class TruncatedSeries {
 public:
  using TermMap = std::map<TermKey, Rational>;

  explicit TruncatedSeries(Truncation trunc) : trunc_(std::move(trunc)) {}

  static TruncatedSeries zero(const Truncation& t) { return TruncatedSeries(t); }
  static TruncatedSeries one(const Truncation& t) { return constant(t, Rational(1)); }
  static TruncatedSeries constant(const Truncation& t, const Rational& c) {
    return monomial(t, c, {0, 0}, Rational(0));
  }
  static TruncatedSeries monomial(const Truncation& t, const Rational& c, BoundaryVector z, const Rational& texp) {
    TruncatedSeries s(t);
    s.add_term(c, z, texp);
    return s;
  }

  const Truncation& truncation() const noexcept { return trunc_; }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  std::vector<Monomial> monomials() const {
    std::vector<Monomial> out;
    out.reserve(terms_.size());
    for (const auto& [k, c] : terms_) out.push_back({c, k.zvec, k.texp});
    return out;
  }

  void add_term(const Rational& c, BoundaryVector z, const Rational& texp) {
    if (texp < 0) throw SeriesError("negative Novikov exponent");
    if (sgn(c) == 0 || !trunc_.admits(texp)) return;
    auto [it, inserted] = terms_.try_emplace(TermKey{texp, z}, c);
    if (!inserted) {
      it->second += c;
      if (sgn(it->second) == 0) terms_.erase(it);
    }
  }

  Rational coefficient(BoundaryVector z, const Rational& texp) const {
    auto it = terms_.find(TermKey{texp, z});
    return it == terms_.end() ? Rational(0) : it->second;
  }

  Rational constant_term() const { return coefficient({0, 0}, Rational(0)); }

  bool is_one() const {
    return terms_.size() == 1 && terms_.begin()->first == TermKey{Rational(0), {0, 0}} &&
           terms_.begin()->second == 1;
  }

  /// Smallest exponent among terms other than the constant term.
  std::optional<Rational> lowest_positive_order() const {
    for (const auto& [k, c] : terms_)
      if (!(k.texp == 0 && k.zvec.is_zero())) return k.texp;
    return std::nullopt;
  }

  /// this * z^shift (no change of T-exponents).
  TruncatedSeries shifted(BoundaryVector shift) const {
    TruncatedSeries out(trunc_);
    for (const auto& [k, c] : terms_) out.terms_.emplace(TermKey{k.texp, k.zvec + shift}, c);
    return out;
  }

  TruncatedSeries& operator+=(const TruncatedSeries& o) {
    check_compatible(o);
    for (const auto& [k, c] : o.terms_) add_term(c, k.zvec, k.texp);
    return *this;
  }
  TruncatedSeries& operator-=(const TruncatedSeries& o) {
    check_compatible(o);
    for (const auto& [k, c] : o.terms_) add_term(-c, k.zvec, k.texp);
    return *this;
  }
  TruncatedSeries& operator*=(const Rational& s) {
    if (sgn(s) == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [k, c] : terms_) c *= s;
    return *this;
  }

  friend TruncatedSeries operator+(TruncatedSeries f, const TruncatedSeries& g) { return f += g; }
  friend TruncatedSeries operator-(TruncatedSeries f, const TruncatedSeries& g) { return f -= g; }
  friend TruncatedSeries operator*(TruncatedSeries f, const Rational& s) { return f *= s; }
  friend TruncatedSeries operator*(const Rational& s, TruncatedSeries f) { return f *= s; }
  TruncatedSeries operator-() const { return *this * Rational(-1); }

  friend TruncatedSeries operator*(const TruncatedSeries& f, const TruncatedSeries& g) {
    f.check_compatible(g);
    TruncatedSeries out(f.trunc_);
    // Both maps are ordered by exponent, so the inner loop stops at the first
    // product that falls outside the truncation.
    for (const auto& [kf, cf] : f.terms_) {
      if (!f.trunc_.admits(kf.texp)) break;
      for (const auto& [kg, cg] : g.terms_) {
        Rational e = kf.texp + kg.texp;
        if (!f.trunc_.admits(e)) break;
        out.add_term(cf * cg, kf.zvec + kg.zvec, e);
      }
    }
    return out;
  }
  TruncatedSeries& operator*=(const TruncatedSeries& g) { return *this = *this * g; }

  friend bool operator==(const TruncatedSeries& f, const TruncatedSeries& g) {
    return f.trunc_ == g.trunc_ && f.terms_ == g.terms_;
  }

  /// Canonical rendering: terms by (T-exponent, z-vector), reduced fractions,
  /// e.g. "1 + 1·z^(1,1)·T^{3/2}".
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [k, c] : terms_) {
      Rational mag = abs(c);
      if (first) {
        if (sgn(c) < 0) out += "-";
      } else {
        out += sgn(c) < 0 ? " - " : " + ";
      }
      first = false;
      out += mag.get_str();
      if (k.texp == 0 && k.zvec.is_zero()) continue;
      out += "·z^" + kswall::to_string(k.zvec) + "·T^{" + k.texp.get_str() + "}";
    }
    return out;
  }

 private:
  void check_compatible(const TruncatedSeries& o) const {
    if (!(trunc_ == o.trunc_))
      throw SeriesError("cutoff mismatch: " + kswall::to_string(trunc_) + " vs " + kswall::to_string(o.trunc_));
  }

  Truncation trunc_;
  TermMap terms_;
};

inline TruncatedSeries add(const TruncatedSeries& f, const TruncatedSeries& g) { return f + g; }
inline TruncatedSeries mul(const TruncatedSeries& f, const TruncatedSeries& g) { return f * g; }

namespace detail {

// g = f - 1 where f must be 1 + (terms of positive T-order).
inline TruncatedSeries positive_part(const TruncatedSeries& f, const char* what) {
  if (f.constant_term() != 1) throw SeriesError(std::string(what) + ": constant term must be 1");
  TruncatedSeries g = f - TruncatedSeries::one(f.truncation());
  for (const auto& [k, c] : g.terms())
    if (k.texp == 0) throw SeriesError(std::string(what) + ": term z^" + to_string(k.zvec) + " has zero T-order");
  return g;
}

inline void require_positive_order(const TruncatedSeries& g, const char* what) {
  for (const auto& [k, c] : g.terms())
    if (k.texp == 0) throw SeriesError(std::string(what) + ": argument must have positive T-order");
}

}  // namespace detail

/// log(f) for f = 1 + g with g of positive order (Mercator series).
inline TruncatedSeries log1(const TruncatedSeries& f) {
  const TruncatedSeries g = detail::positive_part(f, "log1");
  TruncatedSeries out(f.truncation());
  TruncatedSeries power = g;
  for (long n = 1; !power.is_zero(); ++n) {
    out += power * Rational(n % 2 == 1 ? 1 : -1, n);
    power *= g;
  }
  return out;
}

inline TruncatedSeries exp(const TruncatedSeries& g) {
  detail::require_positive_order(g, "exp");
  TruncatedSeries out = TruncatedSeries::one(g.truncation());
  TruncatedSeries term = TruncatedSeries::one(g.truncation());
  for (long n = 1;; ++n) {
    term *= g;
    if (term.is_zero()) break;
    term *= Rational(1, n);
    out += term;
  }
  return out;
}

/// (1 + g)^{-1} = sum (-g)^n.
inline TruncatedSeries inverse(const TruncatedSeries& f) {
  const TruncatedSeries g = -detail::positive_part(f, "inverse");
  TruncatedSeries out = TruncatedSeries::one(f.truncation());
  TruncatedSeries power = TruncatedSeries::one(f.truncation());
  for (;;) {
    power *= g;
    if (power.is_zero()) break;
    out += power;
  }
  return out;
}

inline TruncatedSeries pow_int(const TruncatedSeries& f, std::int64_t k) {
  if (k == 0) return TruncatedSeries::one(f.truncation());
  TruncatedSeries base = k > 0 ? f : inverse(f);
  std::uint64_t e = k > 0 ? static_cast<std::uint64_t>(k) : static_cast<std::uint64_t>(-k);
  TruncatedSeries out = TruncatedSeries::one(f.truncation());
  while (e > 0) {
    if (e & 1U) out *= base;
    e >>= 1U;
    if (e > 0) base *= base;
  }
  return out;
}

inline TruncatedSeries pow_rational(const TruncatedSeries& f, const Rational& r) {
  if (is_integer(r) && r.get_num().fits_slong_p()) {
    detail::positive_part(f, "pow_rational");
    return pow_int(f, r.get_num().get_si());
  }
  return exp(log1(f) * r);
}

/// Caches integer powers of a unit 1 + (positive order).
class PowerCache {
 public:
  explicit PowerCache(TruncatedSeries base) : base_(std::move(base)) {}

  const TruncatedSeries& get(std::int64_t k) {
    auto it = cache_.find(k);
    if (it != cache_.end()) return it->second;
    TruncatedSeries value = compute(k);
    return cache_.emplace(k, std::move(value)).first->second;
  }

 private:
  TruncatedSeries compute(std::int64_t k) {
    if (k == 0) return TruncatedSeries::one(base_.truncation());
    if (k == 1) return base_;
    if (k == -1) return inverse(base_);
    const std::int64_t step = k > 0 ? 1 : -1;
    return get(k - step) * get(step);
  }

  TruncatedSeries base_;
  std::unordered_map<std::int64_t, TruncatedSeries> cache_;
};

}  // namespace kswall
