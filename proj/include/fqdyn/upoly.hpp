#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "fqdyn/errors.hpp"
#include "fqdyn/residue.hpp"
#include "fqdyn/ring.hpp"

namespace fqdyn {

/// Polynomial in x with coefficients in R (F_q[t], F_q(t) or a residue
/// field).  Stored low to high with no trailing zeros.  A zero coefficient is
/// kept around so that empty polynomials still know their ring.
template <class R>
class UPoly {
 public:
  using traits = ring_traits<R>;

  UPoly() = default;
  explicit UPoly(const R& proto) : zero_(traits::zero_like(proto)) {}
  UPoly(const R& proto, std::vector<R> c) : zero_(traits::zero_like(proto)), c_(std::move(c)) { trim(); }

  static UPoly monomial(const R& c, std::size_t k) {
    std::vector<R> v(k + 1, traits::zero_like(c));
    v[k] = c;
    return UPoly(c, std::move(v));
  }
  static UPoly constant(const R& c) { return UPoly(c, std::vector<R>{c}); }

  const R& zero_elem() const { return zero_; }
  R one_elem() const { return traits::one_like(zero_); }

  ExtInt degree() const {
    return c_.empty() ? ExtInt::neg_inf() : ExtInt(static_cast<std::int64_t>(c_.size()) - 1);
  }
  std::size_t size() const { return c_.size(); }
  bool is_zero() const { return c_.empty(); }
  const R& coeff(std::size_t i) const { return i < c_.size() ? c_[i] : zero_; }
  const R& lead() const { return c_.empty() ? zero_ : c_.back(); }
  const std::vector<R>& coeffs() const { return c_; }

  UPoly operator-() const {
    UPoly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
  }

  UPoly& operator+=(const UPoly& o) {
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), zero_);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] + o.c_[i];
    trim();
    return *this;
  }
  UPoly& operator-=(const UPoly& o) {
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), zero_);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] - o.c_[i];
    trim();
    return *this;
  }
  friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
  friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }

  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return UPoly(a.zero_);
    std::vector<R> r(a.c_.size() + b.c_.size() - 1, a.zero_);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) {
        if (b.c_[j].is_zero()) continue;
        r[i + j] += a.c_[i] * b.c_[j];
      }
    }
    return UPoly(a.zero_, std::move(r));
  }
  UPoly& operator*=(const UPoly& o) { return *this = *this * o; }

  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

  UPoly scaled(const R& s) const {
    if (s.is_zero()) return UPoly(zero_);
    UPoly r = *this;
    for (auto& c : r.c_) c = c * s;
    r.trim();
    return r;
  }

  /// this * x^k
  UPoly shifted(std::size_t k) const {
    if (is_zero()) return *this;
    UPoly r(zero_);
    r.c_.assign(k, zero_);
    r.c_.insert(r.c_.end(), c_.begin(), c_.end());
    return r;
  }

  /// Formal d/dx, integer multiples reduced in the coefficient ring.
  UPoly derivative() const {
    if (c_.size() <= 1) return UPoly(zero_);
    std::vector<R> d;
    d.reserve(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(traits::mul_int(c_[i], static_cast<std::int64_t>(i)));
    return UPoly(zero_, std::move(d));
  }

  R eval(const R& x) const {
    R r = zero_;
    for (std::size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
    return r;
  }

  template <class S, class Fn>
  UPoly<S> map(const S& proto, Fn&& fn) const {
    std::vector<S> v;
    v.reserve(c_.size());
    for (const auto& c : c_) v.push_back(fn(c));
    return UPoly<S>(proto, std::move(v));
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  R zero_;
  std::vector<R> c_;
};

using XPoly = UPoly<PolyT>;
using XPolyK = UPoly<RatK>;

// ---- algorithms over a coefficient field ----

template <class R>
std::pair<UPoly<R>, UPoly<R>> divmod(const UPoly<R>& a, const UPoly<R>& b) {
  static_assert(ring_traits<R>::is_field, "divmod needs field coefficients; use prem over F_q[t]");
  if (b.is_zero()) throw DomainError("division by the zero x-polynomial");
  const R& z = a.zero_elem();
  if (a.size() < b.size()) return {UPoly<R>(z), a};
  std::vector<R> r = a.coeffs();
  std::vector<R> q(a.size() - b.size() + 1, z);
  const std::size_t n = b.size();
  const R inv_lead = ring_traits<R>::one_like(z) / b.lead();
  for (std::size_t top = r.size(); top >= n; --top) {
    const std::size_t i = top - 1;
    if (r[i].is_zero()) continue;
    const R qc = r[i] * inv_lead;
    const std::size_t s = i + 1 - n;
    q[s] = qc;
    for (std::size_t j = 0; j < n; ++j) r[s + j] -= qc * b.coeff(j);
  }
  r.resize(n - 1, z);
  return {UPoly<R>(z, std::move(q)), UPoly<R>(z, std::move(r))};
}

template <class R>
UPoly<R> operator%(const UPoly<R>& a, const UPoly<R>& b) {
  return divmod(a, b).second;
}

template <class R>
UPoly<R> monic(const UPoly<R>& a) {
  if (a.is_zero()) return a;
  return a.scaled(ring_traits<R>::one_like(a.zero_elem()) / a.lead());
}

template <class R>
UPoly<R> gcd(const UPoly<R>& a, const UPoly<R>& b) {
  UPoly<R> x = a, y = b;
  while (!y.is_zero()) {
    UPoly<R> r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return monic(x);
}

/// Resultant over a field by the Euclidean recurrence.
template <class R>
R resultant_field(const UPoly<R>& f, const UPoly<R>& g) {
  if (f.is_zero() && g.is_zero()) throw DomainError("resultant of two zero polynomials");
  const R z = f.is_zero() ? g.zero_elem() : f.zero_elem();
  if (f.is_zero() || g.is_zero()) return z;
  R acc = ring_traits<R>::one_like(z);
  UPoly<R> a = f, b = g;
  auto power = [](R base, std::int64_t e) {
    R r = ring_traits<R>::one_like(base);
    while (e > 0) {
      if (e & 1) r = r * base;
      base = base * base;
      e >>= 1;
    }
    return r;
  };
  while (true) {
    const std::int64_t da = a.degree().value();
    const std::int64_t db = b.degree().value();
    if (db == 0) return acc * power(b.lead(), da);
    UPoly<R> r = a % b;
    if (r.is_zero()) return z;
    const std::int64_t dr = r.degree().value();
    if ((da * db) % 2 != 0) acc = -acc;
    acc = acc * power(b.lead(), da - dr);
    a = std::move(b);
    b = std::move(r);
  }
}

// ---- algorithms over F_q[t] ----

/// Pseudo-remainder lc(B)^(deg A - deg B + 1) * A mod B.
XPoly prem(const XPoly& a, const XPoly& b);
/// Monic gcd of the coefficients (zero for the zero polynomial).
PolyT content(const XPoly& f);
XPoly primitive_part(const XPoly& f);
/// Resultant over F_q[t] by the subresultant PRS (actual degrees,
/// Sylvester convention).
PolyT resultant(const XPoly& f, const XPoly& g);
/// Resultant of F and G viewed as binary forms of degree d (formal degree;
/// vanishes when both drop degree).
PolyT resultant_formal(const XPoly& f, const XPoly& g, std::size_t d);
/// Determinant of the Sylvester matrix with formal degrees m, n.  Slow;
/// kept as an oracle.
PolyT sylvester_resultant(const XPoly& f, const XPoly& g, std::size_t m, std::size_t n);

/// Coefficientwise d/dt.
XPoly derivative_t(const XPoly& f);
XPoly to_xpoly(const FieldPtr& f, const std::vector<PolyT>& low_to_high);
XPolyK to_k(const XPoly& f);
/// Reduce every coefficient into a residue field.
UPoly<Residue> reduce(const XPoly& f, const ResiduePtr& ctx);

}  // namespace fqdyn
