#include "fqdyn/ratk.hpp"

#include "fqdyn/errors.hpp"

namespace fqdyn {

RatK::RatK(PolyT num) : num_(std::move(num)), den_(PolyT::constant(num_.field(), 1)) {
  if (!num_.bound()) throw DomainError("RatK needs a bound polynomial");
}

RatK::RatK(PolyT num, PolyT den) {
  if (den.is_zero()) throw DomainError("zero denominator in F_q(t)");
  if (num.is_zero()) {
    num_ = PolyT(den.field());
    den_ = PolyT::constant(den.field(), 1);
    return;
  }
  if (!den.is_constant()) {
    PolyT g = gcd(num, den);
    if (!g.is_one()) {
      num = div_exact(num, g);
      den = div_exact(den, g);
    }
  }
  const Elem inv = den.F().inv(den.lead());
  num_ = num.scaled(inv);
  den_ = den.scaled(inv);
}

RatK RatK::fraction(const FieldPtr& f, std::int64_t a, std::int64_t b) {
  return RatK(PolyT::from_int(f, a), PolyT::from_int(f, b));
}

RatK RatK::operator-() const { return RatK(-num_, den_, Raw{}); }

RatK RatK::inv() const {
  if (is_zero()) throw DomainError("inverse of zero in F_q(t)");
  return RatK(den_, num_);
}

RatK RatK::derivative() const {
  if (is_poly()) return RatK(num_.derivative());
  return RatK(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

RatK operator+(const RatK& a, const RatK& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_ == b.den_) return RatK(a.num_ + b.num_, a.den_);
  return RatK(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatK operator-(const RatK& a, const RatK& b) { return a + (-b); }

RatK operator*(const RatK& a, const RatK& b) {
  if (a.is_zero() || b.is_zero()) {
    if (!same_field(a.field(), b.field())) throw FieldMismatch();
    return RatK::zero(a.field());
  }
  if (a.is_poly() && b.is_poly()) return RatK(a.num_ * b.num_, a.den_, RatK::Raw{});
  // Cross-cancel first so the products stay small.
  const PolyT g1 = gcd(a.num_, b.den_);
  const PolyT g2 = gcd(b.num_, a.den_);
  PolyT n = div_exact(a.num_, g1) * div_exact(b.num_, g2);
  PolyT d = div_exact(a.den_, g2) * div_exact(b.den_, g1);
  const Elem inv = d.F().inv(d.lead());
  return RatK(n.scaled(inv), d.scaled(inv), RatK::Raw{});
}

RatK operator/(const RatK& a, const RatK& b) { return a * b.inv(); }

RatK RatK::mul_int(std::int64_t k) const {
  const Elem c = field()->from_int(k);
  if (c == 0) return zero(field());
  return RatK(num_.scaled(c), den_, Raw{});
}

}  // namespace fqdyn
