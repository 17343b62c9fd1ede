#pragma once

#include <string>

#include "fqdyn/poly.hpp"

namespace fqdyn {

/// Element of K = F_q(t) in canonical form: gcd(num, den) = 1, den monic,
/// zero stored as 0/1.
class RatK {
 public:
  RatK() = default;
  explicit RatK(PolyT num);
  RatK(PolyT num, PolyT den);

  static RatK zero(const FieldPtr& f) { return RatK(PolyT(f)); }
  static RatK one(const FieldPtr& f) { return RatK(PolyT::constant(f, 1)); }
  static RatK from_int(const FieldPtr& f, std::int64_t v) { return RatK(PolyT::from_int(f, v)); }
  /// a/b with a, b integers reduced mod p; throws when b = 0 mod p.
  static RatK fraction(const FieldPtr& f, std::int64_t a, std::int64_t b);

  const PolyT& num() const { return num_; }
  const PolyT& den() const { return den_; }
  const FieldPtr& field() const { return num_.field(); }
  bool bound() const { return num_.bound(); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_poly() const { return den_.is_one(); }

  RatK operator-() const;
  RatK inv() const;
  /// Quotient rule, result reduced.
  RatK derivative() const;

  RatK& operator+=(const RatK& o) { return *this = *this + o; }
  RatK& operator-=(const RatK& o) { return *this = *this - o; }
  RatK& operator*=(const RatK& o) { return *this = *this * o; }
  RatK& operator/=(const RatK& o) { return *this = *this / o; }

  friend RatK operator+(const RatK& a, const RatK& b);
  friend RatK operator-(const RatK& a, const RatK& b);
  friend RatK operator*(const RatK& a, const RatK& b);
  friend RatK operator/(const RatK& a, const RatK& b);
  friend bool operator==(const RatK& a, const RatK& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

  RatK mul_int(std::int64_t k) const;
  std::size_t hash() const { return num_.hash() * 31 + den_.hash(); }

 private:
  struct Raw {};
  RatK(PolyT num, PolyT den, Raw) : num_(std::move(num)), den_(std::move(den)) {}

  PolyT num_;
  PolyT den_;
};

/// deg(num) - deg(den); -inf for zero.
inline ExtInt abs_inf(const RatK& z) { return z.num().degree() - z.den().degree(); }

inline RatK derivative_t(const RatK& z) { return z.derivative(); }

}  // namespace fqdyn
