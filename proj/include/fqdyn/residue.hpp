#pragma once

#include <memory>

#include "fqdyn/ring.hpp"

namespace fqdyn {

/// The residue field F_q[t]/(mu) for a monic irreducible mu.  Used to
/// specialize polynomials over F_q[t] at a prime of F_q[t].
class ResidueField {
 public:
  static std::shared_ptr<const ResidueField> make(PolyT mu);
  const PolyT& modulus() const { return mu_; }
  const FieldPtr& base() const { return mu_.field(); }

 private:
  explicit ResidueField(PolyT mu) : mu_(std::move(mu)) {}
  PolyT mu_;
};
using ResiduePtr = std::shared_ptr<const ResidueField>;

class Residue {
 public:
  Residue() = default;
  Residue(ResiduePtr ctx, const PolyT& v);

  const ResiduePtr& ctx() const { return ctx_; }
  const PolyT& value() const { return v_; }
  bool is_zero() const { return v_.is_zero(); }

  Residue operator-() const { return Residue(ctx_, -v_, Raw{}); }
  Residue inv() const;

  friend Residue operator+(const Residue& a, const Residue& b) { return Residue(a.ctx_, a.v_ + b.v_, Raw{}); }
  friend Residue operator-(const Residue& a, const Residue& b) { return Residue(a.ctx_, a.v_ - b.v_, Raw{}); }
  friend Residue operator*(const Residue& a, const Residue& b) { return Residue(a.ctx_, a.v_ * b.v_); }
  friend Residue operator/(const Residue& a, const Residue& b) { return a * b.inv(); }
  Residue& operator+=(const Residue& o) { return *this = *this + o; }
  Residue& operator-=(const Residue& o) { return *this = *this - o; }
  Residue& operator*=(const Residue& o) { return *this = *this * o; }
  friend bool operator==(const Residue& a, const Residue& b) { return a.v_ == b.v_; }

 private:
  struct Raw {};
  Residue(ResiduePtr ctx, PolyT v, Raw) : ctx_(std::move(ctx)), v_(std::move(v)) {}

  ResiduePtr ctx_;
  PolyT v_;
};

template <>
struct ring_traits<Residue> {
  static constexpr bool is_field = true;
  static Residue zero_like(const Residue& a) { return Residue(a.ctx(), PolyT(a.ctx()->base())); }
  static Residue one_like(const Residue& a) { return Residue(a.ctx(), PolyT::constant(a.ctx()->base(), 1)); }
  static Residue mul_int(const Residue& a, std::int64_t k) {
    return Residue(a.ctx(), a.value().scaled(a.ctx()->base()->from_int(k)));
  }
  static Residue exact_div(const Residue& a, const Residue& b) { return a / b; }
};

}  // namespace fqdyn
