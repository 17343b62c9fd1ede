#pragma once

#include "fqdyn/ratk.hpp"

namespace fqdyn {

// Small adapter layer so the x-polynomial and matrix templates can run over
// F_q[t], F_q(t) and residue fields F_q[t]/(mu) alike.

template <class R>
struct ring_traits;

template <>
struct ring_traits<PolyT> {
  static constexpr bool is_field = false;
  static PolyT zero_like(const PolyT& a) { return PolyT(a.field()); }
  static PolyT one_like(const PolyT& a) { return PolyT::constant(a.field(), 1); }
  static PolyT mul_int(const PolyT& a, std::int64_t k) { return a.scaled(a.F().from_int(k)); }
  static PolyT exact_div(const PolyT& a, const PolyT& b) { return div_exact(a, b); }
};

template <>
struct ring_traits<RatK> {
  static constexpr bool is_field = true;
  static RatK zero_like(const RatK& a) { return RatK::zero(a.field()); }
  static RatK one_like(const RatK& a) { return RatK::one(a.field()); }
  static RatK mul_int(const RatK& a, std::int64_t k) { return a.mul_int(k); }
  static RatK exact_div(const RatK& a, const RatK& b) { return a / b; }
};

}  // namespace fqdyn
