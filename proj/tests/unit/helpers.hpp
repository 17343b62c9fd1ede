#pragma once

#include <random>

#include "fqdyn/ratk.hpp"
#include "fqdyn/upoly.hpp"

namespace testutil {

using namespace fqdyn;

inline PolyT rand_poly(std::mt19937_64& rng, const FieldPtr& f, int max_deg) {
  std::uniform_int_distribution<int> deg(0, max_deg);
  std::uniform_int_distribution<std::uint64_t> coef(0, f->p() - 1);
  std::vector<Elem> c(static_cast<std::size_t>(deg(rng)) + 1);
  for (auto& x : c) {
    std::vector<std::uint64_t> d(f->k());
    for (auto& y : d) y = coef(rng);
    x = f->from_digits(d);
  }
  return PolyT(f, std::move(c));
}

inline PolyT rand_nonzero(std::mt19937_64& rng, const FieldPtr& f, int max_deg) {
  PolyT r;
  do r = rand_poly(rng, f, max_deg);
  while (r.is_zero());
  return r;
}

inline RatK rand_ratk(std::mt19937_64& rng, const FieldPtr& f, int max_deg) {
  return RatK(rand_poly(rng, f, max_deg), rand_nonzero(rng, f, max_deg));
}

inline XPoly rand_xpoly(std::mt19937_64& rng, const FieldPtr& f, int xdeg, int tdeg) {
  std::vector<PolyT> c;
  for (int i = 0; i <= xdeg; ++i) c.push_back(rand_poly(rng, f, tdeg));
  return XPoly(PolyT(f), std::move(c));
}

inline PolyT P(const FieldPtr& f, std::vector<std::int64_t> c) {
  std::vector<Elem> e;
  for (auto v : c) e.push_back(f->from_int(v));
  return PolyT(f, std::move(e));
}

}  // namespace testutil
