#include "fqdyn/upoly.hpp"

#include "fqdyn/linalg.hpp"

namespace fqdyn {

namespace {

PolyT pow_t(const PolyT& base, std::int64_t e) { return pow(base, static_cast<std::uint64_t>(e)); }

}  // namespace

XPoly prem(const XPoly& a, const XPoly& b) {
  if (b.is_zero()) throw DomainError("pseudo-division by zero");
  if (a.degree() < b.degree()) return a;
  const std::int64_t da = a.degree().value();
  const std::int64_t db = b.degree().value();
  const PolyT& lb = b.lead();
  XPoly r = a;
  std::int64_t steps = 0;
  while (!r.is_zero() && r.degree().value() >= db) {
    const std::int64_t dr = r.degree().value();
    XPoly sub = b.scaled(r.lead()).shifted(static_cast<std::size_t>(dr - db));
    r = r.scaled(lb) - sub;
    ++steps;
  }
  const std::int64_t missing = da - db + 1 - steps;
  if (missing > 0 && !r.is_zero()) r = r.scaled(pow_t(lb, missing));
  return r;
}

PolyT content(const XPoly& f) {
  if (f.is_zero()) return f.zero_elem();
  PolyT g = f.zero_elem();
  for (const auto& c : f.coeffs()) {
    if (c.is_zero()) continue;
    g = g.is_zero() ? c.monic() : gcd(g, c);
    if (g.is_one()) break;
  }
  return g;
}

XPoly primitive_part(const XPoly& f) {
  if (f.is_zero()) return f;
  const PolyT c = content(f);
  if (c.is_one()) return f;
  std::vector<PolyT> v;
  v.reserve(f.size());
  for (const auto& x : f.coeffs()) v.push_back(div_exact(x, c));
  return XPoly(f.zero_elem(), std::move(v));
}

PolyT resultant(const XPoly& f, const XPoly& g) {
  if (f.is_zero() && g.is_zero()) throw DomainError("resultant of two zero polynomials");
  const PolyT zero = f.is_zero() ? g.zero_elem() : f.zero_elem();
  if (f.is_zero() || g.is_zero()) return zero;
  const PolyT one = PolyT::constant(zero.field(), 1);
  XPoly A = f, B = g;
  int s = 1;
  if (A.degree() < B.degree()) {
    std::swap(A, B);
    if (A.degree().value() % 2 == 1 && B.degree().value() % 2 == 1) s = -s;
  }
  if (B.degree().value() == 0) {
    PolyT r = pow_t(B.lead(), A.degree().value());
    return s < 0 ? -r : r;
  }
  const PolyT a = content(A), b = content(B);
  A = primitive_part(A);
  B = primitive_part(B);
  const PolyT tfac = pow_t(a, B.degree().value()) * pow_t(b, A.degree().value());
  PolyT gg = one, h = one;
  while (true) {
    const std::int64_t da = A.degree().value();
    const std::int64_t db = B.degree().value();
    const std::int64_t delta = da - db;
    if (da % 2 == 1 && db % 2 == 1) s = -s;
    XPoly R = prem(A, B);
    if (R.is_zero()) return zero;
    A = std::move(B);
    const PolyT divisor = gg * pow_t(h, delta);
    std::vector<PolyT> v;
    v.reserve(R.size());
    for (const auto& c : R.coeffs()) v.push_back(div_exact(c, divisor));
    B = XPoly(zero, std::move(v));
    gg = A.lead();
    if (delta == 0) {
      // h unchanged
    } else if (delta == 1) {
      h = gg;
    } else {
      h = div_exact(pow_t(gg, delta), pow_t(h, delta - 1));
    }
    if (B.degree().value() == 0) {
      const std::int64_t dA = A.degree().value();
      PolyT hh = dA == 0 ? one : div_exact(pow_t(B.lead(), dA), pow_t(h, dA - 1));
      PolyT r = tfac * hh;
      return s < 0 ? -r : r;
    }
  }
}

PolyT resultant_formal(const XPoly& f, const XPoly& g, std::size_t d) {
  const PolyT zero = f.zero_elem().bound() ? f.zero_elem() : g.zero_elem();
  const auto D = static_cast<std::int64_t>(d);
  const ExtInt m = f.degree(), n = g.degree();
  if (m > ExtInt(D) || n > ExtInt(D)) throw DomainError("formal degree below actual degree");
  if (m < ExtInt(D) && n < ExtInt(D)) return zero;
  if (f.is_zero() || g.is_zero()) return zero;
  const std::int64_t mv = m.value(), nv = n.value();
  if (mv == D) return resultant(f, g) * pow_t(f.lead(), D - nv);
  // deg g = d > deg f: swap into the first case.
  PolyT r = resultant(f, g) * pow_t(g.lead(), D - mv);
  return (D * (D - mv)) % 2 == 1 ? -r : r;
}

PolyT sylvester_resultant(const XPoly& f, const XPoly& g, std::size_t m, std::size_t n) {
  const PolyT zero = f.zero_elem().bound() ? f.zero_elem() : g.zero_elem();
  const std::size_t N = m + n;
  if (N == 0) return PolyT::constant(zero.field(), 1);
  Matrix<PolyT> s(N, std::vector<PolyT>(N, zero));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= m; ++j) s[i][i + j] = f.coeff(m - j);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j <= n; ++j) s[n + i][i + j] = g.coeff(n - j);
  return determinant(s);
}

XPoly derivative_t(const XPoly& f) {
  return f.map(f.zero_elem(), [](const PolyT& c) { return c.derivative(); });
}

XPoly to_xpoly(const FieldPtr& f, const std::vector<PolyT>& low_to_high) { return XPoly(PolyT(f), low_to_high); }

XPolyK to_k(const XPoly& f) {
  return f.map(RatK::zero(f.zero_elem().field()), [](const PolyT& c) { return RatK(c); });
}

UPoly<Residue> reduce(const XPoly& f, const ResiduePtr& ctx) {
  const Residue z(ctx, PolyT(ctx->base()));
  return f.map(z, [&](const PolyT& c) { return Residue(ctx, c); });
}

}  // namespace fqdyn
