#include "fqdyn/ratmap.hpp"

#include <unordered_map>

#include "fqdyn/errors.hpp"

namespace fqdyn {

ProjPointK::ProjPointK(PolyT X, PolyT Y) {
  if (X.is_zero() && Y.is_zero()) throw DomainError("[0 : 0] is not a point");
  if (Y.is_zero()) {
    X_ = PolyT::constant(X.field(), 1);
    Y_ = PolyT(X.field());
    return;
  }
  if (X.is_zero()) {
    X_ = PolyT(Y.field());
    Y_ = PolyT::constant(Y.field(), 1);
    return;
  }
  if (!X.is_constant() && !Y.is_constant()) {
    const PolyT g = gcd(X, Y);
    if (!g.is_one()) {
      X = div_exact(X, g);
      Y = div_exact(Y, g);
    }
  }
  const Elem inv = Y.F().inv(Y.lead());
  X_ = X.scaled(inv);
  Y_ = Y.scaled(inv);
}

RatK ProjPointK::to_ratk() const {
  if (is_infinity()) throw DomainError("the point at infinity has no value in K");
  return RatK(X_, Y_);
}

std::int64_t ProjPointK::height() const {
  return max(X_.degree(), Y_.degree()).value();
}

RationalMap RationalMap::create(const XPoly& Fin, const XPoly& Gin) {
  if (Fin.is_zero() && Gin.is_zero()) throw DomainError("zero numerator and zero denominator");
  const PolyT zero = Fin.is_zero() ? Gin.zero_elem() : Fin.zero_elem();
  if (!Fin.is_zero() && !Gin.is_zero() && !same_field(Fin.zero_elem().field(), Gin.zero_elem().field())) {
    throw FieldMismatch();
  }
  const ExtInt dd = max(Fin.degree(), Gin.degree());
  if (dd < ExtInt(1)) throw DomainError("map degree must be at least 1");
  const auto d = static_cast<std::size_t>(dd.value());

  PolyT c = content(Fin);
  const PolyT cg = content(Gin);
  c = c.is_zero() ? cg : (cg.is_zero() ? c : gcd(c, cg));
  std::vector<PolyT> fa(d + 1, zero), gb(d + 1, zero);
  for (std::size_t i = 0; i <= d; ++i) {
    fa[i] = c.is_one() ? Fin.coeff(i) : div_exact(Fin.coeff(i), c);
    gb[i] = c.is_one() ? Gin.coeff(i) : div_exact(Gin.coeff(i), c);
  }
  Elem lead = 0;
  for (std::size_t i = d + 1; i-- > 0 && lead == 0;) lead = gb[i].lead();
  for (std::size_t i = d + 1; i-- > 0 && lead == 0;) lead = fa[i].lead();
  const Elem inv = zero.F().inv(lead);
  for (auto& x : fa) x = x.scaled(inv);
  for (auto& x : gb) x = x.scaled(inv);

  RationalMap m;
  m.field_ = zero.field();
  m.d_ = d;
  m.zero_ = zero;
  m.F_ = XPoly(zero, std::move(fa));
  m.G_ = XPoly(zero, std::move(gb));
  m.res_ = resultant_formal(m.F_, m.G_, d);
  if (m.res_.is_zero()) throw DomainError("degenerate map: Res(F, G) = 0");
  return m;
}

RationalMap RationalMap::create(const XPolyK& F, const XPolyK& G) {
  const FieldPtr& f = F.is_zero() ? G.zero_elem().field() : F.zero_elem().field();
  PolyT l = PolyT::constant(f, 1);
  for (const auto* side : {&F, &G})
    for (const auto& c : side->coeffs()) l = div_exact(l, gcd(l, c.den())) * c.den();
  auto clear = [&](const XPolyK& s) {
    return s.map(PolyT(f), [&](const RatK& c) { return c.num() * div_exact(l, c.den()); });
  };
  return create(clear(F), clear(G));
}

RationalMap RationalMap::from_coefficients(const std::vector<RatK>& a, const std::vector<RatK>& b) {
  if (a.empty() || a.size() != b.size()) throw DomainError("coefficient sequences must both have length d+1");
  return create(XPolyK(a[0], a), XPolyK(b[0], b));
}

const PolyT& RationalMap::a(std::int64_t i) const {
  if (i < 0 || i > static_cast<std::int64_t>(d_)) return zero_;
  return F_.coeff(static_cast<std::size_t>(i));
}

const PolyT& RationalMap::b(std::int64_t i) const {
  if (i < 0 || i > static_cast<std::int64_t>(d_)) return zero_;
  return G_.coeff(static_cast<std::size_t>(i));
}

std::int64_t RationalMap::coeff_height() const {
  ExtInt h = ExtInt::neg_inf();
  for (const auto& c : F_.coeffs()) h = max(h, c.degree());
  for (const auto& c : G_.coeffs()) h = max(h, c.degree());
  return h.value();
}

ProjPointK evaluate(const RationalMap& phi, const ProjPointK& P) {
  if (!same_field(phi.field(), P.field())) throw FieldMismatch();
  const std::size_t d = phi.degree();
  const PolyT& X = P.X();
  const PolyT& Y = P.Y();
  std::vector<PolyT> ypow{PolyT::constant(phi.field(), 1)};
  for (std::size_t k = 1; k <= d; ++k) ypow.push_back(ypow.back() * Y);
  PolyT Fh = phi.a(static_cast<std::int64_t>(d));
  PolyT Gh = phi.b(static_cast<std::int64_t>(d));
  for (std::size_t i = d; i-- > 0;) {
    const auto ii = static_cast<std::int64_t>(i);
    Fh = Fh * X;
    Gh = Gh * X;
    if (!phi.a(ii).is_zero()) Fh += phi.a(ii) * ypow[d - i];
    if (!phi.b(ii).is_zero()) Gh += phi.b(ii) * ypow[d - i];
  }
  // Any common factor of F(X,Y) and G(X,Y) divides Res(phi), so the gcd is
  // found modulo Res without touching the large values.
  const PolyT& res = phi.resultant();
  if (!res.is_constant()) {
    PolyT g = gcd(res, Fh % res);
    if (!g.is_one()) g = gcd(g, Gh % res);
    if (!g.is_one()) {
      Fh = div_exact(Fh, g);
      Gh = div_exact(Gh, g);
    }
  }
  return ProjPointK(std::move(Fh), std::move(Gh));
}

std::string Ratio::to_string() const {
  switch (kind) {
    case Kind::Infinite:
      return "inf";
    case Kind::Undefined:
      return "undefined";
    case Kind::Finite:
      break;
  }
  return value.str();
}

bool in_N(ExtInt deg_a, ExtInt deg_b, const Rational& eps) {
  if (deg_b.is_neg_inf()) return true;
  if (deg_a.is_neg_inf()) return false;
  return Rational(deg_a.value()) >= (2 + eps) * deg_b.value();
}

OrbitRecord make_record(std::size_t n, const ProjPointK& P, const std::optional<Rational>& eps) {
  OrbitRecord r;
  r.n = n;
  r.deg_a = P.X().degree();
  r.deg_b = P.Y().degree();
  if (r.deg_a.is_finite() && r.deg_b.is_finite()) {
    if (r.deg_b.value() > 0) {
      r.ratio.kind = Ratio::Kind::Finite;
      r.ratio.value = Rational(r.deg_a.value(), r.deg_b.value());
    } else if (r.deg_a.value() > 0) {
      r.ratio.kind = Ratio::Kind::Infinite;
    }
  }
  if (eps) r.in_N_eps = in_N(r.deg_a, r.deg_b, *eps);
  return r;
}

OrbitResult orbit(const RationalMap& phi, const ProjPointK& alpha, std::size_t n_max, std::int64_t degree_cap,
                  const std::optional<Rational>& eps) {
  if (n_max < 1) throw DomainError("orbit needs n_max >= 1");
  struct Hash {
    std::size_t operator()(const ProjPointK& p) const { return p.hash(); }
  };
  OrbitResult out;
  std::unordered_map<ProjPointK, std::size_t, Hash> seen;
  ProjPointK cur = alpha;
  out.steps.push_back({cur, make_record(0, cur, eps)});
  seen.emplace(cur, 0);
  const auto d = static_cast<std::int64_t>(phi.degree());
  const std::int64_t ch = phi.coeff_height();
  for (std::size_t n = 1; n <= n_max; ++n) {
    const std::int64_t h = cur.height();
    if (h > (degree_cap - ch) / d) {
      out.status = OrbitStatus::Capped;
      break;
    }
    cur = evaluate(phi, cur);
    out.steps.push_back({cur, make_record(n, cur, eps)});
    auto [it, fresh] = seen.emplace(cur, n);
    if (!fresh && !out.cycle) out.cycle = std::make_pair(it->second, n);
  }
  return out;
}

RationalMap compose(const RationalMap& phi, const RationalMap& psi, std::size_t cap) {
  if (!same_field(phi.field(), psi.field())) throw FieldMismatch();
  const std::size_t d = phi.degree();
  if (d * psi.degree() > cap) {
    throw DomainError("composed degree " + std::to_string(d * psi.degree()) + " exceeds cap " + std::to_string(cap));
  }
  const PolyT zero(phi.field());
  std::vector<XPoly> fp{XPoly::constant(PolyT::constant(phi.field(), 1))}, gp = fp;
  for (std::size_t k = 1; k <= d; ++k) {
    fp.push_back(fp.back() * psi.F());
    gp.push_back(gp.back() * psi.G());
  }
  XPoly F(zero), G(zero);
  for (std::size_t i = 0; i <= d; ++i) {
    const XPoly mono = fp[i] * gp[d - i];
    const auto ii = static_cast<std::int64_t>(i);
    if (!phi.a(ii).is_zero()) F += mono.scaled(phi.a(ii));
    if (!phi.b(ii).is_zero()) G += mono.scaled(phi.b(ii));
  }
  return RationalMap::create(F, G);
}

RationalMap identity_map(const FieldPtr& f) {
  const PolyT z(f), one = PolyT::constant(f, 1);
  return RationalMap::create(XPoly(z, {z, one}), XPoly(z, {one}));
}

XPoly wronskian(const RationalMap& phi) {
  return phi.F().derivative() * phi.G() - phi.F() * phi.G().derivative();
}

MapDiagnostics map_diagnostics(const RationalMap& phi) {
  MapDiagnostics m;
  m.res = phi.resultant();
  m.wronskian = wronskian(phi);
  m.separable = !m.wronskian.is_zero();
  // oo is critical iff the x^(2d-2) coefficient a_{d-1} b_d - a_d b_{d-1}
  // of W vanishes (ramification of phi(1/x) at 0).
  m.infinity_critical = !m.separable || m.wronskian.coeff(2 * phi.degree() - 2).is_zero();
  const auto inf = ProjPointK::infinity(phi.field());
  auto orb = orbit(phi, inf, 8, 20000);
  for (std::size_t n = 1; n < orb.steps.size(); ++n) {
    if (orb.steps[n].point.is_infinity()) {
      m.infinity_period = n;
      break;
    }
  }
  return m;
}

RationalMap pi_transform(const RationalMap& phi) {
  const std::size_t d = phi.degree();
  const PolyT zero(phi.field());
  std::vector<PolyT> fr(d + 1, zero), gr(d + 1, zero);
  for (std::size_t i = 0; i <= d; ++i) {
    fr[d - i] = phi.a(static_cast<std::int64_t>(i));
    gr[d - i] = phi.b(static_cast<std::int64_t>(i));
  }
  return RationalMap::create(XPoly(zero, std::move(gr)), XPoly(zero, std::move(fr)));
}

ExtInt chordal_distance(const ProjPointK& P, const ProjPointK& Q) {
  if (!same_field(P.field(), Q.field())) throw FieldMismatch();
  const PolyT cross = P.X() * Q.Y() - Q.X() * P.Y();
  return cross.degree() - max(P.X().degree(), P.Y().degree()) - max(Q.X().degree(), Q.Y().degree());
}

}  // namespace fqdyn
