#include "fqdyn/hypotheses.hpp"

#include <algorithm>

#include "fqdyn/errors.hpp"

namespace fqdyn {

namespace {

using LPoly = UPoly<Residue>;

template <class R>
UPoly<R> mulmod(const UPoly<R>& a, const UPoly<R>& b, const UPoly<R>& m) {
  return (a * b) % m;
}

// (F_hom(X, Y), G_hom(X, Y)) reduced modulo m, coefficients mapped by `lift`.
template <class R, class Lift>
std::pair<UPoly<R>, UPoly<R>> step_mod(const RationalMap& phi, const UPoly<R>& X, const UPoly<R>& Y,
                                       const UPoly<R>& m, Lift&& lift) {
  const std::size_t d = phi.degree();
  std::vector<UPoly<R>> ypow{UPoly<R>::constant(m.one_elem())};
  for (std::size_t k = 1; k <= d; ++k) ypow.push_back(mulmod(ypow.back(), Y, m));
  UPoly<R> Fh = UPoly<R>::constant(lift(phi.a(static_cast<std::int64_t>(d))));
  UPoly<R> Gh = UPoly<R>::constant(lift(phi.b(static_cast<std::int64_t>(d))));
  for (std::size_t i = d; i-- > 0;) {
    const auto ii = static_cast<std::int64_t>(i);
    Fh = mulmod(Fh, X, m);
    Gh = mulmod(Gh, X, m);
    if (!phi.a(ii).is_zero()) Fh += ypow[d - i].scaled(lift(phi.a(ii)));
    if (!phi.b(ii).is_zero()) Gh += ypow[d - i].scaled(lift(phi.b(ii)));
  }
  return {Fh % m, Gh % m};
}

std::int64_t max_tdeg(const XPolyK& p) {
  std::int64_t h = 0;
  for (const auto& c : p.coeffs()) {
    if (!c.is_zero()) h = std::max({h, c.num().degree().value(), c.den().degree().value()});
  }
  return h;
}

// Smallest m with q^m >= 2^20, so that accidental vanishing modulo a random
// prime is rare.
unsigned specialization_degree(std::uint64_t q) {
  unsigned m = 1;
  for (std::uint64_t s = q; s < (1ULL << 20); s *= q) ++m;
  return m;
}

LPoly powmod_l(LPoly base, std::uint64_t e, const LPoly& m) {
  LPoly r = LPoly::constant(m.one_elem()) % m;
  base = base % m;
  while (e) {
    if (e & 1) r = mulmod(r, base, m);
    e >>= 1;
    if (e) base = mulmod(base, base, m);
  }
  return r;
}

std::vector<unsigned> prime_divisors(unsigned n) {
  std::vector<unsigned> out;
  for (unsigned k = 2; k * k <= n; ++k) {
    if (n % k == 0) {
      out.push_back(k);
      while (n % k == 0) n /= k;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Rabin's test over the residue field of size Q.
bool rabin_irreducible(const LPoly& g, std::uint64_t Q) {
  const auto n = static_cast<unsigned>(g.degree().value());
  if (n <= 1) return n == 1;
  const LPoly mg = monic(g);
  const LPoly x = LPoly::monomial(mg.one_elem(), 1);
  std::vector<LPoly> frob{x % mg};
  for (unsigned i = 1; i <= n; ++i) frob.push_back(powmod_l(frob.back(), Q, mg));
  if (!(frob[n] - x % mg).is_zero()) return false;
  for (unsigned r : prime_divisors(n)) {
    if (gcd(frob[n / r] - x, mg).degree() != ExtInt(0)) return false;
  }
  return true;
}

bool eisenstein_at(const XPoly& g, const PolyT& pi) {
  const std::size_t n = g.size() - 1;
  if (divides(pi, g.coeff(n))) return false;
  for (std::size_t i = 0; i < n; ++i)
    if (!divides(pi, g.coeff(i))) return false;
  return !divides(pi * pi, g.coeff(0));
}

}  // namespace

const char* to_string(Condition2Result::Status s) {
  switch (s) {
    case Condition2Result::Status::Pass:
      return "pass";
    case Condition2Result::Status::Fail:
      return "fail";
    case Condition2Result::Status::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

Condition1Result check_condition1(const RationalMap& phi) {
  Condition1Result r;
  r.verdict = consistency_check(build_system_closed_form(phi));
  r.pass = r.verdict.status == ConsistencyVerdict::Status::Inconsistent;
  if (phi.degree() < 3) {
    // At most five equations in six unknowns: never overdetermined.
    r.pass = false;
    r.annotation = kUnderdeterminedNote;
  }
  return r;
}

Condition2Result check_condition2_bounded(const RationalMap& phi, std::size_t n_bound, std::int64_t degree_cap) {
  Condition2Result out;
  out.certificate = "bounded";
  const auto diag = map_diagnostics(phi);
  if (!diag.separable) {
    out.status = Condition2Result::Status::Fail;
    out.witness = 0;
    out.reason = "map is inseparable, so every point is critical";
    return out;
  }
  if (diag.infinity_critical) {
    out.status = Condition2Result::Status::Fail;
    out.witness = 0;
    out.reason = "infinity is a critical point";
    return out;
  }
  const XPoly& W = diag.wronskian;
  const FieldPtr& f = phi.field();
  if (W.degree() == ExtInt(0)) {
    // No finite critical points (possible only when d = 1).
    out.status = Condition2Result::Status::Pass;
    out.n_checked = n_bound;
    out.reason = "no finite critical points";
    return out;
  }

  // Primes of F_q[t] at which W keeps its degree and phi its resultant.
  const PolyT avoid = W.lead() * phi.resultant();
  const auto primes = find_irreducibles(f, specialization_degree(f->q()), 3, avoid);
  struct Spec {
    ResiduePtr ctx;
    LPoly W, X, Y;
  };
  std::vector<Spec> specs;
  for (const auto& mu : primes) {
    Spec s;
    s.ctx = ResidueField::make(mu);
    s.W = reduce(W, s.ctx);
    const Residue one(s.ctx, PolyT::constant(f, 1));
    s.X = LPoly::monomial(one, 1) % s.W;
    s.Y = LPoly::constant(one);
    specs.push_back(std::move(s));
  }

  // Exact iterate in K[x]/(W), advanced lazily.
  const XPolyK Wk = to_k(W);
  const RatK oneK = RatK::one(f);
  XPolyK Xk = XPolyK::monomial(oneK, 1) % Wk, Yk = XPolyK::constant(oneK);
  std::size_t exact_n = 0;

  for (std::size_t n = 1; n <= n_bound; ++n) {
    bool cleared = false;
    for (auto& s : specs) {
      auto lift = [&](const PolyT& c) { return Residue(s.ctx, c); };
      std::tie(s.X, s.Y) = step_mod(phi, s.X, s.Y, s.W, lift);
      if (!cleared && !resultant_field(s.W, s.Y).is_zero()) cleared = true;
    }
    if (cleared) {
      out.n_checked = n;
      continue;
    }
    // Every specialization vanished: decide exactly.
    while (exact_n < n) {
      auto lift = [](const PolyT& c) { return RatK(c); };
      std::tie(Xk, Yk) = step_mod(phi, Xk, Yk, Wk, lift);
      ++exact_n;
      if (std::max(max_tdeg(Xk), max_tdeg(Yk)) > degree_cap) {
        out.status = Condition2Result::Status::Inconclusive;
        out.reason = "degree cap reached in the exact check at n = " + std::to_string(exact_n);
        return out;
      }
    }
    if (gcd(Wk, Yk).degree() > ExtInt(0)) {
      out.status = Condition2Result::Status::Fail;
      out.witness = n;
      out.reason = "a critical point maps to infinity";
      return out;
    }
    out.n_checked = n;
  }
  out.status = Condition2Result::Status::Pass;
  return out;
}

HypothesisReport check_hypotheses(const RationalMap& phi, std::size_t n_bound, std::int64_t degree_cap) {
  HypothesisReport r;
  r.condition1 = check_condition1(phi);
  r.condition2 = check_condition2_bounded(phi, n_bound, degree_cap);
  r.separable = map_diagnostics(phi).separable;
  return r;
}

IrreducibilityCertificate certify_irreducible(const XPoly& g) {
  IrreducibilityCertificate out;
  if (g.degree() < ExtInt(1)) return out;
  if (g.degree() == ExtInt(1)) {
    out.certified = true;
    out.method = "linear";
    return out;
  }
  const FieldPtr& f = g.zero_elem().field();
  // Eisenstein: candidate primes are t - c and the gcd of the lower
  // coefficients when that gcd is itself irreducible.
  PolyT low = PolyT(f);
  for (std::size_t i = 0; i + 1 < g.size(); ++i) low = low.is_zero() ? g.coeff(i) : gcd(low, g.coeff(i));
  std::vector<PolyT> cands;
  if (f->q() <= 4096) {
    for (std::uint64_t i = 0; i < f->q(); ++i) cands.push_back(enumerate_monic(f, 1, i));
  }
  if (!low.is_zero() && !low.is_constant() && is_irreducible(low)) cands.push_back(low.monic());
  for (const auto& pi : cands) {
    if (eisenstein_at(g, pi)) {
      out.certified = true;
      out.method = "eisenstein";
      out.prime = pi;
      return out;
    }
  }
  // A monic g factors over F_q(t) only into monic factors over F_q[t], and
  // reduction keeps their degrees, so an irreducible reduction certifies g.
  if (!g.lead().is_constant()) return out;
  std::uint64_t Q = 1;
  for (unsigned m = 1; m <= 3; ++m) {
    if (Q > (1ULL << 62) / f->q()) break;
    Q *= f->q();
    auto primes = find_irreducibles(f, m, 8, PolyT(f));
    for (const auto& mu : primes) {
      auto ctx = ResidueField::make(mu);
      if (rabin_irreducible(reduce(g, ctx), Q)) {
        out.certified = true;
        out.method = "specialization";
        out.prime = mu;
        return out;
      }
    }
  }
  return out;
}

RationalMap family_map(const FieldPtr& f, std::size_t d, const XPoly& h) {
  if (d < 5) throw DomainError("the family needs d >= 5 to place the t*x^(d-5) term");
  const PolyT z(f);
  std::vector<PolyT> F(d + 1, z), G(d + 1, z);
  F[d] = PolyT::constant(f, 1);
  G[d] = PolyT::constant(f, 1);
  G[d - 1] = PolyT::monomial(f, 1, 2);
  G[d - 2] = PolyT::t(f);
  G[d - 5] = G[d - 5] + PolyT::t(f);
  XPoly g(z, std::move(G));
  g += h;
  return RationalMap::create(XPoly(z, std::move(F)), g);
}

FamilyCheck check_family_prop35(std::size_t d, const XPoly& h, const FieldPtr& f) {
  FamilyCheck out;
  if (f->p() <= 5) out.failures.push_back("characteristic must exceed 5");
  if (d < 6) out.failures.push_back("degree too small: need d >= 6");
  if (d >= 6 && !h.is_zero() && h.degree() > ExtInt(static_cast<std::int64_t>(d) - 6)) {
    out.failures.push_back("deg_x h must be at most d - 6");
  }
  if (!out.failures.empty()) return out;

  std::optional<RationalMap> built;
  try {
    built = family_map(f, d, h);
  } catch (const DomainError& e) {
    out.failures.push_back(e.what());
    return out;
  }
  const RationalMap& phi = *built;
  out.map = phi;
  const XPoly& g = phi.G();
  out.irreducibility = certify_irreducible(g);
  if (!out.irreducibility.certified) out.failures.push_back("irreducibility of the denominator not certified");

  for (const auto& c : g.coeffs())
    if (!c.derivative().is_zero()) out.denominator_not_over_tp = true;
  if (!out.denominator_not_over_tp) out.failures.push_back("denominator is defined over F_q[t^p]");

  const auto diag = map_diagnostics(phi);
  out.separable = diag.separable;
  out.infinity_critical = diag.infinity_critical;
  if (!out.separable) out.failures.push_back("map is inseparable");
  if (out.infinity_critical) out.failures.push_back("infinity is critical");

  // Critical points: x^(d-1) times a factor of degree <= d-1, so every
  // critical point has degree < d over K and cannot be a pole.
  const XPoly& W = diag.wronskian;
  bool low_zero = true;
  for (std::size_t i = 0; i + 1 < d && i < W.size(); ++i) low_zero = low_zero && W.coeff(i).is_zero();
  out.crit_degree_bound = low_zero && W.degree() <= ExtInt(2 * static_cast<std::int64_t>(d) - 2);
  if (!out.crit_degree_bound) out.failures.push_back("wronskian does not split as x^(d-1) times degree <= d-1");

  const auto sys = build_system_closed_form(phi);
  out.verdict = consistency_check(sys);
  if (out.verdict->status != ConsistencyVerdict::Status::Inconsistent) {
    out.failures.push_back("Riccati system is consistent");
  }
  try {
    out.certificate = unique_subsystem_solution(sys, {0, 1, 2, 3, 4, 5});
  } catch (const DomainError&) {
    out.failures.push_back("rows 0..5 are singular");
  }
  out.pass = out.failures.empty();
  if (out.irreducibility.certified && out.separable && !out.infinity_critical && out.crit_degree_bound) {
    // A first hit phi^n(c) = oo needs phi^(n-1)(c) to be a root of the
    // irreducible g, of degree d over K, while K(c) has degree < d.
    out.condition2.status = Condition2Result::Status::Pass;
    out.condition2.certificate = "family-criterion";
  } else {
    out.condition2.status = Condition2Result::Status::Inconclusive;
    out.condition2.reason = "family criteria not met";
  }
  return out;
}

std::int64_t height_drift_bound(const RationalMap& phi) {
  return (2 * static_cast<std::int64_t>(phi.degree()) - 1) * phi.coeff_height();
}

HeightSequence height_normalized_sequence(const std::vector<OrbitRecord>& records, std::size_t d) {
  if (records.size() < 2) throw DomainError("height sequence needs at least two records");
  HeightSequence hs;
  boost::multiprecision::cpp_int dn = 1;
  std::vector<std::int64_t> h;
  for (const auto& r : records) {
    const ExtInt m = max(r.deg_a, r.deg_b);
    h.push_back(m.is_finite() ? m.value() : 0);
  }
  for (std::size_t n = 0; n < h.size(); ++n) {
    hs.normalized.emplace_back(Rational(h[n]) / Rational(dn));
    dn *= d;
  }
  for (std::size_t n = 0; n + 1 < h.size(); ++n) {
    const std::int64_t drift = h[n + 1] - static_cast<std::int64_t>(d) * h[n];
    hs.drift.push_back(drift);
    hs.C = std::max(hs.C, drift < 0 ? -drift : drift);
  }
  return hs;
}

namespace {

// Extremes of the finite ratios in a window; any infinite ratio makes the
// upper estimate infinite.
std::pair<Ratio, Ratio> window_extremes(const std::vector<OrbitRecord>& recs, std::size_t lo, std::size_t hi) {
  Ratio mn, mx;
  bool any_inf = false;
  for (std::size_t i = lo; i <= hi && i < recs.size(); ++i) {
    const auto& r = recs[i].ratio;
    if (r.kind == Ratio::Kind::Infinite) {
      any_inf = true;
      continue;
    }
    if (r.kind != Ratio::Kind::Finite) continue;
    if (mn.kind != Ratio::Kind::Finite || r.value < mn.value) mn = r;
    if (mx.kind != Ratio::Kind::Finite || r.value > mx.value) mx = r;
  }
  if (any_inf) {
    mx.kind = Ratio::Kind::Infinite;
    if (mn.kind == Ratio::Kind::Undefined) mn.kind = Ratio::Kind::Infinite;
  }
  return {mn, mx};
}

}  // namespace

ScanReport integrality_scan(const RationalMap& phi, const ProjPointK& alpha, const ScanConfig& cfg) {
  if (cfg.epsilon <= 0 || cfg.epsilon > Rational(1, 5)) throw DomainError("epsilon must lie in (0, 1/5]");
  ScanReport rep;
  const auto orb = orbit(phi, alpha, cfg.n_max, cfg.degree_cap, cfg.epsilon);
  rep.status = orb.status;
  rep.cycle = orb.cycle;
  for (const auto& s : orb.steps) {
    rep.records.push_back(s.record);
    rep.points.push_back(s.point);
  }
  for (const auto& r : rep.records) {
    if (r.n == 0) continue;
    if (r.in_N_eps) rep.N_members.push_back(r.n);
    if (r.deg_b == ExtInt(0)) ++rep.polynomial_iterates;
  }
  const std::size_t last = rep.records.size() - 1;
  if (last >= 1) {
    rep.window_end = last;
    rep.window_start = last - (last - 1) / 2;
    std::tie(rep.ratio_liminf_est, rep.ratio_limsup_est) =
        window_extremes(rep.records, rep.window_start, rep.window_end);
  }
  if (rep.records.size() >= 2) rep.heights = height_normalized_sequence(rep.records, phi.degree());

  if (orb.cycle) rep.annotations.push_back("orbit appears preperiodic; theorem vacuous");
  if (orb.status == OrbitStatus::Capped) rep.annotations.push_back("stopped at the degree cap");
  const auto hyp1 = check_condition1(phi);
  if (!hyp1.pass) {
    rep.annotations.push_back("hypothesis (1) fails for this map; the theorem does not apply" +
                              (hyp1.annotation.empty() ? std::string() : " (" + hyp1.annotation + ")"));
  }
  if (cfg.run_pi_side) {
    const RationalMap pi = pi_transform(phi);
    const auto porb = orbit(pi, alpha.reciprocal(), cfg.n_max, cfg.degree_cap, cfg.epsilon);
    bool ok = porb.steps.size() == orb.steps.size();
    for (std::size_t n = 0; n < porb.steps.size(); ++n) {
      rep.pi_records.push_back(porb.steps[n].record);
      if (n < orb.steps.size()) {
        ok = ok && porb.steps[n].record.deg_a == orb.steps[n].record.deg_b &&
             porb.steps[n].record.deg_b == orb.steps[n].record.deg_a;
      }
    }
    rep.pi_duality_holds = ok;
    if (!ok) throw IdentityFalsified("pi-duality of orbit degrees failed");
  }
  return rep;
}

}  // namespace fqdyn
