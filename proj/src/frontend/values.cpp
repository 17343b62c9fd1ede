#include "fqdyn/frontend/values.hpp"

#include <map>
#include <optional>

#include "fqdyn/errors.hpp"

namespace fqdyn::frontend {

namespace {

constexpr std::uint64_t kMaxExponent = 1 << 16;

// A rational function of x over K as an unreduced fraction.
struct Frac {
  XPolyK n, d;
};

enum class Role { T, X, Gen };

struct Ctx {
  FieldPtr f;
  std::map<std::string, Role> vars;
};

Frac constant(const RatK& c) { return {XPolyK::constant(c), XPolyK::constant(RatK::one(c.field()))}; }

Frac fpow(Frac base, std::uint64_t e, const FieldPtr& f) {
  Frac r = constant(RatK::one(f));
  while (e) {
    if (e & 1) r = {r.n * base.n, r.d * base.d};
    e >>= 1;
    if (e) base = {base.n * base.n, base.d * base.d};
  }
  return r;
}

std::set<std::string> names(const Ctx& ctx) {
  std::set<std::string> s;
  for (const auto& [k, v] : ctx.vars) s.insert("'" + k + "'");
  return s;
}

Frac eval(const Expr& e, const Ctx& ctx) {
  using K = Expr::Kind;
  const FieldPtr& f = ctx.f;
  switch (e.kind) {
    case K::Int: {
      const auto r = static_cast<std::uint64_t>(e.value % f->p());
      return constant(RatK(PolyT::constant(f, f->from_int(static_cast<std::int64_t>(r)))));
    }
    case K::Var: {
      auto it = ctx.vars.find(e.name);
      if (it == ctx.vars.end()) throw ParseError("unknown variable '" + e.name + "'", e.span, names(ctx));
      switch (it->second) {
        case Role::T:
          return constant(RatK(PolyT::t(f)));
        case Role::Gen:
          return constant(RatK(PolyT::constant(f, f->generator())));
        case Role::X:
          return {XPolyK::monomial(RatK::one(f), 1), XPolyK::constant(RatK::one(f))};
      }
      break;
    }
    case K::Neg: {
      Frac a = eval(e.args[0], ctx);
      return {-a.n, a.d};
    }
    case K::Pow: {
      if (e.value > kMaxExponent) throw ParseError("exponent too large", e.span);
      return fpow(eval(e.args[0], ctx), static_cast<std::uint64_t>(e.value), f);
    }
    default:
      break;
  }
  Frac a = eval(e.args[0], ctx), b = eval(e.args[1], ctx);
  switch (e.kind) {
    case K::Add:
      return {a.n * b.d + b.n * a.d, a.d * b.d};
    case K::Sub:
      return {a.n * b.d - b.n * a.d, a.d * b.d};
    case K::Mul:
      return {a.n * b.n, a.d * b.d};
    case K::Div:
      if (b.n.is_zero()) throw ParseError("division by zero", e.args[1].span);
      return {a.n * b.d, a.d * b.n};
    default:
      break;
  }
  throw ParseError("bad expression", e.span);
}

// Lowest terms with a monic denominator.
Frac reduce(Frac v) {
  const XPolyK g = gcd(v.n, v.d);
  if (g.degree() > ExtInt(0)) {
    v.n = divmod(v.n, g).first;
    v.d = divmod(v.d, g).first;
  }
  const RatK lc = v.d.lead();
  v.n = v.n.scaled(lc.inv());
  v.d = v.d.scaled(lc.inv());
  return v;
}

Ctx context(const FieldPtr& f, bool with_x) {
  Ctx c{f, {{"t", Role::T}}};
  if (with_x) c.vars["x"] = Role::X;
  if (!f->is_prime_field()) c.vars[f->spec().generator] = Role::Gen;
  return c;
}

// Evaluates an x-free expression to an element of K.
RatK eval_k(const Expr& e, const FieldPtr& f) {
  Frac v = reduce(eval(e, context(f, false)));
  return v.n.coeff(0) / v.d.coeff(0);
}

Expr parse_whole(std::string_view text) { return parse_expression(text); }

bool has_any(const std::string& s, std::string_view chars) { return s.find_first_of(chars) != std::string::npos; }
std::string wrap(const std::string& s, std::string_view chars) { return has_any(s, chars) ? "(" + s + ")" : s; }

}  // namespace

FieldPtr parse_field(std::string_view text) {
  Parser p(text);
  p.expect_ident("GF");
  p.expect(Tok::LParen);
  const Span qspan = p.peek().span;
  const std::uint64_t q = p.expect_uint();
  p.expect(Tok::RParen);
  if (p.at(Tok::End)) {
    try {
      return Field::prime(q);
    } catch (const DomainError& e) {
      throw ParseError(e.what(), qspan);
    }
  }
  p.expect(Tok::Equals);
  p.expect_ident("GF");
  p.expect(Tok::LParen);
  const Span pspan = p.peek().span;
  const std::uint64_t prime = p.expect_uint();
  p.expect(Tok::RParen);
  p.expect(Tok::LBracket);
  const Token gen = p.expect(Tok::Ident);
  if (gen.text == "t" || gen.text == "x" || gen.text == "y" || gen.text == "oo" || gen.text == "O" || gen.text == "GF") {
    throw ParseError("generator name '" + gen.text + "' is reserved", gen.span);
  }
  p.expect(Tok::RBracket);
  p.expect(Tok::Slash);
  p.expect(Tok::LParen);
  const Expr mod = p.expression();
  p.expect(Tok::RParen);
  p.finish();

  FieldPtr base;
  try {
    base = Field::prime(prime);
  } catch (const DomainError& e) {
    throw ParseError(e.what(), pspan);
  }
  // The modulus is read as a polynomial in the generator over F_p.
  Ctx ctx{base, {{gen.text, Role::T}}};
  Frac m = reduce(eval(mod, ctx));
  if (m.d.degree() != ExtInt(0) || m.n.degree() > ExtInt(0) || !m.d.coeff(0).is_one() ||
      !m.n.coeff(0).den().is_one()) {
    throw ParseError("modulus must be a polynomial in " + gen.text, mod.span);
  }
  const PolyT mu = m.n.coeff(0).num();
  if (!mu.is_monic()) throw ParseError("modulus must be monic", mod.span);
  FieldSpec spec;
  spec.p = prime;
  spec.k = static_cast<unsigned>(std::max<std::int64_t>(mu.degree().is_finite() ? mu.degree().value() : 0, 0));
  spec.generator = gen.text;
  for (std::size_t i = 0; i < mu.size(); ++i) spec.modulus.push_back(mu.coeff(i));
  if (spec.k < 2) throw ParseError("modulus must have degree at least 2", mod.span);
  std::uint64_t pk = 1;
  for (unsigned i = 0; i < spec.k; ++i) pk *= prime;
  if (pk != q) {
    throw ParseError("GF(" + std::to_string(q) + ") does not match p^k = " + std::to_string(pk), qspan);
  }
  if (!is_irreducible(mu)) throw ParseError("modulus is not irreducible over GF(" + std::to_string(prime) + ")", mod.span);
  try {
    return Field::make(std::move(spec));
  } catch (const DomainError& e) {
    throw ParseError(e.what(), mod.span);
  }
}

PolyT parse_poly(std::string_view text, const FieldPtr& f) {
  const Expr e = parse_whole(text);
  const RatK v = eval_k(e, f);
  if (!v.is_poly()) throw ParseError("not a polynomial in t", e.span);
  return v.num();
}

RatK parse_ratfunc(std::string_view text, const FieldPtr& f) { return eval_k(parse_whole(text), f); }

XPoly parse_xpoly(std::string_view text, const FieldPtr& f) {
  const Expr e = parse_whole(text);
  Frac v = reduce(eval(e, context(f, true)));
  if (v.d.degree() != ExtInt(0)) throw ParseError("not a polynomial in x", e.span);
  std::vector<PolyT> c;
  for (const auto& a : v.n.coeffs()) {
    if (!a.is_poly()) throw ParseError("coefficients must be polynomials in t", e.span);
    c.push_back(a.num());
  }
  return XPoly(PolyT(f), std::move(c));
}

RationalMap parse_map(std::string_view text, const FieldPtr& f) {
  const Expr e = parse_whole(text);
  Frac v = reduce(eval(e, context(f, true)));
  try {
    return RationalMap::create(v.n, v.d);
  } catch (const DomainError& err) {
    throw ParseError(err.what(), e.span);
  }
}

EllipticCurveK parse_curve(std::string_view text, const FieldPtr& f) {
  Parser p(text);
  p.expect_ident("y");
  p.expect(Tok::Caret);
  const Span two = p.peek().span;
  if (p.expect_uint() != 2) throw ParseError("curve must start with y^2", two);
  p.expect(Tok::Equals);
  const Expr rhs = p.expression();
  p.finish();
  Frac v = reduce(eval(rhs, context(f, true)));
  const RatK one = RatK::one(f);
  if (v.d.degree() != ExtInt(0) || v.n.degree() != ExtInt(3) || v.n.coeff(3) != one || !v.n.coeff(2).is_zero()) {
    throw ParseError("right-hand side must be x^3 + A*x + B", rhs.span);
  }
  try {
    return EllipticCurveK::make(v.n.coeff(1), v.n.coeff(0));
  } catch (const DomainError& err) {
    throw ParseError(err.what(), rhs.span);
  }
}

ProjPointK parse_point(std::string_view text, const FieldPtr& f) {
  Parser p(text);
  if (p.at_ident("oo")) {
    p.expect_ident("oo");
    p.finish();
    return ProjPointK::infinity(f);
  }
  return ProjPointK::from_ratk(parse_ratfunc(text, f));
}

PointE parse_curve_point(std::string_view text, const EllipticCurveK& E) {
  Parser p(text);
  if (p.at_ident("O")) {
    p.expect_ident("O");
    p.finish();
    return PointE::infinity();
  }
  const Span open = p.expect(Tok::LParen).span;
  const Expr ex = p.expression();
  p.expect(Tok::Comma);
  const Expr ey = p.expression();
  const Span close = p.expect(Tok::RParen).span;
  p.finish();
  RatK x = eval_k(ex, E.field()), y = eval_k(ey, E.field());
  if (!E.contains(x, y)) {
    Span s = open;
    s.length = close.offset + close.length - open.offset;
    throw ParseError("point is not on the curve", s);
  }
  return PointE::affine(std::move(x), std::move(y));
}

std::string render_field(const FieldPtr& f) {
  if (f->is_prime_field()) return "GF(" + std::to_string(f->p()) + ")";
  auto base = Field::prime(f->p());
  const auto& m = f->spec().modulus;
  PolyT mu(base, std::vector<Elem>(m.begin(), m.end()));
  return "GF(" + std::to_string(f->q()) + ")=GF(" + std::to_string(f->p()) + ")[" + f->spec().generator + "]/(" +
         render_poly(mu, f->spec().generator) + ")";
}

std::string render_elem(const FieldPtr& f, Elem e) {
  if (f->is_prime_field()) return std::to_string(e);
  const auto d = f->digits(e);
  auto base = Field::prime(f->p());
  return render_poly(PolyT(base, std::vector<Elem>(d.begin(), d.end())), f->spec().generator);
}

std::string render_poly(const PolyT& p, std::string_view var) {
  if (p.is_zero()) return "0";
  std::string out;
  for (std::size_t k = p.size(); k-- > 0;) {
    const Elem c = p.coeff(k);
    if (c == 0) continue;
    if (!out.empty()) out += "+";
    const std::string cs = render_elem(p.field(), c);
    if (k == 0) {
      out += cs;
      continue;
    }
    if (c != 1) out += wrap(cs, "+") + "*";
    out += var;
    if (k > 1) out += "^" + std::to_string(k);
  }
  return out;
}

std::string render_ratfunc(const RatK& z) {
  if (z.is_poly()) return render_poly(z.num());
  return wrap(render_poly(z.num()), "+") + "/" + wrap(render_poly(z.den()), "+*");
}

std::string render_xpoly(const XPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (std::size_t k = p.size(); k-- > 0;) {
    const PolyT& c = p.coeff(k);
    if (c.is_zero()) continue;
    if (!out.empty()) out += "+";
    const std::string cs = render_poly(c);
    if (k == 0) {
      out += cs;
      continue;
    }
    if (!c.is_one()) out += wrap(cs, "+") + "*";
    out += "x";
    if (k > 1) out += "^" + std::to_string(k);
  }
  return out;
}

std::string render_map(const RationalMap& phi) {
  const XPoly& G = phi.G();
  const std::string num = render_xpoly(phi.F());
  if (G.degree() == ExtInt(0) && G.coeff(0).is_one()) return num;
  return wrap(num, "+") + "/" + wrap(render_xpoly(G), "+*");
}

std::string render_curve(const EllipticCurveK& E) {
  std::string out = "y^2 = x^3";
  if (!E.A().is_zero()) out += " + " + (E.A().is_one() ? std::string() : wrap(render_ratfunc(E.A()), "+") + "*") + "x";
  if (!E.B().is_zero()) out += " + " + render_ratfunc(E.B());
  return out;
}

std::string render_point(const ProjPointK& P) {
  if (P.is_infinity()) return "oo";
  return render_ratfunc(P.to_ratk());
}

std::string render_curve_point(const PointE& P) {
  if (P.at_infinity) return "O";
  return "(" + render_ratfunc(P.x) + ", " + render_ratfunc(P.y) + ")";
}

}  // namespace fqdyn::frontend
