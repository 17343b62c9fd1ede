#pragma once

#include <string>
#include <string_view>

#include "fqdyn/frontend/syntax.hpp"
#include "fqdyn/lattes.hpp"

namespace fqdyn::frontend {

// parse_* accept the grammar in docs/grammar.md and throw ParseError with a
// span on syntax and semantic errors.  render_* print the canonical form;
// parse(render(v)) == v for every value.

FieldPtr parse_field(std::string_view text);
/// Element of F_q[t].
PolyT parse_poly(std::string_view text, const FieldPtr& f);
/// Element of K = F_q(t).
RatK parse_ratfunc(std::string_view text, const FieldPtr& f);
/// Polynomial in x with coefficients in F_q[t].
XPoly parse_xpoly(std::string_view text, const FieldPtr& f);
/// Rational function of x over K, of degree at least 1.
RationalMap parse_map(std::string_view text, const FieldPtr& f);
/// y^2 = x^3 + A x + B.
EllipticCurveK parse_curve(std::string_view text, const FieldPtr& f);
/// Point of P^1(K): "oo" or an element of K.
ProjPointK parse_point(std::string_view text, const FieldPtr& f);
/// Point of E(K): "O" or "(x, y)"; checked against the curve.
PointE parse_curve_point(std::string_view text, const EllipticCurveK& E);

std::string render_field(const FieldPtr& f);
std::string render_elem(const FieldPtr& f, Elem e);
std::string render_poly(const PolyT& p, std::string_view var = "t");
std::string render_ratfunc(const RatK& z);
std::string render_xpoly(const XPoly& p);
std::string render_map(const RationalMap& phi);
std::string render_curve(const EllipticCurveK& E);
std::string render_point(const ProjPointK& P);
std::string render_curve_point(const PointE& P);

}  // namespace fqdyn::frontend
