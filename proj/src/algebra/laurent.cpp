#include "fqdyn/laurent.hpp"

#include <algorithm>

#include "fqdyn/errors.hpp"

namespace fqdyn {

namespace {

void normalize(LaurentTail& s) {
  std::size_t lead = 0;
  while (lead < s.coeffs.size() && s.coeffs[lead] == 0) ++lead;
  s.coeffs.erase(s.coeffs.begin(), s.coeffs.begin() + static_cast<std::ptrdiff_t>(lead));
  s.valuation += static_cast<std::int64_t>(lead);
  while (!s.coeffs.empty() && s.coeffs.back() == 0) s.coeffs.pop_back();
  if (s.coeffs.empty()) s.valuation = s.abs_precision + 1;
}

void check_cap(std::int64_t prec, std::int64_t cap) {
  if (prec > cap) {
    throw PrecisionCapExceeded("Laurent precision " + std::to_string(prec) + " exceeds cap " + std::to_string(cap));
  }
}

}  // namespace

Elem LaurentTail::coeff(std::int64_t i) const {
  if (i > abs_precision) throw PrecisionCapExceeded("coefficient beyond known precision");
  if (i < valuation) return 0;
  const auto k = static_cast<std::size_t>(i - valuation);
  return k < coeffs.size() ? coeffs[k] : 0;
}

LaurentTail laurent_expand(const RatK& z, std::int64_t abs_precision, std::int64_t cap) {
  check_cap(abs_precision, cap);
  LaurentTail out;
  out.field = z.field();
  out.abs_precision = abs_precision;
  if (z.is_zero()) {
    normalize(out);
    return out;
  }
  const Field& F = *z.field();
  // With s = 1/t: num = t^dn n(s), den = t^dd d(s), z = s^(dd-dn) n(s)/d(s).
  const std::int64_t dn = z.num().degree().value();
  const std::int64_t dd = z.den().degree().value();
  const std::int64_t v0 = dd - dn;
  out.valuation = v0;
  if (abs_precision < v0) {
    out.coeffs.clear();
    normalize(out);
    return out;
  }
  const auto terms = static_cast<std::size_t>(abs_precision - v0 + 1);
  auto rev = [](const PolyT& p) {
    std::vector<Elem> r(p.coeffs().rbegin(), p.coeffs().rend());
    return r;
  };
  const auto n = rev(z.num());
  const auto d = rev(z.den());
  const Elem inv_d0 = F.inv(d[0]);
  std::vector<Elem> c(terms, 0);
  for (std::size_t i = 0; i < terms; ++i) {
    Elem acc = i < n.size() ? n[i] : 0;
    const std::size_t lim = std::min(i, d.size() - 1);
    for (std::size_t k = 1; k <= lim; ++k) acc = F.sub(acc, F.mul(d[k], c[i - k]));
    c[i] = F.mul(acc, inv_d0);
  }
  out.coeffs = std::move(c);
  normalize(out);
  return out;
}

LaurentTail operator-(const LaurentTail& a, const LaurentTail& b) {
  if (!same_field(a.field, b.field)) throw FieldMismatch();
  LaurentTail out;
  out.field = a.field;
  out.abs_precision = std::min(a.abs_precision, b.abs_precision);
  const std::int64_t lo = std::min(a.valuation, b.valuation);
  if (lo > out.abs_precision) {
    out.valuation = lo;
    normalize(out);
    return out;
  }
  out.valuation = lo;
  const Field& F = *a.field;
  for (std::int64_t i = lo; i <= out.abs_precision; ++i) out.coeffs.push_back(F.sub(a.coeff(i), b.coeff(i)));
  normalize(out);
  return out;
}

LaurentTail mahler_beta(const FieldPtr& f, std::int64_t abs_precision, std::int64_t cap) {
  check_cap(abs_precision, cap);
  LaurentTail out;
  out.field = f;
  out.abs_precision = abs_precision;
  out.valuation = 1;
  const auto q = static_cast<std::int64_t>(f->q());
  if (abs_precision >= 1) {
    out.coeffs.assign(static_cast<std::size_t>(abs_precision), 0);
    for (std::int64_t e = 1; e <= abs_precision; e *= q) {
      out.coeffs[static_cast<std::size_t>(e - 1)] = 1;
      if (e > abs_precision / q) break;
    }
  }
  normalize(out);
  return out;
}

std::vector<MahlerRow> mahler_exponent_probe(const FieldPtr& f, unsigned j_max, std::int64_t cap) {
  const auto q = static_cast<std::int64_t>(f->q());
  std::vector<std::int64_t> qpow{1};
  for (unsigned j = 0; j <= j_max; ++j) {
    if (qpow.back() > cap / q) {
      throw PrecisionCapExceeded("q^" + std::to_string(j + 1) + " exceeds precision cap " + std::to_string(cap));
    }
    qpow.push_back(qpow.back() * q);
  }
  const std::int64_t prec = qpow[j_max + 1];
  const LaurentTail beta = mahler_beta(f, prec, cap);
  std::vector<MahlerRow> rows;
  for (unsigned j = 0; j <= j_max; ++j) {
    const std::int64_t dq = qpow[j];
    std::vector<Elem> p(static_cast<std::size_t>(dq), 0);
    for (unsigned i = 0; i <= j; ++i) p[static_cast<std::size_t>(dq - qpow[i])] = 1;
    const RatK s(PolyT(f, std::move(p)), PolyT::monomial(f, 1, static_cast<std::size_t>(dq)));
    const LaurentTail diff = beta - laurent_expand(s, prec, cap);
    if (diff.is_zero()) throw PrecisionCapExceeded("beta - S_j vanishes to the available precision");
    MahlerRow row;
    row.j = j;
    row.deg_q = s.den().degree().value();
    row.neg_log_err = diff.valuation;
    row.estimate = Rational(row.neg_log_err, row.deg_q);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace fqdyn
