#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "fqdyn/ext_int.hpp"
#include "fqdyn/field.hpp"

namespace fqdyn {

/// Products switch from schoolbook to transform-based multiplication once
/// both operands have more than this many coefficients.
inline constexpr std::size_t kFastMulThreshold = 64;

/// Polynomial in t over F_q.  Coefficients are stored low to high with no
/// trailing zeros, so the zero polynomial has an empty coefficient vector and
/// degree -inf.
///
/// A default-constructed PolyT has no field; it is only a placeholder to be
/// assigned over.
class PolyT {
 public:
  PolyT() = default;
  explicit PolyT(FieldPtr f) : field_(std::move(f)) {}
  PolyT(FieldPtr f, std::vector<Elem> coeffs);

  static PolyT constant(FieldPtr f, Elem c);
  static PolyT from_int(FieldPtr f, std::int64_t c);
  /// c * t^k
  static PolyT monomial(FieldPtr f, Elem c, std::size_t k);
  static PolyT t(FieldPtr f) { return monomial(std::move(f), 1, 1); }

  const FieldPtr& field() const { return field_; }
  const Field& F() const { return *field_; }
  bool bound() const { return static_cast<bool>(field_); }

  ExtInt degree() const {
    return c_.empty() ? ExtInt::neg_inf() : ExtInt(static_cast<std::int64_t>(c_.size()) - 1);
  }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  bool is_constant() const { return c_.size() <= 1; }
  std::size_t size() const { return c_.size(); }
  Elem coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
  Elem lead() const { return c_.empty() ? 0 : c_.back(); }
  std::span<const Elem> coeffs() const { return c_; }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }

  PolyT monic() const;
  PolyT operator-() const;
  PolyT scaled(Elem c) const;
  /// f(t) * t^k
  PolyT shifted(std::size_t k) const;
  Elem eval(Elem x) const;
  /// Formal d/dt.
  PolyT derivative() const;

  PolyT& operator+=(const PolyT& o);
  PolyT& operator-=(const PolyT& o);
  PolyT& operator*=(const PolyT& o);

  friend PolyT operator+(PolyT a, const PolyT& b) { return a += b; }
  friend PolyT operator-(PolyT a, const PolyT& b) { return a -= b; }
  friend PolyT operator*(const PolyT& a, const PolyT& b);
  friend PolyT operator/(const PolyT& a, const PolyT& b);
  friend PolyT operator%(const PolyT& a, const PolyT& b);
  friend bool operator==(const PolyT& a, const PolyT& b);

  std::size_t hash() const;

 private:
  void trim();
  void check_same(const PolyT& o) const;

  FieldPtr field_;
  std::vector<Elem> c_;
};

PolyT mul_schoolbook(const PolyT& f, const PolyT& g);
/// Transform-based product (NTT over word primes with CRT; Kronecker
/// substitution for extension fields).  Agrees bit-exactly with
/// mul_schoolbook.
PolyT mul_fast(const PolyT& f, const PolyT& g);
PolyT mul(const PolyT& f, const PolyT& g, std::size_t threshold = kFastMulThreshold);

/// Quotient and remainder; throws DomainError on division by zero.
std::pair<PolyT, PolyT> divmod(const PolyT& f, const PolyT& g);
/// Exact quotient; throws DomainError if g does not divide f.
PolyT div_exact(const PolyT& f, const PolyT& g);
bool divides(const PolyT& g, const PolyT& f);

/// Monic gcd; throws DomainError when both inputs are zero.
PolyT gcd(const PolyT& f, const PolyT& g);

struct XgcdResult {
  PolyT g, s, u;  // g = s*f + u*h, g monic
};
XgcdResult xgcd(const PolyT& f, const PolyT& h);

PolyT pow(const PolyT& f, std::uint64_t e);
PolyT powmod(const PolyT& f, std::uint64_t e, const PolyT& m);

inline PolyT derivative_t(const PolyT& f) { return f.derivative(); }

/// Resultant of two polynomials over F_q (Sylvester convention, actual
/// degrees).  Throws DomainError when both are zero.
Elem resultant(const PolyT& f, const PolyT& g);

/// Rabin irreducibility test over F_q.
bool is_irreducible(const PolyT& f);

/// The i-th monic polynomial of degree n in a fixed enumeration (base-q
/// digits of i give the lower coefficients).  Used to search for primes of
/// F_q[t] deterministically.
PolyT enumerate_monic(const FieldPtr& f, unsigned n, std::uint64_t i);

/// First `count` monic irreducibles of degree n in enumeration order,
/// skipping those that divide `avoid` (unless avoid is zero).
std::vector<PolyT> find_irreducibles(const FieldPtr& f, unsigned n, std::size_t count,
                                     const PolyT& avoid);

}  // namespace fqdyn
