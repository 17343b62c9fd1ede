#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fqdyn/laurent.hpp"
#include "fqdyn/upoly.hpp"

namespace fqdyn {

inline constexpr std::int64_t kDefaultDegreeCap = 200000;
inline constexpr std::size_t kDefaultComposeCap = 256;

/// Point of P^1(K) as [X : Y] with X, Y in F_q[t] coprime.  Canonical
/// representative: Y monic when Y != 0, and [1 : 0] for infinity.
class ProjPointK {
 public:
  ProjPointK() = default;
  ProjPointK(PolyT X, PolyT Y);

  static ProjPointK infinity(const FieldPtr& f) { return ProjPointK(PolyT::constant(f, 1), PolyT(f)); }
  static ProjPointK from_ratk(const RatK& z) { return ProjPointK(z.num(), z.den(), Raw{}); }

  const PolyT& X() const { return X_; }
  const PolyT& Y() const { return Y_; }
  const FieldPtr& field() const { return X_.field(); }
  bool is_infinity() const { return Y_.is_zero(); }
  /// X/Y; throws DomainError at infinity.
  RatK to_ratk() const;
  /// The point 1/P, i.e. [Y : X].
  ProjPointK reciprocal() const { return ProjPointK(Y_, X_); }
  /// Weil height max(deg X, deg Y).
  std::int64_t height() const;

  friend bool operator==(const ProjPointK& a, const ProjPointK& b) { return a.X_ == b.X_ && a.Y_ == b.Y_; }
  std::size_t hash() const { return X_.hash() * 1000003u ^ Y_.hash(); }

 private:
  struct Raw {};
  ProjPointK(PolyT X, PolyT Y, Raw) : X_(std::move(X)), Y_(std::move(Y)) {}
  PolyT X_, Y_;
};

/// phi(x) = F(x)/G(x), F = sum a_i x^i, G = sum b_i x^i with a_i, b_i in
/// F_q[t].  Canonical: coefficients share no common factor in F_q[t], and
/// the first nonzero coefficient in the order b_d, ..., b_0, a_d, ..., a_0 is
/// monic.  The (formal degree d) resultant of F and G is nonzero and cached.
class RationalMap {
 public:
  /// Clears denominators, removes content and scales; throws DomainError when
  /// the map is degenerate (zero resultant).
  static RationalMap create(const XPoly& F, const XPoly& G);
  static RationalMap create(const XPolyK& F, const XPolyK& G);
  /// a[i], b[i] are the coefficients of x^i.
  static RationalMap from_coefficients(const std::vector<RatK>& a, const std::vector<RatK>& b);

  const FieldPtr& field() const { return field_; }
  std::size_t degree() const { return d_; }
  const XPoly& F() const { return F_; }
  const XPoly& G() const { return G_; }
  /// a_i and b_i; indices outside 0..d read as zero.
  const PolyT& a(std::int64_t i) const;
  const PolyT& b(std::int64_t i) const;
  const PolyT& resultant() const { return res_; }

  /// Largest t-degree among the coefficients.
  std::int64_t coeff_height() const;

  friend bool operator==(const RationalMap& x, const RationalMap& y) { return x.F_ == y.F_ && x.G_ == y.G_; }

 private:
  RationalMap() = default;

  FieldPtr field_;
  std::size_t d_ = 0;
  XPoly F_, G_;
  PolyT res_;
  PolyT zero_;
};

ProjPointK evaluate(const RationalMap& phi, const ProjPointK& P);

/// deg_a / deg_b with the two non-finite outcomes made explicit.
struct Ratio {
  enum class Kind { Finite, Infinite, Undefined };
  Kind kind = Kind::Undefined;
  Rational value;
  std::string to_string() const;
};

struct OrbitRecord {
  std::size_t n = 0;
  ExtInt deg_a, deg_b;
  Ratio ratio;
  bool in_N_eps = false;
};

enum class OrbitStatus { Complete, Capped };

struct OrbitStep {
  ProjPointK point;
  OrbitRecord record;
};

struct OrbitResult {
  std::vector<OrbitStep> steps;  // steps[0] is alpha itself
  OrbitStatus status = OrbitStatus::Complete;
  /// Set when some iterate repeats an earlier one: (first index, repeat index).
  std::optional<std::pair<std::size_t, std::size_t>> cycle;
};

OrbitRecord make_record(std::size_t n, const ProjPointK& P, const std::optional<Rational>& eps);
/// |a| >= |b|^(2+eps) on log scale.
bool in_N(ExtInt deg_a, ExtInt deg_b, const Rational& eps);

/// Iterates phi from alpha for n = 1..n_max.  Before each step the a priori
/// height bound d*h + coeff_height is compared with degree_cap; if it would be
/// exceeded the orbit stops with status Capped.  The first repetition of a
/// canonical point is recorded in `cycle`.
OrbitResult orbit(const RationalMap& phi, const ProjPointK& alpha, std::size_t n_max,
                  std::int64_t degree_cap = kDefaultDegreeCap, const std::optional<Rational>& eps = std::nullopt);

/// phi o psi.  Throws DomainError when the degree would pass cap.
RationalMap compose(const RationalMap& phi, const RationalMap& psi, std::size_t cap = kDefaultComposeCap);
RationalMap identity_map(const FieldPtr& f);

struct MapDiagnostics {
  PolyT res;
  bool separable = true;
  XPoly wronskian;  // F'G - FG'
  bool infinity_critical = false;
  /// Smallest n in 1..8 with phi^n(oo) = oo, if any.
  std::optional<std::size_t> infinity_period;
};

XPoly wronskian(const RationalMap& phi);
MapDiagnostics map_diagnostics(const RationalMap& phi);

/// pi(x) = 1/phi(1/x).
RationalMap pi_transform(const RationalMap& phi);

/// log_q of the chordal distance; -inf iff P = Q.
ExtInt chordal_distance(const ProjPointK& P, const ProjPointK& Q);

}  // namespace fqdyn
