#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "fqdyn/riccati.hpp"

namespace fqdyn {

/// y^2 = x^3 + A x + B over K, characteristic at least 5.
class EllipticCurveK {
 public:
  /// Throws DomainError for characteristic 2 or 3 or a singular curve.
  static EllipticCurveK make(const RatK& A, const RatK& B);

  const FieldPtr& field() const { return A_.field(); }
  const RatK& A() const { return A_; }
  const RatK& B() const { return B_; }
  /// 4A^3 + 27B^2.
  const RatK& disc() const { return disc_; }
  bool contains(const RatK& x, const RatK& y) const;

 private:
  EllipticCurveK(RatK A, RatK B, RatK disc) : A_(std::move(A)), B_(std::move(B)), disc_(std::move(disc)) {}
  RatK A_, B_, disc_;
};

struct PointE {
  bool at_infinity = true;
  RatK x, y;

  static PointE infinity() { return {}; }
  static PointE affine(RatK x, RatK y) { return {false, std::move(x), std::move(y)}; }
  friend bool operator==(const PointE& p, const PointE& q) {
    return p.at_infinity == q.at_infinity && (p.at_infinity || (p.x == q.x && p.y == q.y));
  }
};

/// Coefficients of (x^4 - 2Ax^2 - 8Bx + A^2) / (4x^3 + 4Ax + 4B) as written,
/// before canonical scaling.
MapCoefficients lattes_coefficients(const EllipticCurveK& E);
/// The duplication map, canonical form.
RationalMap build_lattes(const EllipticCurveK& E);

struct Condition2ab {
  RatK value;  // 2AB' - 3BA'
  bool nonzero = false;
};
Condition2ab condition_2ab(const EllipticCurveK& E);

/// The 6x6 matrix for the duplication map as printed in closed form in A, B.
Matrix<RatK> displayed_M_E1(const EllipticCurveK& E);

struct LattesCertificate {
  bool applicable = false;  // 2AB' - 3BA' != 0
  Matrix<RatK> displayed, extracted;
  bool display_matches = false;

  RatK det, det_expected;  // expected = 2^15 3^4 B (4A^3 + 27B^2)
  bool det_identity_holds = false;
  bool det_matches_negated = false;

  ConsistencyVerdict phi_verdict, pi_verdict;
  /// Expected (a, b, c, e, f, g) from the closed formulas.  In the system's
  /// convention (e, f, g) belong to the preimage and (a, b, c) to the image.
  std::vector<RatK> phi_expected, pi_expected;
  bool phi_solution_matches = false;
  bool pi_solution_matches = false;

  /// Leading coefficient of the algebraic relation left after equating the
  /// two Riccati equations for the image, from the closed formula and from
  /// the solved systems.
  RatK alg_leading, alg_leading_pi;
  bool alg_leading_consistent = false;
  bool alg_leading_nonzero = false;
  bool alg_leading_pi_nonzero = false;

  /// Names of the identities that failed.
  std::vector<std::string> falsified;
};

/// Runs every identity check and records the outcome; never throws for a
/// failed identity (see enforce_identities).
LattesCertificate lattes_system_checks(const EllipticCurveK& E);
/// Throws IdentityFalsified naming the failed identities, if any.
void enforce_identities(const LattesCertificate& cert);

/// Weierstrass doubling.  Throws DomainError for a point off the curve.
PointE double_point(const EllipticCurveK& E, const PointE& P);

struct HeightRow {
  std::size_t n = 0;
  ExtInt deg_a, deg_b;
  Rational norm_a, norm_b;  // deg / 4^n
};

struct HeightEstimate {
  std::vector<HeightRow> rows;
  /// Tail window of rows with n >= 1, as for the integrality scan.
  std::size_t window_start = 0, window_end = 0;
  Rational bracket_lo_a, bracket_hi_a, bracket_lo_b, bracket_hi_b;
  /// max |deg_{n+1} - 4 deg_n| on each side.
  std::int64_t drift_a = 0, drift_b = 0;
  /// (2d-1) times the coefficient height of the duplication map.
  std::int64_t drift_bound = 0;
  OrbitStatus status = OrbitStatus::Complete;
  bool torsion_suspected = false;
  std::vector<std::string> annotations;
};

/// Degrees of x([2^n]P) for n = 0..n_max and the factor-2 brackets
/// (1/2 min, 2 max over the tail) for both numerator and denominator.
HeightEstimate canonical_height_estimate(const EllipticCurveK& E, const PointE& P, std::size_t n_max,
                                         std::int64_t degree_cap = kDefaultDegreeCap);

}  // namespace fqdyn
