#pragma once

#include <array>
#include <optional>
#include <vector>

#include "fqdyn/linalg.hpp"
#include "fqdyn/ratmap.hpp"

namespace fqdyn {

/// Unknowns are ordered (a, b, c, e, f, g).
inline constexpr std::size_t kUnknowns = 6;

/// c_a*a + c_b*b + c_c*c + c_e*e + c_f*f + c_g*g + c_0.
struct LinearForm6 {
  std::array<RatK, kUnknowns> c;
  RatK c0;

  static LinearForm6 zero(const FieldPtr& f);
  bool is_zero() const;
  /// Value of the form at a point (the residual of the equation form = 0).
  RatK eval(const std::vector<RatK>& sol) const;
  LinearForm6 scaled(const RatK& s) const;
  friend bool operator==(const LinearForm6& x, const LinearForm6& y) = default;
};

/// Map coefficients a_i, b_i in K, indexed by the power of x.  Reading an
/// index outside 0..d gives zero.
struct MapCoefficients {
  FieldPtr field;
  std::size_t d = 0;
  std::vector<RatK> a, b;

  static MapCoefficients of(const RationalMap& phi);
  RatK A(std::int64_t i) const;
  RatK B(std::int64_t i) const;
};

/// Row i is the coefficient of x^(2d-i) of P_phi; the homogeneous part is a
/// row of M and -c0 is the matching entry of R.
struct RiccatiSystem {
  FieldPtr field;
  std::vector<LinearForm6> rows;
  std::size_t row_count() const { return rows.size(); }
};

struct ConsistencyVerdict {
  enum class Status { Inconsistent, UniqueSolution, AffineSolutionSpace };
  Status status = Status::Inconsistent;
  std::size_t rank_M = 0;
  std::size_t rank_aug = 0;
  std::size_t dimension = 0;  // of the solution space when consistent
  std::vector<RatK> solution;  // set for UniqueSolution
};

const char* to_string(ConsistencyVerdict::Status s);

/// (F_1, F_2): coefficientwise d/dt and formal d/dx.
std::pair<XPoly, XPoly> derived_polys(const XPoly& F);
std::pair<XPolyK, XPolyK> derived_polys(const XPolyK& F);

/// Coefficients of P_phi = (G F_2 - F G_2)(e x^2 + f x + g) - F G_1 + G F_1
/// - a F^2 - b F G - c G^2, indexed by the power of x, 0 .. 2d+1.
std::vector<LinearForm6> build_symbolic_identity(const MapCoefficients& m);
std::vector<LinearForm6> build_symbolic_identity(const RationalMap& phi);

/// The listed equations E_0 ... E_6 with the r_n constants, rows
/// 0 .. min(6, 2d).
RiccatiSystem build_system_closed_form(const MapCoefficients& m);
RiccatiSystem build_system_closed_form(const RationalMap& phi);

/// All 2d+1 rows taken from the symbolic identity.
RiccatiSystem build_system_full(const MapCoefficients& m);

/// r_n = sum_i a_{d-i} b'_{d-n+i} - sum_i b_{d-i} a'_{d-n+i}
RatK r_constant(const MapCoefficients& m, std::int64_t n);

/// Exact rank of M and (M|R) by fraction-free elimination over F_q[t].
ConsistencyVerdict consistency_check(const RiccatiSystem& sys);

struct SubsystemSolution {
  std::array<std::size_t, kUnknowns> rows;
  RatK det;
  std::vector<RatK> solution;
  /// (row index, residual) for every row not in the subset.
  std::vector<std::pair<std::size_t, RatK>> residuals;
};

/// Solves the 6x6 subsystem on the selected rows; throws DomainError when
/// the block is singular.
SubsystemSolution unique_subsystem_solution(const RiccatiSystem& sys, const std::array<std::size_t, kUnknowns>& rows);

/// Homogeneous part of the selected rows as a K-matrix.
Matrix<RatK> homogeneous_block(const RiccatiSystem& sys, const std::vector<std::size_t>& rows);

}  // namespace fqdyn
