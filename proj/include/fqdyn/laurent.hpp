#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "fqdyn/ratk.hpp"

namespace fqdyn {

using Rational = boost::multiprecision::cpp_rational;

inline constexpr std::int64_t kDefaultPrecisionCap = 1 << 20;

/// Truncated Laurent series at the infinite place, sum of c_i t^{-i} for
/// i = valuation ... valuation + coeffs.size() - 1.  All terms with
/// i <= abs_precision are known exactly; nothing beyond is claimed.
struct LaurentTail {
  FieldPtr field;
  std::int64_t valuation = 0;
  std::vector<Elem> coeffs;
  std::int64_t abs_precision = 0;

  /// True when every known coefficient is zero.
  bool is_zero() const { return coeffs.empty(); }
  /// Coefficient of t^{-i}; throws PrecisionCapExceeded past abs_precision.
  Elem coeff(std::int64_t i) const;
};

/// Expansion of z through the t^{-abs_precision} term.
LaurentTail laurent_expand(const RatK& z, std::int64_t abs_precision, std::int64_t cap = kDefaultPrecisionCap);
LaurentTail operator-(const LaurentTail& a, const LaurentTail& b);

/// Truncation of beta = sum_{j >= 0} t^{-q^j} through t^{-abs_precision}.
LaurentTail mahler_beta(const FieldPtr& f, std::int64_t abs_precision, std::int64_t cap = kDefaultPrecisionCap);

struct MahlerRow {
  unsigned j = 0;
  std::int64_t deg_q = 0;       // deg Q_j = q^j
  std::int64_t neg_log_err = 0;  // -log_q |beta - S_j|
  Rational estimate;            // neg_log_err / deg_q
};

/// Compares S_j = sum_{i <= j} t^{-q^i} = P_j / t^{q^j} with a truncation
/// of beta for j = 0 ... j_max.  Throws PrecisionCapExceeded when q^{j_max+1}
/// exceeds the cap.
std::vector<MahlerRow> mahler_exponent_probe(const FieldPtr& f, unsigned j_max,
                                             std::int64_t cap = kDefaultPrecisionCap);

}  // namespace fqdyn
