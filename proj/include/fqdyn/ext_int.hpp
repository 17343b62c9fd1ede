#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace fqdyn {

/// Integer extended by -infinity.  Used for polynomial degrees (the zero
/// polynomial has degree -inf) and for log_q absolute values (|0| = q^-inf).
class ExtInt {
 public:
  constexpr ExtInt(std::int64_t v = 0) : v_(v) {}  // NOLINT: implicit from integers

  static constexpr ExtInt neg_inf() { return ExtInt(kNegInf, Tag{}); }

  constexpr bool is_neg_inf() const { return v_ == kNegInf; }
  constexpr bool is_finite() const { return v_ != kNegInf; }

  std::int64_t value() const {
    if (is_neg_inf()) throw std::domain_error("value() of -inf");
    return v_;
  }

  friend constexpr ExtInt operator+(ExtInt a, ExtInt b) {
    if (a.is_neg_inf() || b.is_neg_inf()) return neg_inf();
    return ExtInt(a.v_ + b.v_);
  }
  // -inf - finite = -inf; anything - (-inf) is undefined.
  friend ExtInt operator-(ExtInt a, ExtInt b) {
    if (b.is_neg_inf()) throw std::domain_error("subtracting -inf");
    if (a.is_neg_inf()) return neg_inf();
    return ExtInt(a.v_ - b.v_);
  }

  friend constexpr auto operator<=>(ExtInt a, ExtInt b) = default;
  friend constexpr bool operator==(ExtInt a, ExtInt b) = default;

  std::string to_string() const { return is_neg_inf() ? "-inf" : std::to_string(v_); }

 private:
  struct Tag {};
  static constexpr std::int64_t kNegInf = std::numeric_limits<std::int64_t>::min();
  constexpr ExtInt(std::int64_t v, Tag) : v_(v) {}
  std::int64_t v_;
};

inline constexpr ExtInt max(ExtInt a, ExtInt b) { return a < b ? b : a; }
inline constexpr ExtInt min(ExtInt a, ExtInt b) { return a < b ? a : b; }

}  // namespace fqdyn
