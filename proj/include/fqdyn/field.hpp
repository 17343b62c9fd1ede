#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace fqdyn {

/// Description of a finite field F_q, q = p^k.  For k > 1 the field is
/// F_p[u]/(modulus) with a user-supplied monic irreducible modulus.
struct FieldSpec {
  std::uint64_t p = 2;
  unsigned k = 1;
  /// Coefficients low to high, size k+1, monic.  Empty when k == 1.
  std::vector<std::uint64_t> modulus;
  /// Name used to print and parse the generator of an extension.
  std::string generator = "u";

  friend bool operator==(const FieldSpec& a, const FieldSpec& b) {
    return a.p == b.p && a.k == b.k && a.modulus == b.modulus;
  }
};

/// Field elements are opaque 64-bit words.  In a prime field the word is the
/// residue in [0, p); in an extension it packs the k base-p digits of the
/// element (coefficients of 1, u, u^2, ...) in fixed-width bit fields, so the
/// prime subfield is still represented by the plain residues.
using Elem = std::uint64_t;

class Field;
using FieldPtr = std::shared_ptr<const Field>;

class Field {
 public:
  /// Validates the spec (p prime below 2^31, modulus monic irreducible,
  /// packed digits fit in 64 bits) and builds the arithmetic context.
  static FieldPtr make(FieldSpec spec);
  static FieldPtr prime(std::uint64_t p);

  const FieldSpec& spec() const { return spec_; }
  std::uint64_t p() const { return spec_.p; }
  unsigned k() const { return spec_.k; }
  bool is_prime_field() const { return spec_.k == 1; }
  /// Field size as a 64-bit integer (saturates at UINT64_MAX).
  std::uint64_t q() const { return q_; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_int(std::int64_t v) const;
  /// The generator u of an extension (u = 0 + 1*u); throws for prime fields.
  Elem generator() const;

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;
  Elem pow(Elem a, std::uint64_t e) const;

  /// Base-p digits (coefficients of 1, u, ..., u^{k-1}).
  std::vector<std::uint64_t> digits(Elem a) const;
  Elem from_digits(std::span<const std::uint64_t> d) const;
  /// True when the element lies in the prime subfield.
  bool in_prime_subfield(Elem a) const { return a < spec_.p; }

  bool same_as(const Field& other) const { return this == &other || spec_ == other.spec_; }

 private:
  explicit Field(FieldSpec spec);

  std::uint64_t mulmod_p(std::uint64_t a, std::uint64_t b) const { return a * b % spec_.p; }
  std::uint64_t digit(Elem a, unsigned i) const { return (a >> (i * bits_)) & mask_; }

  FieldSpec spec_;
  std::uint64_t q_ = 0;
  unsigned bits_ = 0;
  std::uint64_t mask_ = 0;
};

bool is_prime_u64(std::uint64_t n);

inline bool same_field(const FieldPtr& a, const FieldPtr& b) {
  return a == b || (a && b && a->same_as(*b));
}

}  // namespace fqdyn
