#include "fqdyn/field.hpp"

#include <bit>
#include <limits>
#include <stdexcept>

#include "fqdyn/errors.hpp"
#include "fqdyn/poly.hpp"

namespace fqdyn {

namespace {

__extension__ using u128 = unsigned __int128;

std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod64(r, a, m);
    a = mulmod64(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t sp : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % sp == 0) return n == sp;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Deterministic witness set for 64-bit integers.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Field::Field(FieldSpec spec) : spec_(std::move(spec)) {
  bits_ = static_cast<unsigned>(std::bit_width(spec_.p - 1));
  if (bits_ == 0) bits_ = 1;
  mask_ = (bits_ >= 64) ? ~0ULL : ((1ULL << bits_) - 1);
  u128 q = 1;
  for (unsigned i = 0; i < spec_.k; ++i) {
    q *= spec_.p;
    if (q > std::numeric_limits<std::uint64_t>::max()) {
      q = std::numeric_limits<std::uint64_t>::max();
      break;
    }
  }
  q_ = static_cast<std::uint64_t>(q);
}

FieldPtr Field::prime(std::uint64_t p) {
  FieldSpec s;
  s.p = p;
  s.k = 1;
  return make(std::move(s));
}

FieldPtr Field::make(FieldSpec spec) {
  if (!is_prime_u64(spec.p)) throw DomainError("field characteristic " + std::to_string(spec.p) + " is not prime");
  if (spec.p >= (1ULL << 31)) throw DomainError("characteristic must be below 2^31");
  if (spec.k == 0) throw DomainError("extension degree must be at least 1");
  if (spec.k == 1) {
    spec.modulus.clear();
    return FieldPtr(new Field(std::move(spec)));
  }
  if (spec.modulus.size() != spec.k + 1 || spec.modulus.back() % spec.p != 1) {
    throw DomainError("extension modulus must be monic of degree " + std::to_string(spec.k));
  }
  for (auto& c : spec.modulus) c %= spec.p;
  const unsigned bits = static_cast<unsigned>(std::bit_width(spec.p - 1));
  if (static_cast<std::uint64_t>(bits) * spec.k > 64) {
    throw DomainError("extension too large: packed elements need more than 64 bits");
  }
  auto base = prime(spec.p);
  PolyT m(base, std::vector<Elem>(spec.modulus.begin(), spec.modulus.end()));
  if (!is_irreducible(m)) throw DomainError("extension modulus is not irreducible over F_p");
  return FieldPtr(new Field(std::move(spec)));
}

Elem Field::from_int(std::int64_t v) const {
  const auto p = static_cast<std::int64_t>(spec_.p);
  std::int64_t r = v % p;
  if (r < 0) r += p;
  return static_cast<Elem>(r);
}

Elem Field::generator() const {
  if (spec_.k < 2) throw DomainError("prime field has no extension generator");
  std::vector<std::uint64_t> d(spec_.k, 0);
  d[1] = 1;
  return from_digits(d);
}

std::vector<std::uint64_t> Field::digits(Elem a) const {
  std::vector<std::uint64_t> d(spec_.k);
  if (spec_.k == 1) {
    d[0] = a;
    return d;
  }
  for (unsigned i = 0; i < spec_.k; ++i) d[i] = digit(a, i);
  return d;
}

Elem Field::from_digits(std::span<const std::uint64_t> d) const {
  if (spec_.k == 1) return d.empty() ? 0 : d[0] % spec_.p;
  Elem r = 0;
  for (unsigned i = 0; i < spec_.k && i < d.size(); ++i) r |= (d[i] % spec_.p) << (i * bits_);
  return r;
}

Elem Field::add(Elem a, Elem b) const {
  if (spec_.k == 1) {
    Elem s = a + b;
    return s >= spec_.p ? s - spec_.p : s;
  }
  Elem r = 0;
  for (unsigned i = 0; i < spec_.k; ++i) {
    std::uint64_t s = digit(a, i) + digit(b, i);
    if (s >= spec_.p) s -= spec_.p;
    r |= s << (i * bits_);
  }
  return r;
}

Elem Field::neg(Elem a) const {
  if (spec_.k == 1) return a == 0 ? 0 : spec_.p - a;
  Elem r = 0;
  for (unsigned i = 0; i < spec_.k; ++i) {
    std::uint64_t s = digit(a, i);
    r |= (s == 0 ? 0 : spec_.p - s) << (i * bits_);
  }
  return r;
}

Elem Field::sub(Elem a, Elem b) const { return add(a, neg(b)); }

Elem Field::mul(Elem a, Elem b) const {
  if (spec_.k == 1) return mulmod_p(a, b);
  const unsigned k = spec_.k;
  std::vector<std::uint64_t> prod(2 * k - 1, 0);
  for (unsigned i = 0; i < k; ++i) {
    const std::uint64_t ai = digit(a, i);
    if (!ai) continue;
    for (unsigned j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + mulmod_p(ai, digit(b, j))) % spec_.p;
  }
  // Reduce modulo the monic modulus.
  for (unsigned i = 2 * k - 2; i >= k; --i) {
    const std::uint64_t c = prod[i];
    if (!c) continue;
    prod[i] = 0;
    for (unsigned j = 0; j < k; ++j) {
      const std::uint64_t sub = mulmod_p(c, spec_.modulus[j]);
      prod[i - k + j] = (prod[i - k + j] + spec_.p - sub) % spec_.p;
    }
  }
  Elem r = 0;
  for (unsigned i = 0; i < k; ++i) r |= prod[i] << (i * bits_);
  return r;
}

Elem Field::pow(Elem a, std::uint64_t e) const {
  Elem r = one();
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

Elem Field::inv(Elem a) const {
  if (a == 0) throw DomainError("inverse of zero in F_q");
  if (spec_.k == 1) return powmod64(a, spec_.p - 2, spec_.p);
  // a^(q-2); q fits in 64 bits because the packed digits do.
  return pow(a, q_ - 2);
}

}  // namespace fqdyn
