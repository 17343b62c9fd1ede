#include "ntt.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <stdexcept>

namespace fqdyn::detail {

namespace {

using u64 = std::uint64_t;
__extension__ using u128 = unsigned __int128;

struct NttPrime {
  u64 mod;
  u64 root;  // primitive root
};

constexpr std::array<NttPrime, 3> kPrimes{{{998244353, 3}, {167772161, 3}, {469762049, 3}}};

u64 pw(u64 a, u64 e, u64 m) {
  u64 r = 1;
  a %= m;
  while (e) {
    if (e & 1) r = r * a % m;
    a = a * a % m;
    e >>= 1;
  }
  return r;
}

void ntt(std::vector<u64>& a, bool invert, const NttPrime& pr) {
  const std::size_t n = a.size();
  const u64 m = pr.mod;
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    u64 w = pw(pr.root, (m - 1) / len, m);
    if (invert) w = pw(w, m - 2, m);
    const std::size_t half = len / 2;
    std::vector<u64> ws(half);
    ws[0] = 1;
    for (std::size_t i = 1; i < half; ++i) ws[i] = ws[i - 1] * w % m;
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t j = 0; j < half; ++j) {
        const u64 u = a[i + j];
        const u64 v = a[i + j + half] * ws[j] % m;
        a[i + j] = u + v < m ? u + v : u + v - m;
        a[i + j + half] = u >= v ? u - v : u + m - v;
      }
    }
  }
  if (invert) {
    const u64 ninv = pw(n % m, m - 2, m);
    for (auto& x : a) x = x * ninv % m;
  }
}

std::vector<u64> convolve_one(std::span<const u64> a, std::span<const u64> b, const NttPrime& pr) {
  const std::size_t out = a.size() + b.size() - 1;
  const std::size_t n = std::bit_ceil(out);
  if (n > (std::size_t{1} << 23)) throw std::length_error("polynomial product too large for NTT");
  std::vector<u64> fa(n, 0), fb(n, 0);
  for (std::size_t i = 0; i < a.size(); ++i) fa[i] = a[i] % pr.mod;
  for (std::size_t i = 0; i < b.size(); ++i) fb[i] = b[i] % pr.mod;
  ntt(fa, false, pr);
  ntt(fb, false, pr);
  for (std::size_t i = 0; i < n; ++i) fa[i] = fa[i] * fb[i] % pr.mod;
  ntt(fa, true, pr);
  fa.resize(out);
  return fa;
}

}  // namespace

std::vector<u64> convolve_mod(std::span<const u64> a, std::span<const u64> b, u64 p) {
  if (a.empty() || b.empty()) return {};
  // Largest possible exact coefficient of the integer convolution.
  const u128 bound = static_cast<u128>(p - 1) * (p - 1) * std::min(a.size(), b.size());
  const u64 m0 = kPrimes[0].mod, m1 = kPrimes[1].mod, m2 = kPrimes[2].mod;
  std::vector<u64> r0 = convolve_one(a, b, kPrimes[0]);
  if (bound < m0) {
    for (auto& x : r0) x %= p;
    return r0;
  }
  std::vector<u64> r1 = convolve_one(a, b, kPrimes[1]);
  const u64 inv01 = pw(m0 % m1, m1 - 2, m1);
  if (bound < static_cast<u128>(m0) * m1) {
    for (std::size_t i = 0; i < r0.size(); ++i) {
      const u64 k1 = (r1[i] + m1 - r0[i] % m1) % m1 * inv01 % m1;
      r0[i] = static_cast<u64>((static_cast<u128>(r0[i]) + static_cast<u128>(m0) * k1) % p);
    }
    return r0;
  }
  std::vector<u64> r2 = convolve_one(a, b, kPrimes[2]);
  const u64 m01_mod2 = static_cast<u64>(static_cast<u128>(m0) * m1 % m2);
  const u64 inv012 = pw(m01_mod2, m2 - 2, m2);
  const u64 m01_modp = static_cast<u64>(static_cast<u128>(m0) * m1 % p);
  for (std::size_t i = 0; i < r0.size(); ++i) {
    const u64 k1 = (r1[i] + m1 - r0[i] % m1) % m1 * inv01 % m1;
    const u128 x01 = static_cast<u128>(r0[i]) + static_cast<u128>(m0) * k1;  // < m0*m1
    const u64 x01_mod2 = static_cast<u64>(x01 % m2);
    const u64 k2 = (r2[i] + m2 - x01_mod2) % m2 * inv012 % m2;
    r0[i] = static_cast<u64>((x01 % p + static_cast<u128>(m01_modp) * k2) % p);
  }
  return r0;
}

}  // namespace fqdyn::detail
