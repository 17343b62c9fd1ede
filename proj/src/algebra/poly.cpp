#include "fqdyn/poly.hpp"

#include <algorithm>
#include <bit>
#include <functional>

#include "fqdyn/errors.hpp"
#include "ntt.hpp"

namespace fqdyn {

__extension__ using u128 = unsigned __int128;

PolyT::PolyT(FieldPtr f, std::vector<Elem> coeffs) : field_(std::move(f)), c_(std::move(coeffs)) { trim(); }

PolyT PolyT::constant(FieldPtr f, Elem c) { return PolyT(std::move(f), std::vector<Elem>{c}); }

PolyT PolyT::from_int(FieldPtr f, std::int64_t c) {
  const Elem e = f->from_int(c);
  return constant(std::move(f), e);
}

PolyT PolyT::monomial(FieldPtr f, Elem c, std::size_t k) {
  std::vector<Elem> v(k + 1, 0);
  v[k] = c;
  return PolyT(std::move(f), std::move(v));
}

void PolyT::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

void PolyT::check_same(const PolyT& o) const {
  if (!field_ || !o.field_) throw DomainError("arithmetic on an unbound polynomial");
  if (!same_field(field_, o.field_)) throw FieldMismatch();
}

PolyT PolyT::monic() const {
  if (is_zero() || is_monic()) return *this;
  return scaled(F().inv(lead()));
}

PolyT PolyT::operator-() const {
  PolyT r = *this;
  for (auto& c : r.c_) c = F().neg(c);
  return r;
}

PolyT PolyT::scaled(Elem c) const {
  if (c == 0) return PolyT(field_);
  PolyT r = *this;
  for (auto& x : r.c_) x = F().mul(x, c);
  return r;
}

PolyT PolyT::shifted(std::size_t k) const {
  if (is_zero()) return *this;
  PolyT r(field_);
  r.c_.assign(k, 0);
  r.c_.insert(r.c_.end(), c_.begin(), c_.end());
  return r;
}

Elem PolyT::eval(Elem x) const {
  Elem r = 0;
  for (std::size_t i = c_.size(); i-- > 0;) r = F().add(F().mul(r, x), c_[i]);
  return r;
}

PolyT PolyT::derivative() const {
  if (c_.size() <= 1) return PolyT(field_);
  std::vector<Elem> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) {
    d[i - 1] = F().mul(c_[i], F().from_int(static_cast<std::int64_t>(i % F().p())));
  }
  return PolyT(field_, std::move(d));
}

PolyT& PolyT::operator+=(const PolyT& o) {
  check_same(o);
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), 0);
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = F().add(c_[i], o.c_[i]);
  trim();
  return *this;
}

PolyT& PolyT::operator-=(const PolyT& o) {
  check_same(o);
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), 0);
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = F().sub(c_[i], o.c_[i]);
  trim();
  return *this;
}

PolyT& PolyT::operator*=(const PolyT& o) {
  *this = mul(*this, o);
  return *this;
}

PolyT operator*(const PolyT& a, const PolyT& b) { return mul(a, b); }

bool operator==(const PolyT& a, const PolyT& b) {
  if (a.c_ != b.c_) return false;
  if (a.field_ == b.field_) return true;
  if (!a.field_ || !b.field_) return a.c_.empty();
  return a.field_->same_as(*b.field_);
}

std::size_t PolyT::hash() const {
  std::size_t h = c_.size();
  for (Elem e : c_) h ^= std::hash<Elem>{}(e) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

PolyT mul_schoolbook(const PolyT& f, const PolyT& g) {
  if (!f.bound() || !g.bound()) throw DomainError("arithmetic on an unbound polynomial");
  if (!same_field(f.field(), g.field())) throw FieldMismatch();
  if (f.is_zero() || g.is_zero()) return PolyT(f.field());
  const Field& F = f.F();
  auto a = f.coeffs();
  auto b = g.coeffs();
  std::vector<Elem> r(a.size() + b.size() - 1, 0);
  if (F.is_prime_field()) {
    const std::uint64_t p = F.p();
    std::vector<u128> acc(r.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!a[i]) continue;
      for (std::size_t j = 0; j < b.size(); ++j) acc[i + j] += static_cast<u128>(a[i]) * b[j];
    }
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = static_cast<Elem>(acc[i] % p);
  } else {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!a[i]) continue;
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
    }
  }
  return PolyT(f.field(), std::move(r));
}

PolyT mul_fast(const PolyT& f, const PolyT& g) {
  if (!f.bound() || !g.bound()) throw DomainError("arithmetic on an unbound polynomial");
  if (!same_field(f.field(), g.field())) throw FieldMismatch();
  if (f.is_zero() || g.is_zero()) return PolyT(f.field());
  const Field& F = f.F();
  if (F.is_prime_field()) {
    return PolyT(f.field(), detail::convolve_mod(f.coeffs(), g.coeffs(), F.p()));
  }
  // Kronecker substitution: each F_q coefficient becomes a block of k base-p
  // digits, spaced 2k-1 apart so block products never overlap.
  const unsigned k = F.k();
  const std::size_t stride = 2 * k - 1;
  auto pack = [&](const PolyT& h) {
    std::vector<std::uint64_t> v(h.size() * stride, 0);
    for (std::size_t i = 0; i < h.size(); ++i) {
      auto d = F.digits(h.coeffs()[i]);
      std::copy(d.begin(), d.end(), v.begin() + static_cast<std::ptrdiff_t>(i * stride));
    }
    return v;
  };
  const auto pa = pack(f);
  const auto pb = pack(g);
  auto prod = detail::convolve_mod(pa, pb, F.p());
  const std::size_t out = f.size() + g.size() - 1;
  prod.resize(out * stride, 0);
  const auto& mod = F.spec().modulus;
  const std::uint64_t p = F.p();
  std::vector<Elem> r(out);
  std::vector<std::uint64_t> block(stride);
  for (std::size_t i = 0; i < out; ++i) {
    std::copy_n(prod.begin() + static_cast<std::ptrdiff_t>(i * stride), stride, block.begin());
    for (std::size_t j = stride - 1; j >= k; --j) {
      const std::uint64_t c = block[j];
      if (!c) continue;
      block[j] = 0;
      for (unsigned m = 0; m < k; ++m) {
        block[j - k + m] = (block[j - k + m] + p - c * mod[m] % p) % p;
      }
    }
    r[i] = F.from_digits(std::span<const std::uint64_t>(block.data(), k));
  }
  return PolyT(f.field(), std::move(r));
}

PolyT mul(const PolyT& f, const PolyT& g, std::size_t threshold) {
  if (std::min(f.size(), g.size()) <= threshold) return mul_schoolbook(f, g);
  return mul_fast(f, g);
}

std::pair<PolyT, PolyT> divmod(const PolyT& f, const PolyT& g) {
  if (g.is_zero()) throw DomainError("polynomial division by zero");
  if (!same_field(f.field(), g.field())) throw FieldMismatch();
  const Field& F = g.F();
  if (f.size() < g.size()) return {PolyT(g.field()), f};
  std::vector<Elem> r(f.coeffs().begin(), f.coeffs().end());
  const std::size_t n = g.size();
  std::vector<Elem> q(f.size() - n + 1, 0);
  const Elem inv_lead = F.inv(g.lead());
  auto gc = g.coeffs();
  for (std::size_t top = r.size(); top >= n; --top) {
    const std::size_t i = top - 1;
    const Elem c = r[i];
    if (c == 0) continue;
    const Elem qc = F.mul(c, inv_lead);
    const std::size_t s = i + 1 - n;
    q[s] = qc;
    for (std::size_t j = 0; j < n; ++j) r[s + j] = F.sub(r[s + j], F.mul(qc, gc[j]));
  }
  r.resize(n - 1);
  return {PolyT(g.field(), std::move(q)), PolyT(g.field(), std::move(r))};
}

PolyT operator/(const PolyT& a, const PolyT& b) { return divmod(a, b).first; }
PolyT operator%(const PolyT& a, const PolyT& b) { return divmod(a, b).second; }

PolyT div_exact(const PolyT& f, const PolyT& g) {
  auto [q, r] = divmod(f, g);
  if (!r.is_zero()) throw DomainError("inexact polynomial division");
  return q;
}

bool divides(const PolyT& g, const PolyT& f) {
  if (g.is_zero()) return f.is_zero();
  return (f % g).is_zero();
}

PolyT gcd(const PolyT& f, const PolyT& g) {
  if (f.is_zero() && g.is_zero()) throw DomainError("gcd(0, 0) is undefined");
  PolyT a = f, b = g;
  while (!b.is_zero()) {
    PolyT r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

XgcdResult xgcd(const PolyT& f, const PolyT& h) {
  if (f.is_zero() && h.is_zero()) throw DomainError("gcd(0, 0) is undefined");
  const FieldPtr& fld = f.bound() ? f.field() : h.field();
  PolyT r0 = f, r1 = h;
  PolyT s0 = PolyT::constant(fld, 1), s1(fld);
  PolyT u0(fld), u1 = PolyT::constant(fld, 1);
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    PolyT s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    PolyT u2 = u0 - q * u1;
    u0 = std::move(u1);
    u1 = std::move(u2);
  }
  const Elem inv = r0.F().inv(r0.lead());
  return {r0.scaled(inv), s0.scaled(inv), u0.scaled(inv)};
}

PolyT pow(const PolyT& f, std::uint64_t e) {
  PolyT r = PolyT::constant(f.field(), 1);
  PolyT b = f;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

PolyT powmod(const PolyT& f, std::uint64_t e, const PolyT& m) {
  PolyT r = PolyT::constant(f.field(), 1) % m;
  PolyT b = f % m;
  while (e) {
    if (e & 1) r = (r * b) % m;
    e >>= 1;
    if (e) b = (b * b) % m;
  }
  return r;
}

Elem resultant(const PolyT& f, const PolyT& g) {
  if (f.is_zero() && g.is_zero()) throw DomainError("resultant of two zero polynomials");
  if (f.is_zero() || g.is_zero()) return 0;
  const Field& F = f.F();
  // Res(A, B) = (-1)^{deg A deg B} lc(B)^{deg A - deg R} Res(B, R), R = A mod B.
  PolyT a = f, b = g;
  Elem acc = 1;
  while (true) {
    const auto da = static_cast<std::uint64_t>(a.degree().value());
    const auto db = static_cast<std::uint64_t>(b.degree().value());
    if (db == 0) return F.mul(acc, F.pow(b.lead(), da));
    PolyT r = a % b;
    if (r.is_zero()) return 0;
    const auto dr = static_cast<std::uint64_t>(r.degree().value());
    if ((da * db) % 2 == 1) acc = F.neg(acc);
    acc = F.mul(acc, F.pow(b.lead(), da - dr));
    a = std::move(b);
    b = std::move(r);
  }
}

namespace {

std::vector<unsigned> prime_divisors(unsigned n) {
  std::vector<unsigned> out;
  for (unsigned d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

bool is_irreducible(const PolyT& f) {
  if (f.is_zero()) return false;
  const auto n = static_cast<unsigned>(f.degree().value());
  if (n == 0) return false;
  if (n == 1) return true;
  const FieldPtr& fld = f.field();
  const PolyT m = f.monic();
  const PolyT x = PolyT::t(fld);
  const std::uint64_t q = fld->q();
  // frob[i] = x^{q^i} mod m
  std::vector<PolyT> frob{x % m};
  for (unsigned i = 1; i <= n; ++i) frob.push_back(powmod(frob.back(), q, m));
  if (!(frob[n] - x % m).is_zero()) return false;
  for (unsigned r : prime_divisors(n)) {
    const PolyT h = frob[n / r] - x;
    if (!gcd(h, m).is_one()) return false;
  }
  return true;
}

PolyT enumerate_monic(const FieldPtr& f, unsigned n, std::uint64_t i) {
  std::vector<Elem> c(n + 1, 0);
  c[n] = 1;
  const std::uint64_t q = f->q();
  for (unsigned j = 0; j < n && i > 0; ++j) {
    const std::uint64_t digit = i % q;
    i /= q;
    // Map the integer digit to a field element through its base-p digits.
    std::vector<std::uint64_t> d;
    std::uint64_t v = digit;
    for (unsigned s = 0; s < f->k(); ++s) {
      d.push_back(v % f->p());
      v /= f->p();
    }
    c[j] = f->from_digits(d);
  }
  return PolyT(f, std::move(c));
}

std::vector<PolyT> find_irreducibles(const FieldPtr& f, unsigned n, std::size_t count, const PolyT& avoid) {
  std::vector<PolyT> out;
  std::uint64_t limit = 1;
  for (unsigned j = 0; j < n && limit < (1ULL << 40); ++j) limit *= f->q();
  for (std::uint64_t i = 0; i < limit && out.size() < count; ++i) {
    PolyT m = enumerate_monic(f, n, i);
    if (!is_irreducible(m)) continue;
    if (!avoid.is_zero() && avoid.bound() && divides(m, avoid)) continue;
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace fqdyn
