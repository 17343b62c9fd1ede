#include <random>

#include "doctest.h"
#include "fqdyn/laurent.hpp"
#include "fqdyn/linalg.hpp"
#include "fqdyn/upoly.hpp"
#include "helpers.hpp"

using namespace fqdyn;
using testutil::P;

TEST_CASE("poly_mul small cases") {
  auto f5 = Field::prime(5);
  CHECK(P(f5, {1, 1}) * P(f5, {-1, 1}) == P(f5, {-1, 0, 1}));
  auto f = P(f5, {3, 0, 2, 1});
  CHECK((f * PolyT(f5)).is_zero());
  CHECK(f * PolyT::constant(f5, 1) == f);
}

TEST_CASE("fast multiplication agrees with schoolbook") {
  std::mt19937_64 rng(7);
  auto f7 = Field::prime(7);
  for (int deg : {2000}) {
    auto a = testutil::rand_nonzero(rng, f7, deg);
    auto b = testutil::rand_nonzero(rng, f7, deg);
    CHECK(mul_fast(a, b) == mul_schoolbook(a, b));
  }
  auto big = Field::prime(2147483647);
  auto gf49 = Field::make({7, 2, {3, 6, 1}, "u"});
  for (const auto& fld : {f7, big, gf49}) {
    for (int tier : {10, 100, 700}) {
      for (int i = 0; i < 100; ++i) {
        auto a = testutil::rand_poly(rng, fld, tier);
        auto b = testutil::rand_poly(rng, fld, tier);
        REQUIRE(mul_fast(a, b) == mul_schoolbook(a, b));
      }
    }
  }
}

TEST_CASE("poly_gcd") {
  auto f5 = Field::prime(5);
  CHECK(gcd(P(f5, {-1, 0, 1}), P(f5, {-1, 1})) == P(f5, {-1, 1}));
  CHECK(gcd(P(f5, {2, 0, 3}), PolyT(f5)) == P(f5, {2, 0, 3}).monic());
  auto f7 = Field::prime(7);
  CHECK(gcd(PolyT::monomial(f7, 1, 7) - PolyT::t(f7), PolyT::monomial(f7, 1, 7)) == PolyT::t(f7));
  CHECK_THROWS_AS(gcd(PolyT(f7), PolyT(f7)), DomainError);
}

TEST_CASE("field mismatch is rejected") {
  auto f5 = Field::prime(5), f7 = Field::prime(7);
  CHECK_THROWS_AS(P(f5, {1}) + P(f7, {1}), FieldMismatch);
  CHECK_THROWS_AS(P(f5, {1, 1}) * P(f7, {1, 1}), FieldMismatch);
}

TEST_CASE("derivatives") {
  auto f5 = Field::prime(5);
  CHECK(P(f5, {0, 1, 0, 1}).derivative() == P(f5, {1, 0, 3}));
  CHECK(PolyT::monomial(f5, 1, 5).derivative().is_zero());
  RatK inv_t(PolyT::constant(f5, 1), PolyT::t(f5));
  CHECK(inv_t.derivative() == RatK(P(f5, {-1}), P(f5, {0, 0, 1})));
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    auto a = testutil::rand_poly(rng, f5, 12), b = testutil::rand_poly(rng, f5, 12);
    CHECK((a * b).derivative() == a.derivative() * b + a * b.derivative());
  }
}

TEST_CASE("RatK canonical form and ring axioms") {
  auto f7 = Field::prime(7);
  std::mt19937_64 rng(11);
  for (int i = 0; i < 60; ++i) {
    auto a = testutil::rand_ratk(rng, f7, 5), b = testutil::rand_ratk(rng, f7, 5), c = testutil::rand_ratk(rng, f7, 5);
    for (const auto& z : {a + b, a * b, a - c, (a + b) * c}) {
      CHECK(z.den().is_monic());
      if (!z.is_zero()) CHECK(gcd(z.num(), z.den()).is_one());
    }
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + RatK::zero(f7) == a);
    CHECK(a * RatK::one(f7) == a);
    if (!b.is_zero()) CHECK((a / b) * b == a);
  }
  CHECK(RatK::zero(f7).den().is_one());
}

TEST_CASE("abs_inf") {
  auto f7 = Field::prime(7);
  CHECK(abs_inf(RatK(P(f7, {0, 0, 1}), P(f7, {1, 1}))) == ExtInt(1));
  CHECK(abs_inf(RatK::zero(f7)).is_neg_inf());
  CHECK(abs_inf(RatK(P(f7, {1, 0, 0, 1}), P(f7, {0, 0, 0, 1}))) == ExtInt(0));
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    auto z = testutil::rand_ratk(rng, f7, 4), w = testutil::rand_ratk(rng, f7, 4);
    CHECK(abs_inf(z * w) == abs_inf(z) + abs_inf(w));
    const auto s = abs_inf(z + w);
    CHECK(s <= max(abs_inf(z), abs_inf(w)));
    if (abs_inf(z) != abs_inf(w)) CHECK(s == max(abs_inf(z), abs_inf(w)));
  }
}

TEST_CASE("resultants") {
  auto f5 = Field::prime(5);
  CHECK(resultant(P(f5, {-1, 1}), P(f5, {-2, 1})) == f5->from_int(-1));
  CHECK(resultant(P(f5, {1, 2, 1}), P(f5, {1, 2, 1})) == 0);
  const PolyT z(f5);
  XPoly x2(z, {z, z, P(f5, {1})});
  XPoly x2t(z, {P(f5, {0, -1}), z, P(f5, {1})});
  CHECK(resultant(x2, x2t) == P(f5, {0, 0, 1}));
  CHECK(sylvester_resultant(x2, x2t, 2, 2) == P(f5, {0, 0, 1}));
}

TEST_CASE("subresultant agrees with the Sylvester determinant") {
  std::mt19937_64 rng(19);
  for (auto p : {5ULL, 7ULL, 11ULL}) {
    auto f = Field::prime(p);
    for (int i = 0; i < 40; ++i) {
      auto a = testutil::rand_xpoly(rng, f, 1 + static_cast<int>(rng() % 5), 3);
      auto b = testutil::rand_xpoly(rng, f, 1 + static_cast<int>(rng() % 5), 3);
      if (a.is_zero() || b.is_zero()) continue;
      const auto m = static_cast<std::size_t>(a.degree().value());
      const auto n = static_cast<std::size_t>(b.degree().value());
      REQUIRE(resultant(a, b) == sylvester_resultant(a, b, m, n));
      const std::size_t d = std::max(m, n);
      REQUIRE(resultant_formal(a, b, d) == sylvester_resultant(a, b, d, d));
    }
  }
}

TEST_CASE("resultant over a field matches the F_q version") {
  auto f7 = Field::prime(7);
  std::mt19937_64 rng(23);
  for (int i = 0; i < 30; ++i) {
    auto a = testutil::rand_nonzero(rng, f7, 6), b = testutil::rand_nonzero(rng, f7, 6);
    auto sa = testutil::rand_xpoly(rng, f7, 3, 2), sb = testutil::rand_xpoly(rng, f7, 3, 2);
    if (sa.is_zero() || sb.is_zero()) continue;
    CHECK(RatK(resultant(sa, sb)) == resultant_field(to_k(sa), to_k(sb)));
    (void)a;
    (void)b;
  }
}

TEST_CASE("Rabin irreducibility") {
  auto f7 = Field::prime(7);
  CHECK(is_irreducible(P(f7, {1, 0, 1})));   // -1 is not a square mod 7
  CHECK(!is_irreducible(P(f7, {-1, 0, 1})));
  CHECK(!is_irreducible(P(f7, {1, 0, 1}) * P(f7, {3, 0, 1})));
  CHECK_THROWS_AS(Field::make({7, 2, {1, 0, 6}, "u"}), DomainError);  // u^2 - 1
  auto irr = find_irreducibles(f7, 3, 5, PolyT(f7));
  CHECK(irr.size() == 5);
  for (const auto& m : irr) CHECK(is_irreducible(m));
}

TEST_CASE("extension field arithmetic") {
  auto f = Field::make({7, 2, {3, 6, 1}, "u"});
  CHECK(f->q() == 49);
  const Elem u = f->generator();
  // u^2 = -6u - 3 = u + 4
  CHECK(f->mul(u, u) == f->add(u, f->from_int(4)));
  for (Elem a = 1; a < 64; ++a) {
    auto d = f->digits(a);
    if (d[0] >= 7 || d[1] >= 7) continue;
    CHECK(f->mul(a, f->inv(a)) == 1);
  }
}

TEST_CASE("Bareiss determinant over F_q[t]") {
  auto f5 = Field::prime(5);
  Matrix<PolyT> m = {{P(f5, {0, 1}), P(f5, {1})}, {P(f5, {1}), P(f5, {0, 1})}};
  CHECK(determinant(m) == P(f5, {-1, 0, 1}));
  Matrix<PolyT> s = {{P(f5, {0}), P(f5, {1})}, {P(f5, {1}), P(f5, {0})}};
  CHECK(determinant(s) == P(f5, {-1}));
}

TEST_CASE("Mahler probe") {
  auto f5 = Field::prime(5);
  auto rows = mahler_exponent_probe(f5, 3, 1 << 12);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].deg_q == 1);
  CHECK(rows[2].deg_q == 25);
  CHECK(rows[2].neg_log_err == 125);
  for (const auto& r : rows) CHECK(r.estimate == 5);
  CHECK_THROWS_AS(mahler_exponent_probe(f5, 6, 1 << 12), PrecisionCapExceeded);
}

TEST_CASE("Laurent expansion") {
  auto f7 = Field::prime(7);
  // 1/(t-1) = t^-1 + t^-2 + ...
  auto s = laurent_expand(RatK(P(f7, {1}), P(f7, {-1, 1})), 6);
  CHECK(s.valuation == 1);
  for (int i = 1; i <= 6; ++i) CHECK(s.coeff(i) == 1);
  CHECK_THROWS_AS(s.coeff(7), PrecisionCapExceeded);
  CHECK_THROWS_AS(laurent_expand(RatK::one(f7), 100, 10), PrecisionCapExceeded);
}
