#include <random>

#include "doctest.h"
#include "fqdyn/riccati.hpp"
#include "helpers.hpp"

using namespace fqdyn;
using testutil::P;

namespace {

// x^d / (x^d + t^2 x^(d-1) + t x^(d-2) + t x^(d-5) + h)
RationalMap family(const FieldPtr& f, std::size_t d, const PolyT& h) {
  const PolyT z(f);
  std::vector<PolyT> F(d + 1, z), G(d + 1, z);
  F[d] = P(f, {1});
  G[d] = P(f, {1});
  G[d - 1] = P(f, {0, 0, 1});
  G[d - 2] = P(f, {0, 1});
  G[d - 5] = G[d - 5] + P(f, {0, 1});
  G[0] = G[0] + h;
  return RationalMap::create(XPoly(z, F), XPoly(z, G));
}

RationalMap random_map(std::mt19937_64& rng, const FieldPtr& f, int d) {
  while (true) {
    try {
      auto m = RationalMap::create(testutil::rand_xpoly(rng, f, d, 2), testutil::rand_xpoly(rng, f, d, 2));
      if (static_cast<int>(m.degree()) == d) return m;
    } catch (const DomainError&) {
    }
  }
}

}  // namespace

TEST_CASE("derived_polys") {
  auto f5 = Field::prime(5);
  const PolyT z(f5);
  XPoly F(z, {z, z, P(f5, {0, 1})});
  auto [F1, F2] = derived_polys(F);
  CHECK(F1 == XPoly(z, {z, z, P(f5, {1})}));
  CHECK(F2 == XPoly(z, {z, P(f5, {0, 2})}));
  XPoly c(z, {P(f5, {3}), P(f5, {2}), P(f5, {1})});
  CHECK(derived_polys(c).first.is_zero());
  std::vector<PolyT> x5(6, z);
  x5[5] = P(f5, {1});
  CHECK(derived_polys(XPoly(z, x5)).second.is_zero());
}

TEST_CASE("closed form matches the symbolic identity") {
  std::mt19937_64 rng(61);
  for (auto p : {7ULL, 11ULL}) {
    auto f = Field::prime(p);
    for (int d = 2; d <= 8; ++d) {
      for (int i = 0; i < 6; ++i) {
        auto phi = random_map(rng, f, d);
        auto id = build_symbolic_identity(phi);
        REQUIRE(id.size() == 2 * phi.degree() + 2);
        CHECK(id.back().is_zero());
        auto sys = build_system_closed_form(phi);
        CHECK(sys.row_count() == std::min<std::size_t>(7, 2 * phi.degree() + 1));
        for (std::size_t r = 0; r < sys.row_count(); ++r) CHECK(sys.rows[r] == id[2 * phi.degree() - r]);
      }
    }
  }
}

TEST_CASE("E_0 entries") {
  std::mt19937_64 rng(67);
  auto f7 = Field::prime(7);
  auto phi = random_map(rng, f7, 4);
  auto id = build_symbolic_identity(phi);
  const auto& row = id[8];
  CHECK(row.c[0] == RatK(-(phi.a(4) * phi.a(4))));
  CHECK(row.c[3] == RatK(phi.a(4) * phi.b(3) - phi.a(3) * phi.b(4)));
}

TEST_CASE("r_n for the sample family") {
  auto f7 = Field::prime(7);
  auto phi = family(f7, 6, PolyT::t(f7));
  auto m = MapCoefficients::of(phi);
  CHECK(r_constant(m, 0).is_zero());
  CHECK(r_constant(m, 1) == RatK(P(f7, {0, 2})));
}

TEST_CASE("row count for d = 2") {
  auto f5 = Field::prime(5);
  const PolyT z(f5);
  auto phi = RationalMap::create(XPoly(z, {z, z, P(f5, {1})}), XPoly(z, {P(f5, {0, -1}), z, P(f5, {1})}));
  CHECK(build_system_closed_form(phi).row_count() == 5);
}

TEST_CASE("sample family values at d = 8, h = t") {
  auto f7 = Field::prime(7);
  auto phi = family(f7, 8, PolyT::t(f7));
  auto sys = build_system_closed_form(phi);
  CHECK(consistency_check(sys).status == ConsistencyVerdict::Status::Inconsistent);
  auto sub = unique_subsystem_solution(sys, {0, 1, 2, 3, 4, 5});
  CHECK(sub.det == RatK(P(f7, {0, 0, 0, 0, 0, 0, -12})));
  const PolyT t = PolyT::t(f7), one = P(f7, {1}), two = P(f7, {2});
  std::vector<RatK> expect = {RatK(P(f7, {7, 0, 0, 1}), P(f7, {0, 2})), RatK(P(f7, {-6}), t),
                              RatK(P(f7, {5}), P(f7, {0, 2})),          RatK(one, two),
                              RatK::zero(f7),                          RatK(P(f7, {0, 5}), two)};
  CHECK(sub.solution == expect);
  REQUIRE(sub.residuals.size() == 1);
  CHECK(sub.residuals[0].second == RatK(P(f7, {0, 0, 15}), two));
}

TEST_CASE("sample family at d = 6, h = t") {
  // The constant term of h is b_{d-6} and enters the e-entry of row 5.
  auto f7 = Field::prime(7);
  auto phi = family(f7, 6, PolyT::t(f7));
  auto sys = build_system_closed_form(phi);
  CHECK(consistency_check(sys).status == ConsistencyVerdict::Status::Inconsistent);
  auto sub = unique_subsystem_solution(sys, {0, 1, 2, 3, 4, 5});
  CHECK(sub.det == RatK(P(f7, {0, 0, 0, 0, 0, 0, -12}) * P(f7, {1, 1})));
}

TEST_CASE("consistency verdicts") {
  auto f7 = Field::prime(7);
  RiccatiSystem zero;
  zero.field = f7;
  for (int i = 0; i < 7; ++i) zero.rows.push_back(LinearForm6::zero(f7));
  auto v = consistency_check(zero);
  CHECK(v.status == ConsistencyVerdict::Status::AffineSolutionSpace);
  CHECK(v.rank_M == 0);
  CHECK(v.dimension == 6);

  RiccatiSystem ident;
  ident.field = f7;
  for (std::size_t i = 0; i < 6; ++i) {
    auto r = LinearForm6::zero(f7);
    r.c[i] = RatK::one(f7);
    ident.rows.push_back(r);
  }
  auto sub = unique_subsystem_solution(ident, {0, 1, 2, 3, 4, 5});
  CHECK(sub.det.is_one());
  for (const auto& x : sub.solution) CHECK(x.is_zero());
  auto bad = LinearForm6::zero(f7);
  bad.c0 = RatK::one(f7);
  ident.rows.push_back(bad);
  CHECK(consistency_check(ident).status == ConsistencyVerdict::Status::Inconsistent);
  RiccatiSystem sing;
  sing.field = f7;
  for (int i = 0; i < 6; ++i) sing.rows.push_back(LinearForm6::zero(f7));
  CHECK_THROWS_AS(unique_subsystem_solution(sing, {0, 1, 2, 3, 4, 5}), DomainError);
}

TEST_CASE("verdicts are stable under row permutation and scaling") {
  std::mt19937_64 rng(71);
  auto f7 = Field::prime(7);
  for (int i = 0; i < 10; ++i) {
    auto phi = random_map(rng, f7, 3 + static_cast<int>(rng() % 4));
    auto sys = build_system_closed_form(phi);
    auto v = consistency_check(sys);
    auto perm = sys;
    std::shuffle(perm.rows.begin(), perm.rows.end(), rng);
    for (auto& r : perm.rows) r = r.scaled(testutil::rand_ratk(rng, f7, 2) + RatK(PolyT::monomial(f7, 1, 3)));
    auto w = consistency_check(perm);
    CHECK(v.status == w.status);
    CHECK(v.rank_M == w.rank_M);
    CHECK(v.rank_aug == w.rank_aug);
    if (v.status == ConsistencyVerdict::Status::UniqueSolution) {
      for (const auto& r : sys.rows) CHECK(r.eval(v.solution).is_zero());
    }
  }
}
