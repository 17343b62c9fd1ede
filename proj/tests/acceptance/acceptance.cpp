// One PASS/FAIL line per acceptance criterion, followed by indented detail.
// Exit status is nonzero when any criterion fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "../unit/helpers.hpp"
#include "fqdyn/frontend/cli.hpp"
#include "fqdyn/frontend/values.hpp"
#include "fqdyn/hypotheses.hpp"
#include "fqdyn/laurent.hpp"
#include "fqdyn/lattes.hpp"
#include "json.hpp"

using namespace fqdyn;
using namespace fqdyn::frontend;

namespace {

using Clock = std::chrono::steady_clock;

struct Result {
  bool pass = true;
  std::vector<std::string> notes;

  void check(bool ok, const std::string& what) {
    if (!ok) pass = false;
    notes.push_back(std::string(ok ? "ok    " : "FAILED ") + what);
  }
  void note(const std::string& s) { notes.push_back("       " + s); }
};

std::string str(const RatK& z) { return render_ratfunc(z); }

RationalMap random_map(std::mt19937_64& rng, const FieldPtr& f, int d, int tdeg) {
  while (true) {
    try {
      auto m = RationalMap::create(testutil::rand_xpoly(rng, f, d, tdeg), testutil::rand_xpoly(rng, f, d, tdeg));
      if (static_cast<int>(m.degree()) == d) return m;
    } catch (const DomainError&) {
    }
  }
}

Result criterion1() {
  Result r;
  auto f7 = Field::prime(7);
  const XPoly h(PolyT(f7), {PolyT::t(f7)});
  const auto fc = check_family_prop35(6, h, f7);
  r.check(fc.verdict && fc.verdict->status == ConsistencyVerdict::Status::Inconsistent,
          "consistency_check is Inconsistent");
  if (!fc.certificate) {
    r.check(false, "rows 0..5 subsystem solvable");
    return r;
  }
  const auto& sub = *fc.certificate;
  const RatK det = parse_ratfunc("-12*t^6", f7);
  r.check(sub.det == det, "det = -12t^6 (got " + str(sub.det) + ")");
  const std::vector<std::string> want = {"(1/2*t^3+7/2)/t", "-6/t", "5/(2*t)", "1/2", "0", "5/2*t"};
  bool sol = sub.solution.size() == want.size();
  std::string got;
  for (std::size_t i = 0; i < sub.solution.size(); ++i) {
    sol = sol && sub.solution[i] == parse_ratfunc(want[i], f7);
    got += (i ? ", " : "") + str(sub.solution[i]);
  }
  r.check(sol, "unique solution as printed (got " + got + ")");
  const bool res = sub.residuals.size() == 1 && sub.residuals[0].first == 6 &&
                   sub.residuals[0].second == parse_ratfunc("15/2*t^2", f7);
  r.check(res, "row-6 residual = 15/2 t^2 (got " + (sub.residuals.empty() ? "none" : str(sub.residuals[0].second)) + ")");

  // The printed values do hold once h has no constant term in x^(d-6); d = 8 is the first such case.
  const auto fc8 = check_family_prop35(8, h, f7);
  if (fc8.certificate) {
    const auto& s8 = *fc8.certificate;
    bool same = s8.det == det && s8.residuals.size() == 1 && s8.residuals[0].second == parse_ratfunc("15/2*t^2", f7);
    for (std::size_t i = 0; same && i < want.size(); ++i) same = s8.solution[i] == parse_ratfunc(want[i], f7);
    r.note(std::string("diagnostic: d = 8, h = t gives the printed det, solution and residual: ") +
           (same ? "yes" : "no"));
  }
  return r;
}

Result criterion2() {
  Result r;
  std::mt19937_64 rng(2);
  std::size_t maps = 0, bad_rows = 0, bad_top = 0;
  for (auto p : {7ULL, 11ULL}) {
    auto f = Field::prime(p);
    for (int d = 2; d <= 8; ++d) {
      for (int i = 0; i < 50; ++i) {
        const auto phi = random_map(rng, f, d, 2);
        const auto id = build_symbolic_identity(phi);
        const auto sys = build_system_closed_form(phi);
        if (!id.back().is_zero()) ++bad_top;
        for (std::size_t row = 0; row < sys.row_count(); ++row)
          if (!(sys.rows[row] == id[2 * phi.degree() - row])) ++bad_rows;
        ++maps;
      }
    }
  }
  r.check(bad_rows == 0, std::to_string(maps) + " maps: closed-form rows equal symbolic extraction (" +
                             std::to_string(bad_rows) + " mismatched rows)");
  r.check(bad_top == 0, "x^(2d+1) coefficient form identically zero (" + std::to_string(bad_top) + " nonzero)");
  return r;
}

Result criterion3() {
  Result r;
  std::mt19937_64 rng(3);
  auto f7 = Field::prime(7);
  int n = 0, det_ok = 0, det_neg = 0, phi_ok = 0, pi_ok = 0, lead_ok = 0, display_ok = 0;
  while (n < 20) {
    std::optional<EllipticCurveK> E;
    try {
      E = EllipticCurveK::make(testutil::rand_ratk(rng, f7, 2), testutil::rand_ratk(rng, f7, 2));
    } catch (const DomainError&) {
      continue;
    }
    if (!condition_2ab(*E).nonzero) continue;
    const auto c = lattes_system_checks(*E);
    ++n;
    det_ok += c.det_identity_holds;
    det_neg += c.det_matches_negated;
    phi_ok += c.phi_solution_matches;
    pi_ok += c.pi_solution_matches;
    lead_ok += c.alg_leading_nonzero && c.alg_leading_pi_nonzero && c.alg_leading_consistent;
    display_ok += c.display_matches;
  }
  r.check(det_ok == n, "det M = 2^15 3^4 B (4A^3+27B^2): " + std::to_string(det_ok) + "/" + std::to_string(n));
  r.note("det M = -2^15 3^4 B (4A^3+27B^2): " + std::to_string(det_neg) + "/" + std::to_string(n));
  r.check(phi_ok == n, "phi-side unique solution matches the closed formulas: " + std::to_string(phi_ok) + "/" +
                           std::to_string(n));
  r.check(pi_ok == n, "pi-side unique solution matches: " + std::to_string(pi_ok) + "/" + std::to_string(n));
  r.check(lead_ok == n, "leading coefficient of the algebraic relation nonzero: " + std::to_string(lead_ok) + "/" +
                            std::to_string(n));
  r.note("printed 6x6 matrix equals the extracted rows: " + std::to_string(display_ok) + "/" + std::to_string(n));
  return r;
}

Result criterion4() {
  Result r;
  std::mt19937_64 rng(4);
  auto f7 = Field::prime(7);
  int n = 0, ok = 0;
  while (n < 20) {
    const RatK A(testutil::rand_poly(rng, f7, 2)), x(testutil::rand_poly(rng, f7, 2));
    const RatK y(testutil::rand_nonzero(rng, f7, 2));
    const RatK B = y * y - x * x * x - A * x;
    std::optional<EllipticCurveK> E;
    try {
      E = EllipticCurveK::make(A, B);
    } catch (const DomainError&) {
      continue;
    }
    ++n;
    const auto Q = double_point(*E, PointE::affine(x, y));
    const auto img = evaluate(build_lattes(*E), ProjPointK::from_ratk(x));
    ok += !Q.at_infinity && !img.is_infinity() && img.to_ratk() == Q.x;
  }
  r.check(ok == n, "x([2]P) = phi_E,2(x(P)): " + std::to_string(ok) + "/" + std::to_string(n));
  return r;
}

Result criterion5() {
  Result r;
  std::mt19937_64 rng(5);
  auto f7 = Field::prime(7);
  int ok = 0;
  for (int i = 0; i < 10; ++i) {
    const auto phi = random_map(rng, f7, 2 + static_cast<int>(rng() % 3), 1);
    const ProjPointK alpha(testutil::rand_poly(rng, f7, 2), testutil::rand_nonzero(rng, f7, 2));
    const auto a = orbit(phi, alpha, 5);
    const auto b = orbit(pi_transform(phi), alpha.reciprocal(), 5);
    bool same = a.steps.size() == b.steps.size() && a.steps.size() == 6;
    for (std::size_t n = 0; same && n < a.steps.size(); ++n) {
      same = a.steps[n].record.deg_a == b.steps[n].record.deg_b && a.steps[n].record.deg_b == b.steps[n].record.deg_a;
    }
    ok += same;
  }
  r.check(ok == 10, "phi-orbit degrees equal swapped pi-orbit degrees for n <= 5: " + std::to_string(ok) + "/10");
  return r;
}

Result criterion6() {
  Result r;
  auto f7 = Field::prime(7);
  const auto phi = family_map(f7, 6, XPoly(PolyT(f7), {PolyT::t(f7)}));
  ScanConfig cfg;
  cfg.n_max = 32;  // the degree cap stops the orbit well before this
  cfg.run_pi_side = false;
  const auto rep = integrality_scan(phi, ProjPointK::from_ratk(RatK(PolyT::t(f7))), cfg);
  const std::size_t last = rep.records.back().n;
  r.note("iterates computed: n <= " + std::to_string(last) +
         (rep.status == OrbitStatus::Capped ? " (stopped at the degree cap " + std::to_string(cfg.degree_cap) + ")"
                                            : ""));
  const auto bound = height_drift_bound(phi);
  r.check(rep.heights.C <= bound, "max |h_{n+1} - 6 h_n| = " + std::to_string(rep.heights.C) +
                                      " <= C = " + std::to_string(bound));
  const Rational limit = Rational(2) + Rational(1, 10);
  bool within = true;
  std::string ratios;
  for (std::size_t n = rep.window_start; n <= rep.window_end; ++n) {
    const auto& rec = rep.records[n];
    ratios += (ratios.empty() ? "" : ", ") + rec.ratio.to_string();
    if (rec.ratio.kind != Ratio::Kind::Finite || rec.ratio.value > limit) within = false;
  }
  r.check(within, "window n = " + std::to_string(rep.window_start) + ".." + std::to_string(rep.window_end) +
                      ": deg a_n / deg b_n <= 21/10 (" + ratios + ")");
  return r;
}

Result criterion7() {
  Result r;
  auto f7 = Field::prime(7);
  const auto E = parse_curve("y^2 = x^3 + x + t^2 - t^3 - t", f7);
  const auto est = canonical_height_estimate(E, parse_curve_point("(t, t)", E), 4);
  std::string degs;
  for (const auto& row : est.rows) degs += " (" + row.deg_a.to_string() + "," + row.deg_b.to_string() + ")";
  r.note("degrees (a_n, b_n), n = 0..4:" + degs);
  r.check(est.drift_a <= est.drift_bound && est.drift_b <= est.drift_bound,
          "|h_{n+1} - 4 h_n| <= C: drift a = " + std::to_string(est.drift_a) + ", b = " +
              std::to_string(est.drift_b) + ", C = " + std::to_string(est.drift_bound));
  r.check(est.bracket_lo_a <= est.bracket_hi_a && est.bracket_lo_b <= est.bracket_hi_b, "bracket_lo <= bracket_hi");
  const Rational ra = est.bracket_hi_a / est.bracket_lo_a, rb = est.bracket_hi_b / est.bracket_lo_b;
  r.check(ra <= 4, "a side: [" + est.bracket_lo_a.str() + ", " + est.bracket_hi_a.str() + "], ratio " + ra.str() +
                       " <= 4");
  r.check(rb <= 4, "b side: [" + est.bracket_lo_b.str() + ", " + est.bracket_hi_b.str() + "], ratio " + rb.str() +
                       " <= 4");
  return r;
}

Result criterion8() {
  Result r;
  const auto rows = mahler_exponent_probe(Field::prime(5), 3);
  bool ok = rows.size() == 4;
  std::string est;
  for (const auto& row : rows) {
    ok = ok && row.estimate == 5;
    est += " j=" + std::to_string(row.j) + ":" + row.estimate.str();
  }
  r.check(ok, "estimate = 5 at every j <= 3:" + est);
  return r;
}

Result criterion9() {
  Result r;
  auto f7 = Field::prime(7);
  const auto sq = parse_map("x^2", f7);
  const auto c2 = check_condition2_bounded(sq);
  r.check(c2.status == Condition2Result::Status::Fail && c2.witness && *c2.witness == 0,
          "x^2 fails condition (2) at n = 0 with a witness");
  const auto E = EllipticCurveK::make(RatK::one(f7), RatK(PolyT::t(f7)));
  const auto c1 = check_condition1(build_lattes(E));
  r.check(!c1.pass && c1.verdict.status == ConsistencyVerdict::Status::UniqueSolution,
          "Lattes map fails condition (1) with UniqueSolution");
  bool noted = true;
  for (const char* m : {"x^2", "x^2/(x^2-t)", "(x^2+t)/(t*x+1)"}) {
    const auto c = check_condition1(parse_map(m, f7));
    noted = noted && !c.pass && c.annotation == kUnderdeterminedNote;
  }
  r.check(noted, std::string("d = 2 maps carry \"") + kUnderdeterminedNote + "\"");
  return r;
}

Result criterion10() {
  Result r;
  std::mt19937_64 rng(10);
  const std::vector<FieldPtr> fields = {Field::prime(7), Field::prime(11),
                                        parse_field("GF(49)=GF(7)[u]/(u^2+6*u+3)"), Field::prime(2)};
  int bad[6] = {0, 0, 0, 0, 0, 0};
  for (int i = 0; i < 200; ++i) {
    const auto& f = fields[i % fields.size()];
    bad[0] += !(parse_field(render_field(f))->spec() == f->spec());
    const auto p = testutil::rand_poly(rng, f, 6);
    bad[1] += !(parse_poly(render_poly(p), f) == p);
    const auto z = testutil::rand_ratk(rng, f, 4);
    bad[2] += !(parse_ratfunc(render_ratfunc(z), f) == z);
    const auto phi = random_map(rng, f, 1 + static_cast<int>(rng() % 4), 3);
    bad[3] += !(parse_map(render_map(phi), f) == phi);
    const auto pt = i % 10 == 0 ? ProjPointK::infinity(f) : ProjPointK::from_ratk(testutil::rand_ratk(rng, f, 3));
    bad[5] += !(parse_point(render_point(pt), f) == pt);
  }
  for (int i = 0; i < 200;) {
    const auto& f = fields[i % 3];
    try {
      const auto E = EllipticCurveK::make(testutil::rand_ratk(rng, f, 2), testutil::rand_ratk(rng, f, 2));
      const auto back = parse_curve(render_curve(E), f);
      bad[4] += !(back.A() == E.A() && back.B() == E.B());
      ++i;
    } catch (const DomainError&) {
    }
  }
  const char* kinds[] = {"field", "poly", "ratfunc", "map", "curve", "point"};
  for (int k = 0; k < 6; ++k)
    r.check(bad[k] == 0, std::string(kinds[k]) + ": 200 round trips, " + std::to_string(bad[k]) + " mismatches");

  const std::vector<std::vector<std::string>> malformed = {
      {"check", "--map", "x^2/(x^2"},
      {"check", "--map", "x^2 +* 3"},
      {"check", "--map", "x/x"},
      {"check", "--map", "x^-1"},
      {"check", "--map", "t"},
      {"check", "--map", "x $ 1"},
      {"check", "--field", "GF(6)", "--map", "x^2"},
      {"check", "--field", "GF(8)=GF(2)[u]/(u^3+u", "--map", "x^2"},
      {"check", "--field", "GF(49)=GF(7)[u]/(u^2+6)", "--map", "x^2"},
      {"scan", "--map", "x^2", "--alpha", "1/(t-t)"},
      {"scan", "--map", "x^2", "--alpha", ""},
      {"family", "--h", "x^2/t"},
      {"lattes", "--curve", "y^2 = x^3"},
      {"lattes", "--curve", "y^2 = x^2 + 1"},
      {"lattes", "--A", "1", "--B", "t", "--P", "(t, 1)"},
  };
  int ok = 0;
  for (const auto& args : malformed) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    const auto j = nlohmann::json::parse(out.str(), nullptr, false);
    const bool spanned = !j.is_discarded() && j.contains("error") && j["error"].contains("line") &&
                         j["error"].contains("column") && j["error"].contains("offset");
    if (code == 2 && spanned) {
      ++ok;
    } else {
      r.note("not rejected with a span: " + args.back());
    }
  }
  r.check(ok == static_cast<int>(malformed.size()), "malformed inputs give a span and exit code 2: " +
                                                        std::to_string(ok) + "/" + std::to_string(malformed.size()));
  return r;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_s;  // 0 when none is stated
    std::function<Result()> run;
  };
  const std::vector<Criterion> all = {
      {1, "sample family certificate, d = 6, h = t", 1, criterion1},
      {2, "closed form equals symbolic extraction", 30, criterion2},
      {3, "Lattes identity suite", 30, criterion3},
      {4, "group-law oracle", 0, criterion4},
      {5, "pi-duality of orbits", 0, criterion5},
      {6, "height-growth window for the sample family", 120, criterion6},
      {7, "Lattes height bracket", 120, criterion7},
      {8, "Mahler probe, q = 5", 0, criterion8},
      {9, "negative controls", 0, criterion9},
      {10, "parser round trip and malformed input", 0, criterion10},
  };
  int failed = 0;
  for (const auto& c : all) {
    const auto t0 = Clock::now();
    Result r;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r.check(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (c.budget_s > 0) {
      std::ostringstream b;
      b << "runtime " << secs << " s within " << c.budget_s << " s";
      r.check(secs < c.budget_s, b.str());
    }
    failed += !r.pass;
    std::cout << (r.pass ? "PASS" : "FAIL") << "  criterion " << c.id << ": " << c.name << "  (" << static_cast<long>(secs * 1000)
              << " ms)\n";
    for (const auto& n : r.notes) std::cout << "      " << n << '\n';
  }
  std::cout << (all.size() - failed) << "/" << all.size() << " criteria passed\n";
  return failed ? 1 : 0;
}
