#include "fqdyn/frontend/report.hpp"

#include <sstream>

namespace fqdyn::frontend {

namespace {

template <class T>
json array_of(const T& xs) {
  json a = json::array();
  for (const auto& x : xs) a.push_back(to_json(x));
  return a;
}

}  // namespace

json to_json(const ExtInt& e) {
  if (!e.is_finite()) return "-inf";
  return e.value();
}

json to_json(const Rational& r) { return r.str(); }

json to_json(const RatK& z) { return render_ratfunc(z); }

json to_json(const Ratio& r) { return r.to_string(); }

json to_json(const OrbitRecord& r) {
  return {{"n", r.n}, {"deg_a", to_json(r.deg_a)}, {"deg_b", to_json(r.deg_b)}, {"ratio", to_json(r.ratio)},
          {"in_N", r.in_N_eps}};
}

json to_json(const ConsistencyVerdict& v) {
  json j = {{"status", to_string(v.status)},
            {"rank_M", v.rank_M},
            {"rank_augmented", v.rank_aug},
            {"solution_dimension", v.dimension}};
  if (!v.solution.empty()) j["solution"] = array_of(v.solution);
  return j;
}

json to_json(const RiccatiSystem& sys) {
  json rows = json::array();
  for (std::size_t i = 0; i < sys.rows.size(); ++i) {
    const auto& r = sys.rows[i];
    rows.push_back({{"row", i}, {"M", array_of(r.c)}, {"R", to_json(-r.c0)}});
  }
  return {{"unknowns", {"a", "b", "c", "e", "f", "g"}}, {"rows", rows}};
}

json to_json(const SubsystemSolution& s) {
  json res = json::array();
  for (const auto& [i, v] : s.residuals) res.push_back({{"row", i}, {"residual", to_json(v)}});
  return {{"rows", s.rows}, {"det", to_json(s.det)}, {"solution", array_of(s.solution)}, {"residuals", res}};
}

json to_json(const Condition1Result& c) {
  json j = {{"pass", c.pass}, {"verdict", to_json(c.verdict)}};
  if (!c.annotation.empty()) j["annotation"] = c.annotation;
  return j;
}

json to_json(const Condition2Result& c) {
  json j = {{"status", to_string(c.status)}, {"n_checked", c.n_checked}};
  if (!c.certificate.empty() && c.status == Condition2Result::Status::Pass) j["certificate"] = c.certificate;
  if (c.witness) j["witness_n"] = *c.witness;
  if (!c.reason.empty()) j["reason"] = c.reason;
  return j;
}

json to_json(const HypothesisReport& h) {
  return {{"condition1", to_json(h.condition1)}, {"condition2", to_json(h.condition2)}, {"separable", h.separable}};
}

json to_json(const FamilyCheck& fc) {
  json j = {{"pass", fc.pass},
            {"failures", fc.failures},
            {"separable", fc.separable},
            {"denominator_not_over_tp", fc.denominator_not_over_tp},
            {"infinity_critical", fc.infinity_critical},
            {"critical_degree_bound", fc.crit_degree_bound},
            {"condition2", to_json(fc.condition2)}};
  json irr = {{"certified", fc.irreducibility.certified}};
  if (!fc.irreducibility.method.empty()) irr["method"] = fc.irreducibility.method;
  if (fc.irreducibility.prime) irr["prime"] = render_poly(*fc.irreducibility.prime);
  j["irreducibility"] = irr;
  if (fc.map) j["map"] = render_map(*fc.map);
  if (fc.verdict) j["verdict"] = to_json(*fc.verdict);
  if (fc.certificate) j["certificate"] = to_json(*fc.certificate);
  return j;
}

json to_json(const ScanReport& s) {
  json j = {{"records", array_of(s.records)},
            {"N_members", s.N_members},
            {"window", {s.window_start, s.window_end}},
            {"ratio_liminf_est", to_json(s.ratio_liminf_est)},
            {"ratio_limsup_est", to_json(s.ratio_limsup_est)},
            {"polynomial_iterates", s.polynomial_iterates},
            {"status", s.status == OrbitStatus::Complete ? "COMPLETE" : "CAPPED"},
            {"annotations", s.annotations}};
  json points = json::array();
  for (const auto& p : s.points) points.push_back(render_point(p));
  j["points"] = points;
  json hs = json::array();
  for (const auto& v : s.heights.normalized) hs.push_back(to_json(v));
  j["height_seq"] = hs;
  j["height_drift"] = s.heights.drift;
  j["height_drift_max"] = s.heights.C;
  if (s.cycle) j["cycle"] = {s.cycle->first, s.cycle->second};
  if (s.pi_duality_holds) {
    j["pi_records"] = array_of(s.pi_records);
    j["pi_duality_holds"] = *s.pi_duality_holds;
  }
  return j;
}

json to_json(const Matrix<RatK>& m) {
  json a = json::array();
  for (const auto& row : m) a.push_back(array_of(row));
  return a;
}

json to_json(const LattesCertificate& c) {
  return {{"applicable", c.applicable},
          {"M_E1_displayed", to_json(c.displayed)},
          {"M_E1_extracted", to_json(c.extracted)},
          {"display_matches", c.display_matches},
          {"det", to_json(c.det)},
          {"det_expected", to_json(c.det_expected)},
          {"det_identity_holds", c.det_identity_holds},
          {"det_matches_negated", c.det_matches_negated},
          {"phi_verdict", to_json(c.phi_verdict)},
          {"phi_expected", array_of(c.phi_expected)},
          {"phi_solution_matches", c.phi_solution_matches},
          {"pi_verdict", to_json(c.pi_verdict)},
          {"pi_expected", array_of(c.pi_expected)},
          {"pi_solution_matches", c.pi_solution_matches},
          {"alg_leading", to_json(c.alg_leading)},
          {"alg_leading_pi", to_json(c.alg_leading_pi)},
          {"alg_leading_consistent", c.alg_leading_consistent},
          {"alg_leading_nonzero", c.alg_leading_nonzero},
          {"alg_leading_pi_nonzero", c.alg_leading_pi_nonzero},
          {"falsified", c.falsified}};
}

json to_json(const HeightEstimate& h) {
  json rows = json::array();
  for (const auto& r : h.rows) {
    rows.push_back({{"n", r.n},
                    {"deg_a", to_json(r.deg_a)},
                    {"deg_b", to_json(r.deg_b)},
                    {"deg_a_over_4n", to_json(r.norm_a)},
                    {"deg_b_over_4n", to_json(r.norm_b)}});
  }
  return {{"rows", rows},
          {"window", {h.window_start, h.window_end}},
          {"bracket_a", {to_json(h.bracket_lo_a), to_json(h.bracket_hi_a)}},
          {"bracket_b", {to_json(h.bracket_lo_b), to_json(h.bracket_hi_b)}},
          {"drift_a", h.drift_a},
          {"drift_b", h.drift_b},
          {"drift_bound", h.drift_bound},
          {"status", h.status == OrbitStatus::Complete ? "COMPLETE" : "CAPPED"},
          {"torsion_suspected", h.torsion_suspected},
          {"annotations", h.annotations}};
}

json to_json(const MahlerRow& r) {
  return {{"j", r.j}, {"deg_Q", r.deg_q}, {"neg_log_err", r.neg_log_err}, {"estimate", to_json(r.estimate)}};
}

std::string records_csv(const std::vector<OrbitRecord>& recs) {
  std::ostringstream os;
  os << "n,deg_a,deg_b,ratio,in_N\n";
  for (const auto& r : recs) {
    os << r.n << ',' << r.deg_a.to_string() << ',' << r.deg_b.to_string() << ',' << r.ratio.to_string() << ','
       << (r.in_N_eps ? 1 : 0) << '\n';
  }
  return os.str();
}

std::string heights_csv(const HeightEstimate& h) {
  std::ostringstream os;
  os << "n,deg_a,deg_b,deg_a_over_4n,deg_b_over_4n\n";
  for (const auto& r : h.rows) {
    os << r.n << ',' << r.deg_a.to_string() << ',' << r.deg_b.to_string() << ',' << r.norm_a.str() << ','
       << r.norm_b.str() << '\n';
  }
  return os.str();
}

std::string mahler_csv(const std::vector<MahlerRow>& rows) {
  std::ostringstream os;
  os << "j,deg_Q,neg_log_err,estimate\n";
  for (const auto& r : rows) os << r.j << ',' << r.deg_q << ',' << r.neg_log_err << ',' << r.estimate.str() << '\n';
  return os.str();
}

}  // namespace fqdyn::frontend
