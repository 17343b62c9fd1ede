#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fqdyn/riccati.hpp"

namespace fqdyn {

inline constexpr std::size_t kDefaultPostcritBound = 6;
inline constexpr const char* kUnderdeterminedNote = "hypothesis (1) cannot hold as stated";

struct Condition1Result {
  bool pass = false;
  ConsistencyVerdict verdict;
  std::string annotation;  // empty unless d < 3
};

struct Condition2Result {
  enum class Status { Pass, Fail, Inconclusive };
  Status status = Status::Inconclusive;
  /// "family-criterion" or "bounded" for Pass.
  std::string certificate;
  std::size_t n_checked = 0;
  std::optional<std::size_t> witness;  // smallest failing n
  std::string reason;
};

const char* to_string(Condition2Result::Status s);

struct HypothesisReport {
  Condition1Result condition1;
  Condition2Result condition2;
  bool separable = true;
};

Condition1Result check_condition1(const RationalMap& phi);

/// Looks for n in 0..n_bound with oo in phi^n(Crit).  Each n is first
/// cleared by reducing modulo primes of F_q[t]; steps that no prime clears
/// are decided exactly in K[x]/(W), subject to degree_cap.
Condition2Result check_condition2_bounded(const RationalMap& phi, std::size_t n_bound = kDefaultPostcritBound,
                                          std::int64_t degree_cap = kDefaultDegreeCap);

HypothesisReport check_hypotheses(const RationalMap& phi, std::size_t n_bound = kDefaultPostcritBound,
                                  std::int64_t degree_cap = kDefaultDegreeCap);

// ---- irreducibility over K ----

struct IrreducibilityCertificate {
  bool certified = false;
  /// "eisenstein", "specialization" or empty.
  std::string method;
  /// The prime of F_q[t] used by the certificate.
  std::optional<PolyT> prime;
};

/// Sound but incomplete test that a monic x-polynomial over F_q[t] is
/// irreducible over F_q(t): Eisenstein at a prime of F_q[t], or
/// irreducibility of the reduction modulo a prime of degree <= 3.
IrreducibilityCertificate certify_irreducible(const XPoly& g);

// ---- the sample family ----

/// x^d / (x^d + t^2 x^(d-1) + t x^(d-2) + t x^(d-5) + h(x)).
RationalMap family_map(const FieldPtr& f, std::size_t d, const XPoly& h);

struct FamilyCheck {
  bool pass = false;
  std::vector<std::string> failures;
  std::optional<RationalMap> map;
  IrreducibilityCertificate irreducibility;
  bool separable = false;
  bool denominator_not_over_tp = false;  // some coefficient of g is not in F_q[t^p]
  bool infinity_critical = true;
  bool crit_degree_bound = false;       // W = x^(d-1) * (degree <= d-1)
  std::optional<ConsistencyVerdict> verdict;
  std::optional<SubsystemSolution> certificate;  // rows 0..5
  /// Unconditional condition (2) verdict, certificate "family-criterion".
  Condition2Result condition2;
};

FamilyCheck check_family_prop35(std::size_t d, const XPoly& h, const FieldPtr& f);

// ---- integrality scan ----

struct ScanConfig {
  Rational epsilon{1, 10};
  std::size_t n_max = 6;
  std::int64_t degree_cap = kDefaultDegreeCap;
  bool run_pi_side = true;
};

struct HeightSequence {
  std::vector<Rational> normalized;  // h_n / d^n
  std::vector<std::int64_t> drift;   // h_{n+1} - d*h_n
  std::int64_t C = 0;                // max |drift|
};

HeightSequence height_normalized_sequence(const std::vector<OrbitRecord>& records, std::size_t d);

struct ScanReport {
  std::vector<OrbitRecord> records;
  std::vector<ProjPointK> points;
  std::vector<std::size_t> N_members;
  /// Estimates over records window_start..window_end (the tail half of n >= 1).
  std::size_t window_start = 0, window_end = 0;
  Ratio ratio_liminf_est, ratio_limsup_est;
  std::size_t polynomial_iterates = 0;
  HeightSequence heights;
  OrbitStatus status = OrbitStatus::Complete;
  std::optional<std::pair<std::size_t, std::size_t>> cycle;
  std::vector<std::string> annotations;
  /// pi-side records (pi = 1/phi(1/x) from 1/alpha), when requested.
  std::vector<OrbitRecord> pi_records;
  std::optional<bool> pi_duality_holds;
};

/// Throws DomainError when epsilon is outside (0, 1/5].
ScanReport integrality_scan(const RationalMap& phi, const ProjPointK& alpha, const ScanConfig& cfg);

/// (2d-1) times the largest coefficient degree: a bound for |h(phi(P)) - d h(P)|.
std::int64_t height_drift_bound(const RationalMap& phi);

}  // namespace fqdyn
