#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ffgal/construct.hpp"

namespace ffgal {

enum class EvidenceKind { FullCycleType, SingleCycle };

struct CycleEvidence {
  EvidenceKind kind = EvidenceKind::FullCycleType;
  std::vector<int> data;  // partition of n, or {cycle length}
  std::string source;
  bool geometric = false;  // inertia of the geometric group; sampled evidence never is
};

// Cycles forced by one ramification profile; empty when neither case applies.
// Case (i) gives the full type; case (ii) a single cycle of length e for every admissible part e.
std::vector<CycleEvidence> cycle_from_profile(const RamProfile& profile, u64 p, const std::string& source);

struct CycleHistogram {
  int max_k = 0;
  u64 samples = 0;
  std::map<std::vector<int>, u64> counts;
  std::map<int, std::map<std::vector<int>, u64>> by_k;
  u64 retries = 0;  // draws rejected because disc(t0) = 0
};
// Frobenius cycle types of F at random unramified t0 in F_{q^k}, k = 1 + i mod max_k.
CycleHistogram frobenius_sample(const BiPoly& F, int max_k, u64 samples, u64 seed, unsigned jobs = 1);

struct BranchPoint {
  std::string prime;  // monic irreducible in T, or "inf"
  int degree = 1;     // number of geometric points
  std::vector<int> profile;  // empty when unknown
  bool tame = true;
  bool exact = false;  // profile computed from an exact cover
};

struct PrimitivityResult {
  bool primitive = false;
  std::string rule;
};
PrimitivityResult primitivity_rules(const std::vector<CycleEvidence>& evidence, const std::vector<BranchPoint>& branch, int n,
                                    u64 p, bool transitive);

enum class GroupVerdict { ContainsAn, EqualsSn, ExceptionPossible, Unknown };
const char* group_verdict_name(GroupVerdict v);

struct GroupConclusion {
  GroupVerdict verdict = GroupVerdict::Unknown;
  std::vector<std::string> chain;
  std::vector<std::string> exceptions;
  std::vector<std::string> trusted;  // data-table facts used
};
GroupConclusion group_conclusion(const std::vector<CycleEvidence>& evidence, bool primitive, int n, u64 p);

enum class AltTest { InsideAn, NotInsideAn, CharTwoUndecided };
const char* alt_test_name(AltTest a);
AltTest alternating_test(const BiPoly& F);
AltTest alternating_test(const Poly& disc);

struct Claim {
  std::string group = "S";  // "S", "A", or "A4@6"
  int n = 0;
  bool geometric = true;
  std::vector<Poly> branch_primes;  // monic irreducibles in T
  bool branch_infinity = false;
};

struct CertifyInput {
  BiPoly F;
  std::optional<RatCover> cover;  // base cover
  std::optional<Poly> h;          // F = cover(U = h(T)) when present
  Claim claim;
  std::optional<Poly> expected_disc;
  int expected_disc_t_power = -1;
  std::vector<int> expected_profile_zero, expected_profile_inf;
  std::string citation;  // external result the claim rests on, if any
  int max_k = 4;
  u64 samples = 1000;
  u64 seed = 1;
  unsigned jobs = 1;
};

CertifyInput certify_input(const FamilyInstance& fi);
// Base cover w, optionally composed with h; claim branch primes from the discriminant.
CertifyInput certify_input(const RatCover& w, const std::string& group, const std::optional<Poly>& h = std::nullopt);

enum class Verdict { Certified, EvidenceOnly, Failed };
const char* verdict_name(Verdict v);

struct RuleRecord {
  std::string name;
  std::string inputs;
  bool ok = false;
};

struct Certificate {
  CertifyInput input;
  Poly disc;
  Factorization disc_factorization;
  AltTest alt = AltTest::CharTwoUndecided;
  std::vector<BranchPoint> branch;
  std::vector<CycleEvidence> evidence;
  std::vector<RuleRecord> rules;
  CycleHistogram histogram;
  std::vector<std::string> trusted;
  std::vector<std::string> failures;
  std::string geometric_group;  // derived geometric group, or "" when undetermined
  std::string arithmetic_group;
  double chi2 = 0;
  int chi2_dof = 0;
  Verdict verdict = Verdict::EvidenceOnly;
};

Certificate certify_realization(const CertifyInput& in);

// Stable JSON (two-space indent).
std::string to_json(const Certificate& c);

struct Replay {
  Certificate cert;
  bool identical = false;  // same verdict and rule chain as the input JSON
};
Replay replay_certificate(const std::string& json);

}  // namespace ffgal
