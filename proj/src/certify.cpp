#include "ffgal/certify.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include <json.hpp>

#include "ffgal/grouplab.hpp"
#include "search.hpp"

namespace ffgal {

namespace {

using Type = std::vector<int>;
using nlohmann::ordered_json;

bool is_prime_int(long long n) { return n >= 2 && is_prime(static_cast<u64>(n)); }

std::string type_str(const Type& t) {
  std::string s;
  for (size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i]);
  return s;
}

Type cycle_type_of(int len, int n) {
  Type t(1, len);
  t.resize(static_cast<size_t>(n - len + 1), 1);
  return t;
}

bool is_even_type(const Type& t) {
  int s = 0;
  for (int l : t) s += l - 1;
  return s % 2 == 0;
}

long long type_order(const Type& t) {
  long long o = 1;
  for (int l : t) o = std::lcm(o, static_cast<long long>(l));
  return o;
}

Type power_type(const Type& t, long long k) {
  Type out;
  for (int l : t) {
    int g = static_cast<int>(std::gcd(static_cast<long long>(l), k));
    for (int i = 0; i < g; ++i) out.push_back(l / g);
  }
  std::sort(out.rbegin(), out.rend());
  return out;
}

// Single cycle length carried by a type, 0 when it moves points in more than one cycle.
int single_cycle(const Type& t) {
  int len = 0;
  for (int l : t)
    if (l > 1) {
      if (len) return 0;
      len = l;
    }
  return len;
}

Type evidence_type(const CycleEvidence& e, int n) {
  return e.kind == EvidenceKind::FullCycleType ? e.data : cycle_type_of(e.data.at(0), n);
}

// All cycle types of powers of the given elements.
std::set<Type> power_closure(const std::set<Type>& types) {
  std::set<Type> out;
  for (const Type& t : types) {
    long long o = type_order(t);
    for (long long k = 1; k <= o; ++k) out.insert(power_type(t, k));
  }
  return out;
}

std::set<Type> types_of(const std::vector<CycleEvidence>& ev, int n) {
  std::set<Type> s;
  for (const auto& e : ev) s.insert(evidence_type(e, n));
  return s;
}

std::set<int> cycle_lengths(const std::set<Type>& types) {
  std::set<int> out;
  for (const Type& t : types)
    if (int l = single_cycle(t)) out.insert(l);
  return out;
}

// Subset sums of a cycle type strictly between 0 and n.
std::vector<bool> subset_sums(const Type& t, int n) {
  std::vector<bool> s(static_cast<size_t>(n + 1), false);
  s[0] = true;
  for (int l : t)
    for (int v = n; v >= l; --v)
      if (s[v - l]) s[v] = true;
  return s;
}

double class_proportion(const Type& t) {
  std::map<int, int> m;
  for (int l : t) ++m[l];
  double d = 1;
  for (auto [l, k] : m) {
    for (int i = 0; i < k; ++i) d *= l;
    for (int i = 2; i <= k; ++i) d *= i;
  }
  return 1.0 / d;
}

void partitions(int n, int max, Type& cur, std::vector<Type>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (int l = std::min(n, max); l >= 1; --l) {
    cur.push_back(l);
    partitions(n - l, l, cur, out);
    cur.pop_back();
  }
}

std::string tpoly(const Poly& P) { return to_string(P, 'T'); }

FqElem root_of(const Poly& P) {
  auto rs = roots_in_extension(P, static_cast<unsigned>(P.deg()));
  if (rs.empty()) fail(Errc::Precondition, "irreducible factor without a root in its splitting field");
  return rs.front().value;
}

struct GroupState {
  std::string name;     // "S", "A", "V4", "1", or "" when undetermined
  bool at_least_an = false;
};

std::string group_label(const GroupState& g, int n) {
  if (g.name == "S" || g.name == "A") return g.name + std::to_string(n);
  if (!g.name.empty()) return g.name;
  return g.at_least_an ? ">=A" + std::to_string(n) : "";
}

}  // namespace

std::vector<CycleEvidence> cycle_from_profile(const RamProfile& profile, u64 p, const std::string& source) {
  std::vector<CycleEvidence> out;
  const Type& parts = profile.partition;
  if (parts.empty() || std::all_of(parts.begin(), parts.end(), [](int e) { return e == 1; })) return out;
  if (std::none_of(parts.begin(), parts.end(), [p](int e) { return static_cast<u64>(e) % p == 0; })) {
    out.push_back({EvidenceKind::FullCycleType, parts, source, true});
    return out;
  }
  std::set<int> seen;
  for (size_t i = 0; i < parts.size(); ++i) {
    int e = parts[i];
    if (e == 1 || !seen.insert(e).second) continue;
    if (!(static_cast<u64>(e) == p || static_cast<u64>(e) % p != 0)) continue;
    bool ok = true;
    for (size_t j = 0; j < parts.size() && ok; ++j) {
      if (j == i) continue;
      int o = parts[j];
      ok = static_cast<u64>(o) % p != 0 && std::gcd(o, e) == 1;
    }
    if (ok) out.push_back({EvidenceKind::SingleCycle, {e}, source, true});
  }
  return out;
}

CycleHistogram frobenius_sample(const BiPoly& F, int max_k, u64 samples, u64 seed, unsigned jobs) {
  if (max_k < 1) fail(Errc::InvalidParams, "max_k must be positive");
  const Poly D = disc_in_T(F);
  if (D.is_zero()) fail(Errc::Precondition, "discriminant vanishes");
  const FieldPtr& K = F.field_ptr();
  std::vector<Extension> ext;
  for (int k = 1; k <= max_k; ++k) ext.push_back(extend(K, static_cast<unsigned>(k)));

  struct Slot {
    int k = 0;
    Type type;
    u64 retries = 0;
  };
  std::vector<Slot> slots(samples);
  detail::parallel_for(samples, jobs, [&](u64 i) {
    Slot& s = slots[i];
    s.k = 1 + static_cast<int>(i % static_cast<u64>(max_k));
    const Extension& E = ext[s.k - 1];
    std::mt19937_64 rng(derive_seed(seed, i));
    FqElem t0;
    for (;;) {
      t0 = detail::random_element(E.field, rng);
      if (!eval(D, t0, *E.embedding).is_zero()) break;
      ++s.retries;
    }
    s.type = factor_degrees(specialize(F, t0));
  });

  CycleHistogram h;
  h.max_k = max_k;
  h.samples = samples;
  for (const Slot& s : slots) {
    ++h.counts[s.type];
    ++h.by_k[s.k][s.type];
    h.retries += s.retries;
  }
  return h;
}

PrimitivityResult primitivity_rules(const std::vector<CycleEvidence>& evidence, const std::vector<BranchPoint>& branch, int n,
                                    u64 p, bool transitive) {
  std::set<int> cyc = cycle_lengths(power_closure(types_of(evidence, n)));
  if (transitive && is_prime_int(n)) return {true, "transitive_prime_degree"};
  if (transitive && n <= 3) return {true, "transitive_degree_le_3"};
  if (transitive && cyc.count(n - 1)) return {true, "two_transitive_from_(n-1)-cycle"};
  if (transitive)
    for (int l : cyc)
      if (is_prime_int(l) && 2 * l > n) return {true, "prime_cycle_over_half"};

  // Two critical values: every branch point known exactly, at most two geometric points,
  // one with a single ramified critical point of prime index and the other tame.
  if (!branch.empty() && std::all_of(branch.begin(), branch.end(), [](const BranchPoint& b) { return b.exact; })) {
    std::vector<const BranchPoint*> ram;
    int points = 0;
    for (const auto& b : branch)
      if (std::any_of(b.profile.begin(), b.profile.end(), [](int e) { return e > 1; })) {
        ram.push_back(&b);
        points += b.degree;
      }
    if (points >= 1 && points <= 2) {
      for (size_t i = 0; i < ram.size(); ++i) {
        int l = single_cycle(ram[i]->profile);
        if (!l || !is_prime_int(l) || ram[i]->degree != 1) continue;
        bool other_tame = true;
        for (size_t j = 0; j < ram.size(); ++j)
          if (j != i) other_tame = other_tame && ram[j]->tame;
        if (other_tame) return {true, "two_critical_values"};
      }
    }
  }
  (void)p;
  return {false, ""};
}

const char* group_verdict_name(GroupVerdict v) {
  switch (v) {
    case GroupVerdict::ContainsAn: return "contains-A_n";
    case GroupVerdict::EqualsSn: return "equals-S_n";
    case GroupVerdict::ExceptionPossible: return "exception-possible";
    case GroupVerdict::Unknown: return "unknown";
  }
  return "?";
}

GroupConclusion group_conclusion(const std::vector<CycleEvidence>& evidence, bool primitive, int n, u64 p) {
  (void)p;
  GroupConclusion out;
  if (!primitive) {
    out.chain.push_back("primitivity not established");
    return out;
  }
  std::set<Type> types = power_closure(types_of(evidence, n));
  std::set<int> cyc = cycle_lengths(types);
  if (cyc.count(2)) {
    out.verdict = GroupVerdict::EqualsSn;
    out.chain.push_back("primitive with a transposition => S_n");
    return out;
  }
  if (cyc.count(3)) {
    out.verdict = GroupVerdict::ContainsAn;
    out.chain.push_back("primitive with a 3-cycle => contains A_n (Jordan)");
    return out;
  }
  for (int l : cyc)
    if (l <= n - 3 && is_prime_int(l)) {
      out.verdict = GroupVerdict::ContainsAn;
      out.chain.push_back("primitive with a prime " + std::to_string(l) + "-cycle fixing >= 3 points => contains A_n (Jordan)");
      return out;
    }
  for (int l : cyc)
    if (l > 1 && l <= n - 3) {
      out.verdict = GroupVerdict::ContainsAn;
      out.chain.push_back("primitive with a " + std::to_string(l) + "-cycle fixing >= 3 points => contains A_n");
      out.trusted.push_back("Jones 2014: a primitive group containing a cycle with at least 3 fixed points contains A_n");
      return out;
    }
  if (n >= 5 && cyc.count(n - 2)) {
    const int l = n - 2;
    int k = 0;
    bool mersenne = false;
    for (k = 2; k < 62; ++k)
      if ((1LL << k) - 1 == l) {
        mersenne = true;
        break;
      }
    // PGL_2(q) <= G <= PGammaL_2(q) on q + 1 points carries a (q-1)-cycle; for prime l this forces q = 2^k.
    bool prime_power_q = mersenne;
    if (!is_prime_int(l)) {
      long long q = l + 1;
      for (long long r = 2; r <= q; ++r)
        if (q % r == 0) {
          while (q % r == 0) q /= r;
          prime_power_q = q == 1;
          break;
        }
    }
    if (!prime_power_q || (mersenne && k == 2)) {
      out.verdict = GroupVerdict::ContainsAn;
      out.chain.push_back("primitive with an (n-2)-cycle, n-1 not an exceptional prime power => contains A_n");
      out.trusted.push_back("Jones 2014: primitive groups with a cycle fixing 2 points are A_n, S_n or lie between PGL_2(q) and PGammaL_2(q), n = q+1");
      if (mersenne && k == 2) out.chain.push_back("n = 5: PGL_2(4) = A_5");
      return out;
    }
    const Type elim = [&] {
      Type t{3, n - 3};
      std::sort(t.rbegin(), t.rend());
      return t;
    }();
    if (mersenne && types.count(elim)) {
      out.verdict = GroupVerdict::ContainsAn;
      out.chain.push_back("primitive with an (n-2)-cycle, n-2 = 2^" + std::to_string(k) + "-1");
      out.chain.push_back("element of type " + type_str(elim) + " excludes PGammaL_2(2^" + std::to_string(k) + ") => contains A_n");
      out.trusted.push_back("Jones 2014: primitive groups with a cycle fixing 2 points are A_n, S_n or lie between PGL_2(q) and PGammaL_2(q), n = q+1");
      out.trusted.push_back("GMPS16: PGammaL_2(2^k) on the projective line has no element of cycle type (3, 2^k-2)");
      return out;
    }
    out.verdict = GroupVerdict::ExceptionPossible;
    std::string q = mersenne ? "2^" + std::to_string(k) : std::to_string(l + 1);
    out.chain.push_back("primitive with an (n-2)-cycle; exceptional PGL_2(" + q + ") case not excluded");
    out.exceptions.push_back("PGL_2(" + q + ") <= G <= PGammaL_2(" + q + ")");
    out.trusted.push_back("Jones 2014: primitive groups with a cycle fixing 2 points are A_n, S_n or lie between PGL_2(q) and PGammaL_2(q), n = q+1");
    return out;
  }
  out.chain.push_back("no applicable cycle rule");
  return out;
}

const char* alt_test_name(AltTest a) {
  switch (a) {
    case AltTest::InsideAn: return "InsideAn";
    case AltTest::NotInsideAn: return "NotInsideAn";
    case AltTest::CharTwoUndecided: return "CharTwoUndecided";
  }
  return "?";
}

AltTest alternating_test(const Poly& disc) {
  if (disc.field().p() == 2) return AltTest::CharTwoUndecided;
  if (disc.is_zero()) fail(Errc::Precondition, "discriminant vanishes");
  Factorization fz = factor(disc);
  for (const Factor& f : fz.factors)
    if (f.mult % 2) return AltTest::NotInsideAn;
  return is_square(fz.unit) ? AltTest::InsideAn : AltTest::NotInsideAn;
}

AltTest alternating_test(const BiPoly& F) { return alternating_test(disc_in_T(F)); }

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Certified: return "CERTIFIED";
    case Verdict::EvidenceOnly: return "EVIDENCE_ONLY";
    case Verdict::Failed: return "FAILED";
  }
  return "?";
}

CertifyInput certify_input(const FamilyInstance& fi) {
  CertifyInput in;
  in.F = fi.F;
  in.cover = fi.cover;
  in.h = fi.h;
  in.claim.group = fi.expect.group;
  in.claim.n = fi.expect.n;
  in.claim.branch_primes = fi.expect.finite_branch;
  in.claim.branch_infinity = fi.expect.branch_infinity;
  in.expected_disc = fi.expect.disc;
  in.expected_disc_t_power = fi.expect.disc_t_power;
  in.expected_profile_zero = fi.expect.profile_zero;
  in.expected_profile_inf = fi.expect.profile_inf;
  if (fi.expect.trusted) in.citation = fi.expect.citation;
  return in;
}

CertifyInput certify_input(const RatCover& w, const std::string& group, const std::optional<Poly>& h) {
  CertifyInput in;
  in.cover = w;
  in.h = h;
  in.F = h ? substitute_T(cover_poly(w), *h) : cover_poly(w);
  in.claim.group = group;
  in.claim.n = w.n();
  for (const Factor& f : factor(disc_in_T(in.F)).factors) in.claim.branch_primes.push_back(f.poly);
  in.claim.branch_infinity = !h;
  return in;
}

Certificate certify_realization(const CertifyInput& in) {
  Certificate c;
  c.input = in;
  const BiPoly& F = in.F;
  const FieldPtr& K = F.field_ptr();
  const u64 p = K->p();
  const int n = F.deg_x();
  const std::string& claim = in.claim.group;
  auto rule = [&](const std::string& name, const std::string& inputs, bool ok) { c.rules.push_back({name, inputs, ok}); };
  auto fail_ = [&](const std::string& why) { c.failures.push_back(why); };

  if (claim != "S" && claim != "A" && claim != "A4@6") fail(Errc::InvalidParams, "claim group must be S, A or A4@6");
  rule("degree", "deg_X F = " + std::to_string(n) + ", claim n = " + std::to_string(in.claim.n), in.claim.n == n);
  if (in.claim.n != n) fail_("claimed degree " + std::to_string(in.claim.n) + " differs from deg_X F = " + std::to_string(n));

  c.disc = disc_in_T(F);
  if (c.disc.is_zero()) {
    fail_("discriminant vanishes: F is inseparable in X");
    c.verdict = Verdict::Failed;
    return c;
  }
  c.disc_factorization = factor(c.disc);
  c.alt = alternating_test(c.disc);
  const bool disc_const = c.disc.deg() == 0;
  bool odd_mult = false;
  for (const Factor& f : c.disc_factorization.factors) odd_mult = odd_mult || f.mult % 2;

  if (in.expected_disc) {
    bool ok = *in.expected_disc == c.disc;
    rule("expected_discriminant", tpoly(*in.expected_disc), ok);
    if (!ok) fail_("discriminant " + tpoly(c.disc) + " differs from expected " + tpoly(*in.expected_disc));
  }
  if (in.expected_disc_t_power >= 0) {
    bool ok = c.disc == c.disc.lc() * pow(Poly::x(K), static_cast<unsigned>(in.expected_disc_t_power));
    rule("expected_discriminant_shape", "unit*T^" + std::to_string(in.expected_disc_t_power), ok);
    if (!ok) fail_("discriminant is not unit*T^" + std::to_string(in.expected_disc_t_power));
  }

  // Base cover data.
  const std::optional<RatCover>& base = in.cover;
  std::vector<BranchPoint> base_branch;  // finite points of the base cover, then infinity
  std::vector<CycleEvidence> ev_base;
  RamProfile base_inf;
  bool ld_ok = false;
  if (base) {
    if (!in.h && !(cover_poly(*base) == F)) fail(Errc::InvalidParams, "F is not the polynomial of the given cover");
    if (!in.expected_profile_zero.empty()) {
      Type got = ram_profile(*base, FqElem::zero(K)).partition;
      bool ok = got == in.expected_profile_zero;
      rule("expected_profile_U=0", type_str(in.expected_profile_zero), ok);
      if (!ok) fail_("profile over U=0 is " + type_str(got));
    }
    base_inf = ram_profile_infinity(*base);
    if (!in.expected_profile_inf.empty()) {
      bool ok = base_inf.partition == in.expected_profile_inf;
      rule("expected_profile_U=inf", type_str(in.expected_profile_inf), ok);
      if (!ok) fail_("profile over U=inf is " + type_str(base_inf.partition));
    }
    const char var = in.h ? 'U' : 'T';
    Poly Db = in.h ? disc_in_T(cover_poly(*base)) : c.disc;
    ld_ok = base_inf.tame;
    std::string ld_inputs = "base infinity " + std::string(base_inf.tame ? "tame" : "wild");
    for (const Factor& f : factor(Db).factors) {
      RamProfile pr = ram_profile(*base, root_of(f.poly));
      BranchPoint b{to_string(f.poly, var), f.poly.deg(), pr.partition, pr.tame, true};
      bool ramified = std::any_of(pr.partition.begin(), pr.partition.end(), [](int e) { return e > 1; });
      if (ramified) {
        for (auto& e : cycle_from_profile(pr, p, "profile over " + std::string(1, var) + "=" + b.prime)) ev_base.push_back(e);
        if (in.h) {
          bool sf = is_squarefree(monic(compose(f.poly, *in.h)));
          ld_ok = ld_ok && sf;
          ld_inputs += "; P(h) squarefree for P = " + b.prime + ": " + (sf ? "yes" : "no");
        }
      }
      base_branch.push_back(b);
    }
    base_branch.push_back({"inf", 1, base_inf.partition, base_inf.tame, true});
    for (auto& e : cycle_from_profile(base_inf, p, "profile over " + std::string(1, var) + "=inf")) ev_base.push_back(e);
    if (in.h) rule("linear_disjointness", ld_inputs, ld_ok);
  }
  const bool structure = base && (!in.h || ld_ok);

  // Branch data of F itself.
  std::set<std::string> claimed;
  for (const Poly& P : in.claim.branch_primes) claimed.insert(tpoly(monic(P)));
  bool branch_ok = true;
  for (const Factor& f : c.disc_factorization.factors) {
    const std::string name = tpoly(f.poly);
    BranchPoint b{name, f.poly.deg(), {}, true, false};
    if (base) {
      FqElem beta = root_of(f.poly);
      bool simple = true;
      if (in.h) {
        const Embedding& em = embedding_to(K, beta.field());
        simple = !eval(derivative(*in.h), beta, em).is_zero();
        beta = eval(*in.h, beta, em);
      }
      if (simple) {
        RamProfile pr = ram_profile(*base, beta);
        b.profile = pr.partition;
        b.tame = pr.tame;
        b.exact = true;
      }
    }
    bool ramified = !b.exact || std::any_of(b.profile.begin(), b.profile.end(), [](int e) { return e > 1; });
    if (ramified && !claimed.count(name)) {
      if (b.exact) {
        fail_("ramified over unclaimed prime " + name);
      } else {
        branch_ok = false;
        rule("branch_discharged", name + ": profile unknown and not claimed", false);
      }
    }
    c.branch.push_back(b);
  }
  {
    BranchPoint b{"inf", 1, {}, true, false};
    if (base && !in.h) {
      b.profile = base_inf.partition;
      b.tame = base_inf.tame;
      b.exact = true;
    } else if (base) {
      long long l = type_order(base_inf.partition);
      bool un = base_inf.tame && in.h->deg() % l == 0;
      rule("infinity_unramified_after_substitution", "base infinity " + type_str(base_inf.partition) + ", deg h = " + std::to_string(in.h->deg()),
           un);
      if (un) {
        b.profile.assign(static_cast<size_t>(n), 1);
        b.exact = true;
      }
    }
    bool ramified = !b.exact || std::any_of(b.profile.begin(), b.profile.end(), [](int e) { return e > 1; });
    if (ramified && !in.claim.branch_infinity) {
      if (b.exact) {
        fail_("ramified over infinity, which the claim excludes");
      } else {
        branch_ok = false;
        rule("branch_discharged", "inf: profile unknown and not claimed", false);
      }
    }
    c.branch.push_back(b);
  }
  rule("branch_claim", "finite " + std::to_string(claimed.size()) + (in.claim.branch_infinity ? " + inf" : ""), branch_ok && c.failures.empty());

  // Geometric evidence: base profiles when the group transfers, else only the transported finite profiles.
  std::vector<CycleEvidence> evG;
  if (structure) {
    evG = ev_base;
  } else if (base) {
    for (const auto& b : c.branch)
      if (b.prime != "inf" && b.exact) {
        RamProfile pr;
        pr.partition = b.profile;
        pr.tame = b.tame;
        for (auto& e : cycle_from_profile(pr, p, "profile over T=" + b.prime)) evG.push_back(e);
      }
  }

  c.histogram = frobenius_sample(F, in.max_k, in.samples, in.seed, in.jobs);
  std::vector<CycleEvidence> evS;
  for (const auto& [k, m] : c.histogram.by_k)
    for (const auto& [t, cnt] : m) {
      bool dup = std::any_of(evS.begin(), evS.end(), [&](const CycleEvidence& e) { return e.data == t; });
      if (!dup) evS.push_back({EvidenceKind::FullCycleType, t, "frobenius k=" + std::to_string(k), false});
    }

  std::set<Type> typesG = power_closure(types_of(evG, n));
  std::vector<CycleEvidence> evA = evG;
  evA.insert(evA.end(), evS.begin(), evS.end());
  std::set<Type> typesA = power_closure(types_of(evA, n));

  c.evidence = evG;
  c.evidence.insert(c.evidence.end(), evS.begin(), evS.end());
  {
    std::set<int> direct;
    for (const auto& e : c.evidence)
      if (int l = single_cycle(evidence_type(e, n))) direct.insert(l);
    auto derive = [&](const std::vector<CycleEvidence>& from, bool geo) {
      for (const auto& e : from) {
        Type t = evidence_type(e, n);
        long long o = type_order(t);
        for (long long k = 2; k < o; ++k) {
          int l = single_cycle(power_type(t, k));
          if (l && direct.insert(l).second)
            c.evidence.push_back({EvidenceKind::SingleCycle, {l}, "power " + std::to_string(k) + " of " + type_str(t) + " (" + e.source + ")", geo});
        }
      }
    };
    derive(evG, true);
    derive(evS, false);
  }

  bool odd_sample = false, even_sample = false;
  for (const auto& [t, cnt] : c.histogram.counts) (is_even_type(t) ? even_sample : odd_sample) = true;

  if (claim == "A4@6") {
    PermGroup A4 = alternating_group(4);
    PermGroup C = coset_action(A4, PermGroup(4, {parse_perm("(1 2)(3 4)", 4)}));
    std::set<Type> allowed;
    for (const Perm& g : C.elements()) allowed.insert(g.cycle_type());
    bool ok = true;
    for (const auto& [t, cnt] : c.histogram.counts)
      if (!allowed.count(t)) {
        ok = false;
        fail_("sampled type " + type_str(t) + " is not in A_4 acting on 6 points");
      }
    rule("sample_types_in_claim", "A_4 on cosets of a Klein involution", ok);
    c.trusted.push_back(in.citation.empty() ? "external result for A_4 on 6 points" : in.citation);
    c.verdict = c.failures.empty() ? Verdict::EvidenceOnly : Verdict::Failed;
    return c;
  }

  // Geometric group.
  GroupState G, A;
  const bool transG = structure;
  rule("geometric_transitivity",
       !base ? "no cover" : (structure ? "F linear in the cover parameter with gcd(f, c) = 1" : "substitution not known to be linearly disjoint"),
       transG);
  PrimitivityResult primG = primitivity_rules(evG, structure ? base_branch : std::vector<BranchPoint>{}, n, p, transG);
  rule("geometric_primitivity", primG.rule, primG.primitive);

  const bool G_odd = std::any_of(typesG.begin(), typesG.end(), [](const Type& t) { return !is_even_type(t); }) ||
                     (p != 2 && odd_mult);
  const bool G_even = p != 2 && !odd_mult;
  rule("geometric_parity", G_even ? "all disc multiplicities even" : (p == 2 ? "char 2" : "odd disc multiplicity"), true);

  if (structure && transG) {
    bool all_tame = std::all_of(base_branch.begin(), base_branch.end(), [](const BranchPoint& b) { return b.tame; });
    int finite_ram = 0;
    bool all_transp = true, all_three = true;
    for (const auto& b : base_branch) {
      if (b.prime == "inf") continue;
      if (single_cycle(b.profile) == 0 && std::all_of(b.profile.begin(), b.profile.end(), [](int e) { return e == 1; })) continue;
      ++finite_ram;
      all_transp = all_transp && b.profile == cycle_type_of(2, n);
      all_three = all_three && b.profile == cycle_type_of(3, n);
    }
    if (all_tame && finite_ram > 0 && (all_transp || all_three)) {
      G.name = all_transp ? "S" : "A";
      G.at_least_an = true;
      rule("tame_inertia_generation", std::string("all branch points tame; finite inertia generated by ") + (all_transp ? "transpositions" : "3-cycles"),
           true);
    }
  }
  GroupConclusion gcG = group_conclusion(evG, primG.primitive, n, p);
  if (gcG.verdict == GroupVerdict::ExceptionPossible) {
    std::vector<CycleEvidence> more = evG;
    Type elim{3, n - 3};
    std::sort(elim.rbegin(), elim.rend());
    if (typesA.count(elim)) more.push_back({EvidenceKind::FullCycleType, elim, "arithmetic element normalizing G", false});
    gcG = group_conclusion(more, primG.primitive, n, p);
  }
  if (G.name.empty()) {
    for (const auto& s : gcG.chain) rule("geometric_group", s, gcG.verdict == GroupVerdict::ContainsAn || gcG.verdict == GroupVerdict::EqualsSn);
    c.trusted.insert(c.trusted.end(), gcG.trusted.begin(), gcG.trusted.end());
    if (gcG.verdict == GroupVerdict::EqualsSn) {
      G = {"S", true};
    } else if (gcG.verdict == GroupVerdict::ContainsAn) {
      G.at_least_an = true;
    } else if (transG && n == 3) {
      G.at_least_an = true;
      rule("geometric_order_rule", "transitive of degree 3", true);
    } else if (transG && n == 4 && std::any_of(typesG.begin(), typesG.end(), [](const Type& t) { return type_order(t) % 3 == 0; })) {
      G.at_least_an = true;
      rule("geometric_order_rule", "transitive of degree 4 with an element of order 3", true);
    }
    if (G.at_least_an && G.name.empty()) {
      if (G_odd) G.name = "S";
      else if (G_even) G.name = "A";
    }
  }
  if (G.name == "S" && G_even) fail_("geometric group derived as S_n but the discriminant is a square over the closure");
  if (G.name == "A" && G_odd) fail_("geometric group derived as A_n but odd geometric evidence exists");

  // Arithmetic group.
  bool transA = transG;
  if (!transA) {
    std::vector<bool> common(static_cast<size_t>(n + 1), true);
    for (const Type& t : typesA) {
      auto s = subset_sums(t, n);
      for (int v = 1; v < n; ++v) common[v] = common[v] && s[v];
    }
    transA = !typesA.empty();
    for (int v = 1; v < n; ++v) transA = transA && !common[v];
    rule("arithmetic_transitivity", "no proper factor degree fits every sampled type", transA);
  }
  PrimitivityResult primA = primG.primitive ? PrimitivityResult{true, "contains a primitive geometric group"}
                                           : primitivity_rules(evA, {}, n, p, transA);
  rule("arithmetic_primitivity", primA.rule, primA.primitive);
  rule("alternating_test", alt_test_name(c.alt), c.alt != AltTest::CharTwoUndecided);

  auto settle_from_parity = [&](GroupState& g) {
    if (!g.at_least_an || !g.name.empty()) return;
    if (c.alt == AltTest::InsideAn) g.name = "A";
    else if (c.alt == AltTest::NotInsideAn || odd_sample) g.name = "S";
  };
  if (G.name == "S") {
    A = {"S", true};
  } else if (G.at_least_an) {
    A.at_least_an = true;
    settle_from_parity(A);
    if (A.name == "A" && G.name.empty()) {
      G.name = "A";
      rule("arithmetic_squeeze", "A_n <= G <= A <= A_n", true);
    }
  } else {
    GroupConclusion gcA = group_conclusion(evA, primA.primitive, n, p);
    for (const auto& s : gcA.chain) rule("arithmetic_group", s, gcA.verdict == GroupVerdict::ContainsAn || gcA.verdict == GroupVerdict::EqualsSn);
    c.trusted.insert(c.trusted.end(), gcA.trusted.begin(), gcA.trusted.end());
    if (gcA.verdict == GroupVerdict::EqualsSn) {
      A = {"S", true};
    } else if (gcA.verdict == GroupVerdict::ContainsAn) {
      A.at_least_an = true;
    } else if (transA && (n == 3 || (n == 4 && std::any_of(typesA.begin(), typesA.end(), [](const Type& t) { return type_order(t) % 3 == 0; })))) {
      A.at_least_an = true;
      rule("arithmetic_order_rule", n == 3 ? "transitive of degree 3" : "transitive of degree 4 with an element of order 3", true);
    }
    settle_from_parity(A);
  }

  // G is normal in A with cyclic quotient; samples at k divisible by [A : H] lie in H.
  if (G.name.empty() && !A.name.empty()) {
    struct Cand {
      std::string name;
      int index;
    };
    // Cycle types occurring in each candidate, as a predicate.
    auto holds = [&](const std::string& h, const Type& t) {
      if (h == "S") return true;
      if (h == "A") return is_even_type(t);
      if (h == "V4") return t == Type{1, 1, 1, 1} || t == Type{2, 2};
      return single_cycle(t) == 0 && type_order(t) == 1;
    };
    std::vector<Cand> cand;
    if (A.name == "S") cand = {{"S", 1}, {"A", 2}};
    else if (n >= 5) cand = {{"A", 1}};
    else if (n == 4) cand = {{"A", 1}, {"V4", 3}};
    else if (n == 3) cand = {{"A", 1}, {"1", 3}};
    std::vector<std::string> why;
    std::vector<Cand> keep;
    for (const auto& h : cand) {
      std::string out;
      if (h.name == "A" && G_odd) out = "G has odd elements";
      if (h.name == "S" && G_even) out = "disc is a square over the closure";
      if (h.name == "1" && (transG || std::any_of(typesG.begin(), typesG.end(), [](const Type& t) { return type_order(t) > 1; })))
        out = "G is nontrivial";
      for (const Type& t : typesG)
        if (out.empty() && !holds(h.name, t)) out = "geometric type " + type_str(t) + " lies outside";
      // Only infinity ramifies: G is generated by its elements of p-power order.
      if (out.empty() && disc_const && transG) {
        bool quasi_p = false;
        if (h.name == "S") quasi_p = p == 2;
        else if (h.name == "A") quasi_p = (n >= 5 && static_cast<u64>(n) >= p) || (n == 4 && (p == 2 || p == 3)) || (n == 3 && p == 3);
        else if (h.name == "V4") quasi_p = p == 2;
        if (!quasi_p) out = "ramified only over infinity but not generated by p-elements";
      }
      for (const auto& [k, m] : c.histogram.by_k) {
        if (k % h.index) continue;
        for (const auto& [t, cnt] : m)
          if (out.empty() && !holds(h.name, t)) out = "sample " + type_str(t) + " at k=" + std::to_string(k) + " lies outside";
      }
      if (out.empty()) keep.push_back(h);
      else why.push_back(h.name + ": " + out);
    }
    std::string inputs = "A = " + group_label(A, n) + "; eliminated";
    for (const auto& w : why) inputs += " [" + w + "]";
    rule("normal_subgroup_squeeze", inputs, keep.size() == 1);
    if (keep.size() == 1) {
      G.name = keep[0].name;
      G.at_least_an = G.name == "S" || G.name == "A";
    }
  }

  c.geometric_group = group_label(G, n);
  c.arithmetic_group = group_label(A, n);

  // Claim checks.
  auto contradicts = [&](const GroupState& g) { return (g.name == "S" || g.name == "A" || g.name == "V4" || g.name == "1") && g.name != claim; };
  if (in.claim.geometric && contradicts(G)) fail_("geometric group is " + c.geometric_group + ", not the claimed group");
  if (contradicts(A)) fail_("arithmetic group is " + c.arithmetic_group + ", not the claimed group");
  if (claim == "A") {
    if (odd_sample) fail_("odd Frobenius type sampled for an A_n claim");
    if (c.alt == AltTest::NotInsideAn) fail_("discriminant is not a square for an A_n claim");
  }
  bool parities = claim != "S" || (odd_sample && even_sample);
  if (claim == "S") rule("both_parities_sampled", std::string("even ") + (even_sample ? "yes" : "no") + ", odd " + (odd_sample ? "yes" : "no"), parities);

  // Diagnostics.
  {
    std::vector<Type> parts;
    Type cur;
    if (n <= 16) partitions(n, n, cur, parts);
    double total = static_cast<double>(c.histogram.samples);
    double chi = 0, rest = 0;
    int cells = 0;
    for (const Type& t : parts) {
      double pr = class_proportion(t);
      if (claim == "A") pr = is_even_type(t) ? 2 * pr : 0;
      double e = pr * total;
      auto it = c.histogram.counts.find(t);
      double o = it == c.histogram.counts.end() ? 0 : static_cast<double>(it->second);
      if (e >= 5) {
        chi += (o - e) * (o - e) / e;
        ++cells;
      } else {
        rest += e;
        rest -= o;
      }
    }
    c.chi2 = chi;
    c.chi2_dof = std::max(cells - 1, 0);
  }

  bool closed = A.name == claim && (!in.claim.geometric || G.name == claim) && branch_ok && parities;
  if (!closed && !in.citation.empty()) c.trusted.push_back("trusted external result: " + in.citation);
  if (!c.failures.empty()) c.verdict = Verdict::Failed;
  else if (closed && !(p == 2 && claim == "A")) c.verdict = Verdict::Certified;
  else c.verdict = Verdict::EvidenceOnly;
  if (p == 2 && claim == "A" && c.verdict != Verdict::Failed) {
    rule("char_two_cap", "A_n claims in characteristic 2 rest on external results", false);
    if (in.citation.empty()) c.trusted.push_back("trusted external result: char 2 A_n containment");
    else if (closed) c.trusted.push_back("trusted external result: " + in.citation);
  }
  return c;
}

namespace {

ordered_json types_json(const std::map<Type, u64>& m) {
  ordered_json a = ordered_json::array();
  for (const auto& [t, cnt] : m) a.push_back({{"type", t}, {"count", cnt}});
  return a;
}

ordered_json poly_or_null(const std::optional<Poly>& p, char var) {
  if (!p) return nullptr;
  return to_string(*p, var);
}

ordered_json rules_json(const std::vector<RuleRecord>& rules) {
  ordered_json a = ordered_json::array();
  for (const auto& r : rules) a.push_back({{"name", r.name}, {"inputs", r.inputs}, {"ok", r.ok}});
  return a;
}

}  // namespace

std::string to_json(const Certificate& c) {
  const CertifyInput& in = c.input;
  const FieldPtr& K = in.F.field_ptr();
  ordered_json j;
  j["version"] = 1;
  ordered_json claim;
  claim["group"] = in.claim.group;
  claim["n"] = in.claim.n;
  claim["geometric"] = in.claim.geometric;
  claim["branch_primes"] = ordered_json::array();
  for (const Poly& P : in.claim.branch_primes) claim["branch_primes"].push_back(to_string(P, 'T'));
  claim["branch_infinity"] = in.claim.branch_infinity;
  j["claim"] = claim;
  j["field"] = {{"p", K->p()}, {"nu", K->nu()}, {"modulus", K->modulus()}};
  j["polys"] = {{"F", to_string(in.F)},
                {"f", in.cover ? ordered_json(to_string(in.cover->f, 'X')) : ordered_json(nullptr)},
                {"c", in.cover ? ordered_json(to_string(in.cover->c, 'X')) : ordered_json(nullptr)},
                {"h", poly_or_null(in.h, 'T')}};
  j["expected"] = {{"disc", poly_or_null(in.expected_disc, 'T')},
                   {"disc_t_power", in.expected_disc_t_power},
                   {"profile_zero", in.expected_profile_zero},
                   {"profile_inf", in.expected_profile_inf},
                   {"citation", in.citation}};
  ordered_json br = ordered_json::array();
  for (const auto& b : c.branch)
    br.push_back({{"prime", b.prime}, {"degree", b.degree}, {"profile", b.profile}, {"tame", b.tame}, {"exact", b.exact}});
  j["branch"] = br;
  ordered_json ev = ordered_json::array();
  for (const auto& e : c.evidence)
    ev.push_back({{"kind", e.kind == EvidenceKind::FullCycleType ? "full-cycle-type" : "single-cycle"},
                  {"data", e.data},
                  {"source", e.source},
                  {"geometric", e.geometric}});
  j["evidence"] = ev;
  j["rules"] = rules_json(c.rules);
  j["groups"] = {{"geometric", c.geometric_group}, {"arithmetic", c.arithmetic_group}};
  ordered_json fz = ordered_json::array();
  for (const Factor& f : c.disc_factorization.factors) fz.push_back({{"prime", to_string(f.poly, 'T')}, {"mult", f.mult}});
  bool pp = c.disc_factorization.factors.size() == 1;
  j["arithmetic"] = {{"disc", to_string(c.disc, 'T')},
                     {"disc_factorization", fz},
                     {"unit", c.disc_factorization.unit.to_string()},
                     {"square_class", alt_test_name(c.alt)},
                     {"prime_power", pp}};
  ordered_json by_k = ordered_json::object();
  for (const auto& [k, m] : c.histogram.by_k) by_k[std::to_string(k)] = types_json(m);
  j["sampling"] = {{"max_k", c.histogram.max_k},
                   {"samples", c.histogram.samples},
                   {"histogram", types_json(c.histogram.counts)},
                   {"by_k", by_k},
                   {"diagnostics", {{"chi2", c.chi2}, {"dof", c.chi2_dof}, {"retries", c.histogram.retries}}}};
  j["trusted"] = c.trusted;
  j["failures"] = c.failures;
  j["seed"] = in.seed;
  j["verdict"] = verdict_name(c.verdict);
  return j.dump(2);
}

Replay replay_certificate(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    fail(Errc::Parse, std::string("certificate JSON: ") + e.what());
  }
  try {
    FieldPtr K = make_field(j.at("field").at("p").get<u64>(), j.at("field").at("nu").get<unsigned>());
    if (K->modulus() != j.at("field").at("modulus").get<std::vector<u64>>())
      fail(Errc::Parse, "certificate field modulus differs from the canonical modulus");
    CertifyInput in;
    const auto& polys = j.at("polys");
    in.F = parse_bipoly(K, polys.at("F").get<std::string>());
    if (!polys.at("f").is_null())
      in.cover = RatCover::general(parse_poly(K, polys.at("f").get<std::string>(), 'X'), parse_poly(K, polys.at("c").get<std::string>(), 'X'));
    if (!polys.at("h").is_null()) in.h = parse_poly(K, polys.at("h").get<std::string>(), 'T');
    const auto& cl = j.at("claim");
    in.claim.group = cl.at("group").get<std::string>();
    in.claim.n = cl.at("n").get<int>();
    in.claim.geometric = cl.at("geometric").get<bool>();
    for (const auto& s : cl.at("branch_primes")) in.claim.branch_primes.push_back(parse_poly(K, s.get<std::string>(), 'T'));
    in.claim.branch_infinity = cl.at("branch_infinity").get<bool>();
    const auto& ex = j.at("expected");
    if (!ex.at("disc").is_null()) in.expected_disc = parse_poly(K, ex.at("disc").get<std::string>(), 'T');
    in.expected_disc_t_power = ex.at("disc_t_power").get<int>();
    in.expected_profile_zero = ex.at("profile_zero").get<std::vector<int>>();
    in.expected_profile_inf = ex.at("profile_inf").get<std::vector<int>>();
    in.citation = ex.at("citation").get<std::string>();
    in.max_k = j.at("sampling").at("max_k").get<int>();
    in.samples = j.at("sampling").at("samples").get<u64>();
    in.seed = j.at("seed").get<u64>();
    Replay r;
    r.cert = certify_realization(in);
    r.identical = verdict_name(r.cert.verdict) == j.at("verdict").get<std::string>() && rules_json(r.cert.rules) == j.at("rules");
    return r;
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::Parse, std::string("certificate JSON: ") + e.what());
  }
}

}  // namespace ffgal
