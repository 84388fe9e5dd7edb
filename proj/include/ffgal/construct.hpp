#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ffgal/cover.hpp"

namespace ffgal {

struct SearchBudget {
  u64 max_candidates = u64{1} << 20;
  u64 seed = 1;
  double time_hint = 0;  // seconds; advisory only, never consulted by searches
  unsigned jobs = 1;
};

// Integer helpers.
std::vector<u64> prime_divisors(u64 n);
u64 rad(u64 n);
u64 rad_prime(u64 n);  // 2 rad(n) when 4 | n, else rad(n)
int omega(u64 n);      // number of distinct prime divisors
int valuation(u64 n, u64 l);
int jacobi(long long a, long long n);  // n odd positive

struct MorseCheck {
  bool morse = false;
  std::string reason;
};
MorseCheck is_morse(const Poly& f);

// Monic f of degree n with f' irreducible, from a seeded random irreducible f'/n.
Poly morse_with_irreducible_derivative(const FieldPtr& F, int n, const SearchBudget& budget = {});

struct MorseCount {
  u64 count = 0;                   // Morse with irreducible derivative
  u64 total = 0;                   // q^n
  u64 derivative_irreducible = 0;  // f' irreducible, Morse or not
  double main_term = 0;            // q^n / (n - 1)
  double ratio = 0;
};
MorseCount count_morse_irred_disc(const FieldPtr& F, int n, unsigned jobs = 1);

enum class CoverCase { I, II };

struct HcContext {
  Poly c;
  CoverCase kase = CoverCase::I;
  Poly pi, psi;  // reduced mod c^2
  Poly c2;
  std::vector<Poly> primes;  // irreducible factors of c
};

Poly pi_c(const Poly& c);
Poly psi_c(const Poly& c, CoverCase kase);
HcContext make_hc_context(const Poly& c, CoverCase kase);
bool in_psi_Hc(const Poly& g, const HcContext& ctx);

struct FindGResult {
  Poly g;
  u64 index = 0;  // enumeration index of the accepted candidate
  bool bound_held = false;
};
// Monic irreducible g of degree n+m-1 (case I) or (n+m-1)/2 (case II), coprime to c, in psi_c H_c.
FindGResult find_g(const Poly& c, int n, CoverCase kase, const SearchBudget& budget = {});
// Whether q^{(n-m-1)/2} > 2m+1 (case I) or q^{(n-3m-1)/4} > 2m+1 (case II).
bool find_g_bound(const BigInt& q, int n, int m, CoverCase kase);

// Monic f of degree n with f'c - fc' = scale * g (or scale * g^2), gcd(f, c) = 1.
Poly solve_f_from_g(const Poly& g, const Poly& c, int n, const FqElem& scale, bool squared = false);

enum class Target { SN, AN };
const char* target_name(Target t);

struct Clause {
  std::string name;
  bool ok = false;
  std::string detail;
};
std::vector<Clause> tame_cover_hypotheses(const FieldPtr& F, int n, int m, Target t);

struct TameCover {
  Target target = Target::SN;
  RatCover w;
  Poly g;
  BiPoly F;  // f - T c, monic in X
  PrimePowerDisc disc;
  bool bound_held = false;
  bool disc_square = false;   // disc_in_T is a square in F_q(T)
  bool delta_square = false;  // square class of delta, computed from n, m and disc(c)
  u64 seed = 0;
};
// Throws HypothesisViolated naming the first failed clause.
TameCover build_tame_cover(const FieldPtr& F, int n, int m, Target t, const SearchBudget& budget = {});
bool delta_is_square(const FieldPtr& F, int n, const Poly& c);

enum class HStrategy { Auto, Case3, Case4, Case5, Brute };
HStrategy parse_hstrategy(const std::string& s);
const char* hstrategy_name(HStrategy s);

struct HResult {
  Poly h;
  HStrategy used = HStrategy::Brute;
  std::string detail;
};
// Applicability of a constructive strategy for an irreducible of degree d over F_q; reason on failure.
bool h_case_applicable(HStrategy s, const BigInt& q, int d, int e, std::string* why = nullptr);
// h with e | deg h and Fp(h) irreducible; Fp is a polynomial in T.
HResult h_search(const Poly& Fp, int e, HStrategy strategy, const SearchBudget& budget = {});

struct Eliminated {
  BiPoly G;
  Poly disc;
  Poly prime;
  int r = 0;
  FqElem unit;
};
// G = F(h, X), checking that its discriminant is unit * P(h)^r for the single prime P of disc(F).
Eliminated eliminate_infinity(const BiPoly& F, int e, const Poly& h);

// h of degree d (possibly non-monic) with h and h - b irreducible.
Poly twin_irreducible_search(const FieldPtr& F, int d, const FqElem& b, const SearchBudget& budget = {});
// b = (1 - 1/n)^n - (1 - 1/n)^{n-1}, the finite nonzero critical value of X^n - X^{n-1}.
FqElem trinomial_b(const FieldPtr& F, int n);

struct FamilySpec {
  std::string name;
  std::map<std::string, long long> params;
};
FamilySpec parse_family(const std::string& text);
std::string to_string(const FamilySpec& s);
std::vector<std::string> family_names();

struct Expected {
  std::string group;  // "S", "A", or "A4@6" (A_4 acting on 6 points)
  int n = 0;
  std::optional<Poly> disc;
  int disc_t_power = -1;           // disc = unit * T^k when >= 0
  std::vector<Poly> finite_branch;  // claimed finite branch primes
  bool branch_infinity = false;
  std::vector<int> profile_zero, profile_inf;  // empty when not asserted
  bool trusted = false;                         // geometric group is taken from an external result
  std::string citation;
  std::string notes;
};

struct FamilyInstance {
  FamilySpec spec;
  FieldPtr field;
  BiPoly F;
  std::optional<RatCover> cover;  // base cover f - U c when the family has one
  std::optional<Poly> h;          // F = (f - U c)(U = h); absent when F is the cover itself
  Expected expect;
};
FamilyInstance family(const FamilySpec& spec);
// Square test over F_p for the an_p1 discriminant constant with NU = 1.
bool an_p1_residue_ok(u64 p, long long a);

}  // namespace ffgal
