#include "ffgal/construct.hpp"

#include <numeric>

#include "search.hpp"

namespace ffgal {

HStrategy parse_hstrategy(const std::string& s) {
  if (s == "auto") return HStrategy::Auto;
  if (s == "case3") return HStrategy::Case3;
  if (s == "case4") return HStrategy::Case4;
  if (s == "case5") return HStrategy::Case5;
  if (s == "brute") return HStrategy::Brute;
  fail(Errc::Parse, "unknown strategy '" + s + "'");
}

const char* hstrategy_name(HStrategy s) {
  switch (s) {
    case HStrategy::Auto: return "auto";
    case HStrategy::Case3: return "case3";
    case HStrategy::Case4: return "case4";
    case HStrategy::Case5: return "case5";
    case HStrategy::Brute: return "brute";
  }
  return "?";
}

namespace {

bool divides(u64 a, const BigInt& b) { return b % a == 0; }

BigInt cohen_bound(u64 d, u64 e) {
  BigInt t = (BigInt(1) << omega(e)) - 1;
  BigInt dm = BigInt(d) - 1;
  return dm * dm * t * t;
}

// Arithmetic in K = F_q[T]/(P) for a monic irreducible P.
struct Residue {
  Poly P;
  BigInt Q;  // |K|

  explicit Residue(Poly p) : P(std::move(p)), Q(pow(P.field_ptr()->order(), static_cast<unsigned>(P.deg()))) {}

  bool is_power(const Poly& a, u64 k) const {
    BigInt g = gcd(BigInt(k), Q - 1);
    return powmod(a, (Q - 1) / g, P).is_one();
  }

  // X^e - a irreducible over K (Lang's criterion): a is no l-th power for l | e, and a is not in -4K^4 when 4 | e.
  bool binomial_irreducible(const Poly& a, u64 e) const {
    if (a.is_zero()) return e == 1;
    for (u64 l : prime_divisors(e))
      if (is_power(a, l)) return false;
    if (e % 4 == 0 && P.field_ptr()->p() != 2) {
      Poly m = rem(a * Poly::constant(-FqElem::from_int(P.field_ptr(), 4).inverse()), P);
      if (is_power(m, 4)) return false;
    }
    return true;
  }
};

Poly T_of(const FieldPtr& F) { return Poly::x(F); }

HResult constructive_case3(const Poly& P, int e) {
  const FieldPtr& F = P.field_ptr();
  if (P == T_of(F)) {
    // alpha = 0 is an l-th power for every l, so no scaling works; P(h) = h for P = T
    for (u64 k = 0;; ++k) {
      Poly R = detail::poly_from_index(F, e, k);
      if (is_irreducible(R)) return {R, HStrategy::Case3, "P = T: h = R with R irreducible"};
    }
  }
  Residue K(P);
  Poly alpha = rem(T_of(F), P);
  for (u64 i = 1; i < F->order_u64(); ++i) {
    FqElem c(F, F->element_at(i));
    if (K.binomial_irreducible(rem(c * alpha, P), static_cast<u64>(e)))
      return {Poly::monomial(c.inverse(), e), HStrategy::Case3, "h = c^-1 T^e with c = " + c.to_string()};
  }
  fail(Errc::SearchFailed, "case3 found no admissible constant");
}

HResult constructive_case4(const Poly& P, int e) {
  const FieldPtr& F = P.field_ptr();
  if (P.deg() == 1) {
    // P(h) = h - beta; any shifted monic irreducible of degree e works
    FqElem beta = -P.coeff(0);
    for (u64 k = 0;; ++k) {
      Poly R = detail::poly_from_index(F, e, k);
      if (is_irreducible(R)) return {R + Poly::constant(beta), HStrategy::Case4, "h = R + beta with R irreducible"};
    }
  }
  Residue K(P);
  Poly alpha = rem(T_of(F), P);
  for (u64 i = 0; i < F->order_u64(); ++i) {
    FqElem c(F, F->element_at(i));
    if (K.binomial_irreducible(rem(alpha + Poly::constant(c), P), static_cast<u64>(e)))
      return {Poly::monomial(FqElem::one(F), e) - Poly::constant(c), HStrategy::Case4, "h = T^e - c with c = " + c.to_string()};
  }
  fail(Errc::SearchFailed, "case4 found no admissible shift");
}

HResult constructive_case5(const Poly& P, int e) {
  const int s = valuation(static_cast<u64>(e), 2);
  if (s <= 1) {
    HResult r = constructive_case4(P, e);
    r.used = HStrategy::Case5;
    return r;
  }
  const FieldPtr& F = P.field_ptr();
  Poly cur = P, h = T_of(F);
  for (int i = 0; i < s - 1; ++i) {
    Poly hi = constructive_case4(cur, 2).h;
    cur = monic(compose(cur, hi));
    h = compose(h, hi);
  }
  Poly last = constructive_case4(cur, e >> (s - 1)).h;
  h = compose(h, last);
  return {h, HStrategy::Case5, std::to_string(s - 1) + " quadratic steps, then degree " + std::to_string(e >> (s - 1))};
}

HResult brute(const Poly& P, int e, const SearchBudget& budget) {
  const FieldPtr& F = P.field_ptr();
  const u64 q = F->order_u64();
  BigInt space = pow(BigInt(q), static_cast<unsigned>(e));
  u64 limit = space < budget.max_candidates ? static_cast<u64>(space) : budget.max_candidates;
  auto idx = detail::least_index(limit, budget.jobs, [&](u64 k) { return is_irreducible(compose(P, detail::poly_from_index(F, e, k))); });
  if (!idx) fail(Errc::BudgetExhausted, "no h of degree " + std::to_string(e) + " within budget");
  return {detail::poly_from_index(F, e, *idx), HStrategy::Brute, "candidate index " + std::to_string(*idx)};
}

}  // namespace

bool h_case_applicable(HStrategy s, const BigInt& q, int d, int e, std::string* why) {
  auto no = [&](const std::string& w) {
    if (why) *why = w;
    return false;
  };
  if (d < 1 || e < 1) return no("degrees must be positive");
  const u64 ue = static_cast<u64>(e), ud = static_cast<u64>(d);
  switch (s) {
    case HStrategy::Auto:
    case HStrategy::Brute:
      return true;
    case HStrategy::Case3:
      if (!divides(rad_prime(ue), q - 1)) return no("rad'(e) does not divide q-1");
      if (std::gcd(ud, ue) != 1) return no("gcd(d, e) != 1");
      return true;
    case HStrategy::Case4:
      for (u64 l : prime_divisors(ud))
        if (!divides(rad_prime(ue), pow(q, static_cast<unsigned>(l)) - 1))
          return no("rad'(e) does not divide q^" + std::to_string(l) + "-1");
      if (q < cohen_bound(ud, ue)) return no("q < (d-1)^2 (2^omega(e)-1)^2");
      return true;
    case HStrategy::Case5: {
      if (!divides(rad(ue), q - 1)) return no("rad(e) does not divide q-1");
      int v = valuation(ue, 2);
      u64 dd = (u64{1} << std::max(v - 1, 0)) * ud;
      if (q < cohen_bound(dd, ue)) return no("q < (2^max(v2(e)-1,0) d - 1)^2 (2^omega(e)-1)^2");
      return true;
    }
  }
  return no("unknown strategy");
}

HResult h_search(const Poly& Fp, int e, HStrategy strategy, const SearchBudget& budget) {
  if (Fp.deg() < 1 || !is_irreducible(Fp)) fail(Errc::Precondition, "h_search needs an irreducible polynomial");
  if (e < 1) fail(Errc::Precondition, "h_search needs e >= 1");
  const Poly P = monic(Fp);
  const FieldPtr& F = P.field_ptr();
  const BigInt& q = F->order();
  const int d = P.deg();
  auto run = [&](HStrategy s) -> HResult {
    switch (s) {
      case HStrategy::Case3: return constructive_case3(P, e);
      case HStrategy::Case4: return constructive_case4(P, e);
      case HStrategy::Case5: return constructive_case5(P, e);
      default: return brute(P, e, budget);
    }
  };
  HResult out;
  if (strategy == HStrategy::Auto) {
    bool found = false;
    for (HStrategy s : {HStrategy::Case3, HStrategy::Case4, HStrategy::Case5}) {
      if (!h_case_applicable(s, q, d, e)) continue;
      try {
        out = run(s);
        found = true;
        break;
      } catch (const Error& err) {
        if (err.code() != Errc::SearchFailed) throw;
      }
    }
    if (!found) out = run(HStrategy::Brute);
  } else {
    std::string why;
    if (!h_case_applicable(strategy, q, d, e, &why)) fail(Errc::StrategyInapplicable, std::string(hstrategy_name(strategy)) + ": " + why);
    out = run(strategy);
  }
  if (out.h.deg() % e != 0 || !is_irreducible(compose(Fp, out.h)))
    fail(Errc::VerificationFailed, "h_search result failed the irreducibility re-check");
  return out;
}

Eliminated eliminate_infinity(const BiPoly& F, int e, const Poly& h) {
  if (e < 1 || h.deg() < 1 || h.deg() % e != 0) fail(Errc::DegreeNotDivisible, "e must divide deg h");
  PrimePowerDisc pp = is_prime_power_disc(F);
  if (!pp.ok) fail(Errc::DiscNotPrimePower, "discriminant is not a prime power");
  Poly Ph = compose(pp.prime, h);
  if (!is_irreducible(Ph)) fail(Errc::DiscNotPrimePower, "P(h) is reducible");
  Eliminated out;
  out.G = substitute_T(F, h);
  out.disc = disc_in_T(out.G);
  if (out.disc != compose(pp.disc, h)) fail(Errc::VerificationFailed, "discriminant does not commute with substitution");
  PrimePowerDisc after = prime_power_of(out.disc);
  if (!after.ok || after.prime != monic(Ph)) fail(Errc::VerificationFailed, "substituted discriminant is not a power of P(h)");
  out.prime = after.prime;
  out.r = after.r;
  out.unit = after.unit;
  return out;
}

Poly twin_irreducible_search(const FieldPtr& F, int d, const FqElem& b, const SearchBudget& budget) {
  if (d < 1) fail(Errc::Precondition, "twin search needs d >= 1");
  if (b.is_zero() || b.field() != F) fail(Errc::Precondition, "twin search needs nonzero b in the base field");
  // Candidate i is a monic g without constant term. If g + a1 and g + a2 are irreducible for the first
  // two constants a1 != a2 in index order, then h = lambda (g + a1) with lambda = b / (a1 - a2) has
  // h - b = lambda (g + a2).
  const u64 q = F->order_u64();
  auto translates = [&](u64 i, FqElem* a1, FqElem* a2) {
    std::mt19937_64 rng(derive_seed(budget.seed, i));
    Poly g = detail::random_poly(F, d, rng, true);
    g.set_coeff(0, F->zero_coords().data());
    g.normalize();
    int found = 0;
    for (u64 k = 0; k < q && found < 2; ++k) {
      FqElem a(F, F->element_at(k));
      if (!is_irreducible(g + Poly::constant(a))) continue;
      (found == 0 ? *a1 : *a2) = a;
      ++found;
    }
    return std::make_pair(g, found == 2);
  };
  auto idx = detail::least_index(budget.max_candidates, budget.jobs, [&](u64 i) {
    FqElem a1, a2;
    return translates(i, &a1, &a2).second;
  });
  if (!idx) fail(Errc::BudgetExhausted, "no twin pair within budget");
  FqElem a1, a2;
  Poly g = translates(*idx, &a1, &a2).first;
  FqElem lambda = b / (a1 - a2);
  return Poly::constant(lambda) * (g + Poly::constant(a1));
}

FqElem trinomial_b(const FieldPtr& F, int n) {
  if (n < 2 || static_cast<u64>(n) % F->p() == 0) fail(Errc::Precondition, "trinomial_b needs p not dividing n");
  FqElem u = FqElem::one(F) - FqElem::from_int(F, n).inverse();
  return u.pow(n) - u.pow(n - 1);
}

}  // namespace ffgal
