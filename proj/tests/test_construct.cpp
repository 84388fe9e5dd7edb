#include <set>

#include "doctest.h"
#include "ffgal/construct.hpp"
#include "oracles.hpp"

using namespace ffgal;

namespace {

Poly PX(const FieldPtr& F, const std::string& s) { return parse_poly(F, s, 'X'); }
Poly PT(const FieldPtr& F, const std::string& s) { return parse_poly(F, s, 'T'); }

std::set<std::string> as_set(const std::vector<Poly>& v) {
  std::set<std::string> out;
  for (const Poly& a : v) out.insert(to_string(a));
  return out;
}

std::vector<Poly> squarefree_monic_upto(const FieldPtr& F, int m) {
  std::vector<Poly> out;
  for (int d = 1; d <= m; ++d)
    oracle::for_each_monic(F, d, [&](const Poly& c) {
      if (is_squarefree(c)) out.push_back(c);
    });
  return out;
}

}  // namespace

TEST_CASE("integer helpers") {
  CHECK(rad(72) == 6);
  CHECK(rad_prime(72) == 12);
  CHECK(rad_prime(18) == 6);
  CHECK(omega(30) == 3);
  CHECK(valuation(48, 2) == 4);
  CHECK(jacobi(2, 7) == 1);
  CHECK(jacobi(3, 7) == -1);
  CHECK(jacobi(5, 9) == 1);
  CHECK(jacobi(3, 15) == 0);
  for (long long n = 3; n < 40; n += 2)
    for (long long a = 0; a < n; ++a) {
      // Euler's criterion for prime moduli
      bool prime = is_prime(static_cast<u64>(n));
      if (!prime) continue;
      long long e = 1;
      for (long long i = 0; i < (n - 1) / 2; ++i) e = e * a % n;
      int expect = a == 0 ? 0 : (e == 1 ? 1 : -1);
      CHECK(jacobi(a, n) == expect);
    }
}

TEST_CASE("pi_c matches the root formula") {
  for (auto [p, nu] : std::vector<std::pair<u64, unsigned>>{{3, 1}, {5, 1}, {2, 2}}) {
    auto F = make_field(p, nu);
    for (const Poly& c : squarefree_monic_upto(F, 2)) {
      Poly pi = pi_c(c);
      CHECK(pi == oracle::pi_by_roots(c));
      CHECK(gcd(pi, c).is_one());
    }
  }
  auto F5 = make_field(5, 1);
  CHECK_THROWS_AS(pi_c(PX(F5, "X^2")), Error);
}

TEST_CASE("psi_c squares to pi_c in the square-root case") {
  std::mt19937_64 rng(7);
  int done = 0;
  for (auto [p, nu] : std::vector<std::pair<u64, unsigned>>{{3, 1}, {5, 1}, {7, 1}, {3, 2}}) {
    auto F = make_field(p, nu);
    for (int t = 0; t < 30; ++t) {
      Poly c = oracle::random_poly(F, 1 + static_cast<int>(rng() % 4), rng, true);
      if (!is_squarefree(c)) continue;
      Poly psi = psi_c(c, CoverCase::II);
      CHECK(rem(psi * psi - pi_c(c), c * c).is_zero());
      CHECK(psi_c(c, CoverCase::I) == rem(pi_c(c), c * c));
      ++done;
    }
  }
  CHECK(done > 50);
}

TEST_CASE("H_c membership agrees with brute-force p-th powers") {
  for (u64 p : {3, 5}) {
    auto F = make_field(p, 1);
    for (const Poly& c : squarefree_monic_upto(F, 2)) {
      auto H = as_set(oracle::pth_powers_mod_c2(c));
      for (CoverCase kase : {CoverCase::I, CoverCase::II}) {
        HcContext ctx = make_hc_context(c, kase);
        oracle::for_each_below(F, 2 * c.deg(), [&](const Poly& z) {
          if (z.is_zero() || !gcd(z, c).is_one()) return;
          Poly g = mulmod(z, ctx.psi, ctx.c2);
          CHECK(in_psi_Hc(g, ctx) == (H.count(to_string(z)) == 1));
        });
      }
    }
  }
}

TEST_CASE("find_g returns an irreducible in the coset") {
  auto F7 = make_field(7, 1);
  Poly c = PX(F7, "X");
  FindGResult r = find_g(c, 5, CoverCase::I);
  CHECK(r.g.deg() == 5);
  CHECK(is_irreducible(r.g));
  CHECK(in_psi_Hc(r.g, make_hc_context(c, CoverCase::I)));
  CHECK(r.bound_held);

  FindGResult r0 = find_g(Poly::one(F7), 4, CoverCase::I);
  CHECK(r0.g.deg() == 3);
  CHECK(is_irreducible(r0.g));

  auto F13 = make_field(13, 1);
  Poly c2 = PX(F13, "X^2 + 1");
  FindGResult r2 = find_g(c2, 5, CoverCase::II);
  CHECK(r2.g.deg() == 3);
  CHECK(in_psi_Hc(r2.g, make_hc_context(c2, CoverCase::II)));

  SearchBudget a, b;
  b.jobs = 4;
  CHECK(find_g(c, 5, CoverCase::I, a).g == find_g(c, 5, CoverCase::I, b).g);
}

TEST_CASE("solve_f_from_g inverts the Wronskian") {
  std::mt19937_64 rng(11);
  for (auto [p, nu] : std::vector<std::pair<u64, unsigned>>{{7, 1}, {11, 1}, {5, 2}}) {
    auto F = make_field(p, nu);
    for (int t = 0; t < 40; ++t) {
      int m = static_cast<int>(rng() % 3), n = m + 2 + static_cast<int>(rng() % 3);
      Poly c = oracle::random_poly(F, m, rng, true);
      Poly f = oracle::random_poly(F, n, rng, true);
      if (!is_squarefree(c) || !gcd(f, c).is_one()) continue;
      FqElem scale = FqElem::from_int(F, n - m);
      Poly g = (derivative(f) * c - f * derivative(c)) * Poly::constant(scale.inverse());
      Poly got = solve_f_from_g(g, c, n, scale);
      Poly expect = f - Poly::constant(f.coeff(m)) * c;
      CHECK(got == expect);
    }
  }
  auto F7 = make_field(7, 1);
  CHECK_THROWS_AS(solve_f_from_g(PX(F7, "X^9"), PX(F7, "X"), 4, FqElem::one(F7)), Error);
}

TEST_CASE("Morse basics") {
  auto F7 = make_field(7, 1);
  CHECK(is_morse(PX(F7, "X^3 + X")).morse);
  CHECK_FALSE(is_morse(PX(F7, "X^3")).morse);
  CHECK_FALSE(is_morse(PX(F7, "X^7 + X")).morse);
  // X^4 - 2X^2: critical points 0, 1, -1 but f(1) = f(-1)
  CHECK_FALSE(is_morse(PX(F7, "X^4 - 2X^2")).morse);
  for (u64 seed = 1; seed < 6; ++seed) {
    SearchBudget b;
    b.seed = seed;
    Poly f = morse_with_irreducible_derivative(F7, 4, b);
    CHECK(f.deg() == 4);
    CHECK(is_irreducible(derivative(f)));
    CHECK(is_morse(f).morse);
    CHECK(is_irreducible(disc_in_T(cover_poly(RatCover(f, Poly::one(F7))))));
  }
  auto F5 = make_field(5, 1);
  Poly f6 = morse_with_irreducible_derivative(F5, 6);
  CHECK(f6.deg() == 6);
  CHECK(is_irreducible(derivative(f6)));
  CHECK_THROWS_AS(morse_with_irreducible_derivative(F7, 5), Error);
}

TEST_CASE("is_morse agrees with the definition") {
  for (auto [p, nu, n] : std::vector<std::tuple<u64, unsigned, int>>{{5, 1, 3}, {7, 1, 3}, {5, 1, 4}, {3, 2, 4}, {2, 2, 3}}) {
    auto F = make_field(p, nu);
    oracle::for_each_monic(F, n, [&](const Poly& f) { CHECK(is_morse(f).morse == oracle::morse_by_definition(f)); });
  }
}

TEST_CASE("Morse f: f' irreducible iff the discriminant is irreducible") {
  for (auto [p, nu, n] : std::vector<std::tuple<u64, unsigned, int>>{{5, 1, 3}, {7, 1, 3}, {11, 1, 3}, {5, 1, 4}, {7, 1, 4}, {3, 2, 4}}) {
    auto F = make_field(p, nu);
    // the constant term only translates the discriminant
    oracle::for_each_monic(F, n - 1, [&](const Poly& low) {
      Poly f = shift(low, 1);
      if (!is_morse(f).morse) return;
      Poly D = disc_in_T(cover_poly(RatCover(f, Poly::one(F))));
      CHECK(is_irreducible(derivative(f)) == is_irreducible(D));
    });
  }
}

TEST_CASE("irreducible derivative of prime degree implies Morse") {
  for (auto [p, n] : std::vector<std::pair<u64, int>>{{5, 3}, {7, 3}, {11, 3}, {5, 4}, {7, 4}, {11, 4}, {5, 6}, {7, 6}}) {
    auto F = make_field(p, 1);
    FqElem nn = FqElem::from_int(F, n);
    oracle::for_each_monic(F, n - 1, [&](const Poly& P) {
      if (!is_irreducible(P)) return;
      // p | n - 1 would need a vanishing X^{n-2} term for the antiderivative to exist
      if (static_cast<u64>(n - 1) % p == 0 && !P.coeff(n - 2).is_zero()) return;
      CHECK(is_morse(antiderivative(Poly::constant(nn) * P)).morse);
    });
  }
}

TEST_CASE("Morse count matches the per-polynomial oracle") {
  for (auto [q, n] : std::vector<std::pair<u64, int>>{{7, 3}, {11, 3}}) {
    auto F = make_field(q, 1);
    u64 expect = 0;
    oracle::for_each_monic(F, n, [&](const Poly& f) {
      if (oracle::morse_by_definition(f) && oracle::irreducible_by_trial(derivative(f))) ++expect;
    });
    MorseCount mc = count_morse_irred_disc(F, n, 2);
    CHECK(mc.count == expect);
    CHECK(mc.ratio >= 0.5);
    CHECK(mc.ratio <= 2.0);
  }
  CHECK(count_morse_irred_disc(make_field(7, 1), 3).count == 147);
  CHECK(count_morse_irred_disc(make_field(11, 1), 3).count == 605);
}

TEST_CASE("tame cover hypotheses") {
  auto F7 = make_field(7, 1), F3 = make_field(3, 1);
  auto failed = [](const std::vector<Clause>& cs) {
    std::vector<std::string> out;
    for (const auto& c : cs)
      if (!c.ok) out.push_back(c.name);
    return out;
  };
  CHECK(failed(tame_cover_hypotheses(F7, 5, 1, Target::SN)).empty());
  CHECK(failed(tame_cover_hypotheses(F7, 6, 2, Target::SN)) == std::vector<std::string>{"m!=2"});
  CHECK(failed(tame_cover_hypotheses(F3, 4, 0, Target::SN)) == std::vector<std::string>{"n-m<p"});
  CHECK(failed(tame_cover_hypotheses(F7, 5, 1, Target::AN)) == std::vector<std::string>{"m!=n mod 2", "q^((n-3m-1)/4)>2m+1"});
  CHECK(failed(tame_cover_hypotheses(make_field(13, 1), 5, 0, Target::AN)) == std::vector<std::string>{"m>=2 or (q/(n-m))=1"});
  CHECK_THROWS_AS(build_tame_cover(F7, 6, 2, Target::SN), Error);
  try {
    build_tame_cover(F7, 6, 2, Target::SN);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::HypothesisViolated);
  }
}

TEST_CASE("tame covers have prime-power discriminants") {
  struct Pt {
    u64 p;
    unsigned nu;
    int n, m;
    Target t;
  };
  for (Pt pt : std::vector<Pt>{{7, 1, 5, 1, Target::SN}, {11, 1, 4, 0, Target::SN}, {7, 2, 7, 1, Target::SN},
                               {11, 1, 6, 1, Target::AN}, {19, 1, 5, 0, Target::AN}, {29, 1, 9, 2, Target::AN}}) {
    auto F = make_field(pt.p, pt.nu);
    CAPTURE(pt.p);
    CAPTURE(pt.n);
    CAPTURE(pt.m);
    TameCover tc = build_tame_cover(F, pt.n, pt.m, pt.t);
    CHECK(tc.disc.ok);
    CHECK(tc.disc.disc.deg() == pt.n + pt.m - 1);
    CHECK(tc.w.n() == pt.n);
    CHECK(tc.w.m() == pt.m);
    if (pt.t == Target::AN) {
      CHECK(tc.disc_square);
      CHECK(tc.delta_square);
    }
    CHECK(build_tame_cover(F, pt.n, pt.m, pt.t).F == tc.F);
  }
}

TEST_CASE("h_search strategies") {
  std::mt19937_64 rng(5);
  int tried = 0;
  for (u64 q : {7, 13, 25, 31}) {
    auto F = q == 25 ? make_field(5, 2) : make_field(q, 1);
    for (int e = 1; e <= 6; ++e)
      for (int d = 1; d <= 4; ++d) {
        Poly P;
        do P = oracle::random_poly(F, d, rng, true);
        while (!is_irreducible(P));
        for (HStrategy s : {HStrategy::Case3, HStrategy::Case4, HStrategy::Case5}) {
          if (!h_case_applicable(s, F->order(), d, e)) {
            CHECK_THROWS_AS(h_search(P, e, s), Error);
            continue;
          }
          HResult r = h_search(P, e, s);
          CHECK(r.h.deg() % e == 0);
          Poly Ph = compose(P, r.h);
          // trial division only while the search space stays small
          if (pow(F->order(), static_cast<unsigned>(Ph.deg() / 2)) <= 100000)
            CHECK(oracle::irreducible_by_trial(Ph));
          else
            CHECK(is_irreducible(Ph));
          ++tried;
        }
        HResult a = h_search(P, e, HStrategy::Auto);
        CHECK(is_irreducible(compose(P, a.h)));
      }
  }
  CHECK(tried > 20);
  auto F7 = make_field(7, 1);
  HResult r = h_search(PT(F7, "T"), 3, HStrategy::Case3);
  CHECK(is_irreducible(r.h));
}

TEST_CASE("eliminating infinity") {
  auto F7 = make_field(7, 1);
  TameCover tc = build_tame_cover(F7, 5, 1, Target::SN);
  const int e = 5 - 1;
  HResult h = h_search(tc.disc.prime, e, HStrategy::Auto);
  Eliminated el = eliminate_infinity(tc.F, e, h.h);
  CHECK(el.prime == monic(compose(tc.disc.prime, h.h)));
  CHECK(el.prime.deg() == tc.disc.prime.deg() * h.h.deg());
  CHECK_THROWS_AS(eliminate_infinity(tc.F, e, PT(F7, "T^3 + T + 1")), Error);
}

TEST_CASE("twin irreducibles and the trinomial critical value") {
  for (auto [p, n] : std::vector<std::pair<u64, int>>{{7, 3}, {11, 4}, {13, 5}}) {
    auto F = make_field(p, 1);
    FqElem b = trinomial_b(F, n);
    // D(U) = a U^{n-2} (U - b) for X^n - X^{n-1} - U
    Poly D = disc_in_T(cover_poly(RatCover(PX(F, "X^" + std::to_string(n) + " - X^" + std::to_string(n - 1)), Poly::one(F))));
    Poly U = Poly::x(F);
    CHECK(monic(D) == pow(U, n - 2) * (U - Poly::constant(b)));
    Poly h = twin_irreducible_search(F, n, b);
    CHECK(h.deg() == n);
    CHECK(oracle::irreducible_by_trial(h));
    CHECK(oracle::irreducible_by_trial(h - Poly::constant(b)));
  }
}

TEST_CASE("family specs parse and print") {
  FamilySpec s = parse_family("an_p1(p=7, a=2)");
  CHECK(s.name == "an_p1");
  CHECK(s.params.at("a") == 2);
  CHECK(to_string(s) == "an_p1(a=2,p=7)");
  CHECK(parse_family("a6_p5").params.empty());
  CHECK_THROWS_AS(parse_family("sn_odd(p=)"), Error);
  CHECK_THROWS_AS(parse_family("sn_odd(p=3"), Error);
  CHECK_THROWS_AS(family(parse_family("nonesuch")), Error);
  CHECK_THROWS_AS(family(parse_family("sn_odd(p=3,n=8)")), Error);
}

TEST_CASE("explicit family discriminants") {
  auto a6 = family(parse_family("a6_p5"));
  CHECK(disc_in_T(a6.F) == PT(a6.field, "2T^24"));
  CHECK(a6.field->order() == 25);

  auto snp = family(parse_family("sn_p(p=5)"));
  REQUIRE(snp.cover);
  CHECK(ram_profile(*snp.cover, FqElem::zero(snp.field)).partition == std::vector<int>{2, 1, 1, 1});
  RamProfile inf = ram_profile_infinity(*snp.cover);
  CHECK(inf.partition == std::vector<int>{5});
  CHECK_FALSE(inf.tame);
}

TEST_CASE("every family builds and matches its declared shape") {
  const std::vector<std::string> specs = {
      "sn_odd(p=3,n=7)",  "sn_odd(p=5,n=7)",   "sn_p(p=7)",       "sn_pdiv(p=3,n=11)", "sn_pdiv(p=5,n=19)",
      "sn_2pm1(p=5,n=9)", "sn_even(p=3,n=8)",  "sn_even(p=5,n=8)", "sn_even_pdiv(p=3,n=6)", "sn_even_pdiv(p=5,n=10)",
      "sn2_odd(n=7)",     "sn2_even(n=6)",     "a4_p3",           "an_p1(p=7,a=3)",    "an_p1(p=11,a=5)",
      "an_p1(p=13,a=3)",  "a6_p5",             "a5_c2",           "a6_c2",             "a7_c2",
      "an2_odd(n=9)",     "an2_even(n=8)",     "an2_even(n=14,nu=1)", "a3a4_c2(n=3)",  "a3a4_c2(n=4)",
      "trinomial_sn(p=7,n=4)"};
  for (const auto& sp : specs) {
    CAPTURE(sp);
    FamilyInstance fi = family(parse_family(sp));
    CHECK(fi.F.deg_x() == (fi.expect.group == "A4@6" ? 6 : fi.expect.n));
    Poly D = disc_in_T(fi.F);
    CHECK_FALSE(D.is_zero());
    if (fi.expect.disc) CHECK(D == *fi.expect.disc);
    if (fi.expect.disc_t_power >= 0) CHECK(D == Poly::monomial(D.lc(), fi.expect.disc_t_power));
    if (fi.cover) {
      if (!fi.expect.profile_zero.empty())
        CHECK(ram_profile(*fi.cover, FqElem::zero(fi.field)).partition == fi.expect.profile_zero);
      if (!fi.expect.profile_inf.empty()) CHECK(ram_profile_infinity(*fi.cover).partition == fi.expect.profile_inf);
    }
  }
}

TEST_CASE("an_p1 discriminant closed form") {
  for (u64 p : {7, 11, 13}) {
    for (long long a = 2; 2 * a <= static_cast<long long>(p) - 1; ++a) {
      if (std::gcd(a, static_cast<long long>(p) + 1) != 1) continue;
      FamilyInstance fi = family(parse_family("an_p1(p=" + std::to_string(p) + ",a=" + std::to_string(a) + ")"));
      CHECK(disc_in_T(fi.F) == *fi.expect.disc);
    }
  }
}
