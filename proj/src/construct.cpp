#include "ffgal/construct.hpp"

#include <numeric>

#include "search.hpp"

namespace ffgal {

std::vector<u64> prime_divisors(u64 n) {
  std::vector<u64> out;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

u64 rad(u64 n) {
  u64 r = 1;
  for (u64 l : prime_divisors(n)) r *= l;
  return r;
}

u64 rad_prime(u64 n) { return n % 4 == 0 ? 2 * rad(n) : rad(n); }

int omega(u64 n) { return static_cast<int>(prime_divisors(n).size()); }

int valuation(u64 n, u64 l) {
  if (n == 0) fail(Errc::Precondition, "valuation of zero");
  int v = 0;
  while (n % l == 0) {
    n /= l;
    ++v;
  }
  return v;
}

int jacobi(long long a, long long n) {
  if (n <= 0 || n % 2 == 0) fail(Errc::Precondition, "Jacobi symbol needs an odd positive modulus");
  a %= n;
  if (a < 0) a += n;
  int s = 1;
  while (a) {
    while (a % 2 == 0) {
      a /= 2;
      if (n % 8 == 3 || n % 8 == 5) s = -s;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) s = -s;
    a %= n;
  }
  return n == 1 ? s : 0;
}

// ---------------------------------------------------------------- Morse polynomials

MorseCheck is_morse(const Poly& f) {
  const int n = f.deg();
  if (n < 2) fail(Errc::Precondition, "is_morse needs degree >= 2");
  const u64 p = f.field_ptr()->p();
  if (static_cast<u64>(n) % p == 0) return {false, "p divides n"};
  Poly d = derivative(f);
  if (d.deg() != n - 1 || !is_squarefree(d)) return {false, "f' is not squarefree"};
  Poly D = disc_in_T(cover_poly(RatCover(f, Poly::one(f.field_ptr()))));
  if (!is_squarefree(D)) return {false, "critical values are not distinct"};
  return {true, "simple critical points with distinct critical values"};
}

Poly morse_with_irreducible_derivative(const FieldPtr& F, int n, const SearchBudget& budget) {
  const u64 p = F->p();
  if (p < 3) fail(Errc::Precondition, "Morse construction needs p >= 3");
  if (n < 3 || !is_prime(static_cast<u64>(n - 1))) fail(Errc::Precondition, "n - 1 must be prime");
  if (!(static_cast<u64>(n) < p || static_cast<u64>(n) == p + 1)) fail(Errc::Precondition, "n must lie in {2..p-1} or equal p+1");
  const FqElem nn = FqElem::from_int(F, n);
  const u64 seed = budget.seed;
  auto candidate = [&](u64 i) {
    std::mt19937_64 rng(derive_seed(seed, i));
    Poly P = detail::random_poly(F, n - 1, rng, true);
    // f' = n P needs no X^{p-1} term when n = p + 1 (trace zero root)
    if (static_cast<u64>(n) == p + 1) {
      P.set_coeff(static_cast<int>(p - 1), F->zero_coords().data());
      P.normalize();
    }
    return P;
  };
  auto idx = detail::least_index(budget.max_candidates, budget.jobs, [&](u64 i) { return is_irreducible(candidate(i)); });
  if (!idx) fail(Errc::BudgetExhausted, "no irreducible derivative within budget");
  Poly f = antiderivative(nn * candidate(*idx));
  if (!is_morse(f).morse) fail(Errc::VerificationFailed, "constructed f is not Morse");
  return f;
}

MorseCount count_morse_irred_disc(const FieldPtr& F, int n, unsigned jobs) {
  const u64 p = F->p();
  if (n < 3 || static_cast<u64>(n) >= p) fail(Errc::Precondition, "Morse count needs p > n >= 3");
  const u64 q = F->order_u64();
  BigInt total = pow(BigInt(q), static_cast<unsigned>(n));
  if (q == 0 || total > 100000000) fail(Errc::TooLarge, "q^n exceeds 10^8");
  const u64 tot = static_cast<u64>(total);
  // Shifting the constant term translates D(T), so the Morse property only depends on
  // the coefficients of X^1..X^{n-1}; each class has q members.
  const u64 classes = tot / q;  // coefficients X^1..X^{n-1}
  std::vector<unsigned char> morse(classes), dirr(classes);
  detail::parallel_for(classes, jobs, [&](u64 j) {
    Poly f = shift(detail::poly_from_index(F, n - 1, j), 1);
    Poly d = derivative(f);
    if (!is_irreducible(d)) return;
    dirr[j] = 1;
    morse[j] = is_morse(f).morse ? 1 : 0;
  });
  MorseCount out;
  out.total = tot;
  for (u64 j = 0; j < classes; ++j) {
    out.count += morse[j];
    out.derivative_irreducible += dirr[j];
  }
  out.count *= q;
  out.derivative_irreducible *= q;
  out.main_term = static_cast<double>(tot) / (n - 1);
  out.ratio = static_cast<double>(out.count) / out.main_term;
  return out;
}

// ---------------------------------------------------------------- H_c cosets

Poly pi_c(const Poly& c) {
  if (c.is_zero() || !c.is_monic()) fail(Errc::Precondition, "pi_c needs monic c");
  if (!is_squarefree(c)) fail(Errc::NotSquarefree, "pi_c needs squarefree c");
  if (c.deg() == 0) return Poly::one(c.field_ptr());
  Poly d1 = derivative(c);
  return d1 * d1 - c * derivative(d1);
}

Poly psi_c(const Poly& c, CoverCase kase) {
  Poly pi = pi_c(c);
  if (c.deg() == 0) return pi;
  Poly c2 = c * c;
  if (kase == CoverCase::I) return rem(pi, c2);
  if (c.field_ptr()->p() == 2) fail(Errc::Unsupported, "square-root coset needs odd q");
  // pi = c'^2 - c c'', so c' is a root mod c; one Hensel step lifts it mod c^2.
  Poly r = derivative(c);
  Poly s = rem(-derivative(r) * invmod(r + r, c), c);
  Poly psi = rem(r + c * s, c2);
  if (rem(psi * psi - pi, c2).deg() >= 0) fail(Errc::NoSquareRoot, "square root of pi_c mod c^2 failed to lift");
  return psi;
}

HcContext make_hc_context(const Poly& c, CoverCase kase) {
  HcContext ctx;
  ctx.c = c;
  ctx.kase = kase;
  ctx.pi = pi_c(c);
  ctx.psi = psi_c(c, kase);
  ctx.c2 = c * c;
  if (c.deg() > 0) {
    ctx.pi = rem(ctx.pi, ctx.c2);
    for (const Factor& fa : factor(c).factors) ctx.primes.push_back(fa.poly);
  }
  return ctx;
}

bool in_psi_Hc(const Poly& g, const HcContext& ctx) {
  if (ctx.c.deg() == 0) return true;
  if (!gcd(g, ctx.c).is_one()) fail(Errc::NotCoprime, "g shares a factor with c");
  Poly z = mulmod(g, invmod(ctx.psi, ctx.c2), ctx.c2);
  const BigInt& q = ctx.c.field_ptr()->order();
  // F_q[X]/P^2 = F_{q^d}[eps]/eps^2; p-th powers are the units fixed by x -> x^{q^d}
  for (const Poly& P : ctx.primes) {
    Poly P2 = P * P;
    Poly zp = rem(z, P2);
    if (powmod(zp, pow(q, static_cast<unsigned>(P.deg())), P2) != zp) return false;
  }
  return true;
}

bool find_g_bound(const BigInt& q, int n, int m, CoverCase kase) {
  const int num = kase == CoverCase::I ? n - m - 1 : n - 3 * m - 1;
  const unsigned root = kase == CoverCase::I ? 2 : 4;
  if (num <= 0) return false;
  // q^{num/root} > 2m+1  <=>  q^num > (2m+1)^root
  return pow(q, static_cast<unsigned>(num)) > pow(BigInt(2 * m + 1), root);
}

FindGResult find_g(const Poly& c, int n, CoverCase kase, const SearchBudget& budget) {
  const FieldPtr& F = c.field_ptr();
  const int m = c.deg();
  if (m < 0 || !c.is_monic()) fail(Errc::Precondition, "find_g needs monic c");
  if (static_cast<u64>(n - m) >= F->p()) fail(Errc::Precondition, "find_g needs p > n - m");
  if (kase == CoverCase::II && (n + m - 1) % 2) fail(Errc::Precondition, "case II needs n + m - 1 even");
  const int N = kase == CoverCase::I ? n + m - 1 : (n + m - 1) / 2;
  if (N < 1) fail(Errc::Precondition, "target degree must be positive");
  HcContext ctx = make_hc_context(c, kase);
  const bool directed = m > 0 && N >= 2 * m;
  // Directed mode draws g = top * c^2 + (psi R^p mod c^2), which lies in psi H_c by construction.
  auto candidate = [&](u64 i, Poly& g) {
    std::mt19937_64 rng(derive_seed(budget.seed, i));
    if (!directed) {
      g = detail::random_poly(F, N, rng, true);
      return m == 0 || gcd(g, c).is_one();
    }
    Poly R(F);
    R.resize_terms(2 * m);
    for (int j = 0; j < 2 * m; ++j) R.set_coeff(j, detail::random_coords(*F, rng).data());
    R.normalize();
    if (R.is_zero() || !gcd(R, c).is_one()) return false;
    Poly Rp = powmod(R, BigInt(F->p()), ctx.c2);
    Poly top = detail::random_poly(F, N - 2 * m, rng, true);
    g = top * ctx.c2 + mulmod(ctx.psi, Rp, ctx.c2);
    return true;
  };
  auto accept = [&](u64 i) {
    Poly g;
    if (!candidate(i, g)) return false;
    return is_irreducible(g) && in_psi_Hc(g, ctx);
  };
  FindGResult out;
  out.bound_held = find_g_bound(F->order(), n, m, kase);
  auto idx = detail::least_index(budget.max_candidates, budget.jobs, accept);
  if (!idx)
    fail(Errc::BudgetExhausted, std::string("no admissible g within budget; sufficient bound ") +
                                    (out.bound_held ? "held" : "did not hold"));
  candidate(*idx, out.g);
  out.index = *idx;
  return out;
}

// ---------------------------------------------------------------- f from g

Poly solve_f_from_g(const Poly& g, const Poly& c, int n, const FqElem& scale, bool squared) {
  const FieldPtr& F = c.field_ptr();
  check_same_field(g, c);
  const Field& K = *F;
  const unsigned nu = K.nu();
  const int m = c.deg();
  Poly target = scale * (squared ? g * g : g);
  const int rows = n + m + 1;  // coefficients X^0..X^{n+m-1}, plus the normalization f_m = 0
  const int cols = n + 1;
  if (target.deg() > n + m - 1) fail(Errc::NoSolution, "target degree exceeds n + m - 1");
  std::vector<u64> M(static_cast<size_t>(rows) * (cols + 1) * nu, 0);
  auto at = [&](int r, int col) { return M.data() + (static_cast<size_t>(r) * (cols + 1) + col) * nu; };
  Poly dc = derivative(c);
  for (int j = 0; j <= n; ++j) {
    Poly xj = Poly::monomial(FqElem::one(F), j);
    Poly img = derivative(xj) * c - xj * dc;
    for (int k = 0; k <= img.deg(); ++k) K.copy(img.coef(k), at(k, j));
  }
  for (int k = 0; k <= target.deg(); ++k) K.copy(target.coef(k), at(k, cols));
  // f_m = 0 removes the kernel direction spanned by c
  K.one(at(n + m, m));
  // Gaussian elimination
  std::vector<int> pivot_col;
  int r = 0;
  Coords inv(nu), t(nu);
  for (int col = 0; col < cols && r < rows; ++col) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (!K.is_zero(at(i, col))) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = 0; j <= cols; ++j)
        for (unsigned e = 0; e < nu; ++e) std::swap(at(piv, j)[e], at(r, j)[e]);
    K.inv(at(r, col), inv.data());
    for (int j = 0; j <= cols; ++j) {
      K.mul(at(r, j), inv.data(), t.data());
      K.copy(t.data(), at(r, j));
    }
    for (int i = 0; i < rows; ++i) {
      if (i == r || K.is_zero(at(i, col))) continue;
      K.copy(at(i, col), t.data());
      for (int j = 0; j <= cols; ++j) K.mul_sub(t.data(), at(r, j), at(i, j));
    }
    pivot_col.push_back(col);
    ++r;
  }
  for (int i = r; i < rows; ++i)
    if (!K.is_zero(at(i, cols))) fail(Errc::NoSolution, "f'c - fc' = target has no solution");
  Poly f(F);
  f.resize_terms(cols);
  for (int i = 0; i < r; ++i) f.set_coeff(pivot_col[i], at(i, cols));
  f.normalize();
  if (f.deg() != n) fail(Errc::NoSolution, "solution has degree below n");
  if (derivative(f) * c - f * dc != target) fail(Errc::NoSolution, "solution failed the identity check");
  if (!gcd(f, c).is_one()) fail(Errc::NoSolution, "solution shares a factor with c");
  return f;
}

// ---------------------------------------------------------------- tame covers

const char* target_name(Target t) { return t == Target::SN ? "S" : "A"; }

std::vector<Clause> tame_cover_hypotheses(const FieldPtr& F, int n, int m, Target t) {
  const u64 p = F->p();
  const BigInt& q = F->order();
  std::vector<Clause> out;
  auto add = [&](std::string name, bool ok, std::string detail = {}) { out.push_back({std::move(name), ok, std::move(detail)}); };
  add("0<=m<=n-2", m >= 0 && m <= n - 2);
  add("n-m<p", n - m > 0 && static_cast<u64>(n - m) < p);
  if (t == Target::SN) {
    add("p>2", p > 2);
    add("m=n mod 2", (n - m) % 2 == 0);
    add("m!=2", m != 2);
    add("(n,m)!=(9,1)", !(n == 9 && m == 1));
    add("q^((n-m-1)/2)>2m+1", find_g_bound(q, n, m, CoverCase::I));
  } else {
    add("p>3", p > 3);
    add("m!=n mod 2", (n - m) % 2 != 0);
    add("gcd(n,p)=1", static_cast<u64>(n) % p != 0);
    bool exc = (n == 8 && m == 1) || (n == 9 && m == 0) || (n == 12 && m == 1) || (n == 24 && m == 1);
    add("(n,m) not in {(8,1),(9,0),(12,1),(24,1)}", !exc);
    add("q^((n-3m-1)/4)>2m+1", find_g_bound(q, n, m, CoverCase::II));
    bool leg = true;
    std::string detail;
    if (m < 2 && n - m > 0 && (n - m) % 2) {
      long long k = n - m;
      int j = jacobi(static_cast<long long>(q % k), k);
      leg = j == 1;
      detail = "(q/" + std::to_string(k) + ") = " + std::to_string(j);
    }
    add("m>=2 or (q/(n-m))=1", leg, detail);
  }
  return out;
}

bool delta_is_square(const FieldPtr& F, int n, const Poly& c) {
  const int m = c.deg();
  long long e = static_cast<long long>(n) * (n - 1) / 2 + static_cast<long long>(m) * (m + 1) / 2;
  FqElem d = FqElem::from_int(F, n - m);
  if (e % 2) d = -d;
  if (m >= 2) d = d * discriminant(c);
  return is_square(d);
}

namespace {

bool disc_is_square(const PrimePowerDisc& pp) {
  for (const Factor& fa : pp.factorization.factors)
    if (fa.mult % 2) return false;
  return is_square(pp.unit);
}

}  // namespace

TameCover build_tame_cover(const FieldPtr& F, int n, int m, Target t, const SearchBudget& budget) {
  for (const Clause& cl : tame_cover_hypotheses(F, n, m, t))
    if (!cl.ok) fail(Errc::HypothesisViolated, "hypothesis failed: " + cl.name + (cl.detail.empty() ? "" : " (" + cl.detail + ")"));
  const CoverCase kase = t == Target::SN ? CoverCase::I : CoverCase::II;
  Poly c = Poly::one(F);
  if (m > 0) {
    const u64 cseed = derive_seed(budget.seed, 0xc0c0);
    auto make = [&](u64 i) {
      std::mt19937_64 rng(derive_seed(cseed, i));
      return detail::random_poly(F, m, rng, true);
    };
    auto idx = detail::least_index(budget.max_candidates, budget.jobs, [&](u64 i) {
      Poly cand = make(i);
      if (!is_squarefree(cand)) return false;
      return t == Target::SN || delta_is_square(F, n, cand);
    });
    if (!idx) fail(Errc::BudgetExhausted, "no admissible c within budget");
    c = make(*idx);
  }
  SearchBudget gb = budget;
  gb.seed = derive_seed(budget.seed, 0x9999);
  FindGResult fg = find_g(c, n, kase, gb);
  Poly f = solve_f_from_g(fg.g, c, n, FqElem::from_int(F, n - m), kase == CoverCase::II);
  TameCover out;
  out.target = t;
  out.w = RatCover(f, c);
  out.g = fg.g;
  out.F = cover_poly(out.w);
  out.disc = is_prime_power_disc(out.F);
  out.bound_held = fg.bound_held;
  out.seed = budget.seed;
  if (!out.disc.ok) fail(Errc::VerificationFailed, "cover discriminant is not a prime power");
  if (out.disc.disc.deg() != n + m - 1) fail(Errc::VerificationFailed, "cover discriminant has the wrong degree");
  out.disc_square = disc_is_square(out.disc);
  out.delta_square = delta_is_square(F, n, c);
  if (t == Target::AN && !(out.disc_square && out.delta_square))
    fail(Errc::VerificationFailed, "alternating cover discriminant is not a square");
  return out;
}

}  // namespace ffgal
