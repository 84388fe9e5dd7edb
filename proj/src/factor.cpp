#include <algorithm>
#include <optional>
#include <random>

#include "ffgal/poly.hpp"

namespace ffgal {

namespace {

Poly random_poly(const FieldPtr& F, int terms, std::mt19937_64& rng) {
  Poly r(F);
  r.resize_terms(terms);
  std::uniform_int_distribution<u64> dist(0, F->p() - 1);
  for (u64& v : r.raw_mut()) v = dist(rng);
  r.normalize();
  return r;
}

void sort_polys(std::vector<Poly>& v) { std::sort(v.begin(), v.end(), poly_less); }

}  // namespace

Poly Factorization::expand() const {
  Poly r = Poly::constant(unit);
  for (const Factor& f : factors) r = r * pow(f.poly, static_cast<unsigned>(f.mult));
  return r;
}

std::vector<Factor> squarefree_factor(const Poly& f0) {
  std::vector<Factor> out;
  if (f0.deg() < 1) return out;
  Poly f = monic(f0);
  Poly d = derivative(f);
  if (d.is_zero()) {
    // f is a p-th power, so p <= deg f fits in an int
    const int p = static_cast<int>(f.field().p());
    for (Factor& g : squarefree_factor(pth_root(f))) out.push_back({g.poly, g.mult * p});
  } else {
    Poly c = gcd(f, d);
    Poly w = exact_div(f, c);
    int i = 1;
    while (!w.is_one()) {
      Poly y = gcd(w, c);
      Poly z = exact_div(w, y);
      if (z.deg() > 0) out.push_back({z, i});
      ++i;
      w = y;
      c = exact_div(c, y);
    }
    if (!c.is_one()) {
      // c is a p-th power here
      for (Factor& g : squarefree_factor(pth_root(c))) out.push_back({g.poly, g.mult * static_cast<int>(f.field().p())});
    }
  }
  // merge equal multiplicities produced by the two branches
  std::sort(out.begin(), out.end(), [](const Factor& a, const Factor& b) { return a.mult < b.mult; });
  std::vector<Factor> merged;
  for (Factor& g : out) {
    if (!merged.empty() && merged.back().mult == g.mult)
      merged.back().poly = merged.back().poly * g.poly;
    else
      merged.push_back(g);
  }
  return merged;
}

std::vector<Factor> distinct_degree_factor(const Poly& f0) {
  std::vector<Factor> out;
  if (f0.deg() < 1) return out;
  Poly f = monic(f0);
  const FieldPtr& F = f.field_ptr();
  FrobeniusMap frob(f);
  Poly x = Poly::x(F);
  Poly h = rem(x, f);
  Poly rest = f;
  for (int i = 1; 2 * i <= rest.deg(); ++i) {
    h = frob.apply(h);
    Poly g = gcd(h - x, rest);
    if (g.deg() > 0) {
      out.push_back({g, i});
      rest = exact_div(rest, g);
    }
  }
  if (rest.deg() > 0) out.push_back({rest, rest.deg()});
  return out;
}

std::vector<Poly> equal_degree_factor(const Poly& f0, int d, u64 seed) {
  Poly f = monic(f0);
  const int n = f.deg();
  if (n <= d) return {f};
  if (n % d != 0) fail(Errc::Precondition, "degree not a multiple of the factor degree");
  const FieldPtr& F = f.field_ptr();
  const Field& K = *F;
  std::mt19937_64 rng(seed);
  FrobeniusMap frob(f);
  const bool even = K.p() == 2;
  BigInt half = (K.order() - 1) / 2;
  for (;;) {
    Poly a = random_poly(F, n, rng);
    if (a.deg() < 1) continue;
    Poly g;
    if (!even) {
      // norm a * a^q * ... * a^{q^{d-1}}, then the quadratic character
      Poly t = a, norm = a;
      for (int j = 1; j < d; ++j) {
        t = frob.apply(t);
        norm = mulmod(norm, t, f);
      }
      Poly b = powmod(norm, half, f);
      g = gcd(b - Poly::one(F), f);
    } else {
      // absolute trace from F_{2^{nu d}} to F_2
      const int steps = static_cast<int>(K.nu()) * d;
      Poly t = a, s = a;
      for (int j = 1; j < steps; ++j) {
        t = mulmod(t, t, f);
        s = s + t;
      }
      g = gcd(s, f);
    }
    if (g.deg() > 0 && g.deg() < n) {
      std::vector<Poly> left = equal_degree_factor(g, d, mix64(seed + 1));
      std::vector<Poly> right = equal_degree_factor(exact_div(f, g), d, mix64(seed + 2));
      left.insert(left.end(), right.begin(), right.end());
      sort_polys(left);
      return left;
    }
  }
}

Factorization factor(const Poly& f, u64 seed) {
  if (f.is_zero()) fail(Errc::ZeroPolynomial, "factor of the zero polynomial");
  Factorization out{f.lc(), {}};
  u64 k = 0;
  for (const Factor& s : squarefree_factor(f)) {
    for (const Factor& dd : distinct_degree_factor(s.poly)) {
      for (Poly& p : equal_degree_factor(dd.poly, dd.mult, derive_seed(seed, k++))) out.factors.push_back({p, s.mult});
    }
  }
  std::sort(out.factors.begin(), out.factors.end(), [](const Factor& a, const Factor& b) {
    if (poly_less(a.poly, b.poly)) return true;
    if (poly_less(b.poly, a.poly)) return false;
    return a.mult < b.mult;
  });
  return out;
}

bool is_irreducible(const Poly& f0) {
  if (f0.deg() < 1) return false;
  if (f0.deg() == 1) return true;
  Poly f = monic(f0);
  const BigInt& q = f.field().order();
  Poly x = Poly::x(f.field_ptr());
  Poly h = rem(x, f);
  // Most reducible inputs have a small factor, so the first steps use plain powering and the
  // Frobenius matrix (deg f mulmods to build) only once that would have been cheaper.
  const int cheap = std::max(1, f.deg() / (2 * static_cast<int>(boost::multiprecision::msb(q) + 1)));
  std::optional<FrobeniusMap> frob;
  for (int i = 1; 2 * i <= f.deg(); ++i) {
    if (i <= cheap) {
      h = powmod(h, q, f);
    } else {
      if (!frob) frob.emplace(f);
      h = frob->apply(h);
    }
    if (!gcd(h - x, f).is_one()) return false;
  }
  return true;
}

bool is_squarefree(const Poly& f) {
  if (f.is_zero()) return false;
  if (f.deg() == 0) return true;
  Poly d = derivative(f);
  if (d.is_zero()) return false;
  return gcd(f, d).is_one();
}

int moebius(const Poly& c) {
  if (c.is_zero()) fail(Errc::ZeroPolynomial, "moebius of the zero polynomial");
  if (!is_squarefree(c)) return 0;
  int count = static_cast<int>(factor_degrees(c).size());
  return count % 2 ? -1 : 1;
}

std::vector<int> factor_degrees(const Poly& f) {
  std::vector<int> out;
  for (const Factor& dd : distinct_degree_factor(f))
    for (int j = 0; j < dd.poly.deg() / dd.mult; ++j) out.push_back(dd.mult);
  std::sort(out.rbegin(), out.rend());
  return out;
}

std::vector<Root> roots(const Poly& f) {
  if (f.is_zero()) fail(Errc::ZeroPolynomial, "roots of the zero polynomial");
  std::vector<Root> out;
  if (f.deg() < 1) return out;
  const FieldPtr& F = f.field_ptr();
  Poly x = Poly::x(F);
  u64 k = 0;
  for (const Factor& s : squarefree_factor(f)) {
    Poly lin = s.poly.deg() == 1 ? s.poly : gcd(powmod(x, F->order(), s.poly) - x, s.poly);
    if (lin.deg() < 1) continue;
    for (const Poly& l : equal_degree_factor(lin, 1, derive_seed(0x5eed, k++)))
      out.push_back({-l.coeff(0), s.mult});
  }
  std::sort(out.begin(), out.end(),
            [&](const Root& a, const Root& b) { return F->compare(a.value.data(), b.value.data()) < 0; });
  return out;
}

std::vector<Root> roots_in_extension(const Poly& f, unsigned k) {
  Extension E = extend(f.field_ptr(), k);
  return roots(map_coeffs(f, *E.embedding));
}

}  // namespace ffgal
