#include <algorithm>
#include <cctype>
#include <numeric>

#include "ffgal/construct.hpp"
#include "search.hpp"

namespace ffgal {

namespace {

[[noreturn]] void invalid(const std::string& fam, const std::string& clause) {
  fail(Errc::InvalidParams, fam + ": requires " + clause);
}

struct Params {
  const FamilySpec& spec;
  long long get(const std::string& k, long long dflt) const {
    auto it = spec.params.find(k);
    return it == spec.params.end() ? dflt : it->second;
  }
  long long need(const std::string& k) const {
    auto it = spec.params.find(k);
    if (it == spec.params.end()) invalid(spec.name, "parameter " + k);
    return it->second;
  }
};

Poly X(const FieldPtr& F) { return Poly::x(F); }
Poly C(const FieldPtr& F, long long v) { return Poly::constant(FqElem::from_int(F, v)); }
Poly Xk(const FieldPtr& F, int k) { return Poly::monomial(FqElem::one(F), k); }

// sum_{i<k} X^i
Poly geometric(const FieldPtr& F, int k) {
  Poly r(F);
  for (int i = 0; i < k; ++i) r = r + Xk(F, i);
  return r;
}

std::vector<int> ones(int k) { return std::vector<int>(std::max(k, 0), 1); }

std::vector<int> profile(std::vector<int> parts) {
  parts.erase(std::remove(parts.begin(), parts.end(), 0), parts.end());
  std::sort(parts.rbegin(), parts.rend());
  return parts;
}

std::vector<int> with_ones(std::vector<int> parts, int n) {
  int s = std::accumulate(parts.begin(), parts.end(), 0);
  for (int i = s; i < n; ++i) parts.push_back(1);
  return profile(parts);
}

// Least monic irreducible of degree d over F in index order satisfying pred.
template <class Pred>
Poly least_irreducible(const FieldPtr& F, int d, Pred pred) {
  for (u64 k = 0;; ++k) {
    Poly h = detail::poly_from_index(F, d, k);
    if (is_irreducible(h) && pred(h)) return h;
  }
}

// p-th root in F_p[X]/h, via the inverse Frobenius a -> a^{p^{deg h - 1}}.
Poly pth_root_mod(const Poly& a, const Poly& h) {
  const u64 p = h.field_ptr()->p();
  return powmod(rem(a, h), pow(BigInt(p), static_cast<unsigned>(h.deg() - 1)), h);
}

Poly map_poly(const Poly& a, const FieldPtr& K) {
  if (a.field_ptr() == K) return a;
  return map_coeffs(a, embedding_to(a.field_ptr(), K));
}

FieldPtr target_field(u64 p, long long nu) {
  if (nu < 1 || nu > 64) fail(Errc::InvalidParams, "nu must lie in 1..64");
  return make_field(p, static_cast<unsigned>(nu));
}

u64 prime_param(const Params& P, const std::string& fam) {
  long long p = P.need("p");
  if (p < 2 || !is_prime(static_cast<u64>(p))) invalid(fam, "p prime");
  return static_cast<u64>(p);
}

struct Built {
  Poly f, c;                // base cover over F_p
  std::optional<Poly> h;    // over F_p, in T
  std::optional<BiPoly> F;  // when not of cover shape
};

}  // namespace

FamilySpec parse_family(const std::string& text) {
  FamilySpec s;
  size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip();
  while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) s.name += text[i++];
  if (s.name.empty()) fail(Errc::Parse, "family spec needs a name");
  skip();
  if (i == text.size()) return s;
  if (text[i] != '(') fail(Errc::Parse, "expected '(' in family spec");
  ++i;
  skip();
  if (i < text.size() && text[i] == ')') {
    ++i;
  } else {
    for (;;) {
      skip();
      std::string key;
      while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) key += text[i++];
      skip();
      if (key.empty() || i >= text.size() || text[i] != '=') fail(Errc::Parse, "expected key=value in family spec");
      ++i;
      skip();
      size_t used = 0;
      long long v;
      try {
        v = std::stoll(text.substr(i), &used);
      } catch (const std::exception&) {
        fail(Errc::Parse, "bad integer for " + key);
      }
      if (s.params.count(key)) fail(Errc::Parse, "duplicate key " + key);
      s.params[key] = v;
      i += used;
      skip();
      if (i < text.size() && text[i] == ',') {
        ++i;
        continue;
      }
      if (i < text.size() && text[i] == ')') {
        ++i;
        break;
      }
      fail(Errc::Parse, "expected ',' or ')' in family spec");
    }
  }
  skip();
  if (i != text.size()) fail(Errc::Parse, "trailing characters in family spec");
  return s;
}

std::string to_string(const FamilySpec& s) {
  std::string out = s.name + "(";
  bool first = true;
  for (const auto& [k, v] : s.params) {
    if (!first) out += ",";
    out += k + "=" + std::to_string(v);
    first = false;
  }
  return out + ")";
}

std::vector<std::string> family_names() {
  return {"sn_odd", "sn_p",  "sn_pdiv", "sn_2pm1", "sn_even", "sn_even_pdiv", "sn2_odd", "sn2_even", "a4_p3",   "an_p1",
          "a6_p5",  "a5_c2", "a6_c2",   "a7_c2",   "an2_odd", "an2_even",     "a3a4_c2", "trinomial_sn"};
}

bool an_p1_residue_ok(u64 p, long long a) {
  auto Fp = make_field(p, 1);
  FqElem v = FqElem::from_int(Fp, a) * FqElem::from_int(Fp, a - 1);
  if (((p + 1) / 2) % 2) v = -v;
  return is_square(v);
}

FamilyInstance family(const FamilySpec& spec) {
  const Params P{spec};
  const std::string& name = spec.name;
  FamilyInstance out;
  out.spec = spec;
  Expected& ex = out.expect;
  Built b;
  FieldPtr Fp, K;

  if (name == "sn_odd" || name == "sn_p" || name == "sn_pdiv" || name == "sn_2pm1" || name == "sn_even" ||
      name == "sn_even_pdiv") {
    const u64 p = prime_param(P, name);
    if (p < 3) invalid(name, "p > 2");
    const int n = name == "sn_p" ? static_cast<int>(P.get("n", static_cast<long long>(p))) : static_cast<int>(P.need("n"));
    const long long up = static_cast<long long>(p);
    Fp = make_field(p, 1);
    K = target_field(p, P.get("nu", 1));
    ex.group = "S";
    ex.n = n;
    ex.branch_infinity = true;
    ex.finite_branch = {X(K)};
    if (name == "sn_odd") {
      if (n % 2 == 0) invalid(name, "n odd");
      if (n <= up) invalid(name, "n > p");
      if ((n + 1) % up == 0) invalid(name, "p does not divide n+1");
      b.f = Xk(Fp, static_cast<int>(p)) * geometric(Fp, n + 1 - static_cast<int>(p));
      b.c = pow(X(Fp) - C(Fp, 1), static_cast<unsigned>(p - 1));
      ex.disc_t_power = n;
      ex.profile_zero = with_ones({static_cast<int>(p)}, n);
      ex.profile_inf = profile({static_cast<int>(p) - 1, n + 1 - static_cast<int>(p)});
    } else if (name == "sn_p") {
      if (n != up) invalid(name, "n = p");
      b.f = Xk(Fp, n) + Xk(Fp, 2);
      b.c = Poly::one(Fp);
      ex.disc_t_power = 1;
      ex.profile_zero = with_ones({2}, n);
      ex.profile_inf = {n};
    } else if (name == "sn_pdiv") {
      if (n % 2 == 0) invalid(name, "n odd");
      if (n <= up || (n + 1) % up != 0) invalid(name, "n > p and p | n+1");
      if (n == 2 * up - 1) invalid(name, "n != 2p-1");
      Poly h = least_irreducible(Fp, 3, [](const Poly&) { return true; });
      Poly u = pth_root_mod(Xk(Fp, n + 3 - static_cast<int>(p)), h);
      if (u.coeff(0).is_zero()) u = u + h;
      Poly v = Xk(Fp, n + 3 - static_cast<int>(p)) - pow(u, static_cast<unsigned>(p));
      b.f = exact_div(v, h) * Xk(Fp, static_cast<int>(p));
      b.c = pow(h, static_cast<unsigned>(p - 1));
      ex.disc_t_power = n + 2;
      ex.profile_zero = with_ones({static_cast<int>(p)}, n);
      int pm1 = static_cast<int>(p) - 1;
      ex.profile_inf = profile({pm1, pm1, pm1, n - 3 * pm1});
      ex.notes = "h = " + to_string(h) + ", u = " + to_string(u);
    } else if (name == "sn_2pm1") {
      if (n != 2 * up - 1) invalid(name, "n = 2p-1");
      b.f = Xk(Fp, 2) * geometric(Fp, 2 * static_cast<int>(p) - 2);
      b.c = pow(X(Fp) - C(Fp, 1), static_cast<unsigned>(p - 1));
      ex.disc_t_power = 1;
      ex.profile_zero = with_ones({2}, n);
      ex.profile_inf = profile({static_cast<int>(p), static_cast<int>(p) - 1});
    } else if (name == "sn_even") {
      if (n % 2) invalid(name, "n even");
      if (n % up == 0) invalid(name, "p does not divide n");
      if (n <= up + 1) invalid(name, "n > p+1");
      b.f = Xk(Fp, n) + Xk(Fp, static_cast<int>(p));
      b.c = Poly::one(Fp);
      ex.disc_t_power = n - 1;
      ex.profile_zero = with_ones({static_cast<int>(p)}, n);
      ex.profile_inf = {n};
    } else {
      if (n % 2 || n % up != 0) invalid(name, "n even and p | n");
      Poly h = least_irreducible(Fp, 2, [](const Poly& c) { return !c.coeff(1).is_zero(); });
      Poly u = pth_root_mod(Xk(Fp, n + 2 - static_cast<int>(p)), h);
      if (u.coeff(0).is_zero() && n > 2 * up) u = u + h;
      if (u.coeff(0).is_zero()) fail(Errc::VerificationFailed, name + ": u(0) = 0 after normalization");
      Poly v = Xk(Fp, n + 2 - static_cast<int>(p)) - pow(u, static_cast<unsigned>(p));
      b.f = exact_div(v, h) * Xk(Fp, static_cast<int>(p));
      b.c = pow(h, static_cast<unsigned>(p - 1));
      ex.disc_t_power = n + 1;
      ex.profile_zero = with_ones({static_cast<int>(p)}, n);
      int pm1 = static_cast<int>(p) - 1;
      ex.profile_inf = profile({pm1, pm1, n - 2 * pm1});
      ex.notes = "h = " + to_string(h) + ", u = " + to_string(u);
    }
  } else if (name == "sn2_odd" || name == "sn2_even") {
    const int n = static_cast<int>(P.need("n"));
    if (P.get("p", 2) != 2) invalid(name, "p = 2");
    Fp = make_field(2, 1);
    K = target_field(2, P.get("nu", 1));
    ex.group = "S";
    ex.n = n;
    ex.trusted = true;
    if (name == "sn2_odd") {
      if (n < 3 || n % 2 == 0) invalid(name, "n odd, n >= 3");
      b.f = Xk(Fp, n) + C(Fp, 1);
      b.c = Xk(Fp, n - 2);
      ex.branch_infinity = true;
      ex.citation = "Abhyankar 1992, Sec. 11.I.5";
    } else {
      if (n < 4 || n % 2) invalid(name, "n even, n >= 4");
      Poly x1 = X(Fp) + C(Fp, 1);
      b.f = (pow(x1, static_cast<unsigned>(n - 1)) + Xk(Fp, n - 1)) * x1 * x1;
      b.c = Xk(Fp, n - 1);
      b.h = Xk(Fp, n - 1);
      ex.finite_branch = {X(K)};
      ex.branch_infinity = false;
      ex.citation = "Abhyankar 1992, Sec. 12.IV.4";
    }
  } else if (name == "a4_p3") {
    if (P.get("p", 3) != 3) invalid(name, "p = 3");
    Fp = make_field(3, 1);
    K = target_field(3, P.get("nu", 1));
    b.f = Xk(Fp, 4) + C(Fp, 1);
    b.c = Xk(Fp, 3);
    ex.group = "A";
    ex.n = 4;
    ex.disc = Poly::one(K);
    ex.disc_t_power = 0;
    ex.branch_infinity = true;
  } else if (name == "an_p1" || name == "a6_p5") {
    const bool six = name == "a6_p5";
    const u64 p = six ? 5 : prime_param(P, name);
    const long long a = six ? 2 : P.need("a");
    const long long up = static_cast<long long>(p);
    const long long nu = P.get("nu", 2);
    if (six) {
      if (P.get("p", 5) != 5) invalid(name, "p = 5");
      if (nu % 2) invalid(name, "F_q containing F_25");
    } else {
      if (p <= 5) invalid(name, "p > 5");
      if (a < 2 || 2 * a > up - 1) invalid(name, "2 <= a <= (p-1)/2");
      if (std::gcd(a, up + 1) != 1) invalid(name, "gcd(a, p+1) = 1");
      if (nu % 2 && !an_p1_residue_ok(p, a)) invalid(name, "F_q containing F_{p^2}, or (-1)^{(p+1)/2} a(a-1) a square mod p");
    }
    const long long s = six ? 4 : P.get("s", a * (up + 1 - a));
    if (!six && (s < 1 || s % (a * (up + 1 - a)) != 0)) invalid(name, "a(p+1-a) | s");
    Fp = make_field(p, 1);
    K = target_field(p, nu);
    FqElem bb = FqElem::from_int(Fp, a) / FqElem::from_int(Fp, a - 1);
    b.f = (X(Fp) + C(Fp, 1)) * pow(X(Fp) + Poly::constant(bb), static_cast<unsigned>(p));
    b.c = Xk(Fp, static_cast<int>(a));
    b.h = Xk(Fp, static_cast<int>(s));
    ex.group = "A";
    ex.n = static_cast<int>(p) + 1;
    FqElem unit = FqElem::from_int(Fp, a).pow(2 * a - 1) / FqElem::from_int(Fp, a - 1).pow(2 * a - 3);
    if (((p + 1) / 2) % 2) unit = -unit;
    ex.disc = map_poly(Poly::monomial(unit, static_cast<int>(s * (up + 1))), K);
    ex.disc_t_power = static_cast<int>(s * (up + 1));
    ex.finite_branch = {X(K)};
    ex.branch_infinity = false;
    ex.profile_zero = with_ones({static_cast<int>(p)}, ex.n);
    ex.profile_inf = profile({static_cast<int>(up + 1 - a), static_cast<int>(a)});
    ex.trusted = true;
    ex.citation = six ? "Abhyankar 1992, Sec. 12.IV.2" : "Abhyankar 1992, Sec. 12.IV.3; discriminant from Sec. 22";
  } else if (name == "a5_c2" || name == "a6_c2" || name == "a7_c2" || name == "an2_odd" || name == "an2_even" ||
             name == "a3a4_c2") {
    if (P.get("p", 2) != 2) invalid(name, "p = 2");
    const long long nu = P.get("nu", 2);
    Fp = make_field(2, 1);
    K = target_field(2, nu);
    ex.group = "A";
    ex.trusted = true;
    ex.branch_infinity = true;
    const bool f4 = nu % 2 == 0;
    if (name == "a5_c2" || name == "a6_c2" || name == "a7_c2") {
      if (!f4) invalid(name, "F_q containing F_4");
      ex.n = name[1] - '0';
      if (name == "a5_c2") {
        b.f = Xk(Fp, 5) + C(Fp, 1);
        b.c = X(Fp);
        ex.citation = "Abhyankar 1992, Sec. 11.III.1; Abhyankar-Ou-Sathaye 1994, (2.23)";
      } else if (name == "a7_c2") {
        b.f = Xk(Fp, 7) + Xk(Fp, 2) + C(Fp, 1);
        b.c = Xk(Fp, 4);
        ex.citation = "Abhyankar-Yie 1994, Theorem 2.11";
      } else {
        b.F = parse_bipoly(Fp,
                           "X^6 + T^27*X^5 + T^54*X^4 + (T^18 + T^36)*X^3 + T^108*X^2 + (T^90 + T^135)*X + T^162");
        ex.citation = "Abhyankar-Yie 1994, Theorem 2.10";
      }
    } else if (name == "an2_odd") {
      const int n = static_cast<int>(P.need("n"));
      if (n < 9 || n % 2 == 0) invalid(name, "n >= 9 odd");
      if (!(f4 || n % 8 == 1 || n % 8 == 7)) invalid(name, "n = 1,7 mod 8 or F_q containing F_4");
      ex.n = n;
      b.f = Xk(Fp, n) + C(Fp, 1);
      b.c = Xk(Fp, n - 4);
      ex.citation = "Abhyankar 1993, Theorem 2; Abhyankar-Ou-Sathaye 1994, (2.27)";
    } else if (name == "an2_even") {
      const int n = static_cast<int>(P.need("n"));
      if (n < 8 || n % 2) invalid(name, "n >= 8 even");
      const bool mod26 = n % 8 == 2 || n % 8 == 6;
      if (!(f4 || n % 8 == 0 || (mod26 && n != 10))) invalid(name, "n = 0,2,6 mod 8 with n != 10, or F_q containing F_4");
      auto valid_t = [&](long long t) {
        if (t < 2 || t > n - 4 || std::gcd(t, static_cast<long long>(n)) != 1) return false;
        return f4 || n % 8 == 0 || (2 * t - n) % 8 == 0;
      };
      long long t = P.get("t", 0);
      if (t == 0) {
        if (!f4 && mod26)
          t = n / 2 - 4;
        else
          for (t = 2; !valid_t(t); ++t) {
          }
      }
      if (!valid_t(t)) invalid(name, "2 <= t <= n-4, gcd(t, n) = 1, and 2t = n mod 8 when n = 2,6 mod 8 over F_2");
      ex.n = n;
      b.f = Xk(Fp, n) + Xk(Fp, static_cast<int>(t));
      b.c = C(Fp, 1);
      b.h = Xk(Fp, static_cast<int>(t));
      ex.notes = "t = " + std::to_string(t);
      ex.citation = "Abhyankar 1992, Sec. 11.II.5; Abhyankar-Ou-Sathaye 1994, Theorem 2.27";
    } else {
      const int n = static_cast<int>(P.need("n"));
      if (n != 3 && n != 4) invalid(name, "n in {3, 4}");
      if (!f4) invalid(name, "F_q containing F_4");
      if (n == 3) {
        b.f = Xk(Fp, 3);
        ex.n = 3;
        ex.notes = "Kummer extension s^3 = T";
      } else {
        b.f = pow(Xk(Fp, 2) + X(Fp), 3);
        ex.group = "A4@6";
        ex.n = 6;
        ex.notes = "Artin-Schreier tower over the Kummer extension s^3 = T; A_4 acts on the 6 roots";
      }
      b.c = C(Fp, 1);
      ex.finite_branch = {X(K)};
    }
  } else if (name == "trinomial_sn") {
    const u64 p = prime_param(P, name);
    const int n = static_cast<int>(P.need("n"));
    if (n < 3 || static_cast<u64>(n) >= p) invalid(name, "3 <= n < p");
    Fp = make_field(p, 1);
    K = target_field(p, P.get("nu", 1));
    b.f = Xk(Fp, n) - Xk(Fp, n - 1);
    b.c = Poly::one(Fp);
    ex.group = "S";
    ex.n = n;
    FqElem bb = trinomial_b(Fp, n);
    ex.finite_branch = {X(K), map_poly(X(Fp) - Poly::constant(bb), K)};
    ex.branch_infinity = true;
    ex.profile_zero = profile({n - 1, 1});
    ex.profile_inf = {n};
    ex.notes = "b = " + bb.to_string();
  } else {
    fail(Errc::InvalidParams, "unknown family '" + name + "'");
  }

  out.field = K;
  if (b.F) {
    std::vector<Poly> co;
    for (const Poly& c : b.F->coeffs()) co.push_back(map_poly(c, K));
    out.F = BiPoly(K, std::move(co));
  } else {
    RatCover w = RatCover::general(map_poly(b.f, K), map_poly(b.c, K));
    out.cover = w;
    BiPoly base = cover_poly(w);
    if (b.h) {
      out.h = map_poly(*b.h, K);
      out.F = substitute_T(base, *out.h);
    } else {
      out.F = base;
    }
  }
  if (ex.disc_t_power >= 0 && !ex.disc) {
    // unit unknown a priori; the certifier checks the shape
  }
  return out;
}

}  // namespace ffgal
