#include "ffgal/cover.hpp"

#include <algorithm>

#include "text.hpp"

namespace ffgal {

namespace {

using TPoly = std::vector<Poly>;  // polynomial in X with coefficients in F_q[T]

int degx(const TPoly& a) {
  int d = static_cast<int>(a.size()) - 1;
  while (d >= 0 && a[d].is_zero()) --d;
  return d;
}

void trim(TPoly& a) { a.resize(degx(a) + 1); }

// lc(b)^{deg a - deg b + 1} a mod b.
TPoly prem(TPoly a, const TPoly& b) {
  const int db = degx(b);
  const Poly& l = b[db];
  int steps = degx(a) - db + 1;
  while (degx(a) >= db) {
    int da = degx(a);
    Poly lead = a[da];
    for (auto& x : a) x = l * x;
    for (int j = 0; j <= db; ++j) a[da - db + j] = a[da - db + j] - lead * b[j];
    trim(a);
    --steps;
  }
  if (steps > 0) {
    Poly lp = pow(l, static_cast<unsigned>(steps));
    for (auto& x : a) x = lp * x;
  }
  trim(a);
  return a;
}

// Resultant over F_q[T] by the subresultant algorithm, without content removal.
Poly resultant_T(TPoly A, TPoly B, const FieldPtr& F) {
  trim(A);
  trim(B);
  if (A.empty() || B.empty()) return Poly(F);
  Poly g = Poly::one(F), h = Poly::one(F);
  bool neg = false;
  if (degx(A) < degx(B)) {
    std::swap(A, B);
    if (degx(A) % 2 && degx(B) % 2) neg = !neg;
  }
  while (degx(B) > 0) {
    int delta = degx(A) - degx(B);
    if (degx(A) % 2 && degx(B) % 2) neg = !neg;
    TPoly R = prem(A, B);
    if (R.empty()) return Poly(F);
    A = std::move(B);
    Poly div = g * pow(h, static_cast<unsigned>(delta));
    for (auto& x : R) x = exact_div(x, div);
    B = std::move(R);
    g = A[degx(A)];
    // h <- g^delta / h^(delta-1)
    if (delta > 0) h = exact_div(pow(g, static_cast<unsigned>(delta)), pow(h, static_cast<unsigned>(delta - 1)));
  }
  int da = degx(A);
  Poly res;
  if (da == 0)
    res = Poly::one(F);
  else
    res = exact_div(pow(B[0], static_cast<unsigned>(da)), pow(h, static_cast<unsigned>(da - 1)));
  return neg ? -res : res;
}

}  // namespace

BiPoly::BiPoly(FieldPtr f, std::vector<Poly> coeffs) : f_(std::move(f)), c_(std::move(coeffs)) {
  for (const Poly& p : c_)
    if (p.field_ptr() != f_) fail(Errc::FieldMismatch, "bivariate coefficient from another field");
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  if (c_.size() < 2) fail(Errc::Precondition, "bivariate polynomial must have X-degree >= 1");
  if (!c_.back().is_one()) fail(Errc::Precondition, "bivariate polynomial must be monic in X");
}

int BiPoly::deg_t() const {
  int d = 0;
  for (const Poly& p : c_) d = std::max(d, p.deg());
  return d;
}

bool BiPoly::operator==(const BiPoly& o) const {
  if (f_ != o.f_ || c_.size() != o.c_.size()) return false;
  for (size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != o.c_[i]) return false;
  return true;
}

std::vector<Poly> dx(const BiPoly& F) {
  std::vector<Poly> d;
  const Field& K = *F.field_ptr();
  for (int i = 1; i <= F.deg_x(); ++i) {
    Coords k(K.nu());
    K.set_int(i, k.data());
    d.push_back(scale(F.coeff(i), k.data()));
  }
  while (!d.empty() && d.back().is_zero()) d.pop_back();
  return d;
}

Poly disc_in_T(const BiPoly& F) {
  std::vector<Poly> d = dx(F);
  if (d.empty()) fail(Errc::InseparableInX, "X-derivative vanishes");
  const long n = F.deg_x();
  // F monic: disc = (-1)^{n(n-1)/2} Res_X(F, F_X)
  Poly r = resultant_T(F.coeffs(), d, F.field_ptr());
  return (n * (n - 1) / 2) % 2 ? -r : r;
}

const Embedding& embedding_to(const FieldPtr& base, const FieldPtr& target) {
  if (target->p() != base->p() || target->nu() % base->nu() != 0)
    fail(Errc::FieldMismatch, "F_" + target->name() + " is not an extension of F_" + base->name());
  Extension E = extend(base, target->nu() / base->nu());
  if (E.field != target) fail(Errc::FieldMismatch, "field is not the canonical extension");
  return *E.embedding;
}

Poly specialize(const BiPoly& F, const FqElem& t0) {
  const Embedding& em = embedding_to(F.field_ptr(), t0.field());
  Poly r(t0.field());
  r.resize_terms(F.deg_x() + 1);
  for (int i = 0; i <= F.deg_x(); ++i) r.set_coeff(i, eval(F.coeff(i), t0, em));
  r.normalize();
  return r;
}

BiPoly substitute_T(const BiPoly& F, const Poly& h) {
  if (h.deg() < 1) fail(Errc::Precondition, "substitution requires a nonconstant h");
  std::vector<Poly> c;
  for (const Poly& p : F.coeffs()) c.push_back(compose(p, h));
  return BiPoly(F.field_ptr(), std::move(c));
}

std::string to_string(const BiPoly& F) {
  std::string out;
  for (int i = F.deg_x(); i >= 0; --i) {
    const Poly& c = F.coeff(i);
    if (c.is_zero()) continue;
    if (!out.empty()) out += " + ";
    std::string mono = i == 0 ? "" : i == 1 ? "X" : "X^" + std::to_string(i);
    if (i == 0)
      out += "(" + to_string(c, 'T') + ")";
    else if (c.is_one())
      out += mono;
    else
      out += "(" + to_string(c, 'T') + ")*" + mono;
  }
  return out;
}

BiPoly parse_bipoly(const FieldPtr& f, const std::string& text) {
  detail::Terms t = detail::parse_terms(f, text, 'X', 'T');
  int dx = 0;
  for (const auto& [k, v] : t) dx = std::max(dx, k.first);
  std::vector<Poly> c(dx + 1, Poly(f));
  for (const auto& [k, v] : t) c[k.first].set_coeff(k.second, v.data());
  for (auto& p : c) p.normalize();
  return BiPoly(f, std::move(c));
}

RatCover::RatCover(Poly f_, Poly c_) : f(std::move(f_)), c(std::move(c_)) {
  check_same_field(f, c);
  if (c.is_zero()) fail(Errc::Precondition, "cover denominator is zero");
  if (f.deg() < 2 || c.deg() > f.deg() - 2) fail(Errc::Precondition, "cover needs deg c <= deg f - 2");
  if (!is_squarefree(c)) fail(Errc::NotSquarefree, "cover denominator must be squarefree");
  if (!gcd(f, c).is_one()) fail(Errc::NotCoprime, "cover numerator and denominator share a factor");
}

RatCover RatCover::general(Poly f, Poly c) {
  check_same_field(f, c);
  if (c.is_zero()) fail(Errc::Precondition, "cover denominator is zero");
  if (f.deg() < 1 || c.deg() >= f.deg()) fail(Errc::Precondition, "cover needs deg c < deg f");
  if (!gcd(f, c).is_one()) fail(Errc::NotCoprime, "cover numerator and denominator share a factor");
  RatCover w;
  w.f = std::move(f);
  w.c = std::move(c);
  return w;
}

BiPoly cover_poly(const RatCover& w) {
  const FieldPtr& F = w.field_ptr();
  FqElem il = w.f.lc().inverse();
  std::vector<Poly> co;
  Poly mt = Poly::monomial(-il, 1);  // -T / lc(f)
  for (int i = 0; i <= w.n(); ++i) {
    Poly e = Poly::constant(w.f.coeff(i) * il);
    if (i <= w.m()) e = e + w.c.coeff(i) * mt;
    co.push_back(e);
  }
  return BiPoly(F, std::move(co));
}

std::optional<RatCover> as_cover(const BiPoly& F) {
  const FieldPtr& K = F.field_ptr();
  std::vector<FqElem> f, c;
  for (const Poly& p : F.coeffs()) {
    if (p.deg() > 1) return std::nullopt;
    f.push_back(p.coeff(0));
    c.push_back(-p.coeff(1));
  }
  Poly fp = Poly::from_coeffs(K, f), cp = Poly::from_coeffs(K, c);
  if (fp.deg() != F.deg_x() || cp.is_zero()) return std::nullopt;
  try {
    return RatCover::general(fp, cp);
  } catch (const Error&) {
    return std::nullopt;
  }
}

CoverDisc cover_disc(const RatCover& w) {
  const FieldPtr& F = w.field_ptr();
  if (derivative(w.f).is_zero()) fail(Errc::DerivativeVanishes, "f' vanishes");
  if (!is_squarefree(w.c)) fail(Errc::NotSquarefree, "cover_disc needs squarefree c");
  CoverDisc out;
  // disc(lc * G) = lc^{2n-2} disc(G) for G monic of degree n
  out.D = scale(disc_in_T(cover_poly(w)), w.f.lc().pow(2 * w.n() - 2).data());
  Poly g = derivative(w.f) * w.c - w.f * derivative(w.c);
  Poly prod = Poly::one(F);
  for (const Factor& fa : factor(g).factors) {
    const unsigned d = static_cast<unsigned>(fa.poly.deg());
    Extension E = extend(F, d);
    const Embedding& em = *E.embedding;
    Poly local = Poly::one(E.field);
    for (const Root& r : roots_in_extension(fa.poly, d)) {
      FqElem val = eval(w.f, r.value, em) / eval(w.c, r.value, em);
      local = local * Poly::from_coeffs(E.field, {-val, FqElem::one(E.field)});
    }
    Poly back;
    if (!restrict_coeffs(local, em, back)) fail(Errc::VerificationFailed, "conjugate product not defined over F_q");
    prod = prod * pow(back, static_cast<unsigned>(fa.mult));
  }
  out.product = prod;
  if (out.D.deg() != prod.deg()) fail(Errc::VerificationFailed, "cover discriminant degree mismatch");
  out.a = out.D.lc() / prod.lc();
  if (out.D != out.a * prod) fail(Errc::VerificationFailed, "cover discriminant product identity failed");
  return out;
}

RamProfile ram_profile(const RatCover& w, const FqElem& beta) {
  const Embedding& em = embedding_to(w.field_ptr(), beta.field());
  Poly fe = map_coeffs(w.f, em), ce = map_coeffs(w.c, em);
  Poly h = fe - beta * ce;
  RamProfile out;
  out.point = beta;
  for (const Factor& s : squarefree_factor(h))
    for (int d : factor_degrees(s.poly))
      for (int i = 0; i < d; ++i) out.partition.push_back(s.mult);
  std::sort(out.partition.rbegin(), out.partition.rend());
  const u64 p = w.field_ptr()->p();
  for (int e : out.partition)
    if (static_cast<u64>(e) % p == 0) out.tame = false;
  return out;
}

RamProfile ram_profile_infinity(const RatCover& w) {
  RamProfile out;
  out.at_infinity = true;
  out.partition.push_back(w.n() - w.m());
  if (w.m() > 0)
    for (const Factor& s : squarefree_factor(monic(w.c)))
      for (int d : factor_degrees(s.poly))
        for (int i = 0; i < d; ++i) out.partition.push_back(s.mult);
  std::sort(out.partition.rbegin(), out.partition.rend());
  const u64 p = w.field_ptr()->p();
  for (int e : out.partition)
    if (static_cast<u64>(e) % p == 0) out.tame = false;
  return out;
}

PrimePowerDisc prime_power_of(const Poly& disc) {
  if (disc.is_zero()) fail(Errc::ZeroPolynomial, "discriminant vanishes");
  PrimePowerDisc out;
  out.disc = disc;
  out.factorization = factor(disc);
  out.unit = out.factorization.unit;
  out.unramified_finite = disc.deg() == 0;
  if (out.factorization.factors.size() == 1) {
    out.ok = true;
    out.prime = out.factorization.factors[0].poly;
    out.r = out.factorization.factors[0].mult;
  }
  return out;
}

PrimePowerDisc is_prime_power_disc(const BiPoly& F) { return prime_power_of(disc_in_T(F)); }

}  // namespace ffgal
