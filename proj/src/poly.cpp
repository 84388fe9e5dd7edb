#include "ffgal/poly.hpp"

#include <algorithm>

namespace ffgal {

Poly::Poly(FieldPtr f, std::vector<u64> raw) : f_(std::move(f)), raw_(std::move(raw)) {
  if (raw_.size() % f_->nu() != 0) fail(Errc::OutOfRange, "raw coefficient length not a multiple of nu");
  for (u64 v : raw_)
    if (v >= f_->p()) fail(Errc::OutOfRange, "coefficient out of range");
  normalize();
}

Poly Poly::one(const FieldPtr& f) { return constant(FqElem::one(f)); }

Poly Poly::x(const FieldPtr& f) { return monomial(FqElem::one(f), 1); }

Poly Poly::constant(const FqElem& c) { return monomial(c, 0); }

Poly Poly::monomial(const FqElem& c, int k) {
  Poly r(c.field());
  if (c.is_zero()) return r;
  r.resize_terms(k + 1);
  r.set_coeff(k, c.data());
  return r;
}

Poly Poly::from_ints(const FieldPtr& f, const std::vector<long long>& low_to_high) {
  Poly r(f);
  r.resize_terms(static_cast<int>(low_to_high.size()));
  for (size_t i = 0; i < low_to_high.size(); ++i) f->set_int(low_to_high[i], r.coef_mut(static_cast<int>(i)));
  r.normalize();
  return r;
}

Poly Poly::from_coeffs(const FieldPtr& f, const std::vector<FqElem>& low_to_high) {
  Poly r(f);
  r.resize_terms(static_cast<int>(low_to_high.size()));
  for (size_t i = 0; i < low_to_high.size(); ++i) r.set_coeff(static_cast<int>(i), low_to_high[i]);
  r.normalize();
  return r;
}

bool Poly::is_one() const { return deg() == 0 && f_->is_one(coef(0)); }
bool Poly::is_monic() const { return !is_zero() && f_->is_one(coef(deg())); }

FqElem Poly::coeff(int i) const {
  if (i < 0 || i > deg()) return FqElem::zero(f_);
  return FqElem(f_, Coords(coef(i), coef(i) + nu()));
}

FqElem Poly::lc() const {
  if (is_zero()) return FqElem::zero(f_);
  return coeff(deg());
}

void Poly::set_coeff(int i, const u64* c) {
  if (i > deg()) resize_terms(i + 1);
  f_->copy(c, coef_mut(i));
}

void Poly::set_coeff(int i, const FqElem& c) {
  if (c.field() != f_) fail(Errc::FieldMismatch, "coefficient from another field");
  set_coeff(i, c.data());
}

void Poly::normalize() {
  const unsigned n = f_->nu();
  size_t len = raw_.size();
  while (len >= n) {
    bool zero = true;
    for (unsigned j = 0; j < n; ++j)
      if (raw_[len - n + j]) {
        zero = false;
        break;
      }
    if (!zero) break;
    len -= n;
  }
  raw_.resize(len);
}

bool Poly::operator==(const Poly& o) const {
  check_same_field(*this, o);
  return raw_ == o.raw_;
}

void check_same_field(const Poly& a, const Poly& b) {
  if (a.field_ptr() != b.field_ptr())
    fail(Errc::FieldMismatch, "polynomials over F_" + a.field().name() + " and F_" + b.field().name());
}

Poly operator+(const Poly& a, const Poly& b) {
  check_same_field(a, b);
  const Field& F = a.field();
  const Poly& big = a.deg() >= b.deg() ? a : b;
  const Poly& small = a.deg() >= b.deg() ? b : a;
  Poly r = big;
  for (int i = 0; i <= small.deg(); ++i) F.add(r.coef(i), small.coef(i), r.coef_mut(i));
  r.normalize();
  return r;
}

Poly operator-(const Poly& a) {
  Poly r = a;
  for (int i = 0; i <= r.deg(); ++i) a.field().neg(r.coef(i), r.coef_mut(i));
  return r;
}

Poly operator-(const Poly& a, const Poly& b) {
  check_same_field(a, b);
  const Field& F = a.field();
  Poly r = a;
  if (b.deg() > r.deg()) r.resize_terms(b.deg() + 1);
  for (int i = 0; i <= b.deg(); ++i) F.sub(r.coef(i), b.coef(i), r.coef_mut(i));
  r.normalize();
  return r;
}

Poly operator*(const Poly& a, const Poly& b) {
  check_same_field(a, b);
  if (a.is_zero() || b.is_zero()) return Poly(a.field_ptr());
  const Field& F = a.field();
  const int da = a.deg(), db = b.deg();
  Poly r(a.field_ptr());
  r.resize_terms(da + db + 1);
  if (F.nu() == 1 && F.p() < (u64{1} << 32)) {
    const u64* A = a.raw().data();
    const u64* B = b.raw().data();
    u64* R = r.raw_mut().data();
    const u64 p = F.p();
    for (int k = 0; k <= da + db; ++k) {
      int lo = std::max(0, k - db), hi = std::min(k, da);
      u128 acc = 0;
      for (int i = lo; i <= hi; ++i) acc += static_cast<u128>(A[i] * B[k - i]);
      R[k] = static_cast<u64>(acc % p);
    }
  } else {
    for (int i = 0; i <= da; ++i) {
      if (F.is_zero(a.coef(i))) continue;
      for (int j = 0; j <= db; ++j) F.mul_add(a.coef(i), b.coef(j), r.coef_mut(i + j));
    }
  }
  r.normalize();
  return r;
}

Poly operator*(const FqElem& c, const Poly& a) {
  if (c.field() != a.field_ptr()) fail(Errc::FieldMismatch, "scalar from another field");
  return scale(a, c.data());
}

Poly scale(const Poly& a, const u64* c) {
  const Field& F = a.field();
  Poly r = a;
  for (int i = 0; i <= r.deg(); ++i) F.mul(a.coef(i), c, r.coef_mut(i));
  r.normalize();
  return r;
}

Poly shift(const Poly& a, int k) {
  if (a.is_zero()) return a;
  Poly r(a.field_ptr());
  std::vector<u64>& raw = r.raw_mut();
  raw.assign(static_cast<size_t>(k) * a.nu(), 0);
  raw.insert(raw.end(), a.raw().begin(), a.raw().end());
  return r;
}

Poly truncate(const Poly& a, int n) {
  if (a.deg() < n) return a;
  Poly r(a.field_ptr());
  r.raw_mut().assign(a.raw().begin(), a.raw().begin() + static_cast<long>(n) * a.nu());
  r.normalize();
  return r;
}

void divrem(const Poly& a, const Poly& b, Poly& q, Poly& r) {
  check_same_field(a, b);
  if (b.is_zero()) fail(Errc::DivisionByZero, "polynomial division by zero");
  const Field& F = a.field();
  const unsigned n = F.nu();
  const int db = b.deg();
  Poly rr = a;
  Poly qq(a.field_ptr());
  if (a.deg() < db) {
    q = qq;
    r = rr;
    return;
  }
  qq.resize_terms(a.deg() - db + 1);
  Coords il(n);
  F.inv(b.coef(db), il.data());
  const bool monic_b = F.is_one(b.coef(db));
  Coords c(n);
  if (n == 1) {
    u64* R = rr.raw_mut().data();
    const u64* B = b.raw().data();
    u64* Q = qq.raw_mut().data();
    for (int i = a.deg(); i >= db; --i) {
      u64 t = R[i];
      if (!t) continue;
      if (!monic_b) t = F.mulp(t, il[0]);
      Q[i - db] = t;
      for (int j = 0; j <= db; ++j)
        if (B[j]) R[i - db + j] = F.subp(R[i - db + j], F.mulp(t, B[j]));
    }
  } else {
    for (int i = a.deg(); i >= db; --i) {
      if (F.is_zero(rr.coef(i))) continue;
      if (monic_b)
        F.copy(rr.coef(i), c.data());
      else
        F.mul(rr.coef(i), il.data(), c.data());
      F.copy(c.data(), qq.coef_mut(i - db));
      for (int j = 0; j <= db; ++j)
        if (!F.is_zero(b.coef(j))) F.mul_sub(c.data(), b.coef(j), rr.coef_mut(i - db + j));
    }
  }
  rr.raw_mut().resize(static_cast<size_t>(db) * n);
  rr.normalize();
  qq.normalize();
  q = std::move(qq);
  r = std::move(rr);
}

Poly rem(const Poly& a, const Poly& b) {
  Poly q, r;
  divrem(a, b, q, r);
  return r;
}

Poly quo(const Poly& a, const Poly& b) {
  Poly q, r;
  divrem(a, b, q, r);
  return q;
}

Poly exact_div(const Poly& a, const Poly& b) {
  Poly q, r;
  divrem(a, b, q, r);
  if (!r.is_zero()) fail(Errc::VerificationFailed, "inexact polynomial division");
  return q;
}

Poly monic(const Poly& a) {
  if (a.is_zero() || a.is_monic()) return a;
  Coords il(a.nu());
  a.field().inv(a.coef(a.deg()), il.data());
  return scale(a, il.data());
}

Poly gcd(const Poly& a, const Poly& b) {
  check_same_field(a, b);
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = rem(x, y);
    x = std::move(y);
    y = std::move(r);
  }
  return monic(x);
}

Poly xgcd(const Poly& a, const Poly& b, Poly& s, Poly& t) {
  check_same_field(a, b);
  const FieldPtr& F = a.field_ptr();
  Poly r0 = a, r1 = b;
  Poly s0 = Poly::one(F), s1(F);
  Poly t0(F), t1 = Poly::one(F);
  while (!r1.is_zero()) {
    Poly q, r;
    divrem(r0, r1, q, r);
    Poly s2 = s0 - q * s1;
    Poly t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) {
    s = s0;
    t = t0;
    return r0;
  }
  Coords il(a.nu());
  a.field().inv(r0.coef(r0.deg()), il.data());
  s = scale(s0, il.data());
  t = scale(t0, il.data());
  return scale(r0, il.data());
}

Poly invmod(const Poly& a, const Poly& m) {
  Poly s, t;
  Poly g = xgcd(rem(a, m), m, s, t);
  if (!g.is_one()) fail(Errc::NotCoprime, "polynomial not invertible modulo m");
  return rem(s, m);
}

Poly derivative(const Poly& a) {
  const Field& F = a.field();
  Poly r(a.field_ptr());
  if (a.deg() <= 0) return r;
  r.resize_terms(a.deg());
  Coords k(F.nu());
  for (int i = 1; i <= a.deg(); ++i) {
    F.set_int(i, k.data());
    F.mul(a.coef(i), k.data(), r.coef_mut(i - 1));
  }
  r.normalize();
  return r;
}

Poly antiderivative(const Poly& a) {
  const Field& F = a.field();
  Poly r(a.field_ptr());
  if (a.is_zero()) return r;
  r.resize_terms(a.deg() + 2);
  Coords k(F.nu());
  for (int i = 0; i <= a.deg(); ++i) {
    if ((static_cast<u64>(i) + 1) % F.p() == 0) {
      if (!F.is_zero(a.coef(i))) fail(Errc::Precondition, "no antiderivative: X^" + std::to_string(i) + " term in characteristic p");
      continue;
    }
    F.set_int(i + 1, k.data());
    F.inv(k.data(), k.data());
    F.mul(a.coef(i), k.data(), r.coef_mut(i + 1));
  }
  r.normalize();
  return r;
}

FqElem eval(const Poly& a, const FqElem& x) {
  if (x.field() != a.field_ptr()) fail(Errc::FieldMismatch, "evaluation point from another field");
  const Field& F = a.field();
  Coords acc(F.nu(), 0);
  for (int i = a.deg(); i >= 0; --i) {
    F.mul(acc.data(), x.data(), acc.data());
    F.add(acc.data(), a.coef(i), acc.data());
  }
  return FqElem(a.field_ptr(), std::move(acc));
}

FqElem eval(const Poly& a, const FqElem& x, const Embedding& emb) {
  if (a.field_ptr() != emb.base() || x.field() != emb.ext())
    fail(Errc::FieldMismatch, "evaluation through an embedding of the wrong fields");
  const Field& E = *emb.ext();
  Coords acc(E.nu(), 0), c(E.nu());
  for (int i = a.deg(); i >= 0; --i) {
    E.mul(acc.data(), x.data(), acc.data());
    emb.apply(a.coef(i), c.data());
    E.add(acc.data(), c.data(), acc.data());
  }
  return FqElem(emb.ext(), std::move(acc));
}

Poly map_coeffs(const Poly& a, const Embedding& emb) {
  if (a.field_ptr() != emb.base()) fail(Errc::FieldMismatch, "embedding of the wrong field");
  if (emb.base() == emb.ext()) return a;
  Poly r(emb.ext());
  r.resize_terms(a.deg() + 1);
  for (int i = 0; i <= a.deg(); ++i) emb.apply(a.coef(i), r.coef_mut(i));
  r.normalize();
  return r;
}

bool restrict_coeffs(const Poly& a, const Embedding& emb, Poly& out) {
  if (a.field_ptr() != emb.ext()) fail(Errc::FieldMismatch, "restriction from the wrong field");
  Poly r(emb.base());
  r.resize_terms(a.deg() + 1);
  for (int i = 0; i <= a.deg(); ++i)
    if (!emb.restrict(a.coef(i), r.coef_mut(i))) return false;
  r.normalize();
  out = std::move(r);
  return true;
}

Poly compose(const Poly& f, const Poly& g) {
  check_same_field(f, g);
  Poly r(f.field_ptr());
  for (int i = f.deg(); i >= 0; --i) {
    r = r * g;
    Poly c = Poly::constant(f.coeff(i));
    r = r + c;
  }
  return r;
}

Poly mulmod(const Poly& a, const Poly& b, const Poly& m) { return rem(a * b, m); }

Poly powmod(const Poly& a, const BigInt& e, const Poly& m) {
  if (e < 0) fail(Errc::Precondition, "negative exponent");
  Poly base = rem(a, m);
  Poly acc = rem(Poly::one(a.field_ptr()), m);
  if (e == 0) return acc;
  unsigned top = boost::multiprecision::msb(e);
  for (int i = static_cast<int>(top); i >= 0; --i) {
    acc = mulmod(acc, acc, m);
    if (boost::multiprecision::bit_test(e, static_cast<unsigned>(i))) acc = mulmod(acc, base, m);
  }
  return acc;
}

Poly pow(const Poly& a, unsigned e) {
  Poly acc = Poly::one(a.field_ptr());
  Poly base = a;
  while (e) {
    if (e & 1) acc = acc * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return acc;
}

Poly pth_root(const Poly& a) {
  const Field& F = a.field();
  const u64 p = F.p();
  Poly r(a.field_ptr());
  if (a.is_zero()) return r;
  BigInt e = 1;
  for (unsigned i = 1; i < F.nu(); ++i) e *= p;  // x^(1/p) = x^(p^(nu-1))
  r.resize_terms(a.deg() / static_cast<int>(p) + 1);
  for (int i = 0; i <= a.deg(); ++i) {
    if (F.is_zero(a.coef(i))) continue;
    if (static_cast<u64>(i) % p != 0) fail(Errc::Precondition, "pth_root of a polynomial with nonzero derivative");
    F.pow(a.coef(i), e, r.coef_mut(i / static_cast<int>(p)));
  }
  r.normalize();
  return r;
}

FqElem resultant(const Poly& f0, const Poly& g0) {
  check_same_field(f0, g0);
  if (f0.is_zero() || g0.is_zero()) fail(Errc::ZeroPolynomial, "resultant with the zero polynomial");
  const FieldPtr& F = f0.field_ptr();
  Poly f = f0, g = g0;
  FqElem res = FqElem::one(F);
  const FqElem minus_one = -FqElem::one(F);
  for (;;) {
    const int m = f.deg(), n = g.deg();
    if (n == 0) return res * g.lc().pow(m);
    if (m == 0) return res * f.lc().pow(n);
    if (m < n) {
      if ((m * n) % 2) res = res * minus_one;
      std::swap(f, g);
      continue;
    }
    Poly r = rem(f, g);
    if (r.is_zero()) return FqElem::zero(F);
    // Res(f,g) = (-1)^{mn} lc(g)^{m - deg r} Res(g, r)
    if ((m * n) % 2) res = res * minus_one;
    res = res * g.lc().pow(m - r.deg());
    f = std::move(g);
    g = std::move(r);
  }
}

FqElem discriminant(const Poly& f) {
  if (f.deg() < 1) fail(Errc::Precondition, "discriminant of a constant");
  Poly fp = derivative(f);
  if (fp.is_zero()) fail(Errc::DerivativeVanishes, "derivative vanishes");
  const long n = f.deg(), d = fp.deg();
  FqElem r = resultant(fp, f);
  long sign = n * (n - 1) / 2 + n * d;
  if (sign % 2) r = -r;
  return r * f.lc().pow(BigInt(n - d - 2));
}

bool poly_less(const Poly& a, const Poly& b) {
  if (a.deg() != b.deg()) return a.deg() < b.deg();
  const Field& F = a.field();
  for (int i = 0; i <= a.deg(); ++i) {
    int c = F.compare(a.coef(i), b.coef(i));
    if (c) return c < 0;
  }
  return false;
}

FrobeniusMap::FrobeniusMap(const Poly& m) : m_(monic(m)) {
  const int n = m_.deg();
  xq_ = powmod(Poly::x(m_.field_ptr()), m_.field().order(), m_);
  rows_.reserve(n);
  Poly cur = rem(Poly::one(m_.field_ptr()), m_);
  for (int i = 0; i < n; ++i) {
    rows_.push_back(cur);
    if (i + 1 < n) cur = mulmod(cur, xq_, m_);
  }
}

Poly FrobeniusMap::apply(const Poly& a0) const {
  const Field& F = m_.field();
  Poly a = a0.deg() >= m_.deg() ? rem(a0, m_) : a0;
  Poly r(m_.field_ptr());
  r.resize_terms(std::max(m_.deg(), 1));
  for (int i = 0; i <= a.deg(); ++i) {
    if (F.is_zero(a.coef(i))) continue;
    const Poly& row = rows_[i];
    for (int j = 0; j <= row.deg(); ++j) F.mul_add(a.coef(i), row.coef(j), r.coef_mut(j));
  }
  r.normalize();
  return r;
}

}  // namespace ffgal
