#include "ffgal/ff.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

#include "ffgal/poly.hpp"

namespace ffgal {

const char* errc_name(Errc e) {
  switch (e) {
    case Errc::NotPrime: return "NotPrime";
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::Parse: return "Parse";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::ZeroPolynomial: return "ZeroPolynomial";
    case Errc::DerivativeVanishes: return "DerivativeVanishes";
    case Errc::InseparableInX: return "InseparableInX";
    case Errc::Precondition: return "Precondition";
    case Errc::NotSquarefree: return "NotSquarefree";
    case Errc::NotCoprime: return "NotCoprime";
    case Errc::NoSolution: return "NoSolution";
    case Errc::NoSquareRoot: return "NoSquareRoot";
    case Errc::Unsupported: return "Unsupported";
    case Errc::HypothesisViolated: return "HypothesisViolated";
    case Errc::BudgetExhausted: return "BudgetExhausted";
    case Errc::StrategyInapplicable: return "StrategyInapplicable";
    case Errc::DegreeNotDivisible: return "DegreeNotDivisible";
    case Errc::DiscNotPrimePower: return "DiscNotPrimePower";
    case Errc::TooLarge: return "TooLarge";
    case Errc::InvalidParams: return "InvalidParams";
    case Errc::SearchFailed: return "SearchFailed";
    case Errc::VerificationFailed: return "VerificationFailed";
  }
  return "Unknown";
}

namespace {

u64 mulmod64(u64 a, u64 b, u64 m) { return static_cast<u64>((static_cast<u128>(a) * b) % m); }

u64 powmod64(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod64(r, a, m);
    a = mulmod64(a, a, m);
    e >>= 1;
  }
  return r;
}

constexpr u64 kMaxPrime = u64{1} << 61;
constexpr unsigned kMaxDegree = 64;

}  // namespace

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 sp : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % sp == 0) return n == sp;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These bases are a deterministic witness set for all 64-bit n.
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = powmod64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Field::Field(u64 p, unsigned nu, std::vector<u64> modulus)
    : p_(p), nu_(nu), small_(p < (u64{1} << 32)), modulus_(std::move(modulus)) {
  order_ = 1;
  for (unsigned i = 0; i < nu; ++i) order_ *= p;
  order_u64_ = order_ <= BigInt(std::numeric_limits<u64>::max()) ? static_cast<u64>(order_) : 0;
}

std::string Field::name() const {
  if (nu_ == 1) return std::to_string(p_);
  return std::to_string(p_) + "^" + std::to_string(nu_);
}

void Field::zero(u64* r) const { std::fill(r, r + nu_, 0); }
void Field::one(u64* r) const {
  std::fill(r, r + nu_, 0);
  r[0] = 1 % p_;
}
void Field::set_int(long long v, u64* r) const {
  std::fill(r, r + nu_, 0);
  if (v >= 0) {
    r[0] = static_cast<u64>(v) % p_;
  } else {
    u64 a = static_cast<u64>(-(v + 1)) % p_;  // avoids overflow at LLONG_MIN
    a = addp(a, 1 % p_);
    r[0] = a == 0 ? 0 : p_ - a;
  }
}
bool Field::is_zero(const u64* a) const {
  for (unsigned i = 0; i < nu_; ++i)
    if (a[i]) return false;
  return true;
}
bool Field::is_one(const u64* a) const {
  if (a[0] != 1) return false;
  for (unsigned i = 1; i < nu_; ++i)
    if (a[i]) return false;
  return true;
}
bool Field::equal(const u64* a, const u64* b) const { return std::equal(a, a + nu_, b); }
void Field::copy(const u64* a, u64* r) const { std::copy(a, a + nu_, r); }
void Field::add(const u64* a, const u64* b, u64* r) const {
  for (unsigned i = 0; i < nu_; ++i) r[i] = addp(a[i], b[i]);
}
void Field::sub(const u64* a, const u64* b, u64* r) const {
  for (unsigned i = 0; i < nu_; ++i) r[i] = subp(a[i], b[i]);
}
void Field::neg(const u64* a, u64* r) const {
  for (unsigned i = 0; i < nu_; ++i) r[i] = a[i] ? p_ - a[i] : 0;
}

void Field::reduce_product(u64* prod, u64* r) const {
  const unsigned n = nu_;
  for (unsigned i = 2 * n - 2; i >= n; --i) {
    u64 t = prod[i];
    if (t == 0) continue;
    for (unsigned j = 0; j < n; ++j) {
      if (modulus_[j]) prod[i - n + j] = subp(prod[i - n + j], mulp(t, modulus_[j]));
    }
  }
  std::copy(prod, prod + n, r);
}

void Field::mul(const u64* a, const u64* b, u64* r) const {
  if (nu_ == 1) {
    r[0] = mulp(a[0], b[0]);
    return;
  }
  const unsigned n = nu_;
  u64 prod[2 * kMaxDegree];
  if (small_) {
    for (unsigned k = 0; k + 1 < 2 * n; ++k) {
      u128 acc = 0;
      unsigned lo = k + 1 > n ? k + 1 - n : 0;
      unsigned hi = std::min(k, n - 1);
      for (unsigned i = lo; i <= hi; ++i) acc += static_cast<u128>(a[i] * b[k - i]);
      prod[k] = static_cast<u64>(acc % p_);
    }
  } else {
    std::fill(prod, prod + 2 * n - 1, 0);
    for (unsigned i = 0; i < n; ++i) {
      if (!a[i]) continue;
      for (unsigned j = 0; j < n; ++j) prod[i + j] = addp(prod[i + j], mulp(a[i], b[j]));
    }
  }
  reduce_product(prod, r);
}

void Field::mul_add(const u64* a, const u64* b, u64* r) const {
  if (nu_ == 1) {
    r[0] = addp(r[0], mulp(a[0], b[0]));
    return;
  }
  u64 t[kMaxDegree];
  mul(a, b, t);
  add(r, t, r);
}

void Field::mul_sub(const u64* a, const u64* b, u64* r) const {
  if (nu_ == 1) {
    r[0] = subp(r[0], mulp(a[0], b[0]));
    return;
  }
  u64 t[kMaxDegree];
  mul(a, b, t);
  sub(r, t, r);
}

u64 Field::invp(u64 a) const {
  if (a == 0) fail(Errc::DivisionByZero, "inverse of zero");
  // extended Euclid on integers
  __int128 t = 0, nt = 1;
  __int128 r = p_, nr = a;
  while (nr != 0) {
    __int128 q = r / nr;
    __int128 tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (t < 0) t += p_;
  return static_cast<u64>(t);
}

namespace {

// Small helpers for polynomials over F_p stored as plain vectors (low degree first).
void trim(std::vector<u64>& v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
}

}  // namespace

void Field::inv(const u64* a, u64* r) const {
  if (nu_ == 1) {
    r[0] = invp(a[0]);
    return;
  }
  if (is_zero(a)) fail(Errc::DivisionByZero, "inverse of zero");
  std::vector<u64> r0(modulus_.begin(), modulus_.end());
  std::vector<u64> r1(a, a + nu_);
  trim(r1);
  std::vector<u64> s0, s1{1};
  while (r1.size() > 1) {
    // r0 = q*r1 + rem
    std::vector<u64> q(r0.size() - r1.size() + 1, 0);
    u64 il = invp(r1.back());
    while (r0.size() >= r1.size() && !r0.empty()) {
      size_t shiftv = r0.size() - r1.size();
      u64 c = mulp(r0.back(), il);
      q[shiftv] = c;
      for (size_t j = 0; j < r1.size(); ++j) r0[shiftv + j] = subp(r0[shiftv + j], mulp(c, r1[j]));
      trim(r0);
    }
    // s = s0 - q*s1
    std::vector<u64> s(std::max(s0.size(), q.size() + s1.size()), 0);
    for (size_t i = 0; i < s0.size(); ++i) s[i] = s0[i];
    for (size_t i = 0; i < q.size(); ++i)
      for (size_t j = 0; j < s1.size(); ++j) s[i + j] = subp(s[i + j], mulp(q[i], s1[j]));
    trim(s);
    s0 = std::move(s1);
    s1 = std::move(s);
    std::swap(r0, r1);
  }
  u64 c = invp(r1[0]);
  std::fill(r, r + nu_, 0);
  for (size_t i = 0; i < s1.size() && i < nu_; ++i) r[i] = mulp(s1[i], c);
}

void Field::pow(const u64* a, const BigInt& e, u64* r) const {
  if (e < 0) {
    u64 t[kMaxDegree];
    inv(a, t);
    pow(t, -e, r);
    return;
  }
  u64 acc[kMaxDegree];
  one(acc);
  if (e == 0) {
    copy(acc, r);
    return;
  }
  u64 base[kMaxDegree];
  copy(a, base);
  unsigned top = boost::multiprecision::msb(e);
  for (int i = static_cast<int>(top); i >= 0; --i) {
    mul(acc, acc, acc);
    if (boost::multiprecision::bit_test(e, static_cast<unsigned>(i))) mul(acc, base, acc);
  }
  copy(acc, r);
}

void Field::frobenius(const u64* a, u64* r) const {
  if (nu_ == 1) {
    r[0] = a[0];
    return;
  }
  pow(a, BigInt(p_), r);
}

Coords Field::element_at(u64 index) const {
  Coords c(nu_, 0);
  for (unsigned i = 0; i < nu_ && index; ++i) {
    c[i] = index % p_;
    index /= p_;
  }
  return c;
}

u64 Field::index_of(const u64* a) const {
  u64 idx = 0;
  for (int i = static_cast<int>(nu_) - 1; i >= 0; --i) idx = idx * p_ + a[i];
  return idx;
}

int Field::compare(const u64* a, const u64* b) const {
  for (unsigned i = 0; i < nu_; ++i) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

namespace {

std::mutex& registry_mutex() {
  static std::mutex m;
  return m;
}
std::map<std::pair<u64, unsigned>, FieldPtr>& field_registry() {
  static std::map<std::pair<u64, unsigned>, FieldPtr> r;
  return r;
}

FieldPtr lookup_field(u64 p, unsigned nu) {
  std::lock_guard<std::mutex> lock(registry_mutex());
  auto it = field_registry().find({p, nu});
  return it == field_registry().end() ? nullptr : it->second;
}

FieldPtr insert_field(FieldPtr f) {
  std::lock_guard<std::mutex> lock(registry_mutex());
  auto [it, inserted] = field_registry().emplace(std::make_pair(f->p(), f->nu()), f);
  return it->second;
}

// Least monic irreducible of degree nu over F_p, coefficient vectors (a0, ..., a_{nu-1})
// taken in lexicographic order with a0 compared first.
std::vector<u64> least_irreducible(const FieldPtr& fp, unsigned nu) {
  const u64 p = fp->p();
  std::vector<u64> a(nu, 0);
  a[0] = 1;  // a0 = 0 gives a root at 0
  for (;;) {
    std::vector<u64> raw(a.begin(), a.end());
    raw.push_back(1);
    Poly cand(fp, raw);
    if (is_irreducible(cand)) return raw;
    int i = static_cast<int>(nu) - 1;
    while (i >= 0) {
      if (++a[i] < p) break;
      a[i] = 0;
      --i;
    }
    if (i < 0) fail(Errc::SearchFailed, "no irreducible modulus found");
  }
}

}  // namespace

FieldPtr make_field(u64 p, unsigned nu) {
  if (nu == 0) fail(Errc::OutOfRange, "extension degree must be positive");
  if (nu > kMaxDegree) fail(Errc::OutOfRange, "extension degree above 64");
  if (p > kMaxPrime) fail(Errc::OutOfRange, "characteristic above 2^61");
  if (!is_prime(p)) fail(Errc::NotPrime, std::to_string(p) + " is not prime");
  if (auto f = lookup_field(p, nu)) return f;
  if (nu == 1) return insert_field(std::make_shared<const Field>(p, 1, std::vector<u64>{}));
  FieldPtr fp = make_field(p, 1);
  std::vector<u64> mod = least_irreducible(fp, nu);
  return insert_field(std::make_shared<const Field>(p, nu, std::move(mod)));
}

FieldPtr parse_field(const std::string& text) {
  auto pos = text.find('^');
  try {
    size_t used = 0;
    if (pos == std::string::npos) {
      u64 p = std::stoull(text, &used);
      if (used != text.size()) fail(Errc::Parse, "bad field spec '" + text + "'");
      return make_field(p, 1);
    }
    u64 p = std::stoull(text.substr(0, pos), &used);
    if (used != pos) fail(Errc::Parse, "bad field spec '" + text + "'");
    std::string rest = text.substr(pos + 1);
    unsigned nu = static_cast<unsigned>(std::stoul(rest, &used));
    if (used != rest.size()) fail(Errc::Parse, "bad field spec '" + text + "'");
    return make_field(p, nu);
  } catch (const std::logic_error&) {
    fail(Errc::Parse, "bad field spec '" + text + "'");
  }
}

FieldPtr field_of_order(u64 q) {
  if (q < 2) fail(Errc::NotPrime, "field order must be a prime power");
  u64 p = 0;
  for (u64 d = 2; d * d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) return make_field(q, 1);
  unsigned nu = 0;
  u64 r = q;
  while (r % p == 0) {
    r /= p;
    ++nu;
  }
  if (r != 1) fail(Errc::NotPrime, std::to_string(q) + " is not a prime power");
  return make_field(p, nu);
}

// ---------------------------------------------------------------- FqElem

FqElem::FqElem(FieldPtr f, Coords c) : field_(std::move(f)), c_(std::move(c)) {
  if (c_.size() != field_->nu()) fail(Errc::OutOfRange, "coordinate count does not match field");
  for (u64 v : c_)
    if (v >= field_->p()) fail(Errc::OutOfRange, "coordinate out of range");
}
FqElem FqElem::zero(const FieldPtr& f) { return FqElem(f, f->zero_coords()); }
FqElem FqElem::one(const FieldPtr& f) { return FqElem(f, f->one_coords()); }
FqElem FqElem::from_int(const FieldPtr& f, long long v) { return FqElem(f, f->int_coords(v)); }

bool FqElem::is_zero() const { return field_->is_zero(c_.data()); }
bool FqElem::is_one() const { return field_->is_one(c_.data()); }

void FqElem::check_same(const FqElem& o) const {
  if (field_ != o.field_) fail(Errc::FieldMismatch, "elements of F_" + field_->name() + " and F_" + o.field_->name());
}

FqElem FqElem::operator+(const FqElem& o) const {
  check_same(o);
  Coords r(field_->nu());
  field_->add(c_.data(), o.c_.data(), r.data());
  return FqElem(field_, std::move(r));
}
FqElem FqElem::operator-(const FqElem& o) const {
  check_same(o);
  Coords r(field_->nu());
  field_->sub(c_.data(), o.c_.data(), r.data());
  return FqElem(field_, std::move(r));
}
FqElem FqElem::operator-() const {
  Coords r(field_->nu());
  field_->neg(c_.data(), r.data());
  return FqElem(field_, std::move(r));
}
FqElem FqElem::operator*(const FqElem& o) const {
  check_same(o);
  Coords r(field_->nu());
  field_->mul(c_.data(), o.c_.data(), r.data());
  return FqElem(field_, std::move(r));
}
FqElem FqElem::operator/(const FqElem& o) const { return *this * o.inverse(); }
bool FqElem::operator==(const FqElem& o) const {
  check_same(o);
  return field_->equal(c_.data(), o.c_.data());
}
FqElem FqElem::inverse() const {
  Coords r(field_->nu());
  field_->inv(c_.data(), r.data());
  return FqElem(field_, std::move(r));
}
FqElem FqElem::pow(const BigInt& e) const {
  Coords r(field_->nu());
  field_->pow(c_.data(), e, r.data());
  return FqElem(field_, std::move(r));
}

std::string FqElem::to_string() const {
  if (field_->nu() == 1) return std::to_string(c_[0]);
  std::ostringstream os;
  os << '[';
  for (size_t i = 0; i < c_.size(); ++i) {
    if (i) os << ',';
    os << c_[i];
  }
  os << ']';
  return os.str();
}

FqElem FqElem::parse(const FieldPtr& f, const std::string& text) {
  std::string t;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) t.push_back(ch);
  try {
    if (!t.empty() && t.front() == '[') {
      if (t.back() != ']') fail(Errc::Parse, "unterminated element '" + text + "'");
      Coords c(f->nu(), 0);
      std::string body = t.substr(1, t.size() - 2);
      std::stringstream ss(body);
      std::string item;
      unsigned i = 0;
      while (std::getline(ss, item, ',')) {
        if (i >= f->nu()) fail(Errc::Parse, "too many coordinates in '" + text + "'");
        long long v = std::stoll(item);
        c[i++] = f->int_coords(v)[0];
      }
      return FqElem(f, c);
    }
    size_t used = 0;
    long long v = std::stoll(t, &used);
    if (used != t.size()) fail(Errc::Parse, "bad element '" + text + "'");
    return from_int(f, v);
  } catch (const std::logic_error&) {
    fail(Errc::Parse, "bad element '" + text + "'");
  }
}

bool is_lth_power(const FqElem& x, u64 l) {
  if (x.is_zero()) fail(Errc::Precondition, "is_lth_power of zero");
  BigInt qm1 = x.field()->order() - 1;
  if (qm1 % l != 0) return true;
  return x.pow(qm1 / l).is_one();
}

bool is_square(const FqElem& x) {
  if (x.is_zero() || x.field()->p() == 2) return true;
  return is_lth_power(x, 2);
}

bool sqrt_in_field(const FqElem& x, FqElem& out) {
  const FieldPtr& F = x.field();
  if (x.is_zero()) {
    out = x;
    return true;
  }
  const BigInt& Q = F->order();
  if (F->p() == 2) {
    out = x.pow(Q / 2);
    return true;
  }
  if (!x.pow((Q - 1) / 2).is_one()) return false;
  BigInt t = Q - 1;
  unsigned s = 0;
  while ((t & 1) == 0) {
    t >>= 1;
    ++s;
  }
  FqElem z;
  FqElem minus_one = -FqElem::one(F);
  for (u64 idx = 2;; ++idx) {
    FqElem cand(F, F->element_at(idx));
    if (cand.pow((Q - 1) / 2) == minus_one) {
      z = cand;
      break;
    }
  }
  unsigned M = s;
  FqElem c = z.pow(t);
  FqElem tt = x.pow(t);
  FqElem R = x.pow((t + 1) / 2);
  while (!tt.is_one()) {
    unsigned i = 0;
    FqElem sq = tt;
    while (!sq.is_one()) {
      sq = sq * sq;
      ++i;
    }
    FqElem b = c;
    for (unsigned j = 0; j + i + 1 < M; ++j) b = b * b;
    M = i;
    c = b * b;
    tt = tt * c;
    R = R * b;
  }
  FqElem other = -R;
  out = F->compare(R.data(), other.data()) <= 0 ? R : other;
  return true;
}

// ---------------------------------------------------------------- Embedding

Embedding::Embedding(FieldPtr base, FieldPtr ext, std::vector<Coords> basis_images)
    : base_(std::move(base)), ext_(std::move(ext)), images_(std::move(basis_images)) {
  const unsigned n = base_->nu();
  const unsigned N = ext_->nu();
  const Field& fp = *ext_;
  // Row-reduce a copy of the image matrix to locate pivot columns.
  std::vector<std::vector<u64>> B(n, std::vector<u64>(N));
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < N; ++j) B[i][j] = images_[i][j];
  unsigned row = 0;
  for (unsigned col = 0; col < N && row < n; ++col) {
    unsigned piv = row;
    while (piv < n && B[piv][col] == 0) ++piv;
    if (piv == n) continue;
    std::swap(B[piv], B[row]);
    u64 il = fp.invp(B[row][col]);
    for (auto& v : B[row]) v = fp.mulp(v, il);
    for (unsigned r = 0; r < n; ++r) {
      if (r == row || B[r][col] == 0) continue;
      u64 c = B[r][col];
      for (unsigned j = 0; j < N; ++j) B[r][j] = fp.subp(B[r][j], fp.mulp(c, B[row][j]));
    }
    pivots_.push_back(col);
    ++row;
  }
  if (pivots_.size() != n) fail(Errc::VerificationFailed, "embedding is not injective");
  // S = images restricted to pivot columns; store S^{-1}.
  std::vector<std::vector<u64>> S(n, std::vector<u64>(2 * n, 0));
  for (unsigned i = 0; i < n; ++i) {
    for (unsigned j = 0; j < n; ++j) S[i][j] = images_[i][pivots_[j]];
    S[i][n + i] = 1;
  }
  for (unsigned col = 0; col < n; ++col) {
    unsigned piv = col;
    while (S[piv][col] == 0) ++piv;
    std::swap(S[piv], S[col]);
    u64 il = fp.invp(S[col][col]);
    for (auto& v : S[col]) v = fp.mulp(v, il);
    for (unsigned r = 0; r < n; ++r) {
      if (r == col || S[r][col] == 0) continue;
      u64 c = S[r][col];
      for (unsigned j = 0; j < 2 * n; ++j) S[r][j] = fp.subp(S[r][j], fp.mulp(c, S[col][j]));
    }
  }
  pivot_inverse_.assign(n, std::vector<u64>(n));
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j) pivot_inverse_[i][j] = S[i][n + j];
}

void Embedding::apply(const u64* a, u64* out) const {
  const Field& E = *ext_;
  const unsigned n = base_->nu();
  E.zero(out);
  for (unsigned i = 0; i < n; ++i) {
    if (!a[i]) continue;
    for (unsigned j = 0; j < E.nu(); ++j) out[j] = E.addp(out[j], E.mulp(a[i], images_[i][j]));
  }
}

FqElem Embedding::apply(const FqElem& a) const {
  if (a.field() != base_) fail(Errc::FieldMismatch, "embedding applied to element of another field");
  Coords c(ext_->nu());
  apply(a.data(), c.data());
  return FqElem(ext_, std::move(c));
}

bool Embedding::restrict(const u64* b, u64* out) const {
  const Field& E = *ext_;
  const unsigned n = base_->nu();
  // a = b[pivots] * S^{-1}, where S has rows images_[i] at the pivot columns.
  for (unsigned j = 0; j < n; ++j) {
    u64 acc = 0;
    for (unsigned i = 0; i < n; ++i) acc = E.addp(acc, E.mulp(b[pivots_[i]], pivot_inverse_[i][j]));
    out[j] = acc;
  }
  Coords check(E.nu());
  apply(out, check.data());
  return E.equal(check.data(), b);
}

bool Embedding::restrict(const FqElem& b, FqElem& out) const {
  if (b.field() != ext_) fail(Errc::FieldMismatch, "restriction of element of another field");
  Coords c(base_->nu());
  if (!restrict(b.data(), c.data())) return false;
  out = FqElem(base_, std::move(c));
  return true;
}

namespace {

std::mutex& ext_mutex() {
  static std::mutex m;
  return m;
}
std::map<std::tuple<u64, unsigned, unsigned>, Extension>& ext_registry() {
  static std::map<std::tuple<u64, unsigned, unsigned>, Extension> r;
  return r;
}

}  // namespace

Extension extend(const FieldPtr& base, unsigned k) {
  if (k == 0) fail(Errc::OutOfRange, "extension degree must be positive");
  const auto key = std::make_tuple(base->p(), base->nu(), k);
  {
    std::lock_guard<std::mutex> lock(ext_mutex());
    auto it = ext_registry().find(key);
    if (it != ext_registry().end()) return it->second;
  }
  FieldPtr E = make_field(base->p(), base->nu() * k);
  std::vector<Coords> images;
  const unsigned n = base->nu();
  if (k == 1) {
    for (unsigned i = 0; i < n; ++i) {
      Coords c(n, 0);
      c[i] = 1;
      images.push_back(c);
    }
  } else if (n == 1) {
    images.push_back(E->one_coords());
  } else {
    std::vector<u64> raw;
    for (u64 m : base->modulus()) {
      Coords c = E->int_coords(static_cast<long long>(m));
      raw.insert(raw.end(), c.begin(), c.end());
    }
    Poly M(E, raw);
    auto rs = roots(M);
    if (rs.empty()) fail(Errc::VerificationFailed, "base modulus has no root in extension");
    const FqElem& r = rs.front().value;  // roots() returns coordinate order
    FqElem acc = FqElem::one(E);
    for (unsigned i = 0; i < n; ++i) {
      images.push_back(acc.coords());
      acc = acc * r;
    }
  }
  Extension ext{E, std::make_shared<const Embedding>(base, E, std::move(images))};
  std::lock_guard<std::mutex> lock(ext_mutex());
  auto [it, inserted] = ext_registry().emplace(key, ext);
  return it->second;
}

}  // namespace ffgal
