#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ffgal/ff.hpp"

namespace ffgal {

// Dense univariate polynomial, low degree first, trailing zeros stripped.
// Coefficient i occupies raw()[i*nu .. i*nu+nu).
class Poly {
 public:
  Poly() = default;
  explicit Poly(FieldPtr f) : f_(std::move(f)) {}
  Poly(FieldPtr f, std::vector<u64> raw);

  static Poly zero(const FieldPtr& f) { return Poly(f); }
  static Poly one(const FieldPtr& f);
  static Poly x(const FieldPtr& f);
  static Poly constant(const FqElem& c);
  static Poly monomial(const FqElem& c, int k);
  static Poly from_ints(const FieldPtr& f, const std::vector<long long>& low_to_high);
  static Poly from_coeffs(const FieldPtr& f, const std::vector<FqElem>& low_to_high);

  const FieldPtr& field_ptr() const { return f_; }
  const Field& field() const { return *f_; }
  unsigned nu() const { return f_->nu(); }
  int deg() const { return f_ ? static_cast<int>(raw_.size() / f_->nu()) - 1 : -1; }
  bool is_zero() const { return raw_.empty(); }
  bool is_one() const;
  bool is_monic() const;
  const std::vector<u64>& raw() const { return raw_; }
  std::vector<u64>& raw_mut() { return raw_; }

  const u64* coef(int i) const { return raw_.data() + static_cast<size_t>(i) * f_->nu(); }
  u64* coef_mut(int i) { return raw_.data() + static_cast<size_t>(i) * f_->nu(); }
  FqElem coeff(int i) const;  // zero beyond the degree
  FqElem lc() const;
  void set_coeff(int i, const u64* c);
  void set_coeff(int i, const FqElem& c);
  void resize_terms(int n) { raw_.resize(static_cast<size_t>(n) * f_->nu(), 0); }
  void normalize();

  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

 private:
  FieldPtr f_;
  std::vector<u64> raw_;
};

void check_same_field(const Poly& a, const Poly& b);

Poly operator+(const Poly& a, const Poly& b);
Poly operator-(const Poly& a, const Poly& b);
Poly operator-(const Poly& a);
Poly operator*(const Poly& a, const Poly& b);
Poly operator*(const FqElem& c, const Poly& a);

Poly scale(const Poly& a, const u64* c);
Poly shift(const Poly& a, int k);  // a * X^k
Poly truncate(const Poly& a, int n);  // a mod X^n
void divrem(const Poly& a, const Poly& b, Poly& q, Poly& r);
Poly rem(const Poly& a, const Poly& b);
Poly quo(const Poly& a, const Poly& b);
// Exact quotient; throws if b does not divide a.
Poly exact_div(const Poly& a, const Poly& b);
Poly monic(const Poly& a);
Poly gcd(const Poly& a, const Poly& b);  // monic; gcd(0,0) = 0
// Returns monic g = s*a + t*b.
Poly xgcd(const Poly& a, const Poly& b, Poly& s, Poly& t);
// Inverse of a modulo m; throws NotCoprime when none exists.
Poly invmod(const Poly& a, const Poly& m);
Poly derivative(const Poly& a);
// Zero constant term; fails when a has a nonzero X^i term with p | i+1.
Poly antiderivative(const Poly& a);
FqElem eval(const Poly& a, const FqElem& x);
// Evaluate at x in an extension; coefficients are mapped through emb.
FqElem eval(const Poly& a, const FqElem& x, const Embedding& emb);
Poly map_coeffs(const Poly& a, const Embedding& emb);
// Preimage of every coefficient; false if some coefficient is outside the image.
bool restrict_coeffs(const Poly& a, const Embedding& emb, Poly& out);
Poly compose(const Poly& f, const Poly& g);  // f(g)
Poly mulmod(const Poly& a, const Poly& b, const Poly& m);
Poly powmod(const Poly& a, const BigInt& e, const Poly& m);
Poly pow(const Poly& a, unsigned e);
// p-th root of a polynomial whose derivative vanishes.
Poly pth_root(const Poly& a);

FqElem resultant(const Poly& f, const Poly& g);
FqElem discriminant(const Poly& f);

// Ordering used for factor lists: degree first, then coefficients compared from degree 0 up.
bool poly_less(const Poly& a, const Poly& b);

// X^q action on F_q[X]/(m): a |-> a^q mod m is F_q-linear, stored as the images of X^i.
class FrobeniusMap {
 public:
  explicit FrobeniusMap(const Poly& m);
  Poly apply(const Poly& a) const;  // a^q mod m
  const Poly& xq() const { return xq_; }

 private:
  Poly m_;
  Poly xq_;
  std::vector<Poly> rows_;
};

struct Factor {
  Poly poly;
  int mult;
};

struct Factorization {
  FqElem unit;
  std::vector<Factor> factors;
  Poly expand() const;
};

std::vector<Factor> squarefree_factor(const Poly& f);  // monic input
std::vector<Factor> distinct_degree_factor(const Poly& f);  // monic squarefree; mult field = degree
std::vector<Poly> equal_degree_factor(const Poly& f, int d, u64 seed);
Factorization factor(const Poly& f, u64 seed = 0x1234abcdULL);
bool is_irreducible(const Poly& f);
bool is_squarefree(const Poly& f);
int moebius(const Poly& c);
// Degree multiset of a squarefree polynomial's irreducible factors, sorted descending.
std::vector<int> factor_degrees(const Poly& f);

struct Root {
  FqElem value;
  int mult;
};
// Roots of f lying in f's own field, sorted in coordinate order.
std::vector<Root> roots(const Poly& f);
std::vector<Root> roots_in_extension(const Poly& f, unsigned k);

// Text form: sum of terms c*X^k, X^k, c. Coefficients use the element text form.
std::string to_string(const Poly& f, char var = 'X');
Poly parse_poly(const FieldPtr& f, const std::string& text, char var = 'X');

}  // namespace ffgal
