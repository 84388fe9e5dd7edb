#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ffgal/poly.hpp"

namespace ffgal {

// F(T, X) = sum_i coeff(i)(T) X^i, monic in X, X-degree >= 1.
class BiPoly {
 public:
  BiPoly() = default;
  BiPoly(FieldPtr f, std::vector<Poly> coeffs);

  const FieldPtr& field_ptr() const { return f_; }
  int deg_x() const { return static_cast<int>(c_.size()) - 1; }
  int deg_t() const;
  const Poly& coeff(int i) const { return c_[i]; }
  const std::vector<Poly>& coeffs() const { return c_; }
  bool operator==(const BiPoly& o) const;

 private:
  FieldPtr f_;
  std::vector<Poly> c_;
};

// X-derivative; the result need not be monic, so it is returned as raw coefficients.
std::vector<Poly> dx(const BiPoly& F);
// disc_X(F) in F_q[T], via a subresultant remainder sequence over F_q[T].
Poly disc_in_T(const BiPoly& F);
// F(t0, X) with t0 in the base field or in extend(base, k).field.
Poly specialize(const BiPoly& F, const FqElem& t0);
BiPoly substitute_T(const BiPoly& F, const Poly& h);

std::string to_string(const BiPoly& F);
// Accepts any sum/product expression in X and T that is monic in X.
BiPoly parse_bipoly(const FieldPtr& f, const std::string& text);

// w = f / c, read as the cover X -> T = w(X).
struct RatCover {
  Poly f, c;
  RatCover() = default;
  RatCover(Poly f, Poly c);  // validates gcd(f, c) = 1, c squarefree, deg c <= deg f - 2
  // Only gcd(f, c) = 1 and deg c < deg f; c may have repeated factors.
  static RatCover general(Poly f, Poly c);
  int n() const { return f.deg(); }
  int m() const { return c.deg(); }
  const FieldPtr& field_ptr() const { return f.field_ptr(); }
};

// (f - T c) / lc(f).
BiPoly cover_poly(const RatCover& w);
// Cover shape recognition: coefficients of degree <= 1 in T with f monic; returns a general cover.
std::optional<RatCover> as_cover(const BiPoly& F);

struct CoverDisc {
  Poly D;        // disc_X(f - U c), printed in U
  Poly product;  // prod over roots a of f'c - fc' of (U - w(a)), with multiplicity
  FqElem a;      // D = a * product
};
CoverDisc cover_disc(const RatCover& w);  // requires squarefree c

struct RamProfile {
  bool at_infinity = false;
  FqElem point;
  std::vector<int> partition;  // descending
  bool tame = true;
};
RamProfile ram_profile(const RatCover& w, const FqElem& beta);
// Pole orders of w: n - m at X = infinity and the multiplicity of each root of c.
RamProfile ram_profile_infinity(const RatCover& w);

struct PrimePowerDisc {
  Poly disc;
  Factorization factorization;
  bool ok = false;  // exactly one irreducible factor
  Poly prime;
  int r = 0;
  FqElem unit;
  bool unramified_finite = false;  // disc is a nonzero constant
};
PrimePowerDisc is_prime_power_disc(const BiPoly& F);
PrimePowerDisc prime_power_of(const Poly& disc);

// Embedding of base into t's field, which must be base itself or a canonical extension of it.
const Embedding& embedding_to(const FieldPtr& base, const FieldPtr& target);

}  // namespace ffgal
