#pragma once

#include <memory>
#include <string>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "ffgal/common.hpp"

namespace ffgal {

// Coordinates of a field element in the power basis of the field modulus.
using Coords = boost::container::small_vector<u64, 4>;

bool is_prime(u64 n);

class Field;
using FieldPtr = std::shared_ptr<const Field>;

// F_{p^nu}. Instances are canonical: make_field(p, nu) always returns the same object,
// so pointer equality is field equality.
class Field {
 public:
  u64 p() const { return p_; }
  unsigned nu() const { return nu_; }
  bool has_modulus() const { return nu_ > 1; }
  // Monic modulus over F_p, low degree first, length nu + 1. Empty for prime fields.
  const std::vector<u64>& modulus() const { return modulus_; }
  const BigInt& order() const { return order_; }
  // Field order when it fits in 64 bits, else 0.
  u64 order_u64() const { return order_u64_; }
  std::string name() const;

  void zero(u64* r) const;
  void one(u64* r) const;
  void set_int(long long v, u64* r) const;
  bool is_zero(const u64* a) const;
  bool is_one(const u64* a) const;
  bool equal(const u64* a, const u64* b) const;
  void copy(const u64* a, u64* r) const;
  void add(const u64* a, const u64* b, u64* r) const;
  void sub(const u64* a, const u64* b, u64* r) const;
  void neg(const u64* a, u64* r) const;
  void mul(const u64* a, const u64* b, u64* r) const;
  // r += a * b
  void mul_add(const u64* a, const u64* b, u64* r) const;
  // r -= a * b
  void mul_sub(const u64* a, const u64* b, u64* r) const;
  void inv(const u64* a, u64* r) const;
  void pow(const u64* a, const BigInt& e, u64* r) const;
  void frobenius(const u64* a, u64* r) const;  // a^p

  u64 addp(u64 a, u64 b) const { u64 s = a + b; return s >= p_ ? s - p_ : s; }
  u64 subp(u64 a, u64 b) const { return a >= b ? a - b : a + p_ - b; }
  u64 mulp(u64 a, u64 b) const {
    if (small_) return (a * b) % p_;
    return static_cast<u64>((static_cast<u128>(a) * b) % p_);
  }
  u64 invp(u64 a) const;

  Coords zero_coords() const { return Coords(nu_, 0); }
  Coords one_coords() const { Coords c(nu_, 0); c[0] = 1; return c; }
  Coords int_coords(long long v) const { Coords c(nu_, 0); set_int(v, c.data()); return c; }
  // Elements enumerated by base-p digits of index (coordinate 0 least significant).
  Coords element_at(u64 index) const;
  // Inverse of element_at; requires the order to fit in 64 bits.
  u64 index_of(const u64* a) const;
  // Lexicographic comparison of coordinate vectors, coordinate 0 first.
  int compare(const u64* a, const u64* b) const;

  Field(u64 p, unsigned nu, std::vector<u64> modulus);

 private:
  void reduce_product(u64* prod, u64* r) const;

  u64 p_;
  unsigned nu_;
  bool small_;
  std::vector<u64> modulus_;
  BigInt order_;
  u64 order_u64_;
};

FieldPtr make_field(u64 p, unsigned nu);
// Text form "p" or "p^nu".
FieldPtr parse_field(const std::string& text);
// Smallest prime power q = p^nu given q itself.
FieldPtr field_of_order(u64 q);

// Element of a specific field. Arithmetic across different fields is an error.
class FqElem {
 public:
  FqElem() = default;
  FqElem(FieldPtr f, Coords c);
  static FqElem zero(const FieldPtr& f);
  static FqElem one(const FieldPtr& f);
  static FqElem from_int(const FieldPtr& f, long long v);

  const FieldPtr& field() const { return field_; }
  const Coords& coords() const { return c_; }
  const u64* data() const { return c_.data(); }
  bool is_zero() const;
  bool is_one() const;

  FqElem operator+(const FqElem& o) const;
  FqElem operator-(const FqElem& o) const;
  FqElem operator-() const;
  FqElem operator*(const FqElem& o) const;
  FqElem operator/(const FqElem& o) const;
  bool operator==(const FqElem& o) const;
  bool operator!=(const FqElem& o) const { return !(*this == o); }
  FqElem inverse() const;
  FqElem pow(const BigInt& e) const;

  std::string to_string() const;
  static FqElem parse(const FieldPtr& f, const std::string& text);

 private:
  void check_same(const FqElem& o) const;
  FieldPtr field_;
  Coords c_;
};

bool is_lth_power(const FqElem& x, u64 l);
// Returns false when x is a non-square. The chosen root is the smaller of +-y in coordinate order.
bool sqrt_in_field(const FqElem& x, FqElem& out);
bool is_square(const FqElem& x);

// Field homomorphism base -> ext given by images of the base power basis.
class Embedding {
 public:
  Embedding() = default;
  Embedding(FieldPtr base, FieldPtr ext, std::vector<Coords> basis_images);
  const FieldPtr& base() const { return base_; }
  const FieldPtr& ext() const { return ext_; }
  unsigned degree() const { return ext_->nu() / base_->nu(); }
  void apply(const u64* a, u64* out) const;
  FqElem apply(const FqElem& a) const;
  // Preimage of b, if b lies in the image.
  bool restrict(const u64* b, u64* out) const;
  bool restrict(const FqElem& b, FqElem& out) const;
  const std::vector<Coords>& basis_images() const { return images_; }

 private:
  FieldPtr base_, ext_;
  std::vector<Coords> images_;
  std::vector<unsigned> pivots_;
  std::vector<std::vector<u64>> pivot_inverse_;
};

struct Extension {
  FieldPtr field;
  std::shared_ptr<const Embedding> embedding;
};

// F_{q^k} with the canonical embedding of base (least root of the base modulus).
Extension extend(const FieldPtr& base, unsigned k);

}  // namespace ffgal
