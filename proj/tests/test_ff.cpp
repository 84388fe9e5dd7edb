#include <random>
#include <set>

#include "doctest.h"
#include "ffgal/poly.hpp"

using namespace ffgal;

namespace {

std::vector<FqElem> all_elements(const FieldPtr& F) {
  std::vector<FqElem> out;
  for (u64 i = 0; i < F->order_u64(); ++i) out.emplace_back(F, F->element_at(i));
  return out;
}

const std::vector<std::pair<u64, unsigned>> kSmallFields = {{2, 1}, {3, 1}, {5, 1}, {7, 1}, {2, 2}, {2, 3},
                                                            {3, 2}, {5, 2}, {7, 2}, {2, 4}, {3, 3}, {2, 5}};

}  // namespace

TEST_CASE("primality") {
  CHECK(is_prime(2));
  CHECK(is_prime(1000000007));
  CHECK(is_prime(2305843009213693951ULL));  // 2^61 - 1
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(561));
  CHECK_FALSE(is_prime(3215031751ULL));
  CHECK_THROWS_AS(make_field(6, 1), Error);
}

TEST_CASE("field moduli are the least irreducible") {
  auto F4 = make_field(2, 2);
  CHECK(F4->modulus() == std::vector<u64>{1, 1, 1});
  CHECK(make_field(5, 1)->modulus().empty());
  CHECK(make_field(5, 2) == make_field(5, 2));

  // oracle: enumerate monic quadratics over F_5 low coefficients first, keep the first without roots
  std::vector<u64> expect;
  for (u64 a0 = 0; a0 < 5 && expect.empty(); ++a0)
    for (u64 a1 = 0; a1 < 5 && expect.empty(); ++a1) {
      bool root = false;
      for (u64 x = 0; x < 5; ++x) root |= (x * x + a1 * x + a0) % 5 == 0;
      if (!root) expect = {a0, a1, 1};
    }
  CHECK(make_field(5, 2)->modulus() == expect);
  CHECK(expect == std::vector<u64>{1, 1, 1});
}

TEST_CASE("field text forms") {
  CHECK(parse_field("5") == make_field(5, 1));
  CHECK(parse_field("2^2") == make_field(2, 2));
  CHECK(field_of_order(25) == make_field(5, 2));
  CHECK_THROWS(field_of_order(12));
  CHECK_THROWS(parse_field("6"));
  auto F25 = make_field(5, 2);
  FqElem a = FqElem::parse(F25, "[1,3]");
  CHECK(a.to_string() == "[1,3]");
  CHECK(FqElem::parse(make_field(7, 1), "-1").to_string() == "6");
}

TEST_CASE("field axioms exhaustive for small fields") {
  for (auto [p, nu] : kSmallFields) {
    auto F = make_field(p, nu);
    if (F->order_u64() > 49) continue;
    auto E = all_elements(F);
    for (const auto& a : E) {
      if (!a.is_zero()) CHECK((a * a.inverse()).is_one());
      for (const auto& b : E) {
        CHECK(a * b == b * a);
        CHECK(a + b - b == a);
        for (const auto& c : E) {
          if ((a * (b * c)) != ((a * b) * c)) FAIL("associativity");
          if (a * (b + c) != a * b + a * c) FAIL("distributivity");
        }
      }
    }
  }
}

TEST_CASE("field axioms randomized on larger fields") {
  std::mt19937_64 rng(7);
  for (auto [p, nu] : std::vector<std::pair<u64, unsigned>>{{101, 3}, {2, 10}, {1000003, 2}, {2305843009213693951ULL, 1}, {4294967311ULL, 2}}) {
    auto F = make_field(p, nu);
    auto rnd = [&] {
      Coords c(nu);
      for (auto& v : c) v = rng() % p;
      return FqElem(F, c);
    };
    for (int i = 0; i < 10000 / 5; ++i) {
      FqElem a = rnd(), b = rnd(), c = rnd();
      CHECK(a * (b * c) == (a * b) * c);
      CHECK(a * (b + c) == a * b + a * c);
      if (!a.is_zero()) CHECK((a * a.inverse()).is_one());
    }
  }
}

TEST_CASE("frobenius is a bijective ring homomorphism") {
  for (auto [p, nu] : kSmallFields) {
    auto F = make_field(p, nu);
    if (F->order_u64() > 64) continue;
    auto E = all_elements(F);
    std::set<u64> image;
    for (const auto& a : E) {
      FqElem fa = a.pow(p);
      Coords r(nu);
      F->frobenius(a.data(), r.data());
      CHECK(FqElem(F, r) == fa);
      image.insert(F->index_of(fa.data()));
      for (const auto& b : E) {
        CHECK((a + b).pow(p) == fa + b.pow(p));
        CHECK((a * b).pow(p) == fa * b.pow(p));
      }
    }
    CHECK(image.size() == E.size());
  }
}

TEST_CASE("lth powers agree with enumeration") {
  for (auto [p, nu] : kSmallFields) {
    auto F = make_field(p, nu);
    if (F->order_u64() > 49) continue;
    auto E = all_elements(F);
    for (u64 l : {2, 3, 5, 7}) {
      std::set<u64> powers;
      for (const auto& y : E)
        if (!y.is_zero()) powers.insert(F->index_of(y.pow(l).data()));
      for (const auto& x : E) {
        if (x.is_zero()) continue;
        CHECK(is_lth_power(x, l) == (powers.count(F->index_of(x.data())) == 1));
      }
    }
  }
  auto F5 = make_field(5, 1);
  CHECK_FALSE(is_lth_power(FqElem::from_int(F5, 3), 2));
  CHECK(is_lth_power(FqElem::one(F5), 3));
  for (const auto& x : all_elements(make_field(2, 2)))
    if (!x.is_zero()) CHECK(is_lth_power(x, 5));
}

TEST_CASE("square roots") {
  auto F5 = make_field(5, 1);
  FqElem y;
  REQUIRE(sqrt_in_field(FqElem::from_int(F5, 4), y));
  CHECK(y.to_string() == "2");
  REQUIRE(sqrt_in_field(FqElem::zero(F5), y));
  CHECK(y.is_zero());
  CHECK_FALSE(sqrt_in_field(FqElem::from_int(F5, 2), y));
  auto F7 = make_field(7, 1);
  REQUIRE(sqrt_in_field(FqElem::from_int(F7, 2), y));
  CHECK(y.to_string() == "3");
  for (auto [p, nu] : kSmallFields) {
    auto F = make_field(p, nu);
    if (F->order_u64() > 64) continue;
    for (const auto& x : all_elements(F)) {
      bool sq = false;
      for (const auto& z : all_elements(F)) sq |= z * z == x;
      bool ok = sqrt_in_field(x, y);
      CHECK(ok == sq);
      if (ok) {
        CHECK(y * y == x);
        CHECK(F->compare(y.data(), (-y).data()) <= 0);
      }
    }
  }
}

TEST_CASE("extensions embed homomorphically") {
  auto F5 = make_field(5, 1);
  auto E1 = extend(F5, 1);
  CHECK(E1.field == F5);
  auto F4 = extend(make_field(2, 1), 2);
  CHECK(F4.embedding->apply(FqElem::one(make_field(2, 1))).is_one());
  auto E3 = extend(F5, 3);
  for (int a = 0; a < 5; ++a) {
    FqElem x = E3.embedding->apply(FqElem::from_int(F5, a));
    CHECK(x.pow(5) == x);
  }
  std::mt19937_64 rng(3);
  for (auto [p, nu, k] : std::vector<std::tuple<u64, unsigned, unsigned>>{{5, 2, 2}, {2, 2, 3}, {3, 2, 2}, {7, 3, 2}}) {
    auto B = make_field(p, nu);
    auto E = extend(B, k);
    CHECK(E.field->nu() == nu * k);
    for (int i = 0; i < 200; ++i) {
      FqElem a(B, B->element_at(rng() % B->order_u64()));
      FqElem b(B, B->element_at(rng() % B->order_u64()));
      const Embedding& em = *E.embedding;
      CHECK(em.apply(a + b) == em.apply(a) + em.apply(b));
      CHECK(em.apply(a * b) == em.apply(a) * em.apply(b));
      FqElem back;
      REQUIRE(em.restrict(em.apply(a), back));
      CHECK(back == a);
    }
  }
  CHECK_THROWS_AS(FqElem::one(make_field(5, 1)) + FqElem::one(make_field(7, 1)), Error);
}
