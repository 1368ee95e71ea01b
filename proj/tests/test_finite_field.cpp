#include <doctest.h>

#include <random>
#include <set>

#include "efv/finite_field.hpp"

using namespace efv;

TEST_CASE("field_make with AUTO modulus") {
  Field f5 = Field::make(5, 1);
  CHECK(f5.q() == 5);
  CHECK(f5.spec().modulus == std::vector<std::uint32_t>{0, 1});  // x - 0 convention

  Field f4 = Field::make(2, 2);
  CHECK(f4.q() == 4);
  CHECK(f4.spec().modulus == std::vector<std::uint32_t>{1, 1, 1});  // x^2 + x + 1

  CHECK_THROWS_WITH_AS(Field::make(4, 1), doctest::Contains("NotPrime"), Error);
}

TEST_CASE("field_make rejects reducible moduli") {
  CHECK_THROWS_AS(Field::make(2, 2, {0, 0, 1}), Error);  // x^2
  CHECK_THROWS_AS(Field::make(2, 2, {1, 0, 1}), Error);  // (x+1)^2
  CHECK_NOTHROW(Field::make(2, 3, {1, 1, 0, 1}));        // x^3 + x + 1
  CHECK_THROWS_AS(Field::make(5, 2, {0, 0, 2}), Error);  // not monic
}

TEST_CASE("basic field ops") {
  Field f5 = Field::make(5, 1);
  CHECK(f5.inv(f5.from_int(2)) == f5.from_int(3));
  CHECK(f5.pow(f5.from_int(2), 4) == f5.one());

  Field f4 = Field::make(2, 2);
  FieldElement x = f4.element({0, 1});
  CHECK(f4.mul(x, x) == f4.element({1, 1}));  // x^2 = x + 1 mod x^2+x+1

  CHECK_THROWS_WITH_AS(f5.inv(f5.zero()), doctest::Contains("ZeroInverse"), Error);
  CHECK_THROWS_WITH_AS(f5.add(f5.one(), f4.one()), doctest::Contains("FieldMismatch"), Error);
}

TEST_CASE("enumeration order and cap") {
  Field f2 = Field::make(2, 1);
  auto e2 = f2.enumerate();
  REQUIRE(e2.size() == 2);
  CHECK(e2[0] == f2.zero());
  CHECK(e2[1] == f2.one());

  Field f5 = Field::make(5, 1);
  auto e5 = f5.enumerate();
  REQUIRE(e5.size() == 5);
  for (int i = 0; i < 5; ++i) CHECK(e5[static_cast<std::size_t>(i)] == f5.from_int(i));

  CHECK(Field::make(2, 2).enumerate().size() == 4);
  CHECK_THROWS_WITH_AS(Field::make(2, 5).enumerate(16), doctest::Contains("CapExceeded"),
                       Error);
}

TEST_CASE("subfield embeddings") {
  Field f2 = Field::make(2, 1);
  Field f4 = Field::make(2, 2);
  Embedding up(f2, f4);
  CHECK(up(f2.one()) == f4.one());
  CHECK(up(f2.zero()) == f4.zero());

  Field f5 = Field::make(5, 1);
  Field f25 = Field::make(5, 2);
  Embedding prime(f5, f25);
  CHECK(prime(f5.from_int(3)) == f25.from_int(3));

  Field f8 = Field::make(2, 3);
  CHECK_THROWS_WITH_AS(Embedding(f4, f8), doctest::Contains("NoEmbedding"), Error);
}

TEST_CASE("embedding is a ring homomorphism") {
  Field f4 = Field::make(2, 2);
  Field f16 = Field::make(2, 4);
  Embedding phi(f4, f16);
  for (std::uint64_t i = 0; i < 4; ++i) {
    for (std::uint64_t j = 0; j < 4; ++j) {
      FieldElement a = f4.from_index(i), b = f4.from_index(j);
      CHECK(phi(f4.add(a, b)) == f16.add(phi(a), phi(b)));
      CHECK(phi(f4.mul(a, b)) == f16.mul(phi(a), phi(b)));
    }
  }
}

TEST_CASE("inverse and Frobenius fixed-point identities, exhaustive q <= 64") {
  for (auto [p, r] : std::vector<std::pair<std::uint64_t, unsigned>>{
           {2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2}, {11, 1}, {13, 1},
           {2, 4}, {17, 1}, {19, 1}, {23, 1}, {5, 2}, {3, 3}, {29, 1}, {31, 1}, {2, 5},
           {37, 1}, {41, 1}, {43, 1}, {47, 1}, {7, 2}, {53, 1}, {59, 1}, {61, 1}, {2, 6}}) {
    Field f = Field::make(p, r);
    for (const auto& a : f.enumerate()) {
      if (!f.is_zero(a)) CHECK(f.mul(a, f.inv(a)) == f.one());
      CHECK(f.pow(a, f.q()) == a);
    }
  }
}

TEST_CASE("commutativity and associativity on random triples") {
  std::mt19937_64 rng(42);
  for (auto [p, r] : std::vector<std::pair<std::uint64_t, unsigned>>{{7, 2}, {2, 3}, {3, 2}}) {
    Field f = Field::make(p, r);
    for (int trial = 0; trial < 50; ++trial) {
      FieldElement a = f.from_index(rng() % f.q());
      FieldElement b = f.from_index(rng() % f.q());
      FieldElement c = f.from_index(rng() % f.q());
      CHECK(f.add(a, b) == f.add(b, a));
      CHECK(f.mul(a, b) == f.mul(b, a));
      CHECK(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
      CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
      CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
    }
  }
}

TEST_CASE("enumerate yields pairwise distinct elements") {
  Field f27 = Field::make(3, 3);
  auto all = f27.enumerate();
  std::set<std::uint64_t> seen;
  for (const auto& a : all) seen.insert(f27.index_of(a));
  CHECK(seen.size() == 27);
}
