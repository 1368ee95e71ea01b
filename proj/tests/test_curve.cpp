#include <doctest.h>

#include <cmath>

#include "efv/curve.hpp"

using namespace efv;

namespace {

CurveData fixture_f5_x3_x_1() {  // y^2 = x^3 + x + 1 over F_5, a = -3
  return curve_make_short(Field::make(5, 1), 1, 1);
}

CurveData fixture_f5_x3_1() {  // y^2 = x^3 + 1 over F_5, a = 0 (supersingular)
  return curve_make_short(Field::make(5, 1), 0, 1);
}

CurveData fixture_f2_y2y_x3() {  // y^2 + y = x^3 over F_2
  Field f2 = Field::make(2, 1);
  return curve_make(f2, f2.zero(), f2.zero(), f2.one(), f2.zero(), f2.zero());
}

}  // namespace

TEST_CASE("curve_make discriminants") {
  CurveData e = fixture_f5_x3_x_1();
  CHECK(e.discriminant == e.field.from_int(4));  // -496 = 4 mod 5

  CHECK_THROWS_WITH_AS(curve_make_short(Field::make(5, 1), 0, 0),
                       doctest::Contains("SingularCurve"), Error);

  CHECK(fixture_f2_y2y_x3().discriminant == Field::make(2, 1).one());
}

TEST_CASE("brute-force point counts") {
  CHECK(count_points_bruteforce(fixture_f5_x3_x_1(), 1) == 9);
  CHECK(count_points_bruteforce(fixture_f5_x3_1(), 1) == 6);
  CHECK(count_points_bruteforce(curve_make_short(Field::make(7, 1), 1, 0), 1) == 8);
  CHECK(count_points_bruteforce(fixture_f2_y2y_x3(), 1) == 3);
  CHECK_THROWS_WITH_AS(count_points_bruteforce(fixture_f5_x3_x_1(), 12, 1000000),
                       doctest::Contains("CapExceeded"), Error);
}

TEST_CASE("frobenius traces") {
  CHECK(frobenius_trace(fixture_f5_x3_x_1()) == -3);
  CHECK(frobenius_trace(fixture_f5_x3_1()) == 0);
  CHECK(frobenius_trace(curve_make_short(Field::make(7, 1), 1, 0)) == 0);
}

TEST_CASE("point counts up the tower from the integer recurrence") {
  auto n1 = point_counts_tower(-3, 5, 2);
  CHECK(n1[0] == 9);
  CHECK(n1[1] == 27);
  auto n2 = point_counts_tower(0, 5, 2);
  CHECK(n2[0] == 6);
  CHECK(n2[1] == 36);
  auto n3 = point_counts_tower(4, 4, 1);
  CHECK(n3[0] == 1);
  CHECK_THROWS_WITH_AS(point_counts_tower(5, 5, 2), doctest::Contains("HasseViolation"),
                       Error);
}

TEST_CASE("closed point tables by Moebius inversion") {
  ClosedPointTable t1 = closed_points(-3, 5, 2);
  CHECK(t1.count(1) == 9);
  CHECK(t1.count(2) == 9);  // (27 - 9)/2
  ClosedPointTable t2 = closed_points(0, 5, 2);
  CHECK(t2.count(1) == 6);
  CHECK(t2.count(2) == 15);  // (36 - 6)/2
  // Moebius inversion at n = 1 is the point count itself
  for (std::int64_t a : {-4, -1, 0, 2, 4}) {
    ClosedPointTable t = closed_points(a, 5, 1);
    CHECK(t.count(1) == point_counts_tower(a, 5, 1)[0]);
  }
}

TEST_CASE("divisor identity sum_{d|n} d a_d = N_n") {
  for (auto [a, q] : std::vector<std::pair<std::int64_t, std::uint64_t>>{
           {-3, 5}, {0, 5}, {0, 2}, {2, 7}, {-5, 7}, {4, 4}, {-4, 4}, {1, 2}, {-2, 3}}) {
    const int n_max = 8;
    ClosedPointTable table = closed_points(a, q, n_max);
    auto counts = point_counts_tower(a, q, n_max);
    for (int n = 1; n <= n_max; ++n) {
      mpz_class acc = 0;
      for (int d = 1; d <= n; ++d)
        if (n % d == 0) acc += d * table.count(d);
      CHECK(acc == counts[n - 1]);
    }
  }
}

TEST_CASE("orbit-enumeration oracle equals Moebius inversion") {
  for (const CurveData& curve : {fixture_f5_x3_x_1(), fixture_f5_x3_1()}) {
    std::int64_t a = frobenius_trace(curve);
    ClosedPointTable lhs = closed_points(a, 5, 2);
    ClosedPointTable rhs = closed_points_oracle(curve, 2);
    CHECK(lhs.a_d == rhs.a_d);
    // orbits of size 1 are exactly the rational points
    CHECK(rhs.count(1) == count_points_bruteforce(curve, 1));
  }
  CurveData c2 = fixture_f2_y2y_x3();
  ClosedPointTable lhs = closed_points(frobenius_trace(c2), 2, 4);
  ClosedPointTable rhs = closed_points_oracle(c2, 4);
  CHECK(lhs.a_d == rhs.a_d);
}

TEST_CASE("tower consistency: brute force vs recurrence") {
  for (const CurveData& curve :
       {fixture_f5_x3_x_1(), fixture_f5_x3_1(), curve_make_short(Field::make(7, 1), 1, 0)}) {
    std::int64_t a = frobenius_trace(curve);
    auto counts = point_counts_tower(a, curve.field.q(), 2);
    for (int n = 1; n <= 2; ++n)
      CHECK(mpz_class(count_points_bruteforce(curve, n)) == counts[n - 1]);
  }
  CurveData c2 = fixture_f2_y2y_x3();
  auto counts = point_counts_tower(frobenius_trace(c2), 2, 6);
  for (int n = 1; n <= 6; ++n)
    CHECK(mpz_class(count_points_bruteforce(c2, n)) == counts[n - 1]);
}

TEST_CASE("Hasse bound over exhaustive long-form sweep, small q") {
  for (auto [p, r] : std::vector<std::pair<std::uint64_t, unsigned>>{{2, 1}, {3, 1}, {2, 2},
                                                                     {5, 1}, {7, 1}}) {
    Field f = Field::make(p, r);
    auto elems = f.enumerate();
    const double two_sqrt_q = 2.0 * std::sqrt(static_cast<double>(f.q()));
    for (const auto& a1 : elems)
      for (const auto& a2 : elems)
        for (const auto& a3 : elems)
          for (const auto& a4 : elems)
            for (const auto& a6 : elems) {
              try {
                CurveData curve = curve_make(f, a1, a2, a3, a4, a6);
                const auto n1 = static_cast<std::int64_t>(count_points_bruteforce(curve, 1));
                const auto a = static_cast<double>(
                    static_cast<std::int64_t>(f.q()) + 1 - n1);
                CHECK(std::abs(a) <= two_sqrt_q);
              } catch (const Error& e) {
                if (e.code() != errc::singular_curve) throw;
              }
            }
  }
}

TEST_CASE("supersingular labeling") {
  CHECK(is_supersingular(0, 5));
  CHECK(!is_supersingular(-3, 5));
  CHECK(is_supersingular(-7, 7));
}
