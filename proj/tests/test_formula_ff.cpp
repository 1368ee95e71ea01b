#include <doctest.h>

#include <cmath>
#include <random>

#include "efv/formula_ff.hpp"

using namespace efv;
using doctest::Approx;

namespace {

const double kLog5 = std::log(5.0);

TestFunction bump_at(double c, double h, double amp = 1.0) {
  return TestFunction({{amp, c, h}});
}

std::vector<TestFunction> random_bumps(std::uint64_t seed, int count, double radius) {
  std::mt19937_64 rng(seed);
  auto uniform = [&](double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
  };
  std::vector<TestFunction> out;
  for (int i = 0; i < count; ++i) {
    const double h = uniform(0.15, 0.6);
    const double c = uniform(-(radius - h), radius - h);
    const double amp = uniform(0.25, 2.0) * (rng() % 2 == 0 ? 1.0 : -1.0);
    out.push_back(bump_at(c, h, amp));
  }
  return out;
}

}  // namespace

TEST_CASE("orbit spectrum from closed-point tables") {
  OrbitSpectrum s1 = orbit_spectrum(closed_points(-3, 5, 2));
  REQUIRE(s1.entries.size() == 2);
  CHECK(s1.entries[0].length == Approx(kLog5));
  CHECK(s1.entries[0].multiplicity == 9);
  CHECK(s1.entries[0].n == 1);
  CHECK(s1.entries[1].length == Approx(2 * kLog5));
  CHECK(s1.entries[1].multiplicity == 9);

  OrbitSpectrum s2 = orbit_spectrum(closed_points(0, 5, 2));
  CHECK(s2.entries[0].multiplicity == 6);
  CHECK(s2.entries[1].multiplicity == 15);

  ClosedPointTable empty{5, 0, {}};
  CHECK(orbit_spectrum(empty).entries.empty());
}

TEST_CASE("all routes vanish on the zero test function") {
  FrobeniusData fd = frobenius_eigenvalues(-3, 5);
  ClosedPointTable table = closed_points(-3, 5, 4);
  TestFunction zero;
  CHECK(spectral_side_ff(fd, zero, 1e-6).value == cplx(0.0, 0.0));
  CHECK(geometric_side_ff(table, zero).value == cplx(0.0, 0.0));
  CHECK(poisson_closed_form_ff(fd, zero).value == cplx(0.0, 0.0));
  CHECK(dolbeault_spectral(fd, zero, 1e-6).value == cplx(0.0, 0.0));
  CHECK(dolbeault_poisson(fd, zero).value == cplx(0.0, 0.0));
  CHECK(dolbeault_orbit_side(fd, table, zero).value == cplx(0.0, 0.0));
  CHECK(de_rham_orbit_side(table, zero).value == cplx(0.0, 0.0));
}

TEST_CASE("single-term geometric evaluations at log 5") {
  ClosedPointTable table = closed_points(-3, 5, 3);
  TestFunction alpha = bump_at(kLog5, 0.3);
  // only the d=1, k=1 lattice point lies in the support
  SideValue geo = geometric_side_ff(table, alpha, 1);
  CHECK(geo.value.real() == Approx(kLog5 * 9.0 * alpha(kLog5)).epsilon(1e-14));
  CHECK(geo.truncation_error == 0.0);

  // negative side: k = -1 carries the Nw^k = 1/5 weight
  TestFunction neg = bump_at(-kLog5, 0.3);
  SideValue geo_neg = geometric_side_ff(table, neg, 1);
  CHECK(geo_neg.value.real() == Approx(kLog5 * 9.0 * 0.2 * neg(-kLog5)).epsilon(1e-14));
  SideValue dr_neg = de_rham_orbit_side(table, neg);
  CHECK(dr_neg.value.real() == Approx(geo_neg.value.real()).epsilon(1e-15));
}

TEST_CASE("poisson coefficients are the point counts") {
  FrobeniusData fd = frobenius_eigenvalues(-3, 5);
  TestFunction alpha = bump_at(kLog5, 0.3);
  SideValue poisson = poisson_closed_form_ff(fd, alpha);
  CHECK(poisson.value.real() == Approx(kLog5 * 9.0 * alpha(kLog5)).epsilon(1e-13));

  TestFunction neg = bump_at(-kLog5, 0.3);
  CHECK(poisson_closed_form_ff(fd, neg).value.real() ==
        Approx(kLog5 * (9.0 / 5.0) * neg(-kLog5)).epsilon(1e-13));

  // n = 0 coefficient is identically zero (genus 1)
  TestFunction center = bump_at(0.0, 0.8);
  CHECK(poisson_closed_form_ff(fd, center).value.real() == 0.0);
}

TEST_CASE("exact-route identity: poisson equals geometric, 20 random bumps") {
  for (auto [a, q] : std::vector<std::pair<std::int64_t, std::uint64_t>>{{-3, 5}, {0, 5},
                                                                         {0, 2}, {4, 4}}) {
    FrobeniusData fd = frobenius_eigenvalues(a, q);
    const double log_q = fd.log_q();
    ClosedPointTable table = closed_points(a, q, 4);
    for (const auto& alpha : random_bumps(101 + static_cast<std::uint64_t>(a + 10), 20,
                                          2.9 * log_q)) {
      SideValue p = poisson_closed_form_ff(fd, alpha);
      SideValue g = geometric_side_ff(table, alpha, 1);
      SideValue d = de_rham_orbit_side(table, alpha);
      CHECK(std::abs(p.value - g.value) <= kExactRouteTolerance);
      CHECK(std::abs(g.value - d.value) <= 1e-12);
    }
  }
}

TEST_CASE("exact-route identity: dolbeault poisson equals orbit form") {
  for (auto [a, q] : std::vector<std::pair<std::int64_t, std::uint64_t>>{{-3, 5}, {0, 5},
                                                                         {0, 2}, {-4, 4}}) {
    FrobeniusData fd = frobenius_eigenvalues(a, q);
    ClosedPointTable table = closed_points(a, q, 4);
    for (const auto& alpha : random_bumps(202, 20, 2.9 * fd.log_q())) {
      SideValue p = dolbeault_poisson(fd, alpha);
      SideValue o = dolbeault_orbit_side(fd, table, alpha);
      CHECK(std::abs(p.value - o.value) <= kExactRouteTolerance);
    }
  }
}

TEST_CASE("dolbeault single-term checks") {
  FrobeniusData fd = frobenius_eigenvalues(-3, 5);
  ClosedPointTable table = closed_points(-3, 5, 3);
  TestFunction alpha = bump_at(kLog5, 0.3);
  SideValue orbit = dolbeault_orbit_side(fd, table, alpha);
  const cplx expected = kLog5 * 9.0 * (1.0 / (1.0 - fd.xi)) * alpha(kLog5);
  CHECK(std::abs(orbit.value - expected) <= 1e-13);

  // support inside (-log q, log q) excluding 0: no surviving lattice point
  TestFunction inside = bump_at(0.9, 0.3);
  CHECK(dolbeault_poisson(fd, inside).value == cplx(0.0, 0.0));
  // bump centered at 0: the n = 0 coefficient 1 - 1 vanishes
  TestFunction center = bump_at(0.0, 0.8);
  CHECK(dolbeault_poisson(fd, center).value == cplx(0.0, 0.0));
}

TEST_CASE("spectral side: truncated family sums meet the poisson value") {
  const double eps = 1e-6;
  for (auto [a, q] : std::vector<std::pair<std::int64_t, std::uint64_t>>{{-3, 5}, {0, 5}}) {
    FrobeniusData fd = frobenius_eigenvalues(a, q);
    TestFunction alpha = bump_at(fd.log_q(), 0.3);
    SideValue spec = spectral_side_ff(fd, alpha, eps);
    SideValue poisson = poisson_closed_form_ff(fd, alpha);
    CHECK(spec.value.imag() == 0.0);  // conjugate pairing by construction
    CHECK(spec.truncation_error <= eps);
    CHECK(std::abs(spec.value - poisson.value) <= eps + spec.quadrature_error);
  }
}

TEST_CASE("spectral side vanishes for bumps inside (-log q, log q) away from 0") {
  FrobeniusData fd = frobenius_eigenvalues(-3, 5);
  TestFunction alpha = bump_at(0.9, 0.3);  // support in (0.6, 1.2) inside (0, log 5)
  const double eps = 1e-6;
  SideValue spec = spectral_side_ff(fd, alpha, eps);
  CHECK(std::abs(spec.value) <= eps + spec.quadrature_error);
}

TEST_CASE("double-root curves: collapsed zero families keep multiplicity 2") {
  const double eps = 1e-6;
  // a = 2 sqrt(q) (theta = 0) and a = -2 sqrt(q) (theta = pi, where the
  // conjugate partner of nu is -nu-1)
  for (auto [a, q] : std::vector<std::pair<std::int64_t, std::uint64_t>>{{4, 4}, {-4, 4}}) {
    FrobeniusData fd = frobenius_eigenvalues(a, q);
    REQUIRE(fd.double_root);
    for (const TestFunction& alpha :
         {TestFunction({{1.0, fd.log_q(), 0.4}}), TestFunction({{-0.8, -1.1, 0.35}})}) {
      SideValue spec = spectral_side_ff(fd, alpha, eps);
      SideValue pois = poisson_closed_form_ff(fd, alpha);
      CHECK(spec.value.imag() == 0.0);
      CHECK(std::abs(spec.value - pois.value) <= eps + spec.quadrature_error);
    }
  }
}

TEST_CASE("dolbeault spectral route meets its poisson value") {
  const double eps = 1e-6;
  for (auto [a, q] : std::vector<std::pair<std::int64_t, std::uint64_t>>{{-3, 5}, {4, 4}}) {
    FrobeniusData fd = frobenius_eigenvalues(a, q);
    TestFunction alpha = bump_at(fd.log_q(), 0.3);
    SideValue spec = dolbeault_spectral(fd, alpha, eps);
    SideValue poisson = dolbeault_poisson(fd, alpha);
    CHECK(std::abs(spec.value - poisson.value) <= eps + spec.quadrature_error);
  }
}

TEST_CASE("genus parameter contributes alpha(0)(2-2g) log q") {
  ClosedPointTable table = closed_points(-3, 5, 2);
  TestFunction alpha = bump_at(0.0, 0.8);
  SideValue g0 = geometric_side_ff(table, alpha, 0);
  SideValue g1 = geometric_side_ff(table, alpha, 1);
  SideValue g3 = geometric_side_ff(table, alpha, 3);
  CHECK(g0.value.real() - g1.value.real() == Approx(2.0 * kLog5 * alpha(0.0)).epsilon(1e-14));
  CHECK(g1.value.real() - g3.value.real() == Approx(4.0 * kLog5 * alpha(0.0)).epsilon(1e-14));
}

TEST_CASE("NInsufficient when the table is shorter than the support") {
  ClosedPointTable table = closed_points(-3, 5, 1);
  TestFunction wide = bump_at(2.0 * kLog5, 0.3);
  CHECK_THROWS_WITH_AS(geometric_side_ff(table, wide, 1), doctest::Contains("NInsufficient"),
                       Error);
  CHECK_THROWS_AS(de_rham_orbit_side(table, wide), Error);
}

TEST_CASE("verify_identity end to end") {
  TestFunction alpha = bump_at(kLog5, 1.0);  // "standard bump at log 5"
  VerificationReport rep = verify_identity(Identity::eq2, -3, 5, alpha, 1e-8);
  CHECK(rep.pass);
  CHECK(rep.identity == "eq2");
  CHECK(rep.curve_class == "ordinary");
  REQUIRE(rep.residuals.size() == 3);
  CHECK(rep.residuals[0].residual <= 1e-6);

  VerificationReport zero_rep = verify_identity(Identity::cor34, -3, 5, TestFunction{},
                                                1e-8);
  CHECK(zero_rep.pass);
  for (const auto& rv : zero_rep.routes) CHECK(rv.side.value == cplx(0.0, 0.0));

  TestFunction wide = bump_at(2.0 * kLog5, 0.4);
  VerificationReport thm = verify_identity(Identity::thm41, 0, 5, wide, 1e-6);
  CHECK(thm.pass);
  CHECK(thm.curve_class == "supersingular");

  CHECK_THROWS_AS(verify_identity(Identity::eq2, -3, 5, alpha, -1.0), Error);
}
