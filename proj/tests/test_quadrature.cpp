#include <doctest.h>

#include <cmath>
#include <complex>

#include "efv/quadrature.hpp"

using namespace efv;
using doctest::Approx;

TEST_CASE("polynomial and trig integrals") {
  auto sq = integrate_adaptive([](double x) { return x * x; }, {0.0, 1.0});
  CHECK(sq.value == Approx(1.0 / 3.0).epsilon(1e-15));

  auto sine = integrate_adaptive([](double x) { return std::sin(x); },
                                 {0.0, 3.14159265358979323846});
  CHECK(sine.value == Approx(2.0).epsilon(1e-14));
}

TEST_CASE("oscillatory complex integrand with panel-width seeding") {
  const double omega = 200.0;
  QuadOptions opts;
  opts.max_panel_width = 6.283185307179586 / omega;
  auto osc = integrate_adaptive(
      [&](double x) { return std::exp(std::complex<double>(0.0, omega * x)); }, {0.0, 1.0},
      opts);
  const std::complex<double> exact =
      (std::exp(std::complex<double>(0.0, omega)) - 1.0) / std::complex<double>(0.0, omega);
  CHECK(std::abs(osc.value - exact) <= 1e-13);
}

TEST_CASE("breakpoints make kinks harmless") {
  auto kink = integrate_adaptive([](double x) { return std::abs(x); }, {-1.0, 0.0, 2.0});
  CHECK(kink.value == Approx(2.5).epsilon(1e-14));
}

TEST_CASE("error estimate tracks the actual error") {
  auto res = integrate_adaptive([](double x) { return std::exp(-x * x); }, {-3.0, 3.0});
  const double exact = 1.7724146965190425;  // sqrt(pi) erf(3)
  CHECK(std::abs(res.value - exact) <= 1e-12);
  CHECK(res.error < 1e-10);
}

TEST_CASE("depth cap raises NoConvergence") {
  // step at an irrational point never lands on a panel boundary
  auto f = [](double x) { return x < 0.70710678118654752440 ? 0.0 : 1.0; };
  QuadOptions opts;
  opts.abs_tol = 1e-15;
  opts.rel_tol = 1e-15;
  CHECK_THROWS_WITH_AS(integrate_adaptive(f, {0.0, 1.0}, opts),
                       doctest::Contains("NoConvergence"), Error);
}

TEST_CASE("empty and degenerate ranges") {
  auto none = integrate_adaptive([](double) { return 1.0; }, {});
  CHECK(none.value == 0.0);
  auto point = integrate_adaptive([](double) { return 1.0; }, {2.0, 2.0});
  CHECK(point.value == 0.0);
}
