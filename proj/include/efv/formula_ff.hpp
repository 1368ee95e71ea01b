#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "efv/curve.hpp"
#include "efv/spectral.hpp"
#include "efv/test_function.hpp"

namespace efv {

enum class Route { spectral, geometric, poisson };

/// One evaluation of a side of an identity.  Geometric and Poisson routes are
/// finite sums, so their truncation error is zero by construction.
struct SideValue {
  cplx value;
  double truncation_error = 0.0;
  double quadrature_error = 0.0;
  Route route = Route::geometric;
};

/// Compact-orbit spectrum: lengths n log q with multiplicities a_n.
struct OrbitSpectrum {
  struct Entry {
    double length;
    mpz_class multiplicity;
    int n;
  };
  double log_q = 0.0;
  std::vector<Entry> entries;
};

OrbitSpectrum orbit_spectrum(const ClosedPointTable& table);

/// Spectral side of the function-field explicit formula:
///   sum_nu Phi(2 pi i nu/log q) - sum_rho Phi(rho) + sum_nu Phi(1 + 2 pi i nu/log q)
/// with each vertical family truncated so its decay-bound tail is <= eps/4.
SideValue spectral_side_ff(const FrobeniusData& fd, const TestFunction& alpha, double eps);

/// Geometric side: alpha(0)(2-2g) log q + closed-point sums over the table.
SideValue geometric_side_ff(const ClosedPointTable& table, const TestFunction& alpha,
                            int genus = 1);

/// Poisson regrouping of the spectral side: log q * sum_n c_n alpha(n log q)
/// with c_n = N_n for n >= 1, c_0 = 0, c_{-m} = N_m / q^m (exact integers).
SideValue poisson_closed_form_ff(const FrobeniusData& fd, const TestFunction& alpha);

/// T_0(alpha) - T_1(alpha): pole family minus the Log_q xibar zero family.
SideValue dolbeault_spectral(const FrobeniusData& fd, const TestFunction& alpha, double eps);

/// log q * sum_n (1 - xibar^n) alpha(n log q).
SideValue dolbeault_poisson(const FrobeniusData& fd, const TestFunction& alpha);

/// Orbit form with holomorphic local factors (1 - xi^{k deg w})^{-1} and the
/// extra q^{k deg w} weight for k <= -1.
SideValue dolbeault_orbit_side(const FrobeniusData& fd, const ClosedPointTable& table,
                               const TestFunction& alpha);

/// Orbit form of the de Rham index: sum over orbits of
/// l * sum_{k>=1} alpha(k l) + l * sum_{k<=-1} e^{k l} alpha(k l).
SideValue de_rham_orbit_side(const ClosedPointTable& table, const TestFunction& alpha);

enum class Identity { eq2, cor34, thm41 };

std::string identity_name(Identity id);

struct RouteValue {
  std::string name;
  SideValue side;
};

struct ResidualCheck {
  std::string route_a, route_b;
  double residual = 0.0;
  double budget = 0.0;
  bool pass = false;
};

struct VerificationReport {
  std::string identity;
  std::uint64_t p = 0;
  unsigned r = 1;
  std::int64_t a = 0;
  std::uint64_t q = 0;
  std::string curve_class;  // "ordinary" or "supersingular"
  std::vector<BumpTerm> alpha;
  double epsilon = 0.0;
  std::vector<RouteValue> routes;
  std::vector<ResidualCheck> residuals;
  bool pass = false;
};

/// Evaluates every applicable route of the chosen identity and checks the
/// pairwise residuals against their error budgets (1e-10 for the two exact
/// finite-sum routes, eps + quadrature error where a spectral sum is involved).
VerificationReport verify_identity(Identity id, std::int64_t a, std::uint64_t q,
                                   const TestFunction& alpha, double eps);

/// Exact-pair residual tolerance for regrouped finite sums.
inline constexpr double kExactRouteTolerance = 1e-10;

}  // namespace efv
