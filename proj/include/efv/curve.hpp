#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "efv/finite_field.hpp"

namespace efv {

/// Elliptic curve in long Weierstrass form
///   y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6
/// over the field it was constructed with.  Nonsingular by construction.
struct CurveData {
  Field field;
  FieldElement a1, a2, a3, a4, a6;
  FieldElement discriminant;
};

/// Closed points of degree d = 1..n_max; a_d counts Galois orbits of size d.
struct ClosedPointTable {
  std::uint64_t q = 0;
  int n_max = 0;
  std::vector<mpz_class> a_d;  // a_d[d-1] = number of closed points of degree d

  const mpz_class& count(int d) const { return a_d.at(static_cast<std::size_t>(d) - 1); }
};

CurveData curve_make(const Field& field, const FieldElement& a1, const FieldElement& a2,
                     const FieldElement& a3, const FieldElement& a4, const FieldElement& a6);

/// Short form y^2 = x^3 + a4 x + a6 (coefficients given as integers mod p).
CurveData curve_make_short(const Field& field, std::int64_t a4, std::int64_t a6);

/// N_n = #E(F_{q^n}) by enumerating x in F_{q^n} and counting y-roots;
/// includes the point at infinity.
std::uint64_t count_points_bruteforce(const CurveData& curve, int n,
                                      std::uint64_t cap = kDefaultEnumerationCap);

/// a = q + 1 - N_1; throws hasse_violation if a^2 > 4q.
std::int64_t frobenius_trace(const CurveData& curve, std::uint64_t cap = kDefaultEnumerationCap);

/// Power sums s_n = xi^n + xibar^n: s_0 = 2, s_1 = a, s_n = a s_{n-1} - q s_{n-2}.
std::vector<mpz_class> frobenius_power_sums(std::int64_t a, std::uint64_t q, int n_max);

/// Lucas-type sequence u_n = (xi^n - xibar^n)/(xi - xibar): u_0 = 0, u_1 = 1,
/// u_n = a u_{n-1} - q u_{n-2}.  Exact backing for complex powers of xi.
std::vector<mpz_class> frobenius_lucas_u(std::int64_t a, std::uint64_t q, int n_max);

/// N_n = q^n + 1 - s_n for n = 1..n_max (index 0 holds N_1).
std::vector<mpz_class> point_counts_tower(std::int64_t a, std::uint64_t q, int n_max);

/// Moebius inversion of N_n: a_n = (1/n) sum_{d|n} mu(n/d) N_d.
ClosedPointTable closed_points(std::int64_t a, std::uint64_t q, int n_max);

/// Independent oracle: enumerate E(F_{q^L}), L = lcm(1..n_max), and group
/// points into orbits of the q-power Frobenius; a_d = #orbits of exact size d.
ClosedPointTable closed_points_oracle(const CurveData& curve, int n_max,
                                      std::uint64_t cap = kDefaultEnumerationCap);

int moebius_mu(int n);

/// Supersingular iff the trace is divisible by the characteristic.
bool is_supersingular(std::int64_t a, std::uint64_t p);

}  // namespace efv
