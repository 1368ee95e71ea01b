#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "efv/errors.hpp"

namespace efv {

using cplx = std::complex<double>;

/// Frobenius eigenvalue data for an elliptic curve with trace a over F_q:
/// xi, xibar are the roots of T^2 - aT + q, |xi|^2 = q.
struct FrobeniusData {
  std::int64_t a = 0;
  std::uint64_t q = 0;
  cplx xi;
  cplx xi_bar;
  int discriminant_sign = 0;  // sign of a^2 - 4q
  bool double_root = false;   // a^2 == 4q (xi = xibar = a/2)

  double log_q() const;
  /// Principal-branch Arg(xi) in (-pi, pi].
  double arg_xi() const;
  /// xi^n for any integer n, backed by the exact integer recurrences
  /// xi^n = (s_n + u_n sqrt(a^2-4q))/2 and xi^{-m} = conj(xi^m)/q^m.
  cplx xi_power(int n) const;
  cplx xi_bar_power(int n) const { return std::conj(xi_power(n)); }
};

/// Zero/pole structure of zeta_E: all zeros are base + 2 pi i nu / log q with
/// Re base = 1/2; poles sit on Re s = 0 and Re s = 1.
struct ZeroPoleSpectrum {
  double log_q = 0;
  cplx zero_base[2];       // Log_q xi, Log_q xibar (equal when double_root)
  double pole_base[2];     // {0, 1}
  int multiplicity = 1;    // 2 when double_root (collapsed zero families)
};

FrobeniusData frobenius_eigenvalues(std::int64_t a, std::uint64_t q);

ZeroPoleSpectrum zero_pole_spectrum(const FrobeniusData& fd);

/// zeta_E(s) = (1 - xi q^-s)(1 - xibar q^-s) / ((1 - q^-s)(1 - q^{1-s})).
/// Throws pole_hit when q^-s is within 1e-12 of {1, 1/q}.
cplx zeta_value(const FrobeniusData& fd, cplx s);

/// Zeros with multiplicity for nu in [nu_min, nu_max], both families.
std::vector<std::pair<cplx, int>> zeros(const FrobeniusData& fd, int nu_min, int nu_max);

/// Poles 2 pi i nu / log q and 1 + 2 pi i nu / log q for nu in [nu_min, nu_max].
std::vector<cplx> poles(std::uint64_t q, int nu_min, int nu_max);

}  // namespace efv
