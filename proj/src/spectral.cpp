#include "efv/spectral.hpp"

#include <cmath>

#include "efv/curve.hpp"

namespace efv {

namespace {
constexpr double kTwoPi = 6.283185307179586476925287;
}

double FrobeniusData::log_q() const { return std::log(static_cast<double>(q)); }

double FrobeniusData::arg_xi() const {
  if (!double_root)
    return std::atan2(std::sqrt(static_cast<double>(4 * static_cast<std::int64_t>(q) - a * a)),
                      static_cast<double>(a));
  return a >= 0 ? 0.0 : 3.14159265358979323846;
}

cplx FrobeniusData::xi_power(int n) const {
  const int m = n < 0 ? -n : n;
  if (double_root) {
    // xi = a/2 real; negative powers via 1/(a/2)^m
    double base = static_cast<double>(a) / 2.0;
    double v = std::pow(base, m);
    return n < 0 ? cplx(1.0 / v, 0.0) : cplx(v, 0.0);
  }
  auto s = frobenius_power_sums(a, q, m);
  auto u = frobenius_lucas_u(a, q, m);
  const double root = std::sqrt(static_cast<double>(4 * static_cast<std::int64_t>(q) - a * a));
  cplx xim(s[m].get_d() / 2.0, u[m].get_d() * root / 2.0);
  if (n >= 0) return xim;
  // xi^{-m} = conj(xi^m) / q^m
  double qm = std::pow(static_cast<double>(q), m);
  return std::conj(xim) / qm;
}

FrobeniusData frobenius_eigenvalues(std::int64_t a, std::uint64_t q) {
  const auto qi = static_cast<std::int64_t>(q);
  if (a * a > 4 * qi)
    fail(errc::hasse_violation, "trace " + std::to_string(a) + " violates |a| <= 2 sqrt(q)");
  FrobeniusData fd;
  fd.a = a;
  fd.q = q;
  fd.double_root = (a * a == 4 * qi);
  fd.discriminant_sign = fd.double_root ? 0 : (a * a < 4 * qi ? -1 : 1);
  if (fd.double_root) {
    fd.xi = cplx(static_cast<double>(a) / 2.0, 0.0);
    fd.xi_bar = fd.xi;
  } else {
    const double im = std::sqrt(static_cast<double>(4 * qi - a * a)) / 2.0;
    fd.xi = cplx(static_cast<double>(a) / 2.0, im);
    fd.xi_bar = std::conj(fd.xi);
  }
  return fd;
}

ZeroPoleSpectrum zero_pole_spectrum(const FrobeniusData& fd) {
  ZeroPoleSpectrum sp;
  sp.log_q = fd.log_q();
  // Log_q xi = (ln|xi| + i Arg xi)/log q with |xi| = sqrt(q) exactly
  sp.zero_base[0] = cplx(0.5, fd.arg_xi() / sp.log_q);
  sp.zero_base[1] = cplx(0.5, (fd.double_root ? fd.arg_xi() : -fd.arg_xi()) / sp.log_q);
  sp.pole_base[0] = 0.0;
  sp.pole_base[1] = 1.0;
  sp.multiplicity = fd.double_root ? 2 : 1;
  return sp;
}

cplx zeta_value(const FrobeniusData& fd, cplx s) {
  const cplx z = std::exp(-s * fd.log_q());  // q^{-s}
  const double inv_q = 1.0 / static_cast<double>(fd.q);
  if (std::abs(z - cplx(1.0, 0.0)) < 1e-12 || std::abs(z - cplx(inv_q, 0.0)) < 1e-12)
    fail(errc::pole_hit, "q^-s within 1e-12 of a pole of zeta_E");
  const cplx numerator = (1.0 - fd.xi * z) * (1.0 - fd.xi_bar * z);
  const cplx denominator = (1.0 - z) * (1.0 - static_cast<double>(fd.q) * z);
  return numerator / denominator;
}

std::vector<std::pair<cplx, int>> zeros(const FrobeniusData& fd, int nu_min, int nu_max) {
  ZeroPoleSpectrum sp = zero_pole_spectrum(fd);
  std::vector<std::pair<cplx, int>> out;
  const double step = kTwoPi / sp.log_q;
  for (int nu = nu_min; nu <= nu_max; ++nu) {
    out.emplace_back(sp.zero_base[0] + cplx(0.0, step * nu), sp.multiplicity);
    if (!fd.double_root) out.emplace_back(sp.zero_base[1] + cplx(0.0, step * nu), 1);
  }
  return out;
}

std::vector<cplx> poles(std::uint64_t q, int nu_min, int nu_max) {
  const double logq = std::log(static_cast<double>(q));
  std::vector<cplx> out;
  const double step = kTwoPi / logq;
  for (int nu = nu_min; nu <= nu_max; ++nu) {
    out.emplace_back(0.0, step * nu);
    out.emplace_back(1.0, step * nu);
  }
  return out;
}

}  // namespace efv
