#include "efv/riemann.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>

#include "efv/quadrature.hpp"

namespace efv {

namespace {

constexpr double kLogPi = 1.1447298858494001741;

/// x + expm1(-x) = x^2/2 - x^3/6 + ..., evaluated without cancellation.
double x_plus_expm1_neg(double x) {
  if (std::abs(x) > 0.5) return x + std::expm1(-x);
  double term = x * x / 2.0, acc = term;
  for (int k = 3; k < 24; ++k) {
    term *= -x / k;
    acc += term;
    if (std::abs(term) < 1e-20 * std::abs(acc)) break;
  }
  return acc;
}

/// Ein(x) = int_0^x (1-e^-u)/u du = sum_{k>=1} (-1)^{k+1} x^k / (k k!).
double ein(double x) {
  if (std::abs(x) > 1.0) return 0.57721566490153286061 + std::log(std::abs(x)) - std::expint(-x);
  double term = x, acc = x;
  for (int k = 2; k < 40; ++k) {
    term *= -x / k;
    acc += term / k;
    if (std::abs(term) < 1e-20 * std::abs(acc)) break;
  }
  return acc;
}

double exp_integral_e1(double x) { return -std::expint(-x); }

/// Regularized near-0 integrand
///   G(t) = (alpha(t) + e^-t alpha(-t)) / (1 - e^-2t) - alpha(0)/t,
/// bounded with G(0) = alpha(0)/2.  Below the switch point the order-2
/// Taylor data of alpha at 0 gives G to O(t^3) (third-order alpha terms
/// cancel in the symmetrized sum); above it an expm1-based rearrangement is
/// stable.
struct NearZeroIntegrand {
  const TestFunction& alpha;
  double a0, d1, d2;

  explicit NearZeroIntegrand(const TestFunction& f)
      : alpha(f), a0(f(0.0)), d1(f.eval(0.0, 1)), d2(f.eval(0.0, 2)) {}

  double operator()(double t) const {
    if (t < 1e-4) {
      return a0 / 2.0 + (d2 + d1 + a0 / 6.0) * t / 2.0 + (d1 + d2) * t * t / 4.0;
    }
    const double denom = -std::expm1(-2.0 * t);  // 1 - e^{-2t}
    const double s_tilde =
        (alpha(t) - a0) + (alpha(-t) - a0) + alpha(-t) * std::expm1(-t);
    const double numer = a0 * x_plus_expm1_neg(2.0 * t) + t * s_tilde;
    return numer / (t * denom);
  }
};

std::vector<double> clip_breakpoints(const TestFunction& alpha, double lo, double hi) {
  std::vector<double> pts{lo, hi};
  for (const auto& b : alpha.terms()) {
    for (double e : {b.center - b.half_width, b.center + b.half_width}) {
      if (e > lo && e < hi) pts.push_back(e);
      if (-e > lo && -e < hi) pts.push_back(-e);  // kinks of alpha(-t)
    }
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

}  // namespace

ZeroTable load_zeros(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::parse_error, "cannot open zeros file " + path);
  ZeroTable table;
  table.source_path = path;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::size_t b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    std::size_t e = line.find_last_not_of(" \t\r");
    std::string tok = line.substr(b, e - b + 1);
    char* end = nullptr;
    double v = std::strtod(tok.c_str(), &end);
    if (end != tok.c_str() + tok.size())
      fail(errc::parse_error, "line " + std::to_string(line_no) + ": '" + tok + "'");
    if (!(v > 0.0))
      fail(errc::parse_error, "line " + std::to_string(line_no) + ": ordinate must be positive");
    if (!table.gammas.empty() && v <= table.gammas.back())
      fail(errc::not_ascending, "line " + std::to_string(line_no));
    table.gammas.push_back(v);
  }
  if (!table.gammas.empty())
    table.first_zero_in_range = table.gammas.front() > 14.0 && table.gammas.front() < 15.0;
  return table;
}

std::vector<std::uint64_t> sieve_primes(std::uint64_t limit) {
  std::vector<std::uint64_t> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(limit + 1, false);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return primes;
}

PrimePowerGrid build_prime_power_grid(const TestFunction& alpha) {
  PrimePowerGrid grid;
  if (alpha.is_zero()) return grid;
  const double radius = alpha.support_radius();
  const double p_max_real = std::exp(radius);
  if (p_max_real > static_cast<double>(kSieveCap))
    fail(errc::cap_exceeded, "prime sieve limit exceeds " + std::to_string(kSieveCap));
  grid.p_max = static_cast<std::uint64_t>(std::ceil(p_max_real));
  const double lo = alpha.support_min(), hi = alpha.support_max();
  for (std::uint64_t p : sieve_primes(grid.p_max)) {
    const double logp = std::log(static_cast<double>(p));
    for (int k = 1; k * logp <= hi; ++k)
      if (k * logp >= lo) grid.terms.emplace_back(p, k);
    for (int k = -1; k * logp >= lo; --k)
      if (k * logp <= hi) grid.terms.emplace_back(p, k);
  }
  return grid;
}

double w_infty(const TestFunction& alpha, double delta) {
  if (alpha.is_zero()) return 0.0;
  if (!(delta > 0.0)) fail(errc::invalid_config, "delta must be positive");
  const double a0 = alpha(0.0);
  const double t_support = std::max({alpha.support_max(), -alpha.support_min(), 0.0});
  double acc = a0 * kLogPi;

  // (0, delta]: regularized integrand plus the exact a0 (1-e^{-2t})/t mass
  NearZeroIntegrand g(alpha);
  acc += integrate_adaptive(g, clip_breakpoints(alpha, 0.0, delta)).value;
  acc += a0 * ein(2.0 * delta);

  // [delta, end of support]: the integrand is regular
  if (t_support > delta) {
    auto integrand = [&](double t) {
      const double s = alpha(t) + std::exp(-t) * alpha(-t);
      return s / -std::expm1(-2.0 * t) - a0 * std::exp(-2.0 * t) / t;
    };
    acc += integrate_adaptive(integrand, clip_breakpoints(alpha, delta, t_support)).value;
  }

  // beyond the support of alpha(t) and alpha(-t): -a0 e^{-2t}/t in closed form
  if (a0 != 0.0) acc -= a0 * exp_integral_e1(2.0 * std::max(delta, t_support));
  return acc;
}

SideValue geometric_side_riemann(const TestFunction& alpha) {
  SideValue out;
  out.route = Route::geometric;
  if (alpha.is_zero()) return out;
  PrimePowerGrid grid = build_prime_power_grid(alpha);
  double acc = 0.0;
  for (auto [p, k] : grid.terms) {
    const double logp = std::log(static_cast<double>(p));
    double weight = 1.0;
    if (k <= -1) {
      double pk = 1.0;
      for (int i = 0; i < -k; ++i) pk *= static_cast<double>(p);
      weight = 1.0 / pk;
    }
    acc += logp * weight * alpha(k * logp);
  }
  out.value = cplx(acc + w_infty(alpha), 0.0);
  return out;
}

SideValue spectral_side_riemann(const TestFunction& alpha, const ZeroTable& zeros, int k_zeros) {
  if (k_zeros < 0 || static_cast<std::size_t>(k_zeros) > zeros.size())
    fail(errc::invalid_config, "requested " + std::to_string(k_zeros) + " zeros, table has " +
                                   std::to_string(zeros.size()));
  SideValue out;
  out.route = Route::spectral;
  if (alpha.is_zero()) return out;
  PhiValue phi0 = phi_transform(alpha, {0.0, 0.0});
  PhiValue phi1 = phi_transform(alpha, {1.0, 0.0});
  double acc = phi0.value.real() + phi1.value.real();
  out.quadrature_error = phi0.quad_error + phi1.quad_error;
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(k_zeros));
  for (int j = 0; j < k_zeros; ++j) {
    // Phi(1/2 - i g) = conj(Phi(1/2 + i g)) for real alpha
    PhiValue ph = phi_transform(alpha, {0.5, zeros.gammas[static_cast<std::size_t>(j)]});
    terms.push_back(2.0 * ph.value.real());
    acc -= terms.back();
    out.quadrature_error += 2.0 * ph.quad_error;
  }
  double tail_indicator = 0.0;
  for (std::size_t j = terms.size() > 10 ? terms.size() - 10 : 0; j < terms.size(); ++j)
    tail_indicator += terms[j];
  out.truncation_error = std::abs(tail_indicator);
  out.value = cplx(acc, 0.0);
  return out;
}

std::vector<std::pair<int, double>> residual_curve(const TestFunction& alpha,
                                                   const ZeroTable& zeros,
                                                   const std::vector<int>& k_list) {
  for (std::size_t i = 0; i + 1 < k_list.size(); ++i)
    if (k_list[i + 1] < k_list[i]) fail(errc::invalid_config, "K list must be ascending");
  const double geometric = geometric_side_riemann(alpha).value.real();
  std::vector<std::pair<int, double>> out;
  if (k_list.empty()) return out;
  const int k_max = k_list.back();
  if (static_cast<std::size_t>(k_max) > zeros.size())
    fail(errc::invalid_config, "K exceeds the zero table length");
  PhiValue phi0 = phi_transform(alpha, {0.0, 0.0});
  PhiValue phi1 = phi_transform(alpha, {1.0, 0.0});
  double spectral = phi0.value.real() + phi1.value.real();
  std::size_t next = 0;
  for (int j = 0; j <= k_max; ++j) {
    if (j > 0) {
      PhiValue ph = phi_transform(alpha, {0.5, zeros.gammas[static_cast<std::size_t>(j - 1)]});
      spectral -= 2.0 * ph.value.real();
    }
    while (next < k_list.size() && k_list[next] == j) {
      out.emplace_back(j, std::abs(spectral - geometric));
      ++next;
    }
  }
  return out;
}

}  // namespace efv
