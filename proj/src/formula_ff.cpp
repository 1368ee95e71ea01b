#include "efv/formula_ff.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace efv {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

/// q^e as double, exact whenever q^|e| fits in 53 bits.
double q_int_pow(std::uint64_t q, long e) {
  double acc = 1.0;
  const double qd = static_cast<double>(q);
  for (long i = 0; i < std::labs(e); ++i) acc *= qd;
  return e >= 0 ? acc : 1.0 / acc;
}

struct FamilySum {
  cplx value;
  double truncation = 0.0;
  double quad_error = 0.0;
  int v_level = 0;
};

/// Certified tail of one vertical family past |nu| = V.  Integrating by
/// parts k times gives |Phi(sigma+i tau)| <= exp(sigma T*) ||alpha^(k)||_1
/// / |tau|^k; with |tau_nu| >= 2 pi (|nu| - 1/2)/log q,
///   sum_{|nu|>V} |Phi| <= 2 C_k / ((k-1)(V-1/2)^{k-1}),
///   C_k = exp(sigma T*) ||alpha^(k)||_1 (log q / 2 pi)^k.
/// The order-2 bound alone needs V ~ 1/budget (infeasible for tight budgets),
/// so the order is chosen freely up to kMaxDerivativeOrder.
double tail_bound(const TestFunction& alpha, double sigma, double log_q, int v) {
  const double t_star = sigma >= 0.0 ? alpha.support_max() : alpha.support_min();
  const double envelope = std::exp(sigma * t_star);
  double best = std::numeric_limits<double>::infinity();
  for (int k = 2; k <= TestFunction::kMaxDerivativeOrder; ++k) {
    const double c = envelope * alpha.derivative_l1_bound(k) * std::pow(log_q / kTwoPi, k);
    best = std::min(best, 2.0 * c / ((k - 1) * std::pow(v - 0.5, k - 1)));
  }
  return best;
}

/// Smallest V whose certified tail is below budget.
int truncation_level(const TestFunction& alpha, double sigma, double log_q, double budget) {
  const double t_star = sigma >= 0.0 ? alpha.support_max() : alpha.support_min();
  const double envelope = std::exp(sigma * t_star);
  double best_v = std::numeric_limits<double>::infinity();
  for (int k = 2; k <= TestFunction::kMaxDerivativeOrder; ++k) {
    const double c = envelope * alpha.derivative_l1_bound(k) * std::pow(log_q / kTwoPi, k);
    const double v = 0.5 + std::pow(2.0 * c / ((k - 1) * budget), 1.0 / (k - 1));
    best_v = std::min(best_v, v);
  }
  if (!(best_v < 2e5)) fail(errc::no_convergence, "vertical-sum truncation level too large");
  return std::max(1, static_cast<int>(std::ceil(best_v)));
}

/// Conjugation-closed sum of Phi over one or two vertical families.
/// theta in [0, pi] is the base offset; pairing keeps the result exactly real:
///   theta == 0 : Phi(sigma) + 2 sum_{nu>=1} Re Phi            (one family)
///   theta == pi: 2 sum_{nu>=0} Re Phi(sigma + i(pi+2pi nu)/L) (one family,
///                partners at nu and -nu-1)
///   otherwise  : 2 Re sum_{nu=-V..V} Phi(base_theta + ...)    (the -theta
///                family is the conjugate image of this one)
FamilySum real_family_sum(const TestFunction& alpha, double sigma, double theta, double log_q,
                          double budget) {
  FamilySum out;
  if (alpha.is_zero()) return out;
  const int v = truncation_level(alpha, sigma, log_q, budget);
  out.v_level = v;
  out.truncation = tail_bound(alpha, sigma, log_q, v);
  double acc = 0.0;
  if (theta == 0.0) {
    PhiValue base = phi_transform(alpha, cplx(sigma, 0.0));
    acc = base.value.real();
    out.quad_error += base.quad_error;
    for (int nu = 1; nu <= v; ++nu) {
      PhiValue ph = phi_transform(alpha, cplx(sigma, kTwoPi * nu / log_q));
      acc += 2.0 * ph.value.real();
      out.quad_error += 2.0 * ph.quad_error;
    }
  } else if (theta == kPi) {
    for (int nu = 0; nu <= v; ++nu) {
      PhiValue ph = phi_transform(alpha, cplx(sigma, (kPi + kTwoPi * nu) / log_q));
      acc += 2.0 * ph.value.real();
      out.quad_error += 2.0 * ph.quad_error;
    }
  } else {
    for (int nu = -v; nu <= v; ++nu) {
      PhiValue ph = phi_transform(alpha, cplx(sigma, (theta + kTwoPi * nu) / log_q));
      acc += 2.0 * ph.value.real();
      out.quad_error += 2.0 * ph.quad_error;
    }
    out.truncation *= 2.0;  // two families truncated
  }
  out.value = cplx(acc, 0.0);
  return out;
}

/// Plain complex family sum over nu in [-V, V] at base sigma + i theta/log q.
FamilySum complex_family_sum(const TestFunction& alpha, double sigma, double theta,
                             double log_q, double budget) {
  FamilySum out;
  if (alpha.is_zero()) return out;
  const int v = truncation_level(alpha, sigma, log_q, budget);
  out.v_level = v;
  out.truncation = tail_bound(alpha, sigma, log_q, v);
  for (int nu = -v; nu <= v; ++nu) {
    PhiValue ph = phi_transform(alpha, cplx(sigma, (theta + kTwoPi * nu) / log_q));
    out.value += ph.value;
    out.quad_error += ph.quad_error;
  }
  return out;
}

/// Admissible k-range: |k| starts at 1, steps while k*length stays in support.
template <class Fn>
void for_lattice_multiples(double length, double support_lo, double support_hi, Fn&& fn) {
  for (int k = 1; k * length <= support_hi; ++k) fn(k);
  for (int k = -1; k * length >= support_lo; --k) fn(k);
}

void require_table_covers(const ClosedPointTable& table, const TestFunction& alpha) {
  const double log_q = std::log(static_cast<double>(table.q));
  if (!alpha.is_zero() && table.n_max * log_q <= alpha.support_radius())
    fail(errc::n_insufficient,
         "closed-point table reaches degree " + std::to_string(table.n_max) +
             " but the test function support radius is " + std::to_string(alpha.support_radius()));
}

}  // namespace

OrbitSpectrum orbit_spectrum(const ClosedPointTable& table) {
  OrbitSpectrum spectrum;
  spectrum.log_q = std::log(static_cast<double>(table.q));
  for (int n = 1; n <= table.n_max; ++n) {
    const mpz_class& mult = table.count(n);
    if (mult > 0) spectrum.entries.push_back({n * spectrum.log_q, mult, n});
  }
  return spectrum;
}

SideValue spectral_side_ff(const FrobeniusData& fd, const TestFunction& alpha, double eps) {
  if (!(eps > 0.0)) fail(errc::invalid_config, "eps must be positive");
  const double log_q = fd.log_q();
  SideValue out;
  out.route = Route::spectral;
  if (alpha.is_zero()) return out;

  FamilySum poles0 = real_family_sum(alpha, 0.0, 0.0, log_q, eps / 4.0);
  FamilySum poles1 = real_family_sum(alpha, 1.0, 0.0, log_q, eps / 4.0);

  FamilySum zeros_sum;
  if (fd.double_root) {
    // both zero families coincide; weight 2, budget for the pair
    FamilySum one = real_family_sum(alpha, 0.5, fd.arg_xi(), log_q, eps / 4.0);
    zeros_sum.value = 2.0 * one.value;
    zeros_sum.truncation = 2.0 * one.truncation;
    zeros_sum.quad_error = 2.0 * one.quad_error;
  } else {
    // theta in (0, pi): the sum covers the xi family and, via conjugation,
    // the xibar family
    zeros_sum = real_family_sum(alpha, 0.5, fd.arg_xi(), log_q, eps / 4.0);
  }

  out.value = poles0.value - zeros_sum.value + poles1.value;
  out.truncation_error = poles0.truncation + poles1.truncation + zeros_sum.truncation;
  out.quadrature_error = poles0.quad_error + poles1.quad_error + zeros_sum.quad_error;
  return out;
}

SideValue geometric_side_ff(const ClosedPointTable& table, const TestFunction& alpha,
                            int genus) {
  require_table_covers(table, alpha);
  const double log_q = std::log(static_cast<double>(table.q));
  SideValue out;
  out.route = Route::geometric;
  double acc = alpha(0.0) * (2.0 - 2.0 * genus) * log_q;
  for (int d = 1; d <= table.n_max; ++d) {
    const double mult = table.count(d).get_d();
    if (mult == 0.0) continue;
    const double length = d * log_q;  // log Nw
    double local = 0.0;
    for_lattice_multiples(length, alpha.support_min(), alpha.support_max(), [&](int k) {
      const double weight = k >= 1 ? 1.0 : q_int_pow(table.q, static_cast<long>(k) * d);
      local += weight * alpha(k * length);
    });
    acc += mult * length * local;
  }
  out.value = cplx(acc, 0.0);
  return out;
}

SideValue poisson_closed_form_ff(const FrobeniusData& fd, const TestFunction& alpha) {
  const double log_q = fd.log_q();
  SideValue out;
  out.route = Route::poisson;
  if (alpha.is_zero()) return out;
  const int n_hi = static_cast<int>(std::floor(alpha.support_max() / log_q));
  const int n_lo = static_cast<int>(std::floor(-alpha.support_min() / log_q));
  const int n_deep = std::max({n_hi, n_lo, 0});
  auto counts = n_deep >= 1 ? point_counts_tower(fd.a, fd.q, n_deep) : std::vector<mpz_class>{};
  double acc = 0.0;
  for (int n = 1; n <= n_hi; ++n)  // c_n = N_n
    acc += counts[n - 1].get_d() * alpha(n * log_q);
  // c_0 = 1 - s_0 + 1 = 0: the genus-1 term drops out identically
  for (int m = 1; m <= n_lo; ++m) {  // c_{-m} = N_m / q^m, exact rational
    mpz_class qm;
    mpz_ui_pow_ui(qm.get_mpz_t(), static_cast<unsigned long>(fd.q),
                  static_cast<unsigned long>(m));
    mpq_class coeff(counts[m - 1], qm);
    coeff.canonicalize();
    acc += coeff.get_d() * alpha(-m * log_q);
  }
  out.value = cplx(log_q * acc, 0.0);
  return out;
}

SideValue dolbeault_spectral(const FrobeniusData& fd, const TestFunction& alpha, double eps) {
  if (!(eps > 0.0)) fail(errc::invalid_config, "eps must be positive");
  const double log_q = fd.log_q();
  SideValue out;
  out.route = Route::spectral;
  if (alpha.is_zero()) return out;
  FamilySum t0 = real_family_sum(alpha, 0.0, 0.0, log_q, eps / 4.0);
  // T_1 runs over Log_q xibar + 2 pi i nu / log q; complex in general
  const double theta_bar = fd.double_root ? fd.arg_xi() : -fd.arg_xi();
  FamilySum t1 = complex_family_sum(alpha, 0.5, theta_bar, log_q, eps / 4.0);
  out.value = t0.value - t1.value;
  out.truncation_error = t0.truncation + t1.truncation;
  out.quadrature_error = t0.quad_error + t1.quad_error;
  return out;
}

SideValue dolbeault_poisson(const FrobeniusData& fd, const TestFunction& alpha) {
  const double log_q = fd.log_q();
  SideValue out;
  out.route = Route::poisson;
  if (alpha.is_zero()) return out;
  const int n_hi = static_cast<int>(std::floor(alpha.support_max() / log_q));
  const int n_lo = static_cast<int>(std::floor(-alpha.support_min() / log_q));
  cplx acc = 0.0;
  for (int n = 1; n <= n_hi; ++n)
    acc += (1.0 - fd.xi_bar_power(n)) * alpha(n * log_q);
  for (int m = 1; m <= n_lo; ++m)  // xibar^{-m} = xi^m / q^m
    acc += (1.0 - fd.xi_power(m) / q_int_pow(fd.q, m)) * alpha(-m * log_q);
  out.value = log_q * acc;
  return out;
}

SideValue dolbeault_orbit_side(const FrobeniusData& fd, const ClosedPointTable& table,
                               const TestFunction& alpha) {
  require_table_covers(table, alpha);
  const double log_q = fd.log_q();
  SideValue out;
  out.route = Route::geometric;
  cplx acc = 0.0;
  for (int d = 1; d <= table.n_max; ++d) {
    const double mult = table.count(d).get_d();
    if (mult == 0.0) continue;
    const double length = d * log_q;
    cplx local = 0.0;
    for_lattice_multiples(length, alpha.support_min(), alpha.support_max(), [&](int k) {
      const long e = static_cast<long>(k) * d;
      const cplx det_inv = 1.0 / (1.0 - fd.xi_power(static_cast<int>(e)));
      const double weight = k >= 1 ? 1.0 : q_int_pow(table.q, e);
      local += weight * det_inv * alpha(k * length);
    });
    acc += mult * length * local;
  }
  out.value = acc;
  return out;
}

SideValue de_rham_orbit_side(const ClosedPointTable& table, const TestFunction& alpha) {
  require_table_covers(table, alpha);
  const double log_q = std::log(static_cast<double>(table.q));
  SideValue out;
  out.route = Route::geometric;
  double acc = 0.0;
  for (int d = 1; d <= table.n_max; ++d) {
    const double mult = table.count(d).get_d();
    if (mult == 0.0) continue;
    const double length = d * log_q;  // l(gamma) = log Nw
    double local = 0.0;
    for_lattice_multiples(length, alpha.support_min(), alpha.support_max(), [&](int k) {
      const double weight = k >= 1 ? 1.0 : q_int_pow(table.q, static_cast<long>(k) * d);
      local += weight * alpha(k * length);  // e^{k l} = Nw^k
    });
    acc += mult * length * local;
  }
  out.value = cplx(acc, 0.0);
  return out;
}

std::string identity_name(Identity id) {
  switch (id) {
    case Identity::eq2: return "eq2";
    case Identity::cor34: return "cor34";
    case Identity::thm41: return "thm41";
  }
  return "?";
}

namespace {

void factor_prime_power(std::uint64_t q, std::uint64_t& p, unsigned& r) {
  for (std::uint64_t d = 2; d * d <= q; ++d) {
    if (q % d != 0) continue;
    p = d;
    r = 0;
    while (q > 1) {
      if (q % d != 0) fail(errc::invalid_config, "q is not a prime power");
      q /= d;
      ++r;
    }
    return;
  }
  p = q;  // q itself prime
  r = 1;
}

ResidualCheck make_check(const std::string& a, const std::string& b, const SideValue& va,
                         const SideValue& vb, double budget) {
  ResidualCheck check{a, b, std::abs(va.value - vb.value), budget, false};
  check.pass = check.residual <= check.budget;
  return check;
}

}  // namespace

VerificationReport verify_identity(Identity id, std::int64_t a, std::uint64_t q,
                                   const TestFunction& alpha, double eps) {
  if (!(eps > 0.0)) fail(errc::invalid_config, "epsilon must be positive");
  VerificationReport report;
  report.identity = identity_name(id);
  report.a = a;
  report.q = q;
  factor_prime_power(q, report.p, report.r);
  report.curve_class = is_supersingular(a, report.p) ? "supersingular" : "ordinary";
  report.alpha = alpha.terms();
  report.epsilon = eps;

  FrobeniusData fd = frobenius_eigenvalues(a, q);
  const double log_q = fd.log_q();
  const int n_needed =
      std::max(1, static_cast<int>(std::floor(alpha.support_radius() / log_q)) + 1);
  ClosedPointTable table = closed_points(a, q, n_needed);

  SideValue spectral, exact_a, exact_b;
  std::string name_spectral, name_exact_a, name_exact_b;
  switch (id) {
    case Identity::eq2:
      spectral = spectral_side_ff(fd, alpha, eps);
      exact_a = poisson_closed_form_ff(fd, alpha);
      exact_b = geometric_side_ff(table, alpha, 1);
      name_spectral = "spectral";
      name_exact_a = "poisson";
      name_exact_b = "geometric";
      break;
    case Identity::cor34:
      spectral = spectral_side_ff(fd, alpha, eps);
      exact_a = poisson_closed_form_ff(fd, alpha);
      exact_b = de_rham_orbit_side(table, alpha);
      name_spectral = "spectral";
      name_exact_a = "poisson";
      name_exact_b = "de_rham_orbit";
      break;
    case Identity::thm41:
      spectral = dolbeault_spectral(fd, alpha, eps);
      exact_a = dolbeault_poisson(fd, alpha);
      exact_b = dolbeault_orbit_side(fd, table, alpha);
      name_spectral = "dolbeault_spectral";
      name_exact_a = "dolbeault_poisson";
      name_exact_b = "dolbeault_orbit";
      break;
  }

  report.routes = {{name_spectral, spectral}, {name_exact_a, exact_a}, {name_exact_b, exact_b}};
  const double quad_budget = eps + spectral.quadrature_error;
  report.residuals = {
      make_check(name_spectral, name_exact_a, spectral, exact_a, quad_budget),
      make_check(name_exact_a, name_exact_b, exact_a, exact_b, kExactRouteTolerance),
      make_check(name_spectral, name_exact_b, spectral, exact_b,
                 quad_budget + kExactRouteTolerance),
  };
  report.pass = std::all_of(report.residuals.begin(), report.residuals.end(),
                            [](const ResidualCheck& c) { return c.pass; });
  return report;
}

}  // namespace efv
