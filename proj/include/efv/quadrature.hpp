#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <type_traits>
#include <vector>

#include "efv/errors.hpp"

namespace efv {

/// 15-point Gauss-Legendre rule on [-1, 1].
inline constexpr int kGaussPoints = 15;
inline constexpr double kGaussNode[kGaussPoints] = {
    -0.9879925180204854284896, -0.9372733924007059043078, -0.8482065834104272162006,
    -0.7244177313601700474162, -0.5709721726085388475372, -0.3941513470775633698972,
    -0.2011940939974345223006, 0.0,
    0.2011940939974345223006,  0.3941513470775633698972,  0.5709721726085388475372,
    0.7244177313601700474162,  0.8482065834104272162006,  0.9372733924007059043078,
    0.9879925180204854284896};
inline constexpr double kGaussWeight[kGaussPoints] = {
    0.03075324199611726835463, 0.07036604748810812470927, 0.1071592204671719350119,
    0.1395706779261543144478,  0.1662692058169939335532,  0.1861610000155622110268,
    0.1984314853271115764561,  0.2025782419255612728806,  0.1984314853271115764561,
    0.1861610000155622110268,  0.1662692058169939335532,  0.1395706779261543144478,
    0.1071592204671719350119,  0.07036604748810812470927, 0.03075324199611726835463};

struct QuadOptions {
  double abs_tol = 1e-13;
  double rel_tol = 1e-13;
  /// Upper bound on initial panel width (seed subdivision for oscillatory
  /// integrands); refinement may split further.
  double max_panel_width = std::numeric_limits<double>::infinity();
  int max_depth = 40;
  /// Roundoff floor: accept a panel once the bisection estimate falls below
  /// noise_floor_rel times the panel's L1 mass.  Callers integrating e^{ts}
  /// scale this by |s| t, the abscissa-rounding amplification.
  double noise_floor_rel = 100.0 * 2.220446049250313e-16;
};

template <class T>
struct QuadResult {
  T value{};
  double error = 0.0;  // accumulated bisection error estimate
};

template <class F>
auto gauss15(F&& f, double a, double b) {
  using T = std::invoke_result_t<F&, double>;
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  T acc{};
  for (int i = 0; i < kGaussPoints; ++i)
    acc += static_cast<T>(f(mid + half * kGaussNode[i]) * kGaussWeight[i]);
  return static_cast<T>(acc * half);
}

namespace detail {

template <class F>
auto gauss15_with_l1(F&& f, double a, double b) {
  using T = std::invoke_result_t<F&, double>;
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  T acc{};
  double l1 = 0.0;
  for (int i = 0; i < kGaussPoints; ++i) {
    const T v = static_cast<T>(f(mid + half * kGaussNode[i]));
    acc += static_cast<T>(v * kGaussWeight[i]);
    l1 += std::abs(v) * kGaussWeight[i];
  }
  return std::pair<T, double>(static_cast<T>(acc * half), l1 * half);
}

template <class F, class T>
void refine_panel(F& f, double a, double b, double tol, const QuadOptions& opts, int depth,
                  QuadResult<T>& out) {
  const T coarse = gauss15(f, a, b);
  const double mid = 0.5 * (a + b);
  const auto [left, l1_left] = gauss15_with_l1(f, a, mid);
  const auto [right, l1_right] = gauss15_with_l1(f, mid, b);
  const T fine = left + right;
  const double err = std::abs(fine - coarse);
  const bool at_noise_floor = err <= opts.noise_floor_rel * (l1_left + l1_right);
  if (err <= tol || at_noise_floor ||
      b - a < 8e-15 * std::max(std::abs(a), std::abs(b))) {
    out.value += fine;
    out.error += err;
    return;
  }
  if (depth >= opts.max_depth)
    fail(errc::no_convergence, "quadrature bisection depth exceeded");
  refine_panel(f, a, mid, 0.5 * tol, opts, depth + 1, out);
  refine_panel(f, mid, b, 0.5 * tol, opts, depth + 1, out);
}

}  // namespace detail

/// Adaptive composite Gauss-Legendre over the sorted breakpoint list.
/// Every breakpoint is a panel boundary; panels are bisected until the
/// embedded estimate meets max(abs_tol, rel_tol * |value|).
template <class F>
auto integrate_adaptive(F&& f, const std::vector<double>& breakpoints,
                        const QuadOptions& opts = {}) {
  using T = std::invoke_result_t<F&, double>;
  QuadResult<T> out;
  if (breakpoints.size() < 2) return out;

  std::vector<std::pair<double, double>> panels;
  double total_len = 0.0;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    double a = breakpoints[i], b = breakpoints[i + 1];
    if (!(b > a)) continue;
    int pieces = 1;
    if (b - a > opts.max_panel_width)
      pieces = static_cast<int>(std::ceil((b - a) / opts.max_panel_width));
    for (int k = 0; k < pieces; ++k)
      panels.emplace_back(a + (b - a) * k / pieces, a + (b - a) * (k + 1) / pieces);
    total_len += b - a;
  }
  if (panels.empty()) return out;

  T rough{};
  for (auto& [a, b] : panels) rough += gauss15(f, a, b);
  const double tol = std::max(opts.abs_tol, opts.rel_tol * std::abs(rough));

  for (auto& [a, b] : panels)
    detail::refine_panel(f, a, b, tol * (b - a) / total_len, opts, 0, out);
  return out;
}

}  // namespace efv
