#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "efv/formula_ff.hpp"
#include "efv/test_function.hpp"

namespace efv {

/// Imaginary parts of nontrivial zeros 1/2 +- i gamma, ascending.
struct ZeroTable {
  std::vector<double> gammas;
  std::string source_path;
  /// Soft sanity gate: first entry should land in (14, 15).
  bool first_zero_in_range = true;

  std::size_t size() const { return gammas.size(); }
};

/// Parse a zeros file: one decimal per line, '#' starts a comment, blank
/// lines ignored.  Throws parse_error (with line number) or not_ascending.
ZeroTable load_zeros(const std::string& path);

/// All (p, k) with k != 0 and k log p inside the support hull of alpha.
struct PrimePowerGrid {
  std::uint64_t p_max = 0;
  std::vector<std::pair<std::uint64_t, int>> terms;
};

PrimePowerGrid build_prime_power_grid(const TestFunction& alpha);

std::vector<std::uint64_t> sieve_primes(std::uint64_t limit);

inline constexpr std::uint64_t kSieveCap = 100'000'000;

/// Archimedean term
///   W(alpha) = alpha(0) log pi
///     + int_0^inf [ (alpha(t) + e^-t alpha(-t)) (1-e^-2t)^-1 - alpha(0) t^-1 e^-2t ] dt.
/// The 1/t cancellation at 0 is integrated in regularized form on (0, delta];
/// the pure tail beyond the support is the closed form -alpha(0) E_1(2T).
double w_infty(const TestFunction& alpha, double delta = 1e-3);

/// Geometric side of the Riemann explicit formula: prime-power sums + W(alpha).
SideValue geometric_side_riemann(const TestFunction& alpha);

/// Phi(0) + Phi(1) - sum_{j<=K} [Phi(1/2 + i gamma_j) + Phi(1/2 - i gamma_j)].
/// truncation_error is a heuristic tail indicator: |sum of the last 10 terms|.
SideValue spectral_side_riemann(const TestFunction& alpha, const ZeroTable& zeros, int k_zeros);

/// |spectral(K) - geometric| for each K in the ascending list.
std::vector<std::pair<int, double>> residual_curve(const TestFunction& alpha,
                                                   const ZeroTable& zeros,
                                                   const std::vector<int>& k_list);

}  // namespace efv
