#include "efv/curve.hpp"

#include <numeric>
#include <unordered_set>

namespace efv {

namespace {

std::uint64_t checked_power(std::uint64_t q, int n, std::uint64_t cap) {
  std::uint64_t v = 1;
  for (int i = 0; i < n; ++i) {
    if (v > cap / q) fail(errc::cap_exceeded, "q^n exceeds the enumeration cap");
    v *= q;
  }
  if (v > cap) fail(errc::cap_exceeded, "q^n exceeds the enumeration cap");
  return v;
}

FieldElement weierstrass_rhs(const Field& F, const CurveData& c, const FieldElement& x) {
  // x^3 + a2 x^2 + a4 x + a6, coefficients already living in F
  FieldElement x2 = F.mul(x, x);
  FieldElement acc = F.mul(x2, x);
  acc = F.add(acc, F.mul(c.a2, x2));
  acc = F.add(acc, F.mul(c.a4, x));
  return F.add(acc, c.a6);
}

struct EmbeddedCurve {
  Field field;
  CurveData curve;  // coefficients mapped into `field`
};

EmbeddedCurve lift_curve(const CurveData& curve, int n, std::uint64_t cap) {
  checked_power(curve.field.q(), n, cap);
  if (n == 1) return {curve.field, curve};
  Field big = Field::make(curve.field.p(), curve.field.r() * static_cast<unsigned>(n));
  Embedding phi(curve.field, big);
  CurveData lifted{big,           phi(curve.a1), phi(curve.a2),
                   phi(curve.a3), phi(curve.a4), phi(curve.a6),
                   phi(curve.discriminant)};
  return {big, lifted};
}

// number of y with y^2 + B y = C, via Euler criterion resp. Artin-Schreier trace
int y_root_count(const Field& F, const FieldElement& B, const FieldElement& C) {
  if (F.p() == 2) {
    if (F.is_zero(B)) return 1;  // squaring is bijective
    FieldElement w = F.mul(C, F.inv(F.mul(B, B)));
    return F.absolute_trace(w) == 0 ? 2 : 0;
  }
  // complete the square: (y + B/2)^2 = C + B^2/4
  FieldElement half = F.inv(F.from_int(2));
  FieldElement hb = F.mul(B, half);
  FieldElement d = F.add(C, F.mul(hb, hb));
  if (F.is_zero(d)) return 1;
  FieldElement chi = F.pow(d, (F.q() - 1) / 2);
  return chi == F.one() ? 2 : 0;
}

}  // namespace

int moebius_mu(int n) {
  int mu = 1;
  for (int d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    n /= d;
    if (n % d == 0) return 0;
    mu = -mu;
  }
  if (n > 1) mu = -mu;
  return mu;
}

bool is_supersingular(std::int64_t a, std::uint64_t p) {
  return a % static_cast<std::int64_t>(p) == 0;
}

CurveData curve_make(const Field& field, const FieldElement& a1, const FieldElement& a2,
                     const FieldElement& a3, const FieldElement& a4, const FieldElement& a6) {
  const Field& F = field;
  auto ci = [&](std::int64_t n) { return F.from_int(n); };
  // b-invariants of the long Weierstrass form; valid in every characteristic
  FieldElement b2 = F.add(F.mul(a1, a1), F.mul(ci(4), a2));
  FieldElement b4 = F.add(F.mul(ci(2), a4), F.mul(a1, a3));
  FieldElement b6 = F.add(F.mul(a3, a3), F.mul(ci(4), a6));
  FieldElement b8 = F.add(
      F.sub(F.add(F.mul(F.mul(a1, a1), a6), F.mul(ci(4), F.mul(a2, a6))),
            F.mul(F.mul(a1, a3), a4)),
      F.sub(F.mul(a2, F.mul(a3, a3)), F.mul(a4, a4)));
  FieldElement disc = F.sub(
      F.sub(F.sub(F.mul(ci(9), F.mul(b2, F.mul(b4, b6))), F.mul(F.mul(b2, b2), b8)),
            F.mul(ci(8), F.mul(b4, F.mul(b4, b4)))),
      F.mul(ci(27), F.mul(b6, b6)));
  if (F.is_zero(disc)) fail(errc::singular_curve, "discriminant vanishes");
  return {field, a1, a2, a3, a4, a6, disc};
}

CurveData curve_make_short(const Field& field, std::int64_t a4, std::int64_t a6) {
  const FieldElement z = field.zero();
  return curve_make(field, z, z, z, field.from_int(a4), field.from_int(a6));
}

std::uint64_t count_points_bruteforce(const CurveData& curve, int n, std::uint64_t cap) {
  EmbeddedCurve ec = lift_curve(curve, n, cap);
  const Field& F = ec.field;
  std::uint64_t count = 1;  // point at infinity
  for (std::uint64_t i = 0; i < F.q(); ++i) {
    FieldElement x = F.from_index(i);
    FieldElement b = F.add(F.mul(ec.curve.a1, x), ec.curve.a3);
    FieldElement c = weierstrass_rhs(F, ec.curve, x);
    count += static_cast<std::uint64_t>(y_root_count(F, b, c));
  }
  return count;
}

std::int64_t frobenius_trace(const CurveData& curve, std::uint64_t cap) {
  const auto q = static_cast<std::int64_t>(curve.field.q());
  const auto n1 = static_cast<std::int64_t>(count_points_bruteforce(curve, 1, cap));
  const std::int64_t a = q + 1 - n1;
  if (a * a > 4 * q)
    fail(errc::hasse_violation, "trace " + std::to_string(a) + " violates |a| <= 2 sqrt(q)");
  return a;
}

std::vector<mpz_class> frobenius_power_sums(std::int64_t a, std::uint64_t q, int n_max) {
  std::vector<mpz_class> s(static_cast<std::size_t>(n_max) + 1);
  s[0] = 2;
  if (n_max >= 1) s[1] = a;
  for (int n = 2; n <= n_max; ++n)
    s[n] = a * s[n - 1] - mpz_class(q) * s[n - 2];
  return s;
}

std::vector<mpz_class> frobenius_lucas_u(std::int64_t a, std::uint64_t q, int n_max) {
  std::vector<mpz_class> u(static_cast<std::size_t>(n_max) + 1);
  u[0] = 0;
  if (n_max >= 1) u[1] = 1;
  for (int n = 2; n <= n_max; ++n)
    u[n] = a * u[n - 1] - mpz_class(q) * u[n - 2];
  return u;
}

std::vector<mpz_class> point_counts_tower(std::int64_t a, std::uint64_t q, int n_max) {
  if (static_cast<double>(a) * static_cast<double>(a) > 4.0 * static_cast<double>(q))
    fail(errc::hasse_violation, "|a| > 2 sqrt(q)");
  auto s = frobenius_power_sums(a, q, n_max);
  std::vector<mpz_class> counts;
  counts.reserve(static_cast<std::size_t>(n_max));
  mpz_class qn = 1;
  for (int n = 1; n <= n_max; ++n) {
    qn *= q;
    counts.push_back(qn + 1 - s[n]);
  }
  return counts;
}

ClosedPointTable closed_points(std::int64_t a, std::uint64_t q, int n_max) {
  auto counts = point_counts_tower(a, q, n_max);
  ClosedPointTable table{q, n_max, {}};
  table.a_d.reserve(static_cast<std::size_t>(n_max));
  for (int n = 1; n <= n_max; ++n) {
    mpz_class acc = 0;
    for (int d = 1; d <= n; ++d) {
      if (n % d != 0) continue;
      int mu = moebius_mu(n / d);
      if (mu != 0) acc += mu * counts[d - 1];
    }
    mpz_class an, rem;
    mpz_fdiv_qr_ui(an.get_mpz_t(), rem.get_mpz_t(), acc.get_mpz_t(), static_cast<unsigned long>(n));
    if (rem != 0 || an < 0)
      fail(errc::non_integral_count, "closed point count at degree " + std::to_string(n));
    table.a_d.push_back(an);
  }
  return table;
}

ClosedPointTable closed_points_oracle(const CurveData& curve, int n_max, std::uint64_t cap) {
  int big_degree = 1;
  for (int d = 2; d <= n_max; ++d) big_degree = std::lcm(big_degree, d);
  EmbeddedCurve ec = lift_curve(curve, big_degree, cap);
  const Field& F = ec.field;
  const std::uint64_t Q = F.q();
  const std::uint64_t q = curve.field.q();
  const std::uint64_t none = ~std::uint64_t(0);

  // one preimage per image of z -> z^2 (odd char) resp. z -> z^2 + z (char 2)
  std::vector<std::uint64_t> preimage(Q, none);
  const bool char2 = F.p() == 2;
  for (std::uint64_t i = 0; i < Q; ++i) {
    FieldElement z = F.from_index(i);
    FieldElement im = char2 ? F.add(F.mul(z, z), z) : F.mul(z, z);
    std::uint64_t k = F.index_of(im);
    if (preimage[k] == none) preimage[k] = i;
  }

  ClosedPointTable table{q, n_max, std::vector<mpz_class>(static_cast<std::size_t>(n_max), 0)};
  table.a_d[0] += 1;  // point at infinity: rational, degree 1

  std::unordered_set<std::uint64_t> visited;
  auto key = [Q](std::uint64_t ix, std::uint64_t iy) { return ix * Q + iy; };

  auto record_orbit = [&](const FieldElement& x0, const FieldElement& y0) {
    if (visited.count(key(F.index_of(x0), F.index_of(y0)))) return;
    FieldElement x = x0, y = y0;
    int len = 0;
    do {
      visited.insert(key(F.index_of(x), F.index_of(y)));
      x = F.pow(x, q);
      y = F.pow(y, q);
      ++len;
    } while (!(x == x0 && y == y0));
    if (len <= n_max) table.a_d[static_cast<std::size_t>(len) - 1] += 1;
  };

  for (std::uint64_t i = 0; i < Q; ++i) {
    FieldElement x = F.from_index(i);
    FieldElement b = F.add(F.mul(ec.curve.a1, x), ec.curve.a3);
    FieldElement c = weierstrass_rhs(F, ec.curve, x);
    if (char2) {
      if (F.is_zero(b)) {
        record_orbit(x, F.pow(c, Q / 2));  // unique square root
      } else {
        FieldElement w = F.mul(c, F.inv(F.mul(b, b)));
        std::uint64_t z_idx = preimage[F.index_of(w)];
        if (z_idx == none) continue;
        FieldElement z = F.from_index(z_idx);
        record_orbit(x, F.mul(b, z));
        record_orbit(x, F.mul(b, F.add(z, F.one())));
      }
    } else {
      FieldElement half = F.inv(F.from_int(2));
      FieldElement hb = F.mul(b, half);
      FieldElement d = F.add(c, F.mul(hb, hb));
      if (F.is_zero(d)) {
        record_orbit(x, F.neg(hb));
      } else {
        std::uint64_t w_idx = preimage[F.index_of(d)];
        if (w_idx == none) continue;
        FieldElement w = F.from_index(w_idx);
        record_orbit(x, F.sub(w, hb));
        record_orbit(x, F.sub(F.neg(w), hb));
      }
    }
  }
  return table;
}

}  // namespace efv
