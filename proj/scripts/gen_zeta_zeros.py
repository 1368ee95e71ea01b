#!/usr/bin/env python3
"""Generate a table of imaginary parts of nontrivial zeros of the Riemann
zeta function, one per line, ascending.

Method: vectorized Riemann-Siegel Z(t) on a dense grid to bracket sign
changes, bisection to refine, and mpmath.zetazero polishing for the first
NPOLISH zeros (the asymptotic expansion is weakest at small t).  The result
is validated against mpmath.zetazero at sampled indices and against the
Riemann-von Mangoldt count.

Usage: gen_zeta_zeros.py [count] [outfile]
"""

import sys
import numpy as np

TWO_PI = 2.0 * np.pi
NPOLISH = 300


def theta(t):
    """Riemann-Siegel theta, asymptotic expansion (t >> 1)."""
    return (t / 2.0 * np.log(t / TWO_PI) - t / 2.0 - np.pi / 8.0
            + 1.0 / (48.0 * t) + 7.0 / (5760.0 * t ** 3))


def _c0(p):
    return np.cos(TWO_PI * (p * p - p - 1.0 / 16.0)) / np.cos(TWO_PI * p)


def _c1(p):
    # -C0'''(p) / (96 pi^2), third derivative by central differences
    h = 1e-3
    d3 = (_c0(p + 2 * h) - 2 * _c0(p + h) + 2 * _c0(p - h) - _c0(p - 2 * h)) / (2 * h ** 3)
    return -d3 / (96.0 * np.pi ** 2)


def rs_z(t):
    """Riemann-Siegel Z(t) with the C0 and C1 remainder terms."""
    t = np.asarray(t, dtype=float)
    a = np.sqrt(t / TWO_PI)
    n_terms = np.floor(a).astype(int)
    th = theta(t)
    z = np.zeros_like(t)
    for n in range(1, int(n_terms.max()) + 1):
        mask = n_terms >= n
        z[mask] += np.cos(th[mask] - t[mask] * np.log(n)) / np.sqrt(n)
    z *= 2.0
    p = a - n_terms
    rem = _c0(p) + _c1(p) / a
    z += np.where(n_terms % 2 == 1, 1.0, -1.0) * rem / np.sqrt(a)
    return z


def find_zeros(t_lo, t_hi, step):
    grid = np.arange(t_lo, t_hi, step)
    z = rs_z(grid)
    sign_change = np.nonzero(np.signbit(z[:-1]) != np.signbit(z[1:]))[0]
    lo = grid[sign_change].copy()
    hi = grid[sign_change + 1].copy()
    zlo = z[sign_change].copy()
    for _ in range(52):
        mid = 0.5 * (lo + hi)
        zm = rs_z(mid)
        left = np.signbit(zm) == np.signbit(zlo)
        lo = np.where(left, mid, lo)
        zlo = np.where(left, zm, zlo)
        hi = np.where(left, hi, mid)
    return 0.5 * (lo + hi)


def main():
    count = int(sys.argv[1]) if len(sys.argv) > 1 else 10000
    outfile = sys.argv[2] if len(sys.argv) > 2 else "zeta_zeros.txt"

    from mpmath import mp, zetazero, siegelz
    mp.dps = 20

    # generous upper end: gamma_n ~ 2 pi n / log n, add margin then trim
    t_hi = 15.0
    import math
    guess = max(30.0, TWO_PI * count / math.log(max(count, 3)))
    while True:
        n_est = theta(np.array([t_hi]))[0] / np.pi + 1
        if n_est > count + 20:
            break
        t_hi = max(t_hi * 1.02, guess)
        guess = t_hi * 1.02

    zeros = find_zeros(10.0, t_hi, 0.002)
    if len(zeros) < count:
        raise SystemExit(f"only {len(zeros)} zeros bracketed below {t_hi}")
    zeros = zeros[:count]

    # polish the low zeros where the asymptotic expansion is least accurate
    npol = min(NPOLISH, count)
    for n in range(1, npol + 1):
        g = float(zetazero(n).imag)
        if abs(g - zeros[n - 1]) > 5e-3:
            raise SystemExit(f"zero #{n}: grid {zeros[n-1]} vs zetazero {g}")
        zeros[n - 1] = g

    # validation: Z(t) accuracy sample and index spot checks
    rng = np.random.default_rng(7)
    for t in rng.uniform(100.0, zeros[-1], 20):
        err = abs(rs_z(np.array([t]))[0] - float(siegelz(t)))
        if err > 1e-4:
            raise SystemExit(f"Z({t}) off by {err}")
    for n in (npol + 1, count // 2, count - 1, count):
        g = float(zetazero(n).imag)
        if abs(zeros[n - 1] - g) > 1e-4:
            raise SystemExit(f"zero #{n}: {zeros[n-1]} vs zetazero {g}")

    n_rvm = theta(np.array([0.5 * (zeros[-1] + (zeros[-1] + 1.0))]))[0] / np.pi + 1
    if abs(count - n_rvm) > 3.0:
        raise SystemExit(f"count {count} vs Riemann-von Mangoldt estimate {n_rvm}")

    with open(outfile, "w") as fh:
        fh.write("# imaginary parts of the first %d nontrivial zeros of zeta(s),\n" % count)
        fh.write("# zeros at 1/2 +- i*gamma, ascending gamma\n")
        for g in zeros:
            fh.write("%.12f\n" % g)
    print(f"wrote {count} zeros to {outfile}, last gamma = {zeros[-1]:.6f}")


if __name__ == "__main__":
    main()
