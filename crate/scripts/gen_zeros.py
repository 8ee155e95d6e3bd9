#!/usr/bin/env python3
"""Generate a table of zeta zero ordinates for the test fixtures.

The runtime library never computes zeros; it ingests a plain-text table.
This script produces that table offline when a published table is not
available:

  * ordinates below ~1000 come straight from mpmath.zetazero;
  * above that, Z(t) is evaluated with the Riemann-Siegel formula
    (remainder terms C0..C4, Taylor-expanded around p = 1/2), zeros are
    bracketed inside Gram blocks (Rosser's rule, which holds far beyond
    the heights used here), and each bracket is bisected to ~1e-12.

Usage: gen_zeros.py COUNT OUTPUT
"""

import sys

import mpmath
import numpy as np

LOW_CUTOFF = 1000.0


def phi_taylor(order=90):
    mpmath.mp.dps = 80

    def phi(p):
        two_pi = 2 * mpmath.pi
        return mpmath.cos(two_pi * (p * p - p - mpmath.mpf(1) / 16)) / mpmath.cos(two_pi * p)

    coeffs = mpmath.taylor(phi, mpmath.mpf(1) / 2, order)
    mpmath.mp.dps = 15
    return np.array([float(c) for c in coeffs])


PHI = phi_taylor()


def phi_deriv(k, x):
    """k-th derivative of C0 at p = 1/2 + x."""
    out = np.zeros_like(x)
    # Horner on the differentiated series.
    n = len(PHI)
    for j in range(n - 1, k - 1, -1):
        c = PHI[j]
        for m in range(k):
            c *= j - m
        out = out * x + c
    return out


def theta(t):
    return (
        t / 2 * np.log(t / (2 * np.pi))
        - t / 2
        - np.pi / 8
        + 1 / (48 * t)
        + 7 / (5760 * t**3)
        + 31 / (80640 * t**5)
    )


def z_rs(t):
    t = np.asarray(t, dtype=float)
    a = np.sqrt(t / (2 * np.pi))
    n_terms = np.floor(a).astype(np.int64)
    p = a - n_terms
    th = theta(t)
    total = np.zeros_like(t)
    for n in range(1, int(n_terms.max()) + 1):
        mask = n_terms >= n
        total += np.where(mask, np.cos(th - t * np.log(n)) / np.sqrt(n), 0.0)
    total *= 2
    x = p - 0.5
    pi = np.pi
    d = {k: phi_deriv(k, x) for k in range(13)}
    c0 = d[0]
    c1 = -d[3] / (96 * pi**2)
    c2 = d[2] / (64 * pi**2) + d[6] / (18432 * pi**4)
    c3 = -d[1] / (64 * pi**2) - d[5] / (3840 * pi**4) - d[9] / (5308416 * pi**6)
    c4 = (
        d[0] / (128 * pi**2)
        + 19 * d[4] / (24576 * pi**4)
        + 11 * d[8] / (5898240 * pi**6)
        + d[12] / (2038431744 * pi**8)
    )
    r = a ** -1.0
    rem = c0 + r * (c1 + r * (c2 + r * (c3 + r * c4)))
    sign = np.where(n_terms % 2 == 1, 1.0, -1.0)
    return total + sign * rem / np.sqrt(a)


def gram_points(n_lo, n_hi):
    n = np.arange(n_lo, n_hi + 1, dtype=float)
    # Newton on theta(g) = n*pi, seeded with the leading asymptotic.
    g = 2 * np.pi * np.exp(1 + np.real(lambertw_vec((8 * n + 1) / (8 * np.e))))
    for _ in range(8):
        dth = 0.5 * np.log(g / (2 * np.pi))
        g -= (theta(g) - n * np.pi) / dth
    return g


def lambertw_vec(x):
    w = np.log1p(x)
    for _ in range(30):
        ew = np.exp(w)
        w -= (w * ew - x) / (ew * (w + 1))
    return w


def count_below(t):
    return theta(t) / np.pi + 1


def sign_changes(f):
    return np.nonzero(np.sign(f[:-1]) * np.sign(f[1:]) < 0)[0]


def bisect(lo, hi, iters=48):
    flo = z_rs(lo)
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        fm = z_rs(mid)
        left = np.sign(fm) == np.sign(flo)
        lo = np.where(left, mid, lo)
        flo = np.where(left, fm, flo)
        hi = np.where(left, hi, mid)
    return 0.5 * (lo + hi)


def brackets_in(a, b, expected):
    for density in (16, 256, 4096, 65536):
        grid = np.linspace(a, b, density * max(expected, 1) + 1)
        f = z_rs(grid)
        idx = sign_changes(f)
        if len(idx) == expected:
            return grid[idx], grid[idx + 1]
    raise RuntimeError(f"block [{a}, {b}] expected {expected} zeros, found {len(idx)}")


def main():
    count = int(sys.argv[1])
    out = sys.argv[2]

    # Start the Riemann-Siegel stage at a good Gram point just above LOW_CUTOFF.
    n0 = int(count_below(LOW_CUTOFF))
    while True:
        g = gram_points(n0, n0)[0]
        if (-1) ** n0 * z_rs(np.array([g]))[0] > 0:
            break
        n0 += 1
    low_count = n0 + 1  # zeros below a good Gram point g_n number n + 1
    print(f"mpmath stage: {low_count} zeros below g_{n0} = {g:.6f}", file=sys.stderr)
    zeros = [float(mpmath.zetazero(k).imag) for k in range(1, low_count + 1)]
    nxt = float(mpmath.zetazero(low_count + 1).imag)
    assert zeros[-1] < g < nxt, (zeros[-1], g, nxt)

    chunk = 20000
    n = n0
    while len(zeros) < count:
        g = gram_points(n, n + chunk)
        idx = np.arange(n, n + chunk + 1)
        zg = z_rs(g)
        good = np.nonzero(np.where(idx % 2 == 0, 1.0, -1.0) * zg > 0)[0]
        lo_all, hi_all = [], []
        # Regular blocks: one zero per Gram interval, detect them in bulk.
        for a, b in zip(good[:-1], good[1:]):
            expected = int(b - a)
            if expected == 1:
                lo_all.append(g[a])
                hi_all.append(g[b])
            else:
                lo, hi = brackets_in(g[a], g[b], expected)
                lo_all.extend(lo)
                hi_all.extend(hi)
        roots = bisect(np.array(lo_all), np.array(hi_all))
        zeros.extend(roots.tolist())
        n = int(idx[good[-1]])
        print(f"  {len(zeros)} zeros, height {zeros[-1]:.3f}", file=sys.stderr)

    zeros = np.array(zeros[:count])
    assert np.all(np.diff(zeros) > 0)
    with open(out, "w") as fh:
        fh.write("# Imaginary parts of the first %d nontrivial zeros of zeta(s).\n" % count)
        fh.write("# Generated by scripts/gen_zeros.py (mpmath below %g, Riemann-Siegel above).\n" % LOW_CUTOFF)
        for z in zeros:
            fh.write("%.9f\n" % z)


if __name__ == "__main__":
    main()
