#!/usr/bin/env python3
"""Regenerate data/zeros_100k.txt: ordinates of the first ~100k nontrivial
zeta zeros, one per line, ascending, 9 decimal places.

Method: coarse scan of the Riemann-Siegel Z function on a uniform grid
(vectorized, main sum plus the C0 remainder term), bisection on sign-change
brackets, then a secant polish against mpmath's fp.siegelz (which carries
higher-order remainder terms). The first 100 ordinates are replaced by
mpmath.zetazero values. Validation: strict monotonicity, zero-count vs the
Riemann-von Mangoldt main term, and spot agreement with mpmath.zetazero.

Usage: python3 tools/gen_zeros.py [t_max] [out_path]
Needs numpy and mpmath. Takes a few minutes.
"""

import sys
import time

import numpy as np
import mpmath as mp

TWO_PI = 2.0 * np.pi


def theta(t):
    """Riemann-Siegel theta, asymptotic expansion (plenty for t >= 10)."""
    return (
        t / 2.0 * np.log(t / TWO_PI)
        - t / 2.0
        - np.pi / 8.0
        + 1.0 / (48.0 * t)
        + 7.0 / (5760.0 * t**3)
    )


def rs_z(t):
    """Vectorized Riemann-Siegel Z(t) with the C0 remainder term."""
    t = np.asarray(t, dtype=np.float64)
    a = np.sqrt(t / TWO_PI)
    nu = np.floor(a).astype(np.int64)
    th = theta(t)
    total = np.zeros_like(t)
    for n in range(1, int(nu.max()) + 1):
        mask = nu >= n
        total[mask] += np.cos(th[mask] - t[mask] * np.log(n)) / np.sqrt(n)
    p = a - nu
    c0 = np.cos(TWO_PI * (p * p - p - 1.0 / 16.0)) / np.cos(TWO_PI * p)
    rem = np.where(nu % 2 == 1, 1.0, -1.0) * a ** (-0.5) * c0
    return 2.0 * total + rem


def rs_z_chunked(t, chunk=400_000):
    out = np.empty_like(t)
    for i in range(0, len(t), chunk):
        out[i : i + chunk] = rs_z(t[i : i + chunk])
    return out


def find_brackets(t0, t1, step):
    """Sign-change brackets of Z on [t0, t1] with the given grid step."""
    grid = np.arange(t0, t1 + step, step)
    z = rs_z_chunked(grid)
    sign = np.signbit(z)
    flip = np.nonzero(sign[1:] != sign[:-1])[0]
    return grid[flip], grid[flip + 1], z[flip], z[flip + 1]


def bisect(lo, hi, zlo, iters=30):
    """Vectorized bisection keeping the sign of the left endpoint."""
    lo = lo.copy()
    hi = hi.copy()
    neg = zlo < 0
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        zm = rs_z_chunked(mid)
        go_right = (zm < 0) == neg
        lo = np.where(go_right, mid, lo)
        hi = np.where(go_right, hi, mid)
    return 0.5 * (lo + hi)


def polish(t):
    """Three secant steps on mpmath's fp.siegelz around each root."""
    out = np.empty_like(t)
    h = 5e-6
    zf = mp.fp.siegelz
    for i, t0 in enumerate(t):
        t1 = t0 + h
        z0, z1 = zf(t0), zf(t1)
        for _ in range(3):
            denom = z1 - z0
            if denom == 0.0:
                break
            t2 = t1 - z1 * (t1 - t0) / denom
            if abs(t2 - t1) > 0.05:  # secant ran away; keep bisection root
                t2 = t0
                break
            t0, z0, t1 = t1, z1, t2
            z1 = zf(t1)
        out[i] = t1
    return out


def main():
    t_max = float(sys.argv[1]) if len(sys.argv) > 1 else 75500.0
    out_path = sys.argv[2] if len(sys.argv) > 2 else "data/zeros_100k.txt"

    t0 = time.time()
    print("scanning Z(t) on [14, %.0f] ..." % t_max, flush=True)
    lo, hi, zlo, _ = find_brackets(14.0, t_max, 0.01)
    print("  %d brackets, %.1fs" % (len(lo), time.time() - t0), flush=True)

    # A missed pair of zeros leaves no sign change; rescan wide gaps finer.
    gaps = np.diff(lo)
    mean_gap = TWO_PI / np.log(lo[1:] / TWO_PI)
    suspicious = np.nonzero(gaps > 2.2 * mean_gap)[0]
    extra_lo, extra_hi, extra_zlo = [], [], []
    for i in suspicious:
        a, b, zs = find_brackets(lo[i] + 0.005, lo[i + 1], 0.0005)[:3]
        for j in range(len(a)):
            if not np.any(np.isclose(a[j], lo, atol=0.011)):
                extra_lo.append(a[j])
                extra_hi.append(b[j])
                extra_zlo.append(zs[j])
    if extra_lo:
        print("  rescue scan found %d extra zeros" % len(extra_lo), flush=True)
        lo = np.concatenate([lo, extra_lo])
        hi = np.concatenate([hi, extra_hi])
        zlo = np.concatenate([zlo, extra_zlo])
        order = np.argsort(lo)
        lo, hi, zlo = lo[order], hi[order], zlo[order]

    print("bisecting ...", flush=True)
    roots = bisect(lo, hi, zlo)
    print("  done, %.1fs total" % (time.time() - t0), flush=True)

    print("polishing with fp.siegelz ...", flush=True)
    roots = polish(roots)
    print("  done, %.1fs total" % (time.time() - t0), flush=True)

    print("replacing first 100 ordinates with mpmath.zetazero ...", flush=True)
    mp.mp.dps = 25
    for n in range(1, 101):
        roots[n - 1] = float(mp.zetazero(n).imag)

    # --- validation ---
    assert np.all(np.diff(roots) > 0), "ordinates not strictly increasing"
    n_expected = float(theta(np.float64(t_max)) / np.pi + 1.0)
    assert abs(len(roots) - n_expected) < 3.5, (len(roots), n_expected)
    print("count %d vs Riemann-von Mangoldt %.2f" % (len(roots), n_expected))

    sample = [1, 2, 10, 100, 1000, 25000, 60000, 100000]
    for n in sample:
        if n > len(roots):
            continue
        ref = float(mp.zetazero(n).imag)
        err = abs(roots[n - 1] - ref)
        print("  zero #%d: %.9f err=%.2e" % (n, roots[n - 1], err), flush=True)
        assert err < 1e-6, (n, roots[n - 1], ref)

    with open(out_path, "w") as fh:
        for r in roots:
            fh.write("%.9f\n" % r)
    print("wrote %d ordinates to %s (%.1fs)" % (len(roots), out_path, time.time() - t0))


if __name__ == "__main__":
    main()
