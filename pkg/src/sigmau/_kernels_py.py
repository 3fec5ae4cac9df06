"""Pure-Python fallback for the compiled kernels in ``_kernels.pyx``.

Same algorithms and the same floating-point formulas, so the two backends
agree to roundoff.
"""

from __future__ import annotations

import math

import numpy as np

_EPS = 1e-13


def _inside(c, x, y):
    dx = x - c[0]
    dy = y - c[1]
    return math.sqrt(dx * dx + dy * dy) <= c[2] * (1.0 + _EPS)


def _diameter(ax, ay, bx, by):
    return (
        0.5 * (ax + bx),
        0.5 * (ay + by),
        0.5 * math.sqrt((ax - bx) * (ax - bx) + (ay - by) * (ay - by)),
    )


def _circum(ax, ay, bx, by, cx, cy):
    bxr, byr, cxr, cyr = bx - ax, by - ay, cx - ax, cy - ay
    d = 2.0 * (bxr * cyr - byr * cxr)
    if d == 0.0:
        dab = bxr * bxr + byr * byr
        dac = cxr * cxr + cyr * cyr
        dbc = (cx - bx) * (cx - bx) + (cy - by) * (cy - by)
        if dab >= dac and dab >= dbc:
            return _diameter(ax, ay, bx, by)
        if dac >= dbc:
            return _diameter(ax, ay, cx, cy)
        return _diameter(bx, by, cx, cy)
    b2 = bxr * bxr + byr * byr
    c2 = cxr * cxr + cyr * cyr
    ux = (cyr * b2 - byr * c2) / d
    uy = (bxr * c2 - cxr * b2) / d
    return ax + ux, ay + uy, math.sqrt(ux * ux + uy * uy)


def min_enclosing_circle(xs, ys):
    xs = [float(x) for x in xs]
    ys = [float(y) for y in ys]
    n = len(xs)
    if n == 0:
        raise ValueError("no points")
    c = (xs[0], ys[0], 0.0)
    for i in range(1, n):
        if _inside(c, xs[i], ys[i]):
            continue
        c = (xs[i], ys[i], 0.0)
        for j in range(i):
            if _inside(c, xs[j], ys[j]):
                continue
            c = _diameter(xs[i], ys[i], xs[j], ys[j])
            for k in range(j):
                if _inside(c, xs[k], ys[k]):
                    continue
                c = _circum(xs[i], ys[i], xs[j], ys[j], xs[k], ys[k])
    return c


def log_abs_product(lam_re, lam_im, zr, zi):
    lam_re = np.asarray(lam_re, dtype=float)
    lam_im = np.asarray(lam_im, dtype=float)
    if lam_re.size == 0:
        return 0.0
    den = lam_re * lam_re + lam_im * lam_im
    u = (zr * lam_re + zi * lam_im) / den
    v = (zi * lam_re - zr * lam_im) / den
    terms = 0.5 * np.log1p(-2.0 * u + u * u + v * v) + u
    return math.fsum(terms.tolist())
