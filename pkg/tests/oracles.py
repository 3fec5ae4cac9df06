"""Independent reference computations used by the test suite.

None of these share code with the package: they are deliberately slow,
direct transcriptions of the defining formulas.
"""

from __future__ import annotations

import cmath
import itertools
import math

import numpy as np
from hypothesis import strategies as st

from sigmau.measure import AngularMeasure

TWO_PI = 2 * math.pi


def brute_force_mec(points) -> tuple[complex, float]:
    """Smallest circle through some pair (as diameter) or triple that holds every point."""
    pts = [complex(p) for p in points]
    if len(pts) == 1:
        return pts[0], 0.0
    scale = max(abs(p - q) for p in pts for q in pts) or 1.0
    slack = 1e-12 * scale

    def holds(c: complex, r: float) -> bool:
        return all(abs(p - c) <= r + slack for p in pts)

    best = (0j, math.inf)
    for p, q in itertools.combinations(pts, 2):
        c, r = (p + q) / 2, abs(p - q) / 2
        if r < best[1] and holds(c, r):
            best = (c, r)
    for a, b, c in itertools.combinations(pts, 3):
        d = 2 * (a.real * (b.imag - c.imag) + b.real * (c.imag - a.imag) + c.real * (a.imag - b.imag))
        if abs(d) < 1e-14 * scale**2:
            continue
        ux = (abs(a) ** 2 * (b.imag - c.imag) + abs(b) ** 2 * (c.imag - a.imag) + abs(c) ** 2 * (a.imag - b.imag)) / d
        uy = (abs(a) ** 2 * (c.real - b.real) + abs(b) ** 2 * (a.real - c.real) + abs(c) ** 2 * (b.real - a.real)) / d
        center = complex(ux, uy)
        r = abs(a - center)
        if r < best[1] and holds(center, r):
            best = (center, r)
    return best


def h_quadrature(measure: AngularMeasure, t: float, a: float = 0.0, b: float = 0.0, nodes: int = 100_000) -> float:
    """2*pi * int_0^t sin(t - phi) dDelta(phi) + a cos t + b sin t by the midpoint rule."""
    total = a * math.cos(t) + b * math.sin(t)
    for ang, m in measure.atoms:
        if ang <= t:
            total += TWO_PI * m * math.sin(t - ang)
    for lo, hi, v in measure.density:
        top = min(hi, t)
        if top <= lo:
            continue
        w = (top - lo) / nodes
        phi = lo + w * (np.arange(nodes) + 0.5)
        total += TWO_PI * v * w * float(np.sum(np.sin(t - phi)))
    return total


def cell_moment_midpoint(lo: float, hi: float, v: float, nodes: int = 100_000) -> complex:
    w = (hi - lo) / nodes
    phi = lo + w * (np.arange(nodes) + 0.5)
    return complex(v * w * np.sum(np.exp(1j * phi)))


def integral_midpoint(f, lo: float, hi: float, nodes: int = 20_000) -> float:
    w = (hi - lo) / nodes
    x = lo + w * (np.arange(nodes) + 0.5)
    return float(w * np.sum(f(x)))


def log_sinc(z: complex) -> float:
    """log|sin(pi z)/(pi z)|, the canonical product over the nonzero integers."""
    w = math.pi * z
    return math.log(abs(cmath.sin(w) / w))


def harmonic(n: int) -> float:
    return math.fsum(1.0 / k for k in range(1, n + 1))


def random_atomic(rng: np.random.Generator, max_atoms: int = 8, lo: float = 0.1, hi: float = 3.0) -> AngularMeasure:
    n = int(rng.integers(1, max_atoms + 1))
    return AngularMeasure.create(zip(rng.uniform(0, TWO_PI, n), rng.uniform(lo, hi, n)))


def random_density(rng: np.random.Generator, max_cells: int = 4) -> AngularMeasure:
    n = int(rng.integers(1, max_cells + 1))
    edges = np.sort(rng.uniform(0, TWO_PI, 2 * n))
    cells = [(edges[2 * i], edges[2 * i + 1], rng.uniform(0.05, 1.0)) for i in range(n)]
    atoms = [(rng.uniform(0, TWO_PI), rng.uniform(0.1, 1.0)) for _ in range(int(rng.integers(0, 3)))]
    return AngularMeasure.create(atoms, cells)


# -- hypothesis strategies ---------------------------------------------------

angles = st.floats(min_value=0.0, max_value=TWO_PI, exclude_max=True, allow_nan=False)
masses = st.floats(min_value=0.05, max_value=5.0, allow_nan=False)
atom_lists = st.lists(st.tuples(angles, masses), min_size=1, max_size=8)
atomic_measures = atom_lists.map(AngularMeasure.create)


@st.composite
def mixed_measures(draw) -> AngularMeasure:
    atoms = draw(st.lists(st.tuples(angles, masses), max_size=4))
    edges = sorted(draw(st.lists(angles, min_size=2, max_size=6, unique=True)))
    if len(edges) % 2:
        edges = edges[:-1]
    values = draw(st.lists(st.floats(0.01, 2.0), min_size=len(edges) // 2, max_size=len(edges) // 2))
    cells = [(edges[2 * i], edges[2 * i + 1], values[i]) for i in range(len(edges) // 2)]
    return AngularMeasure.create(atoms, cells)
