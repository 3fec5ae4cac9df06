"""Trigonometrically convex functions stored as a measure plus a linear part.

``h(t) = 2*pi * int_0^t sin(t - phi) dmu(phi) + a*cos(t) + b*sin(t)``

Every function the package needs (support functions of polygons, the
certificate functions) has this form, so evaluation, one-sided derivatives
and recovery of the measure are all closed form or exact quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .measure import TWO_PI, AngularMeasure, first_moment

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(16)
_EDGE_SLACK = 1e-12


@dataclass(frozen=True)
class TrigConvexFunction:
    base: AngularMeasure
    linear_a: float = 0.0
    linear_b: float = 0.0

    @property
    def is_periodic(self) -> bool:
        return abs(first_moment(self.base)) <= self.base.tol_moment()

    def __call__(self, t):
        """Evaluate at ``t`` (scalar or array) in [0, 2*pi]."""
        arr = np.asarray(t, dtype=float)
        _check_range(arr)
        out = self._values(np.clip(arr, 0.0, TWO_PI))
        return float(out) if out.ndim == 0 else out

    def periodic(self, t):
        """Evaluate the 2*pi-periodic extension; only valid for balanced bases."""
        if not self.is_periodic:
            raise ValueError("function is not periodic: base measure has nonzero first moment")
        arr = np.mod(np.asarray(t, dtype=float), TWO_PI)
        out = self._values(arr)
        return float(out) if out.ndim == 0 else out

    def _values(self, t: np.ndarray) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        acc = np.zeros_like(t)
        for phi, m in self.base.atoms:
            acc += np.where(phi <= t, m * np.sin(t - phi), 0.0)
        for lo, hi, v in self.base.density:
            top = np.clip(t, lo, hi)
            acc += v * (np.cos(t - top) - np.cos(t - lo))
        return TWO_PI * acc + self.linear_a * np.cos(t) + self.linear_b * np.sin(t)

    def derivative(self, t: float, side: str = "right") -> float:
        return one_sided_derivative(self, t, side)

    def scale(self) -> float:
        """max(1, sup |h|) estimated on a fine grid plus breakpoints."""
        ts = np.concatenate([np.linspace(0.0, TWO_PI, 721), self.base.breakpoints()])
        return max(1.0, float(np.max(np.abs(self._values(ts)))))

    def to_dict(self) -> dict:
        return {"measure": self.base.to_dict(), "a": self.linear_a, "b": self.linear_b}


def _check_range(t: np.ndarray) -> None:
    if np.any(t < -_EDGE_SLACK) or np.any(t > TWO_PI + _EDGE_SLACK):
        raise ValueError("evaluation point outside [0, 2*pi]")


def from_measure(measure: AngularMeasure, a: float = 0.0, b: float = 0.0) -> TrigConvexFunction:
    return TrigConvexFunction(measure, a, b)


def add_linear(h: TrigConvexFunction, a: float, b: float) -> TrigConvexFunction:
    return TrigConvexFunction(h.base, h.linear_a + a, h.linear_b + b)


def one_sided_derivative(h: TrigConvexFunction, t: float, side: str = "right") -> float:
    """h'(t+) or h'(t-); an atom sitting exactly at t counts only from the right."""
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    _check_range(np.asarray(t))
    t = min(max(t, 0.0), TWO_PI)
    terms = []
    for phi, m in h.base.atoms:
        if phi < t or (side == "right" and phi == t):
            terms.append(m * math.cos(t - phi))
    for lo, hi, v in h.base.density:
        top = min(max(t, lo), hi)
        terms.append(v * (math.sin(t - lo) - math.sin(t - top)))
    return TWO_PI * math.fsum(terms) - h.linear_a * math.sin(t) + h.linear_b * math.cos(t)


def integrate(h: TrigConvexFunction, alpha: float, beta: float) -> float:
    """Integral of h over [alpha, beta] by 16-point Gauss-Legendre per smooth piece."""
    cuts = [alpha] + [p for p in h.base.breakpoints() if alpha < p < beta] + [beta]
    total = []
    for lo, hi in zip(cuts, cuts[1:]):
        half = 0.5 * (hi - lo)
        nodes = lo + half * (_GL_NODES + 1.0)
        total.append(half * float(np.dot(_GL_WEIGHTS, h._values(nodes))))
    return math.fsum(total)


def measure_from_h(h: TrigConvexFunction, alpha: float, beta: float) -> float:
    """Recover the mass of [alpha, beta] from h'_+(beta) - h'_-(alpha) + int h."""
    if not alpha < beta:
        raise ValueError(f"need alpha < beta, got ({alpha}, {beta})")
    jump = one_sided_derivative(h, beta, "right") - one_sided_derivative(h, alpha, "left")
    return (jump + integrate(h, alpha, beta)) / TWO_PI


def sine_defect(f: Callable[[float], float], t1: float, t2: float, t3: float) -> float:
    """Trig-convexity defect of an arbitrary function on one triple (<= 0 means convex)."""
    if not (t1 < t2 < t3):
        raise ValueError("need t1 < t2 < t3")
    if t3 - t1 >= math.pi:
        raise ValueError("triple must span less than pi")
    return (
        f(t1) * math.sin(t2 - t3)
        + f(t2) * math.sin(t3 - t1)
        + f(t3) * math.sin(t1 - t2)
    )


def check_trig_convex(h: TrigConvexFunction, t1: float, t2: float, t3: float) -> float:
    """Defect of h on (t1, t2, t3); triples past 2*pi need a periodic h."""
    inside = 0.0 <= t1 and t3 <= TWO_PI
    f = h if inside else h.periodic
    return sine_defect(f, t1, t2, t3)


def support_line(h: TrigConvexFunction, t: float) -> tuple[float, float]:
    """The line ``x cos t + y sin t = h(t)`` as ``(normal_angle, offset)``."""
    return t, float(h(t))
