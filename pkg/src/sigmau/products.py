"""Genus-1 canonical products on finite zero sets and their indicators.

Used to check, at desk scale, that a regularized sequence really carries
an entire function whose type matches the predicted circumradius.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .measure import TWO_PI
from .sequences import PointSequence

EXCLUSION_FRACTION = 0.25
RADIUS_CAP = 0.4


class ZeroProximityError(ValueError):
    """Evaluation point lies inside the exclusion disc of a zero."""


@dataclass(frozen=True)
class IndicatorEstimate:
    angle: float
    value: float
    radii_used: tuple[float, ...]
    spread: float
    tail_bound: float = 0.0
    samples: tuple[float, ...] = field(default=(), repr=False)

    def to_dict(self) -> dict:
        return {"t": self.angle, "h": self.value, "spread": self.spread}


def _exclusion_radius(points: np.ndarray, z: complex) -> tuple[float, float]:
    d = np.abs(points - z)
    i = int(np.argmin(d))
    gaps = np.abs(points - points[i])
    gaps = gaps[gaps > 0]
    spacing = float(gaps.min()) if gaps.size else float(abs(points[i]))
    return float(d[i]), EXCLUSION_FRACTION * spacing


def log_abs_product(seq: PointSequence, z: complex) -> float:
    """sum_k log|1 - z/lambda_k| + Re(z/lambda_k), compensated summation."""
    pts = seq.points
    if pts.size == 0:
        return 0.0
    dist, excl = _exclusion_radius(pts, z)
    if dist < excl:
        raise ZeroProximityError(f"z={z} is within {dist:.3g} of a zero (exclusion {excl:.3g})")
    return kernels.log_abs_product(
        np.ascontiguousarray(pts.real), np.ascontiguousarray(pts.imag), float(z.real), float(z.imag)
    )


def quadratic_tail_bound(tail: Iterable[complex], z: complex) -> float:
    """sum |z/lambda|^2 over omitted zeros; bounds the omitted genus-1 log terms when |z/lambda| <= 0.4."""
    lam = np.asarray(list(tail), dtype=complex)
    if lam.size == 0:
        return 0.0
    return float(np.sum(np.abs(z / lam) ** 2))


def _resampled(seq: PointSequence, t: float, r: float) -> tuple[float, float] | None:
    steps = [0.0]
    for k in range(1, 11):
        steps += [0.01 * k, -0.01 * k]
    for s in steps:
        rr = r * (1.0 + s)
        try:
            return rr, log_abs_product(seq, rr * complex(math.cos(t), math.sin(t)))
        except ZeroProximityError:
            continue
    return None


def indicator_estimate(seq: PointSequence, t: float, radii: Sequence[float]) -> IndicatorEstimate:
    """max over radii of log|f(r e^{it})|/r, skipping exclusion discs by 1% moves."""
    cutoff = float(seq.moduli[-1]) if len(seq) else math.inf
    if len(seq) and max(radii) > RADIUS_CAP * cutoff * (1 + 1e-12):
        raise ValueError(f"radii must stay below {RADIUS_CAP} * max modulus = {RADIUS_CAP * cutoff:.4g}")
    used, vals = [], []
    for r in radii:
        got = _resampled(seq, t, r)
        if got is None:
            continue
        used.append(got[0])
        vals.append(got[1] / got[0])
    if not vals:
        raise ZeroProximityError("every radius fell inside an exclusion disc")
    density = len(seq) / cutoff if len(seq) else 0.0
    # sum over |lambda| > cutoff of |z/lambda|^2 ~ density * r^2 / cutoff, per unit r
    tail = density * max(used) / cutoff if len(seq) else 0.0
    return IndicatorEstimate(
        t, max(vals), tuple(used), max(vals) - min(vals), tail, tuple(vals)
    )


def type_estimate(seq: PointSequence, n_angles: int, radii: Sequence[float]) -> float:
    if n_angles < 8:
        raise ValueError("need at least 8 angles")
    return max(e.value for e in indicator_profile(seq, n_angles, radii))


def indicator_profile(seq: PointSequence, n_angles: int, radii: Sequence[float]) -> list[IndicatorEstimate]:
    if len(seq) == 0:
        return [
            IndicatorEstimate(TWO_PI * k / n_angles, 0.0, tuple(radii), 0.0)
            for k in range(n_angles)
        ]
    return [indicator_estimate(seq, TWO_PI * k / n_angles, radii) for k in range(n_angles)]


def default_radii(rmax: float, count: int = 31) -> list[float]:
    """Half-integer radii spread over [0.02, 0.08] * rmax."""
    lo, hi = 0.02 * rmax, 0.08 * rmax
    return [math.floor(x) + 0.5 for x in np.linspace(lo, hi, count)]
