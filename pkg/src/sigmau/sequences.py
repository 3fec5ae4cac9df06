"""Point sequences with a prescribed angular density.

Sequences are finite, sorted by modulus, and live in |z| >= 1. Besides
sampling and counting, this module has the two augmentations used to
regularize a sequence: the ray that carries the balancing atom, and a
zero-density set that drives the partial sums of 1/lambda toward zero.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from .measure import TWO_PI, AngularMeasure, balancing_atom

log = logging.getLogger(__name__)

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True, eq=False)
class PointSequence:
    points: np.ndarray

    def __post_init__(self) -> None:
        pts = np.asarray(self.points, dtype=complex).ravel()
        if pts.size and np.min(np.abs(pts)) < 1.0 - 1e-12:
            raise ValueError("all points must have modulus >= 1")
        order = np.argsort(np.abs(pts), kind="stable")
        pts = pts[order]
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    def __len__(self) -> int:
        return int(self.points.size)

    @property
    def moduli(self) -> np.ndarray:
        return np.abs(self.points)

    @property
    def args(self) -> np.ndarray:
        return np.mod(np.angle(self.points), TWO_PI)

    def union(self, other: "PointSequence") -> "PointSequence":
        return PointSequence(np.concatenate([self.points, other.points]))

    def truncate(self, R: float) -> "PointSequence":
        return PointSequence(self.points[self.moduli <= R])

    def to_dict(self) -> dict:
        return {"points": [[float(z.real), float(z.imag)] for z in self.points]}

    @classmethod
    def from_dict(cls, data: dict) -> "PointSequence":
        try:
            pts = [complex(float(x), float(y)) for x, y in data["points"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed point list: {exc!r}") from exc
        return cls(np.asarray(pts, dtype=complex))


EMPTY = PointSequence(np.zeros(0, dtype=complex))


def ray_sequence(alpha: float, A: float, Rmax: float) -> PointSequence:
    """Points k*exp(i*alpha)/A for ceil(A) <= k <= floor(A*Rmax)."""
    if A <= 0:
        raise ValueError("ray density must be positive")
    k0, k1 = math.ceil(A), math.floor(A * Rmax)
    if k1 < k0:
        raise ValueError(f"empty ray: no k with {k0} <= k <= {k1}")
    k = np.arange(k0, k1 + 1, dtype=float)
    return PointSequence(k * complex(math.cos(alpha), math.sin(alpha)) / A)


def _digamma(x: float) -> float:
    acc = 0.0
    while x < 6.0:
        acc -= 1.0 / x
        x += 1.0
    inv2 = 1.0 / (x * x)
    return acc + math.log(x) - 0.5 / x - inv2 * (1 / 12 - inv2 * (1 / 120 - inv2 / 252))


def _log_offset(density: float, c: float) -> float:
    """lim_R sum_{r_j <= R} (1/r_j - 1/R) - density*log(R) for r_j = max(1, (j - c)/density)."""
    clipped = max(0, math.floor(density + c))
    return clipped - density * _digamma(clipped + 1 - c) + density * math.log(density) - density


def _stream_shift(density: float) -> float:
    # the offset is increasing in c; bisect for its zero
    lo, hi = -10.0 - 10.0 * density, 10.0 + 10.0 * density
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if _log_offset(density, mid) > 0:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def _stream_moduli(density: float, Rmax: float) -> np.ndarray:
    """Moduli max(1, (j - c)/density) with c chosen so that the integral of
    (n(r) - density*r)/r^2 over [1, inf) vanishes: logarithmic means of the
    counting function then carry no constant offset."""
    c = _stream_shift(density)
    n = math.floor(density * Rmax + c)
    j = np.arange(1, n + 1, dtype=float)
    return np.maximum(1.0, (j - c) / density)


def _inverse_cdf(cells, u: np.ndarray) -> np.ndarray:
    lo = np.array([c[0] for c in cells])
    hi = np.array([c[1] for c in cells])
    mass = np.array([c[2] for c in cells]) * (hi - lo)
    cum = np.concatenate([[0.0], np.cumsum(mass)])
    target = u * cum[-1]
    idx = np.clip(np.searchsorted(cum, target, side="right") - 1, 0, len(cells) - 1)
    frac = (target - cum[idx]) / mass[idx]
    return lo[idx] + np.clip(frac, 0.0, 1.0) * (hi[idx] - lo[idx])


def from_measure(measure: AngularMeasure, Rmax: float, seed: int = 0) -> PointSequence:
    """Deterministic sequence whose angular density is ``measure``.

    Each atom becomes a ray; the continuous part is one stream of points at
    evenly spaced moduli with angles drawn from the density through a Weyl
    (golden-ratio) sequence whose starting offset depends on ``seed``. Each
    stream's moduli are shifted so its counting function has no logarithmic
    offset against density*r (see ``_stream_moduli``).
    """
    if Rmax < 2:
        raise ValueError("Rmax must be at least 2")
    chunks = []
    for a, m in measure.atoms:
        r = _stream_moduli(m, Rmax)
        chunks.append(r * complex(math.cos(a), math.sin(a)))
    cont = sum(v * (hi - lo) for lo, hi, v in measure.density)
    if cont > 0:
        r = _stream_moduli(cont, Rmax)
        offset = np.random.default_rng(seed).random()
        u = np.mod(offset + _GOLDEN * np.arange(1, r.size + 1), 1.0)
        theta = _inverse_cdf(measure.density, u)
        chunks.append(r * np.exp(1j * theta))
    if not chunks:
        return EMPTY
    return PointSequence(np.concatenate(chunks))


def counting(seq: PointSequence, R: float, alpha: float, beta: float) -> int:
    """#{|lambda| < R, arg lambda in (alpha, beta)}; alpha > beta wraps through 0."""
    if alpha == beta:
        raise ValueError("empty sector")
    inside = seq.moduli < R
    t = seq.args[inside]
    if alpha < beta:
        return int(np.count_nonzero((t > alpha) & (t < beta)))
    return int(np.count_nonzero((t > alpha) | (t < beta)))


def empirical_density(seq: PointSequence, R: float, alpha: float, beta: float) -> float:
    if R <= 0:
        raise ValueError("R must be positive")
    return counting(seq, R, alpha, beta) / R


def lindelof_sums(seq: PointSequence, R: float) -> complex:
    """Partial sum of 1/lambda over |lambda| <= R (exactly rounded)."""
    if R < 1:
        raise ValueError("R must be at least 1")
    inv = 1.0 / seq.points[seq.moduli <= R]
    return complex(math.fsum(inv.real.tolist()), math.fsum(inv.imag.tolist()))


def symmetrize(seq: PointSequence) -> PointSequence:
    return PointSequence(np.concatenate([seq.points, -seq.points]))


def augment_ray(seq: PointSequence, measure: AngularMeasure, Rmax: float) -> PointSequence:
    """Add the ray k*exp(i*alpha0)/A0 that carries the balancing atom."""
    mass, angle, balanced = balancing_atom(measure)
    if balanced or math.floor(mass * Rmax) < math.ceil(mass):
        return seq
    return seq.union(ray_sequence(angle, mass, Rmax))


def lunc_balance(
    seq: PointSequence,
    Rmax: float,
    budget_exponent: float = 0.5,
    target: float = 0.0,
) -> PointSequence:
    """Greedy zero-density set that cancels the partial sums of 1/lambda.

    Shells are (R_{j-1}, R_j] with R_j = 2**j and a last one ending at Rmax.
    In each shell, points are placed along the direction that makes each
    1/lambda point against the residual c, which is the sum over the whole
    sequence up to Rmax plus the points added so far: the early partial sums
    are transients, and spending the small-radius budget on them leaves
    nothing for the limit. The cumulative count never exceeds
    floor(R_j**budget_exponent), so the added set has zero density whenever
    the exponent is below 1. Returns only the added points.
    """
    if Rmax < 1:
        raise ValueError("Rmax must be at least 1")
    radii = [2.0**j for j in range(int(math.floor(math.log2(Rmax))) + 1)]
    if radii[-1] < Rmax:
        radii.append(float(Rmax))
    tail = lindelof_sums(seq, Rmax) if len(seq) else 0j
    added: list[complex] = []
    extra = 0j
    prev = 1.0
    for R in radii:
        c = tail + extra
        left = math.floor(R**budget_exponent + 1e-12) - len(added)
        size = abs(c)
        if size > max(target, 1e-15) and left > 0:
            direction = -c.conjugate() / size
            lower = prev * (1 + 1e-12)
            m_lo = max(1, math.floor(size * lower) + 1)
            m_hi = math.floor(size * R)
            if R == 1.0:
                # the unit circle is the only admissible shell
                m, rho = min(left, math.floor(size + 0.5)), 1.0
            elif m_lo <= m_hi and m_lo <= left:
                m, rho = m_lo, m_lo / size
            elif m_lo > m_hi:
                m, rho = 0, R  # residual too small for this shell; defer
            else:
                m, rho = left, lower
            for _ in range(m):
                lam = rho * direction
                added.append(lam)
                extra += 1.0 / lam
        prev = R
    result = PointSequence(np.asarray(added, dtype=complex))
    before = abs(lindelof_sums(seq, Rmax)) if len(seq) else 0.0
    after = abs(lindelof_sums(seq.union(result), Rmax)) if len(seq) or added else 0.0
    if after > before:
        # greedy choices at small radii can overshoot; never do worse than no balancing
        log.info("lunc_balance: discarded %d points that raised |s(Rmax)| to %.3e", len(added), after)
        return EMPTY
    log.info("lunc_balance: |s(Rmax)| %.3e -> %.3e with %d added points", before, after, len(added))
    if after > max(target, 1e-12) and len(added) >= math.floor(Rmax**budget_exponent):
        log.warning("lunc_balance: budget exhausted with residual %.3e", after)
    return result
