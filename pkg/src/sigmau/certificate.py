"""Certificate functions for the uniqueness side of the critical type.

The certificate ``k*`` is the support function of a segment (Case 1) or of
the polar triangle seen from its vertex ``N1`` (Case 2). It is nonnegative,
trigonometrically convex and vanishes on the gap arc that holds the
balancing direction. Pairing it against the zero distribution and comparing
with ``sigma`` times its total variation decides the inequality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from .geometry import ContactClassification, critical_type
from .measure import TWO_PI, AngularMeasure, normalize_angle
from .sequences import PointSequence
from .trigconvex import TrigConvexFunction


@dataclass(frozen=True)
class CertificateFunction:
    kind: int
    mu: tuple[float, ...]
    polar: tuple[complex, ...] = ()

    def __call__(self, theta):
        t = np.asarray(theta, dtype=float)
        if self.kind == 1:
            out = np.maximum(0.0, np.sin(t - self.mu[0]))
        else:
            n1 = self.polar[0]
            out = np.zeros_like(t)
            for nj in self.polar[1:]:
                w = nj - n1
                out = np.maximum(out, w.real * np.cos(t) + w.imag * np.sin(t))
        return float(out) if out.ndim == 0 else out

    @property
    def edge_lengths(self) -> tuple[float, ...]:
        if self.kind == 1:
            return (1.0, 1.0)
        n1, n2, n3 = self.polar
        return (abs(n2 - n1), abs(n3 - n2), abs(n1 - n3))

    def branches(self) -> list[tuple[float, float, float, float]]:
        """``(start, end, c, phase)`` with k*(t) = c*sin(t - phase) on [start, end] in [0, 2*pi]."""
        mu1 = self.mu[0]
        if self.kind == 1:
            raw = [(mu1, mu1 + math.pi, 1.0, mu1)]
        else:
            mu2 = mu1 + (self.mu[1] - mu1) % TWO_PI
            mu3 = mu1 + (self.mu[2] - mu1) % TWO_PI
            n1, n2, n3 = self.polar
            raw = [
                (mu1, mu2, abs(n2 - n1), mu1),
                (mu2, mu3, -abs(n3 - n1), self.mu[2]),
            ]
        out = []
        for start, end, c, ph in raw:
            if end <= TWO_PI:
                out.append((start, end, c, ph))
            elif start >= TWO_PI:
                out.append((start - TWO_PI, end - TWO_PI, c, ph))
            else:
                out.append((start, TWO_PI, c, ph))
                out.append((0.0, end - TWO_PI, c, ph))
        return out

    def max_value(self) -> float:
        """K = max k*, reported as a diagnostic only."""
        if self.kind == 1:
            return 1.0
        n1 = self.polar[0]
        return max(abs(nj - n1) for nj in self.polar[1:])

    @property
    def as_trigconvex(self) -> TrigConvexFunction:
        masses = [L / TWO_PI for L in self.edge_lengths]
        if self.kind == 1:
            angles = [self.mu[0], self.mu[0] + math.pi]
        else:
            angles = list(self.mu)
        h = TrigConvexFunction(AngularMeasure.create(zip(angles, masses)))
        a = float(self(0.0)) - float(h(0.0))
        b = float(self(math.pi / 2)) - float(h(math.pi / 2))
        return TrigConvexFunction(h.base, a, b)


class AreaIdentity(NamedTuple):
    lhs: float
    rhs: float
    ok: bool


@dataclass(frozen=True)
class MarginReport:
    sigma: float
    sigma_u: float
    case: Optional[int]
    lhs: float
    rhs: float
    margin: float
    certified: bool
    kmax: float

    def to_dict(self) -> dict:
        return {
            "sigma": self.sigma,
            "sigma_u": self.sigma_u,
            "case": None if self.case is None else str(self.case),
            "lhs": self.lhs,
            "rhs": self.rhs,
            "margin": self.margin,
            "certified": self.certified,
            "kmax": self.kmax,
        }


def build_kstar(cls: ContactClassification) -> CertificateFunction:
    if cls.kind == 1:
        mu1 = cls.contact_args[0]
        return CertificateFunction(1, (mu1, normalize_angle(mu1 + math.pi)))
    return CertificateFunction(2, tuple(cls.contact_args), tuple(cls.polar_vertices))


def kstar_total_variation(k: CertificateFunction) -> float:
    if k.kind == 1:
        return 1.0 / math.pi
    return math.fsum(k.edge_lengths) / TWO_PI


def pairing(measure: AngularMeasure, k: CertificateFunction) -> float:
    """Integral of k* against the measure; density cells are integrated in closed form."""
    terms = [m * float(k(a)) for a, m in measure.atoms]
    branches = k.branches()
    for lo, hi, v in measure.density:
        for start, end, c, ph in branches:
            p, q = max(lo, start), min(hi, end)
            if q > p:
                terms.append(v * c * (math.cos(p - ph) - math.cos(q - ph)))
    return math.fsum(terms)


def polar_area(cls: ContactClassification) -> float:
    n1, n2, n3 = cls.polar_vertices
    w2, w3 = n2 - n1, n3 - n1
    return 0.5 * abs(w2.real * w3.imag - w2.imag * w3.real)


def verify_area_identity(
    star: AngularMeasure,
    cls: ContactClassification,
    k: CertificateFunction,
    rtol: float = 1e-9,
) -> AreaIdentity:
    """pi * pairing against S(T_N) (Case 2) or the circumradius (Case 1)."""
    lhs = math.pi * pairing(star, k)
    rhs = cls.radius if cls.kind == 1 else polar_area(cls)
    return AreaIdentity(lhs, rhs, abs(lhs - rhs) <= rtol * max(abs(rhs), 1e-300))


def gs_lhs(seq: PointSequence, k: CertificateFunction, R: float) -> float:
    """(1/log R) * sum_{r_n <= R} k*(theta_n) * (1/r_n - 1/R).

    This is the logarithmic average of the k*-weighted counting function with
    the radial integral done exactly. Points beyond the largest modulus are
    simply absent, so R should not exceed the sampled range.
    """
    if R <= 1.0:
        raise ValueError("R must exceed 1")
    r = seq.moduli
    sel = r <= R
    weights = k(seq.args[sel])
    return float(np.sum(weights * (1.0 / r[sel] - 1.0 / R))) / math.log(R)


def gs_rhs(sigma: float, k: CertificateFunction) -> float:
    if sigma < 0:
        raise ValueError("sigma must be nonnegative")
    return sigma * kstar_total_variation(k)


def uniqueness_margin(measure: AngularMeasure, sigma: float, n: int = 720) -> MarginReport:
    """Compare the certificate pairing with sigma * TV(k*).

    Certified means the margin is positive beyond a 1e-9 relative roundoff
    allowance, so sigma equal to the critical type is never certified.
    """
    report = critical_type(measure, n)
    if report.classification is None:
        return MarginReport(sigma, 0.0, None, 0.0, 0.0, 0.0, False, 0.0)
    k = build_kstar(report.classification)
    lhs = pairing(report.star, k)
    rhs = gs_rhs(sigma, k)
    margin = lhs - rhs
    certified = margin > 1e-9 * max(1.0, abs(lhs))
    return MarginReport(
        sigma, report.sigma_u, report.classification.kind, lhs, rhs, margin, certified, k.max_value()
    )
