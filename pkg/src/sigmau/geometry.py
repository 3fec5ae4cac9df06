"""Indicator diagrams, their circumcircles and the contact structure.

A balanced measure ``mu`` determines the convex body whose boundary is
``C(eta) = 2*pi*i * int_0^eta exp(i*phi) dmu(phi)``; an atom of mass ``A`` at
``alpha`` is an edge of length ``2*pi*A`` with outward normal ``alpha``. The
circumradius of that body is the critical type.
"""

from __future__ import annotations

import cmath
import logging
import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from . import kernels
from .measure import (
    TWO_PI,
    AngularMeasure,
    BalancingAtom,
    balancing_atom,
    first_moment,
    normalize_angle,
    star_measure,
)

log = logging.getLogger(__name__)

TOL_DIAM = 1e-7
TOL_CONTACT = 1e-9
MEC_SEED = 20240917


class GeometryError(ValueError):
    """A geometric construction failed (non-closing polygon, bad contact set)."""


@dataclass(frozen=True)
class ConvexBody:
    """Convex polygon, counterclockwise, starting at the lexicographic minimum."""

    vertices: tuple[complex, ...]

    @classmethod
    def from_points(cls, points: Iterable[complex]) -> "ConvexBody":
        return convex_hull(points)

    def perimeter(self) -> float:
        v = self.vertices
        if len(v) < 2:
            return 0.0
        return math.fsum(abs(v[(k + 1) % len(v)] - v[k]) for k in range(len(v)))

    def area(self) -> float:
        v = self.vertices
        terms = [
            (v[k].real * v[(k + 1) % len(v)].imag - v[(k + 1) % len(v)].real * v[k].imag)
            for k in range(len(v))
        ]
        return 0.5 * math.fsum(terms)

    def diameter(self) -> float:
        v = np.asarray(self.vertices, dtype=complex)
        if v.size < 2:
            return 0.0
        return float(np.max(np.abs(v[:, None] - v[None, :])))

    def translated(self, offset: complex) -> "ConvexBody":
        return ConvexBody(tuple(z + offset for z in self.vertices))

    def to_list(self) -> list[list[float]]:
        return [[z.real, z.imag] for z in self.vertices]


@dataclass(frozen=True)
class Circle:
    center: complex
    radius: float


@dataclass(frozen=True)
class ContactClassification:
    """Case 1 (diametrical pair) or Case 2 (origin-surrounding triple).

    ``contact_args`` follow the counterclockwise labeling mu_1, mu_2, mu_3 that
    the certificate uses; the gap arc [mu_last, mu_1] is where it vanishes.
    """

    kind: int
    contact_args: tuple[float, ...]
    contact_points: tuple[complex, ...]
    radius: float
    polar_vertices: tuple[complex, ...] = ()


# -- convex hull ---------------------------------------------------------


def _cross(o: complex, a: complex, b: complex) -> float:
    return (a.real - o.real) * (b.imag - o.imag) - (a.imag - o.imag) * (b.real - o.real)


def convex_hull(points: Iterable[complex]) -> ConvexBody:
    """Andrew's monotone chain; collinear points are dropped."""
    pts = sorted({(complex(p).real, complex(p).imag) for p in points})
    if not pts:
        raise GeometryError("convex hull of an empty point set")
    zs = [complex(x, y) for x, y in pts]
    if len(zs) <= 2:
        return ConvexBody(tuple(zs))
    lower: list[complex] = []
    for p in zs:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0.0:
            lower.pop()
        lower.append(p)
    upper: list[complex] = []
    for p in reversed(zs):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0.0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    return ConvexBody(tuple(hull))


# -- body construction -----------------------------------------------------


def _atom_step(mass: float, angle: float) -> complex:
    return TWO_PI * 1j * mass * cmath.exp(1j * angle)


def _check_closure(measure: AngularMeasure) -> None:
    mom = first_moment(measure)
    if abs(mom) > measure.tol_moment():
        raise GeometryError(
            f"measure has first moment {mom:.3e}; the indicator polygon does not close"
        )


def polygon_from_atomic(star: AngularMeasure) -> ConvexBody:
    """Polygon with edges ``2*pi*i*A_k*exp(i*alpha_k)`` in increasing angle."""
    if not star.is_atomic:
        raise ValueError("polygon_from_atomic needs a purely atomic measure")
    _check_closure(star)
    c = 0j
    verts = [c]
    for a, m in star.atoms:
        c = c + _atom_step(m, a)
        verts.append(c)
    if abs(verts[-1]) > TWO_PI * star.tol_moment():
        raise GeometryError(f"closure residual {abs(verts[-1]):.3e} too large")
    return convex_hull(verts[:-1])


def boundary_samples(star: AngularMeasure, n: int) -> list[complex]:
    """Exact boundary points C(eta) on a grid refined at every breakpoint.

    Atoms contribute both one-sided limits. The closing point C(2*pi) is
    checked against C(0) and left out.
    """
    grid = {TWO_PI * k / n for k in range(n)}
    grid.update(a for a, _ in star.atoms)
    for lo, hi, _ in star.density:
        grid.add(lo)
        if hi < TWO_PI:
            grid.add(hi)
    knots = sorted(grid)
    atoms = dict(star.atoms)
    cells = star.density

    def advance(c: complex, left: float, right: float) -> complex:
        for lo, hi, v in cells:
            if lo <= left and right <= hi:
                return c + TWO_PI * v * (cmath.exp(1j * right) - cmath.exp(1j * left))
        return c

    c = 0j
    prev = 0.0
    samples: list[complex] = []
    for eta in knots:
        if eta > prev:
            c = advance(c, prev, eta)
        samples.append(c)
        if eta in atoms:
            c = c + _atom_step(atoms[eta], eta)
            samples.append(c)
        prev = eta
    c = advance(c, prev, TWO_PI)
    if abs(c - samples[0]) > TWO_PI * star.tol_moment():
        raise GeometryError(f"closure residual {abs(c - samples[0]):.3e} too large")
    # trailing copies of C(2*pi) are C(0) plus roundoff
    while len(samples) > 1 and samples[-1] == c:
        samples.pop()
    return samples


def body_from_measure(star: AngularMeasure, n: int) -> ConvexBody:
    """Inscribed polygonal approximation of the body of a balanced measure."""
    if n < 3:
        raise ValueError("grid size must be at least 3")
    _check_closure(star)
    return convex_hull(boundary_samples(star, n))


# -- circumcircle ------------------------------------------------------------


def circumcircle(body: ConvexBody, seed: int = MEC_SEED) -> Circle:
    """Smallest enclosing circle of the vertices (randomized incremental)."""
    pts = sorted((z.real, z.imag) for z in body.vertices)
    if not pts:
        raise GeometryError("circumcircle of an empty body")
    arr = np.asarray(pts, dtype=float)
    order = np.random.default_rng(seed).permutation(len(arr))
    xs = np.ascontiguousarray(arr[order, 0])
    ys = np.ascontiguousarray(arr[order, 1])
    cx, cy, _ = kernels.min_enclosing_circle(xs, ys)
    radius = float(np.max(np.hypot(arr[:, 0] - cx, arr[:, 1] - cy)))
    return Circle(complex(cx, cy), radius)


def recenter(body: ConvexBody) -> tuple[ConvexBody, complex]:
    """Translate the body so its circumcenter is the origin; returns the offset used."""
    offset = -circumcircle(body).center
    if offset == 0:
        return body, 0j
    return body.translated(offset), offset


def contact_set(
    body: ConvexBody, circle: Circle, tol: float = TOL_CONTACT
) -> list[tuple[float, complex]]:
    """Vertices on the circle (relative tolerance ``tol``), sorted by argument."""
    r = circle.radius
    out = []
    for v in body.vertices:
        d = v - circle.center
        if abs(abs(d) - r) <= tol * r:
            out.append((normalize_angle(cmath.phase(d)), v))
    out.sort(key=lambda p: p[0])
    if len(out) < 2:
        raise GeometryError(f"only {len(out)} contact point(s) on the circumcircle")
    return out


# -- classification ----------------------------------------------------------


def _find_diameter(mu: np.ndarray, tol: float) -> Optional[tuple[int, int]]:
    for i in range(len(mu)):
        target = mu[i] + math.pi
        j = int(np.searchsorted(mu, target))
        best = None
        for cand in (j - 1, j):
            if i < cand < len(mu) and abs(mu[cand] - target) <= tol:
                if best is None or abs(mu[cand] - target) < abs(mu[best] - target):
                    best = cand
        if best is not None:
            return i, best
    return None


def _best_triple(mu: np.ndarray, tol: float) -> Optional[tuple[int, int, int]]:
    """Origin-surrounding triple maximizing its smallest arc; ties go lexicographic."""
    n = len(mu)
    best = -math.inf
    for i in range(n - 2):
        js = np.arange(i + 1, n - 1)
        a = mu[js] - mu[i]
        lo = mu[i] + math.pi + tol
        hi = mu[js] + math.pi - tol
        target = 0.5 * (mu[i] + mu[js] + TWO_PI)
        k_first = np.maximum(np.searchsorted(mu, lo, side="right"), js + 1)
        k_last = np.searchsorted(mu, hi, side="left") - 1
        ok = (a < math.pi - tol) & (k_first <= k_last)
        if not ok.any():
            continue
        near = np.searchsorted(mu, target)
        for cand in (near - 1, near):
            k = np.clip(cand, k_first, np.maximum(k_first, k_last))
            k = np.minimum(k, n - 1)
            b = mu[k] - mu[js]
            c = TWO_PI - (mu[k] - mu[i])
            score = np.minimum(a, np.minimum(b, c))
            score = np.where(ok, score, -math.inf)
            best = max(best, float(score.max()))
    if best == -math.inf:
        return None
    thr = best - 1e-12
    for i in range(n - 2):
        js = np.arange(i + 1, n - 1)
        a = mu[js] - mu[i]
        hi = np.minimum(mu[js] + math.pi - tol, mu[i] + TWO_PI - thr)
        k = np.maximum(
            np.searchsorted(mu, mu[i] + math.pi + tol, side="right"),
            np.searchsorted(mu, mu[js] + thr, side="left"),
        )
        k = np.maximum(k, js + 1)
        kc = np.minimum(k, n - 1)
        ok = (a >= thr) & (a < math.pi - tol) & (k < n) & (mu[kc] <= hi)
        hits = np.flatnonzero(ok)
        if hits.size:
            h = hits[0]
            return i, int(js[h]), int(k[h])
    return None


def _rotate_labels(args: list[float], anchor: Optional[float]) -> int:
    """Index of the first contact strictly after ``anchor`` going counterclockwise."""
    if anchor is None:
        return 0
    anchor = normalize_angle(anchor)
    gaps = [(a - anchor) % TWO_PI for a in args]
    return min(range(len(args)), key=lambda k: (gaps[k] == 0.0, gaps[k]))


def polar_triangle(mu1: float, mu2: float, mu3: float, radius: float) -> tuple[complex, complex, complex]:
    """Vertices where tangent lines at consecutive contacts meet.

    N1 closes the arc from mu3 back to mu1, N2 the arc mu1..mu2, N3 the arc
    mu2..mu3.
    """
    arcs = [
        (mu3, (mu1 - mu3) % TWO_PI),
        (mu1, (mu2 - mu1) % TWO_PI),
        (mu2, (mu3 - mu2) % TWO_PI),
    ]
    out = []
    for start, arc in arcs:
        if arc >= math.pi - 1e-9 or arc <= 0.0:
            raise GeometryError(f"contact arc {arc:.6g} is not in (0, pi); tangents do not meet")
        out.append(radius / math.cos(arc / 2) * cmath.exp(1j * (start + arc / 2)))
    return out[0], out[1], out[2]


def classify(
    contacts: Sequence[tuple[float, complex]],
    circle: Circle,
    anchor: Optional[float] = None,
    tol_diam: float = TOL_DIAM,
) -> ContactClassification:
    """Split the contact set into Case 1 or Case 2.

    ``anchor`` is the direction of the balancing atom; when given, labels are
    rotated so the certificate vanishes on the arc that contains it.
    """
    if len(contacts) < 2:
        raise GeometryError("classification needs at least two contacts")
    mu = np.array([c[0] for c in contacts], dtype=float)
    pts = [c[1] for c in contacts]
    r = circle.radius
    pair = _find_diameter(mu, tol_diam)
    if pair is not None:
        idx = list(pair)
        kind = 1
    else:
        triple = _best_triple(mu, tol_diam)
        if triple is None:
            raise GeometryError(
                "no diametrical pair and no triple around the center; contact tolerance failure"
            )
        idx = list(triple)
        kind = 2
    args = [float(mu[k]) for k in idx]
    shift = _rotate_labels(args, anchor)
    idx = idx[shift:] + idx[:shift]
    args = [float(mu[k]) for k in idx]
    points = tuple(pts[k] for k in idx)
    polar: tuple[complex, ...] = ()
    if kind == 2:
        polar = polar_triangle(args[0], args[1], args[2], r)
    return ContactClassification(kind, tuple(args), points, r, polar)


# -- pipeline ---------------------------------------------------------------


@dataclass(frozen=True)
class CriticalTypeReport:
    sigma_u: float
    circle: Circle
    classification: Optional[ContactClassification]
    body: ConvexBody
    offset: complex
    star: AngularMeasure
    balancing: BalancingAtom
    anchor: float
    diagnostics: tuple[str, ...] = field(default=())

    def to_dict(self) -> dict:
        cls = self.classification
        return {
            "sigma_u": self.sigma_u,
            "radius": self.circle.radius,
            "center_offset": [self.offset.real, self.offset.imag],
            "case": None if cls is None else str(cls.kind),
            "contact_args": [] if cls is None else list(cls.contact_args),
            "polar_vertices": [] if cls is None else [[z.real, z.imag] for z in cls.polar_vertices],
            "vertices": self.body.to_list(),
            "balancing_atom": {
                "mass": self.balancing.mass,
                "angle": self.balancing.angle,
                "balanced": self.balancing.balanced,
            },
            "star_measure": self.star.to_dict(),
            "diagnostics": list(self.diagnostics),
        }


def _anchor(measure: AngularMeasure, bal: BalancingAtom) -> float:
    if not bal.balanced:
        return bal.angle
    points = measure.breakpoints()
    return points[0] if points else 0.0


def critical_type(measure: AngularMeasure, n: int = 720) -> CriticalTypeReport:
    """Circumradius of the indicator diagram of the balanced measure."""
    bal = balancing_atom(measure)
    star = star_measure(measure)
    anchor = _anchor(measure, bal)
    if star.is_empty:
        body = ConvexBody((0j,))
        return CriticalTypeReport(0.0, Circle(0j, 0.0), None, body, 0j, star, bal, anchor)
    if star.is_atomic:
        body = polygon_from_atomic(star)
    else:
        body = body_from_measure(star, n)
    centered, offset = recenter(body)
    if len(centered.vertices) < 2:
        # mass too small to separate any two boundary points: a point body
        return CriticalTypeReport(0.0, Circle(0j, 0.0), None, centered, offset, star, bal, anchor)
    circle = Circle(0j, circumcircle(centered).radius)
    contacts = contact_set(centered, circle)
    cls = classify(contacts, circle, anchor)
    notes = []
    for mu in cls.contact_args:
        mass = star.atom_at(mu, atol=1e-9)
        if mass > 0:
            msg = f"atom of mass {mass:.3g} sits at contact argument {mu:.9f}"
            log.warning(msg)
            notes.append(msg)
    return CriticalTypeReport(
        circle.radius, circle, cls, centered, offset, star, bal, anchor, tuple(notes)
    )
