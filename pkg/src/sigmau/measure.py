"""Finite nonnegative measures on the circle of directions [0, 2*pi).

A measure is a finite set of atoms plus a piecewise-constant density. All
angles are reduced mod 2*pi on construction and the value is immutable.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple

TWO_PI = 2.0 * math.pi

#: relative size below which an atom is treated as roundoff and dropped
ATOM_DROP_RTOL = 1e-15
#: angular distance at which two atoms are merged into one
ATOM_MERGE_ATOL = 1e-12


def normalize_angle(t: float) -> float:
    """Reduce an angle to [0, 2*pi)."""
    r = math.fmod(t, TWO_PI)
    if r < 0.0:
        r += TWO_PI
    if r >= TWO_PI:
        r = 0.0
    return r


class BalancingAtom(NamedTuple):
    mass: float
    angle: float
    balanced: bool


@dataclass(frozen=True)
class AngularMeasure:
    """Atoms ``(angle, mass)`` plus density cells ``(lo, hi, value)``.

    Construct through :meth:`create` (or the plain constructor, which
    normalizes the same way): atoms are sorted, merged and pruned, density
    cells are validated to be disjoint and inside [0, 2*pi].
    """

    atoms: tuple[tuple[float, float], ...] = ()
    density: tuple[tuple[float, float, float], ...] = ()

    def __post_init__(self) -> None:
        density = _normalize_cells(self.density)
        dens_mass = sum(v * (hi - lo) for lo, hi, v in density)
        atoms = _normalize_atoms(self.atoms, dens_mass)
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "density", density)

    @classmethod
    def create(
        cls,
        atoms: Iterable[tuple[float, float]] = (),
        density: Iterable[tuple[float, float, float]] = (),
    ) -> "AngularMeasure":
        return cls(tuple(atoms), tuple(density))

    @classmethod
    def uniform(cls, value: float) -> "AngularMeasure":
        return cls((), ((0.0, TWO_PI, value),))

    # -- basic queries -------------------------------------------------

    @property
    def is_atomic(self) -> bool:
        return not self.density

    @property
    def is_empty(self) -> bool:
        return not self.atoms and not self.density

    def total_mass(self) -> float:
        return total_mass(self)

    def tol_moment(self) -> float:
        return 1e-9 * max(1.0, self.total_mass())

    def atom_at(self, angle: float, atol: float = ATOM_MERGE_ATOL) -> float:
        """Mass of the atom at ``angle`` (0 if there is none)."""
        angle = normalize_angle(angle)
        for a, m in self.atoms:
            if _circ_dist(a, angle) <= atol:
                return m
        return 0.0

    def breakpoints(self) -> list[float]:
        """Sorted angles where the measure is not analytic."""
        pts = {a for a, _ in self.atoms}
        for lo, hi, _ in self.density:
            pts.add(lo)
            pts.add(hi)
        return sorted(pts)

    def closed_mass(self, alpha: float, beta: float) -> float:
        """Mass of the closed sector [alpha, beta]."""
        if alpha > beta:
            raise ValueError("closed_mass needs alpha <= beta")
        atoms = sum(m for a, m in self.atoms if alpha <= a <= beta)
        return atoms + _density_mass(self.density, alpha, beta)

    # -- transforms ----------------------------------------------------

    def rotated(self, s: float) -> "AngularMeasure":
        atoms = [(a + s, m) for a, m in self.atoms]
        cells = []
        for lo, hi, v in self.density:
            cells.extend(_split_cell(lo + s, hi + s, v))
        return AngularMeasure.create(atoms, cells)

    def scaled(self, c: float) -> "AngularMeasure":
        if c < 0:
            raise ValueError("scale factor must be nonnegative")
        return AngularMeasure.create(
            [(a, c * m) for a, m in self.atoms],
            [(lo, hi, c * v) for lo, hi, v in self.density],
        )

    def with_atom(self, angle: float, mass: float) -> "AngularMeasure":
        return AngularMeasure.create(list(self.atoms) + [(angle, mass)], self.density)

    # -- serialization -------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "atoms": [{"angle": a, "mass": m} for a, m in self.atoms],
            "density": [{"lo": lo, "hi": hi, "value": v} for lo, hi, v in self.density],
        }

    @classmethod
    def from_dict(cls, data: dict, degrees: bool = False) -> "AngularMeasure":
        if not isinstance(data, dict):
            raise ValueError("measure must be a JSON object")
        unknown = set(data) - {"atoms", "density"}
        if unknown:
            raise ValueError(f"unknown measure keys: {sorted(unknown)}")
        conv = math.radians if degrees else float
        try:
            atoms = [(conv(float(d["angle"])), float(d["mass"])) for d in data.get("atoms", [])]
            cells = [
                (conv(float(d["lo"])), conv(float(d["hi"])), float(d["value"]))
                for d in data.get("density", [])
            ]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed measure entry: {exc!r}") from exc
        for x in [v for pair in atoms for v in pair] + [v for c in cells for v in c]:
            if not math.isfinite(x):
                raise ValueError("measure contains a non-finite number")
        return cls.create(atoms, cells)


def _circ_dist(a: float, b: float) -> float:
    d = abs(a - b) % TWO_PI
    return min(d, TWO_PI - d)


def _split_cell(lo: float, hi: float, v: float) -> list[tuple[float, float, float]]:
    """Map a cell of length < 2*pi onto [0, 2*pi], splitting at the seam."""
    if hi - lo >= TWO_PI - 1e-15:
        return [(0.0, TWO_PI, v)]
    shift = math.floor(lo / TWO_PI) * TWO_PI
    lo, hi = lo - shift, hi - shift
    pieces = [(lo, hi, v)] if hi <= TWO_PI else [(lo, TWO_PI, v), (0.0, hi - TWO_PI, v)]
    # a sliver can collapse to zero width after the shift
    return [p for p in pieces if p[0] < p[1]]


def _normalize_cells(cells) -> tuple[tuple[float, float, float], ...]:
    out = []
    for cell in cells:
        lo, hi, v = (float(x) for x in cell)
        if v < 0:
            raise ValueError(f"negative density value {v}")
        if not lo < hi:
            raise ValueError(f"density cell needs lo < hi, got ({lo}, {hi})")
        if lo < 0.0 or hi > TWO_PI + 1e-12:
            raise ValueError(f"density cell ({lo}, {hi}) outside [0, 2*pi]")
        if v == 0.0:
            continue
        out.append((lo, min(hi, TWO_PI), v))
    out.sort()
    for (_, hi0, _), (lo1, _, _) in zip(out, out[1:]):
        if lo1 < hi0:
            raise ValueError("density cells overlap")
    return tuple(out)


def _normalize_atoms(atoms, extra_mass: float) -> tuple[tuple[float, float], ...]:
    raw = []
    for atom in atoms:
        a, m = (float(x) for x in atom)
        if m < 0:
            raise ValueError(f"negative atom mass {m}")
        if m > 0:
            raw.append((normalize_angle(a), m))
    raw.sort()
    merged: list[list[float]] = []
    for a, m in raw:
        if merged and a - merged[-1][0] <= ATOM_MERGE_ATOL:
            merged[-1][1] += m
        else:
            merged.append([a, m])
    # seam: an atom just below 2*pi is the same direction as one at 0
    if len(merged) > 1 and merged[0][0] + TWO_PI - merged[-1][0] <= ATOM_MERGE_ATOL:
        merged[0][1] += merged.pop()[1]
    total = sum(m for _, m in merged) + extra_mass
    floor = ATOM_DROP_RTOL * total
    return tuple((a, m) for a, m in merged if m >= floor)


def _density_mass(cells, alpha: float, beta: float) -> float:
    s = 0.0
    for lo, hi, v in cells:
        left, right = max(lo, alpha), min(hi, beta)
        if right > left:
            s += v * (right - left)
    return s


def total_mass(measure: AngularMeasure) -> float:
    return math.fsum(
        [m for _, m in measure.atoms] + [v * (hi - lo) for lo, hi, v in measure.density]
    )


def sector_mass(measure: AngularMeasure, alpha: float, beta: float) -> float:
    """Mass of the open sector (alpha, beta); atoms on the endpoints are excluded."""
    if not alpha < beta:
        raise ValueError(f"sector needs alpha < beta, got ({alpha}, {beta})")
    atoms = sum(m for a, m in measure.atoms if alpha < a < beta)
    return atoms + _density_mass(measure.density, alpha, beta)


def first_moment(measure: AngularMeasure) -> complex:
    """Integral of exp(i t) against the measure, in closed form."""
    re: list[float] = []
    im: list[float] = []
    for a, m in measure.atoms:
        re.append(m * math.cos(a))
        im.append(m * math.sin(a))
    for lo, hi, v in measure.density:
        # v * (e^{i hi} - e^{i lo}) / i
        re.append(v * (math.sin(hi) - math.sin(lo)))
        im.append(-v * (math.cos(hi) - math.cos(lo)))
    return complex(math.fsum(re), math.fsum(im))


def balancing_atom(measure: AngularMeasure) -> BalancingAtom:
    """The atom ``A0 * delta(alpha0)`` that cancels the first moment.

    Returns ``(0, 0, balanced=True)`` when the moment is already below
    ``tol_moment``.
    """
    mom = first_moment(measure)
    mass = abs(mom)
    if mass <= measure.tol_moment():
        return BalancingAtom(0.0, 0.0, True)
    return BalancingAtom(mass, normalize_angle(cmath.phase(-mom)), False)


def star_measure(measure: AngularMeasure) -> AngularMeasure:
    mass, angle, balanced = balancing_atom(measure)
    if balanced:
        return measure
    return measure.with_atom(angle, mass)
