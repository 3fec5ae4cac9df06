"""Critical uniqueness type of point sets with angular density."""

from .certificate import build_kstar, pairing, uniqueness_margin
from .geometry import GeometryError, critical_type
from .kernels import BACKEND
from .measure import AngularMeasure, balancing_atom, first_moment, star_measure
from .sequences import PointSequence, from_measure

__all__ = [
    "AngularMeasure",
    "BACKEND",
    "GeometryError",
    "PointSequence",
    "balancing_atom",
    "build_kstar",
    "critical_type",
    "first_moment",
    "from_measure",
    "pairing",
    "star_measure",
    "uniqueness_margin",
]
