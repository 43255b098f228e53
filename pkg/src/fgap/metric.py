"""Hyperbolic distance, geodesics and displacement in the upper half-plane."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .exceptions import CoincidentPoints
from .moebius import GroupElement, UhpPoint, apply, elliptic_datum

# below this arccosh argument excess, sqrt(2 (arg - 1)) is used instead
_ACOSH_GUARD = 1e-14


def _sinh_half(z: UhpPoint, w: UhpPoint) -> float:
    # sinh(rho/2) = |z - w| / (2 sqrt(y_z y_w))
    return math.hypot(z.x - w.x, z.y - w.y) / (2.0 * math.sqrt(z.y * w.y))


def distance(z: UhpPoint, w: UhpPoint) -> float:
    """Hyperbolic distance ``arccosh(1 + |z - w|^2 / (2 y_z y_w))``."""
    excess = 2.0 * _sinh_half(z, w) ** 2
    if excess <= _ACOSH_GUARD:
        return math.sqrt(2.0 * excess)
    return 2.0 * math.asinh(_sinh_half(z, w))


def cosh_distance(z: UhpPoint, w: UhpPoint) -> float:
    return 1.0 + 2.0 * _sinh_half(z, w) ** 2


def to_disk(z: UhpPoint) -> complex:
    """Cayley map ``z -> (z - i)/(z + i)`` onto the unit disk."""
    return (z.z - 1j) / (z.z + 1j)


def geodesic_point(p: UhpPoint, q: UhpPoint, t: float) -> UhpPoint:
    """Point at fraction ``t`` of the way from ``p`` to ``q`` along their geodesic.

    The pair is moved by an isometry so that ``p`` is the disk center; there
    the geodesic is a radius and hyperbolic length is ``2 artanh(r)``.
    """
    if p == q or distance(p, q) == 0.0:
        raise CoincidentPoints("geodesic through coincident points is undefined")
    if t == 0.0:
        return p
    if t == 1.0:
        return q
    pc, qc = p.z, q.z
    wq = (qc - pc) / (qc - pc.conjugate())
    u = wq / abs(wq)
    w = math.tanh(0.5 * t * distance(p, q)) * u
    return UhpPoint.from_complex((pc - w * pc.conjugate()) / (1.0 - w))


@dataclass(frozen=True)
class GeodesicSegment:
    p: UhpPoint
    q: UhpPoint
    length: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "length", distance(self.p, self.q))

    def __call__(self, t: float) -> UhpPoint:
        return geodesic_point(self.p, self.q, t)

    def midpoint(self) -> UhpPoint:
        return self(0.5)


def half_displacement(g: GroupElement, z: UhpPoint) -> float:
    """``sinh(rho(z, g z) / 2)``."""
    return _sinh_half(z, apply(g, z))


def displacement_identity_residual(g: GroupElement, z: UhpPoint) -> float:
    """Gap between the two sides of the rotation displacement identity.

    For a rotation by ``theta`` about ``v``,
    ``sinh(rho(z, g z)/2) == sinh(rho(z, v)) * |sin(theta/2)|``.
    Raises :class:`~fgap.exceptions.NotElliptic` otherwise.
    """
    datum = elliptic_datum(g)
    lhs = half_displacement(g, z)
    rhs = math.sinh(distance(z, datum.fixed)) * abs(math.sin(0.5 * datum.angle))
    return abs(lhs - rhs)
