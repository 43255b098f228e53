"""Isometries of the upper half-plane as real unimodular 2x2 matrices up to sign.

A :class:`GroupElement` is always stored in canonical form: determinant one
and a deterministic choice between ``M`` and ``-M``, so that two constructions
of the same isometry compare equal entry by entry.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from typing import Iterator, Optional, Tuple

from .exceptions import NotElliptic, NotHyperbolic, PoleError, ZeroAngle

EPS_CLASS = 1e-9
ORDER_MAX = 1000
ORDER_TOL = 1e-8

# rescaling only when det drifts past this (relative to |ad| + |bc|) keeps
# canonicalization idempotent
_DET_SLACK = 1e-14
_POLE_TOL = 1e-300


@dataclass(frozen=True)
class UhpPoint:
    """Point ``x + iy`` of the upper half-plane."""

    x: float
    y: float

    def __post_init__(self):
        if not (self.y > 0.0) or not math.isfinite(self.y) or not math.isfinite(self.x):
            raise ValueError(f"not a point of the upper half-plane: ({self.x}, {self.y})")

    @classmethod
    def from_complex(cls, z: complex) -> "UhpPoint":
        return cls(z.real, z.imag)

    @property
    def z(self) -> complex:
        return complex(self.x, self.y)

    def __iter__(self) -> Iterator[float]:
        yield self.x
        yield self.y


I_POINT = UhpPoint(0.0, 1.0)


def _canonical(a: float, b: float, c: float, d: float) -> Tuple[float, float, float, float]:
    det = a * d - b * c
    if not det > 0.0:
        raise ValueError(f"matrix must have positive determinant, got {det!r}")
    if abs(det - 1.0) > _DET_SLACK * (abs(a * d) + abs(b * c)):
        s = math.sqrt(det)
        a, b, c, d = a / s, b / s, c / s, d / s
    tr = a + d
    if abs(tr) > EPS_CLASS:
        flip = tr < 0.0
    else:
        lead = next((v for v in (b, c, a) if v != 0.0), 1.0)
        flip = lead < 0.0
    if flip:
        a, b, c, d = -a, -b, -c, -d
    # avoid signed zeros so that equal isometries hash equal
    return a + 0.0, b + 0.0, c + 0.0, d + 0.0


@dataclass(frozen=True)
class GroupElement:
    """Element of PSL(2, R), normalized and sign-canonicalized on construction."""

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        a, b, c, d = _canonical(float(self.a), float(self.b), float(self.c), float(self.d))
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)

    @classmethod
    def identity(cls) -> "GroupElement":
        return cls(1.0, 0.0, 0.0, 1.0)

    @property
    def entries(self) -> Tuple[float, float, float, float]:
        return (self.a, self.b, self.c, self.d)

    @property
    def trace(self) -> float:
        return self.a + self.d

    @property
    def det(self) -> float:
        return self.a * self.d - self.b * self.c

    def isclose(self, other: "GroupElement", tol: float = 1e-12) -> bool:
        return all(abs(p - q) <= tol for p, q in zip(self.entries, other.entries))

    def __matmul__(self, other: "GroupElement") -> "GroupElement":
        return compose(self, other)

    def __call__(self, z: UhpPoint) -> UhpPoint:
        return apply(self, z)

    def __repr__(self):
        return f"GroupElement([[{self.a!r}, {self.b!r}], [{self.c!r}, {self.d!r}]])"


IDENTITY = GroupElement.identity()


class ElementClass(enum.Enum):
    IDENTITY = "identity"
    ELLIPTIC = "elliptic"
    PARABOLIC = "parabolic"
    HYPERBOLIC = "hyperbolic"


@dataclass(frozen=True)
class EllipticDatum:
    """Fixed point, signed rotation angle and order of an elliptic element.

    ``order`` is ``None`` when no order up to ``ORDER_MAX`` matches the angle.
    """

    fixed: UhpPoint
    angle: float
    order: Optional[int]


def compose(g: GroupElement, h: GroupElement) -> GroupElement:
    """Return ``g o h``."""
    return GroupElement(
        g.a * h.a + g.b * h.c,
        g.a * h.b + g.b * h.d,
        g.c * h.a + g.d * h.c,
        g.c * h.b + g.d * h.d,
    )


def inverse(g: GroupElement) -> GroupElement:
    return GroupElement(g.d, -g.b, -g.c, g.a)


def conjugate(gamma: GroupElement, g: GroupElement) -> GroupElement:
    """Return ``gamma g gamma^-1``."""
    return compose(compose(gamma, g), inverse(gamma))


def power(g: GroupElement, n: int) -> GroupElement:
    if n < 0:
        return power(inverse(g), -n)
    out = IDENTITY
    for _ in range(n):
        out = compose(out, g)
    return out


def apply(g: GroupElement, z: UhpPoint) -> UhpPoint:
    zc = z.z
    den = g.c * zc + g.d
    if abs(den) < _POLE_TOL:
        raise PoleError(f"{z} is numerically at the pole of {g}")
    w = (g.a * zc + g.b) / den
    # Im(gz) = y/|cz+d|^2 exactly; avoids cancellation in the complex quotient
    return UhpPoint(w.real, z.y / abs(den) ** 2)


def apply_boundary(g: GroupElement, x: float) -> float:
    """Action on the boundary ``R u {inf}``; infinity is ``math.inf``."""
    if math.isinf(x):
        return math.inf if g.c == 0.0 else g.a / g.c
    den = g.c * x + g.d
    if den == 0.0:
        return math.inf
    return (g.a * x + g.b) / den


def is_identity(g: GroupElement, tol: float = EPS_CLASS) -> bool:
    return max(abs(g.a - 1.0), abs(g.b), abs(g.c), abs(g.d - 1.0)) <= tol


def classify(g: GroupElement, eps: float = EPS_CLASS) -> ElementClass:
    if is_identity(g, eps):
        return ElementClass.IDENTITY
    t = abs(g.trace)
    if t < 2.0 - eps:
        return ElementClass.ELLIPTIC
    if abs(t - 2.0) <= eps:
        return ElementClass.PARABOLIC
    return ElementClass.HYPERBOLIC


def _convergent_denominators(x: float) -> Iterator[int]:
    k_prev, k = 0, 1
    frac = x - math.floor(x)
    yield k
    while frac > 1e-15 and k <= ORDER_MAX:
        x = 1.0 / frac
        q = int(math.floor(x))
        frac = x - q
        k, k_prev = q * k + k_prev, k
        yield k


def rotation_order(angle: float, n_max: int = ORDER_MAX, tol: float = ORDER_TOL) -> Optional[int]:
    """Smallest ``n <= n_max`` with ``n * angle`` a multiple of ``2 pi`` to within ``n * tol``."""
    two_pi = 2.0 * math.pi
    x = abs(angle) / two_pi
    for n in _convergent_denominators(x):
        if n > n_max:
            break
        r = math.fmod(n * abs(angle), two_pi)
        if min(r, two_pi - r) < n * tol:
            return n
    return None


def elliptic_datum(g: GroupElement) -> EllipticDatum:
    if classify(g) is not ElementClass.ELLIPTIC:
        raise NotElliptic(f"{g!r} is not elliptic (trace {g.trace!r})")
    tr = g.trace
    # c != 0 for elliptic elements since c = 0 forces |tr| >= 2
    x = (g.a - g.d) / (2.0 * g.c)
    y = math.sqrt(4.0 - tr * tr) / (2.0 * abs(g.c))
    fixed = UhpPoint(x, y)
    # the derivative at the fixed point is exp(i * angle)
    angle = -2.0 * cmath.phase(g.c * fixed.z + g.d)
    angle = math.remainder(angle, 2.0 * math.pi)
    return EllipticDatum(fixed, angle, rotation_order(angle))


def moving_i_to(p: UhpPoint) -> GroupElement:
    """The affine map ``z -> y z + x`` sending ``i`` to ``p``."""
    s = math.sqrt(p.y)
    return GroupElement(s, p.x / s, 0.0, 1.0 / s)


def rotation_about_i(angle: float) -> GroupElement:
    h = 0.5 * angle
    return GroupElement(math.cos(h), math.sin(h), -math.sin(h), math.cos(h))


def elliptic_from(fixed: UhpPoint, angle: float) -> GroupElement:
    """Rotation by ``angle`` (counterclockwise) about ``fixed``."""
    if angle == 0.0 or abs(math.remainder(angle, 2.0 * math.pi)) < 1e-15:
        raise ZeroAngle("rotation angle must be nonzero")
    if abs(angle) > math.pi:
        raise ValueError(f"angle must lie in [-pi, pi], got {angle!r}")
    return conjugate(moving_i_to(fixed), rotation_about_i(angle))


def translation_length(g: GroupElement) -> float:
    if classify(g) is not ElementClass.HYPERBOLIC:
        raise NotHyperbolic(f"{g!r} is not hyperbolic (trace {g.trace!r})")
    return 2.0 * math.acosh(abs(g.trace) / 2.0)


def axis(g: GroupElement) -> Tuple[float, float]:
    """Boundary fixed points ``(attracting, repelling)``; ``math.inf`` marks infinity."""
    if classify(g) is not ElementClass.HYPERBOLIC:
        raise NotHyperbolic(f"{g!r} is not hyperbolic (trace {g.trace!r})")
    a, b, c, d = g.entries
    if c == 0.0:
        finite = b / (d - a)
        return (math.inf, finite) if abs(a) > abs(d) else (finite, math.inf)
    root = math.sqrt(g.trace ** 2 - 4.0)
    p1 = (a - d + root) / (2.0 * c)
    p2 = (a - d - root) / (2.0 * c)
    # g'(p) = (cp + d)^-2, so the attracting point has |cp + d| > 1
    if abs(c * p1 + d) > abs(c * p2 + d):
        return p1, p2
    return p2, p1


def fixed_locus_point(g: GroupElement) -> UhpPoint:
    """A representative interior point for the fixed set of ``g``.

    Elliptic: the fixed point. Hyperbolic: the top of the axis. Parabolic:
    the point at height one over the fixed point.
    """
    cls = classify(g)
    if cls is ElementClass.ELLIPTIC:
        return elliptic_datum(g).fixed
    if cls is ElementClass.HYPERBOLIC:
        p, q = axis(g)
        if math.isinf(p) or math.isinf(q):
            finite = q if math.isinf(p) else p
            return UhpPoint(finite, 1.0)
        return UhpPoint(0.5 * (p + q), 0.5 * abs(p - q))
    if cls is ElementClass.PARABOLIC:
        if g.c == 0.0:
            return I_POINT
        return UhpPoint((g.a - g.d) / (2.0 * g.c), 1.0)
    return I_POINT
