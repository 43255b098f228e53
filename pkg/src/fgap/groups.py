"""Preset Fuchsian groups, ball-limited element enumeration and elliptic point harvesting."""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .exceptions import (
    BadParameter,
    BudgetExceeded,
    InsufficientPoints,
    NoHyperbolicElements,
    NotHyperbolicSignature,
)
from .metric import distance
from .moebius import (
    IDENTITY,
    I_POINT,
    ElementClass,
    GroupElement,
    UhpPoint,
    classify,
    compose,
    elliptic_datum,
    elliptic_from,
    inverse,
    is_identity,
    power,
    translation_length,
)

BASEPOINT = I_POINT
DEDUP_TOL = 1e-7
MATRIX_TOL = 1e-9
MAX_ELEMENTS = 2_000_000

S = GroupElement(0.0, -1.0, 1.0, 0.0)
T = GroupElement(1.0, 1.0, 0.0, 1.0)


@dataclass(frozen=True)
class GroupPreset:
    """Named generating set of a known discrete group.

    ``elliptic_generators`` lists primitive elliptic elements whose orders are
    ``known_orders``, one per conjugacy class of maximal elliptic subgroup
    (repeats allowed). They are products of ``generators``.
    """

    name: str
    generators: Tuple[GroupElement, ...]
    known_orders: Tuple[int, ...]
    elliptic_generators: Tuple[GroupElement, ...]
    known_discrete: bool = True
    notes: str = ""


@dataclass(frozen=True)
class EnumConfig:
    max_word_length: int = 10
    ball_radius: float = 3.0
    dedup_tol: float = DEDUP_TOL
    matrix_tol: float = MATRIX_TOL
    max_elements: int = MAX_ELEMENTS

    def __post_init__(self):
        if self.max_word_length < 1:
            raise BadParameter("max_word_length must be at least 1")
        if not self.ball_radius > 0.0:
            raise BadParameter("ball_radius must be positive")
        if not (self.dedup_tol > 0.0 and self.matrix_tol > 0.0):
            raise BadParameter("tolerances must be positive")


@dataclass(frozen=True)
class EllipticPoint:
    point: UhpPoint
    order: int
    angle: float
    element: GroupElement


@dataclass(frozen=True)
class EllipticPointSet:
    points: Tuple[EllipticPoint, ...]
    ball_radius: float
    basepoint: UhpPoint = BASEPOINT
    dedup_tol: float = DEDUP_TOL

    def __len__(self):
        return len(self.points)

    @property
    def orders(self) -> Tuple[int, ...]:
        return tuple(p.order for p in self.points)

    @classmethod
    def from_points(cls, records, ball_radius: Optional[float] = None, **kw) -> "EllipticPointSet":
        """Build a set from ``(UhpPoint, order)`` pairs, e.g. a hand-made configuration.

        Each point receives the primitive rotation about it. With no
        ``ball_radius`` the ball is taken just large enough to hold every point.
        """
        pts = []
        for point, order in records:
            order = int(order)
            if order < 2:
                raise BadParameter(f"elliptic order must be at least 2, got {order}")
            angle = 2.0 * math.pi / order
            pts.append(EllipticPoint(point, order, angle, elliptic_from(point, angle)))
        base = kw.get("basepoint", BASEPOINT)
        if ball_radius is None:
            ball_radius = max((distance(base, p.point) for p in pts), default=0.0) + 1.0
        return cls(tuple(pts), ball_radius, **kw)


@dataclass(frozen=True)
class GapResult:
    d_min: float
    pair: Tuple[int, int]
    orders: Tuple[int, int]
    interior_certified: bool
    margin: float
    points: Tuple[UhpPoint, UhpPoint]


# presets ---------------------------------------------------------------------


def modular_group() -> GroupPreset:
    return GroupPreset(
        name="modular",
        generators=(S, T),
        known_orders=(2, 3),
        elliptic_generators=(S, compose(S, T)),
        notes="PSL(2,Z) generated by S: z -> -1/z and T: z -> z + 1",
    )


def hecke_group(q: int) -> GroupPreset:
    if int(q) != q or q < 3:
        raise BadParameter(f"Hecke group needs an integer q >= 3, got {q!r}")
    q = int(q)
    lam = 1.0 if q == 3 else 2.0 * math.cos(math.pi / q)
    t_lam = GroupElement(1.0, lam, 0.0, 1.0)
    return GroupPreset(
        name=f"hecke:{q}",
        generators=(S, t_lam),
        known_orders=(2, q),
        elliptic_generators=(S, compose(S, t_lam)),
        notes=f"Hecke group with translation length 2cos(pi/{q}) = {lam!r}",
    )


def triangle_vertices(p: int, q: int, r: int) -> Tuple[UhpPoint, UhpPoint, UhpPoint]:
    """Vertices of the triangle with angles ``pi/p, pi/q, pi/r``.

    The first vertex is ``i``, the second lies above it on the imaginary
    axis and the third is to the left of that side.
    """
    # 1/p + 1/q + 1/r < 1, in exact integer arithmetic
    if min(p, q, r) < 2 or q * r + p * r + p * q >= p * q * r:
        raise NotHyperbolicSignature(f"({p},{q},{r}) is not a hyperbolic signature")
    alpha, beta, gamma = math.pi / p, math.pi / q, math.pi / r
    side_12 = math.acosh(
        (math.cos(alpha) * math.cos(beta) + math.cos(gamma)) / (math.sin(alpha) * math.sin(beta))
    )
    side_13 = math.acosh(
        (math.cos(alpha) * math.cos(gamma) + math.cos(beta)) / (math.sin(alpha) * math.sin(gamma))
    )
    v1 = I_POINT
    v2 = UhpPoint(0.0, math.exp(side_12))
    # in the disk centered at v1 the side v1v2 is the positive real radius
    w = math.tanh(0.5 * side_13) * cmath.exp(1j * alpha)
    v3 = UhpPoint.from_complex(1j * (1.0 + w) / (1.0 - w))
    return v1, v2, v3


def triangle_group(p: int, q: int, r: int) -> GroupPreset:
    p, q, r = int(p), int(q), int(r)
    v1, v2, v3 = triangle_vertices(p, q, r)
    x = elliptic_from(v1, 2.0 * math.pi / p)
    y = elliptic_from(v2, 2.0 * math.pi / q)
    z = elliptic_from(v3, 2.0 * math.pi / r)
    relations = (power(x, p), power(y, q), power(z, r), compose(compose(x, y), z))
    if not all(is_identity(g, 1e-9) for g in relations):
        raise RuntimeError(f"triangle group ({p},{q},{r}) failed its defining relations")
    return GroupPreset(
        name=f"triangle:{p},{q},{r}",
        generators=(x, y, z),
        known_orders=(p, q, r),
        elliptic_generators=(x, y, z),
        notes="orientation-preserving triangle group; x^p = y^q = z^r = xyz = 1",
    )


def parse_preset(spec: str) -> GroupPreset:
    """Parse ``modular``, ``hecke:q`` or ``triangle:p,q,r``."""
    name, _, args = spec.strip().partition(":")
    try:
        if name == "modular" and not args:
            return modular_group()
        if name == "hecke":
            return hecke_group(int(args))
        if name == "triangle":
            p, q, r = (int(v) for v in args.split(","))
            return triangle_group(p, q, r)
    except ValueError as exc:
        if isinstance(exc, BadParameter):
            raise
        raise BadParameter(f"cannot parse preset {spec!r}: {exc}") from exc
    raise BadParameter(f"unknown preset {spec!r}; expected modular, hecke:q or triangle:p,q,r")


# enumeration -----------------------------------------------------------------


class _ElementIndex:
    """Tolerant set of group elements keyed by quantized canonical entries."""

    def __init__(self, tol: float):
        self.tol = tol
        self.quantum = 1000.0 * tol
        self._buckets: Dict[Tuple[int, ...], List[GroupElement]] = {}

    def _keys(self, g: GroupElement):
        options = []
        for v in g.entries:
            s = v / self.quantum
            k = round(s)
            opts = [k]
            # entries within tol of a cell boundary may sit in the neighbor cell
            frac = s - math.floor(s)
            if abs(frac - 0.5) * self.quantum <= self.tol:
                opts.append(math.floor(s) if k != math.floor(s) else math.floor(s) + 1)
            options.append(opts)
        return itertools.product(*options)

    def add(self, g: GroupElement) -> bool:
        """Insert ``g`` unless an element within tolerance is present."""
        primary = None
        for key in self._keys(g):
            if primary is None:
                primary = key
            for h in self._buckets.get(key, ()):
                if g.isclose(h, self.tol):
                    return False
        self._buckets.setdefault(primary, []).append(g)
        return True


def _sq_norm(g: GroupElement) -> float:
    # a^2 + b^2 + c^2 + d^2 = 2 cosh rho(i, g i)
    return g.a * g.a + g.b * g.b + g.c * g.c + g.d * g.d


def enumerate_elements(preset: GroupPreset, cfg: EnumConfig = EnumConfig()) -> List[GroupElement]:
    """Breadth-first products of generators and their inverses.

    A word is extended only while its element moves the basepoint ``i`` by at
    most ``2 * ball_radius``; that keeps every element whose fixed point lies
    in the ball. The result is closed under inversion and sorted by entries.
    """
    letters: List[GroupElement] = []
    letter_index = _ElementIndex(cfg.matrix_tol)
    for g in preset.generators:
        for h in (g, inverse(g)):
            if letter_index.add(h):
                letters.append(h)

    bound = 2.0 * math.cosh(2.0 * cfg.ball_radius) * (1.0 + 1e-12)
    index = _ElementIndex(cfg.matrix_tol)
    index.add(IDENTITY)
    kept = [IDENTITY]
    frontier = [IDENTITY]
    for _ in range(cfg.max_word_length):
        new = []
        for g in frontier:
            for s in letters:
                h = compose(g, s)
                if _sq_norm(h) > bound or not index.add(h):
                    continue
                new.append(h)
        kept.extend(new)
        if len(kept) > cfg.max_elements:
            raise BudgetExceeded(f"more than {cfg.max_elements} elements kept")
        frontier = new
    for g in list(kept):
        h = inverse(g)
        if index.add(h):
            kept.append(h)
    kept.sort(key=lambda g: g.entries)
    return kept


class _PointIndex:
    def __init__(self, tol: float):
        self.tol = tol
        self.quantum = 1e-4
        self._buckets: Dict[Tuple[int, int], List[int]] = {}

    def _cell(self, p: UhpPoint) -> Tuple[int, int]:
        return (math.floor(p.x / (p.y * self.quantum)), math.floor(math.log(p.y) / self.quantum))

    def find(self, p: UhpPoint, points: Sequence[UhpPoint]) -> Optional[int]:
        cx, cy = self._cell(p)
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                for idx in self._buckets.get((cx + dx, cy + dy), ()):
                    if distance(points[idx], p) < self.tol:
                        return idx
        return None

    def add(self, p: UhpPoint, idx: int):
        self._buckets.setdefault(self._cell(p), []).append(idx)


def elliptic_fixed_points(elements: Sequence[GroupElement], cfg: EnumConfig = EnumConfig()) -> EllipticPointSet:
    """Distinct elliptic fixed points inside the ball, each with its stabilizer order.

    The order at a point is the largest order among the given elements fixing
    it, so it can be under-reported when the enumeration is too shallow.
    """
    locs: List[UhpPoint] = []
    best: List[Tuple[int, GroupElement]] = []
    index = _PointIndex(cfg.dedup_tol)
    for g in elements:
        if classify(g) is not ElementClass.ELLIPTIC:
            continue
        datum = elliptic_datum(g)
        if datum.order is None or distance(BASEPOINT, datum.fixed) > cfg.ball_radius:
            continue
        idx = index.find(datum.fixed, locs)
        if idx is None:
            index.add(datum.fixed, len(locs))
            locs.append(datum.fixed)
            best.append((datum.order, g))
        elif datum.order > best[idx][0]:
            best[idx] = (datum.order, g)
    records = [
        EllipticPoint(p, n, 2.0 * math.pi / n, g) for p, (n, g) in zip(locs, best)
    ]
    records.sort(key=lambda e: (round(e.point.x, 9), round(e.point.y, 9)))
    return EllipticPointSet(tuple(records), cfg.ball_radius, BASEPOINT, cfg.dedup_tol)


def _closest_pair(xs: np.ndarray, ys: np.ndarray, members: np.ndarray) -> Tuple[float, int, int]:
    best = (math.inf, -1, -1)
    idx = np.flatnonzero(members)
    for pos, i in enumerate(idx[:-1]):
        rest = idx[pos + 1:]
        s = np.hypot(xs[rest] - xs[i], ys[rest] - ys[i]) / (2.0 * np.sqrt(ys[rest] * ys[i]))
        k = int(np.argmin(s))
        d = 2.0 * math.asinh(float(s[k]))
        if d < best[0] - 1e-12:
            best = (d, int(i), int(rest[k]))
    return best


def min_elliptic_gap(eps: EllipticPointSet, margin: Optional[float] = None) -> GapResult:
    """Closest pair of elliptic points, by brute force over interior points.

    A point is interior when it lies at least ``margin`` inside the ball.
    With no explicit margin, the margin is the closest distance over the
    whole ball, re-run once with the interior result when that is larger.
    The pair is certified when it is interior and no farther apart than the
    margin, since then no point outside the ball can be closer to it.
    """
    if len(eps) < 2:
        raise InsufficientPoints(f"need at least two elliptic points, have {len(eps)}")
    xs = np.array([e.point.x for e in eps.points])
    ys = np.array([e.point.y for e in eps.points])
    depth = np.array([distance(eps.basepoint, e.point) for e in eps.points])
    radius = eps.ball_radius

    def run(m: float):
        members = depth <= radius - m
        if members.sum() < 2:
            raise InsufficientPoints(f"fewer than two points lie {m:.6g} inside the ball")
        return _closest_pair(xs, ys, members)

    if margin is None:
        margin, _, _ = run(0.0)
        d, i, j = run(margin)
        if d > margin + 1e-12:
            margin = d
            d, i, j = run(margin)
    else:
        d, i, j = run(margin)
    a, b = eps.points[i], eps.points[j]
    return GapResult(
        d_min=d,
        pair=(i, j),
        orders=(a.order, b.order),
        interior_certified=d <= margin + 1e-12,
        margin=margin,
        points=(a.point, b.point),
    )


def systole_estimate(elements: Sequence[GroupElement]) -> float:
    """Shortest translation length among the hyperbolic elements given.

    This is an upper bound for the systole; it is exact once the enumeration
    reaches a word realizing the shortest closed geodesic.
    """
    lengths = [translation_length(g) for g in elements if classify(g) is ElementClass.HYPERBOLIC]
    if not lengths:
        raise NoHyperbolicElements("no hyperbolic element among the enumerated elements")
    return min(lengths)
