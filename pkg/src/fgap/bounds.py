"""Universal constants, the min-max displacement search and the inequality checks."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .elementary import diagnose_pair, order_two_product_residual
from .exceptions import ElementaryPair, InsufficientPoints
from .groups import EllipticPointSet, GapResult
from .metric import displacement_identity_residual, distance, geodesic_point, half_displacement
from .moebius import (
    ElementClass,
    GroupElement,
    UhpPoint,
    classify,
    elliptic_datum,
    fixed_locus_point,
)

TOL_REPORT = 1e-6
IDENTITY_TOL = 1e-9

GRID_SIZE = 101
GEODESIC_SEEDS = 65
HULL_PAD = 2.0
STOP_STEP = 1e-7


class Claim(str, enum.Enum):
    LEMMA14 = "Lemma14"
    LEMMA12 = "Lemma12"
    PROPOSITION = "Proposition"
    NON_ELEM_BOUND = "NonElemBound"
    MARDEN_YAMADA = "MardenYamada"
    MAIN_THEOREM = "MainTheorem"


@dataclass(frozen=True)
class BoundReport:
    """One checked inequality ``lhs >= rhs``; passes when ``lhs - rhs >= -tolerance``."""

    claim: Claim
    lhs: float
    rhs: float
    margin: float
    passed: bool
    context: str = ""
    tolerance: float = TOL_REPORT

    @classmethod
    def compare(cls, claim: Claim, lhs: float, rhs: float, context: str = "", tol: float = TOL_REPORT):
        margin = lhs - rhs
        return cls(Claim(claim), float(lhs), float(rhs), float(margin), bool(margin >= -tol), context, tol)


@dataclass(frozen=True)
class MinMaxResult:
    value: float
    argmin: UhpPoint
    grid_resolution: float
    refined_step: float


# constants -------------------------------------------------------------------


def yamada_constant() -> float:
    """Best lower bound on the min-max displacement of a discrete non-elementary elliptic pair."""
    c = math.cos(math.pi / 7.0)
    return math.sqrt((4.0 * c * c - 3.0) / (8.0 * c + 7.0))


def theorem_sinh_constant() -> float:
    """``2C / sqrt(3)``: the bound on ``sinh`` of the elliptic gap (about 0.1522)."""
    return 2.0 * yamada_constant() / math.sqrt(3.0)


def theorem_constant() -> float:
    """``arcsinh(2C / sqrt(3))``: the universal bound on the elliptic gap (about 0.1517)."""
    return math.asinh(theorem_sinh_constant())


# min-max search --------------------------------------------------------------


def minmax_objective(g: GroupElement, h: GroupElement, z: UhpPoint) -> float:
    return max(half_displacement(g, z), half_displacement(h, z))


def _half_disp_grid(g: GroupElement, Z: np.ndarray) -> np.ndarray:
    den = g.c * Z + g.d
    W = (g.a * Z + g.b) / den
    im_w = Z.imag / np.abs(den) ** 2
    return np.abs(Z - W) / (2.0 * np.sqrt(Z.imag * im_w))


def _box(points: Iterable[UhpPoint], pad: float) -> Tuple[float, float, float, float]:
    xs, ls = [], []
    for p in points:
        # the hyperbolic ball about p is a Euclidean disk of center (x, y cosh r), radius y sinh r
        xs += [p.x - p.y * math.sinh(pad), p.x + p.y * math.sinh(pad)]
        ls += [math.log(p.y) - pad, math.log(p.y) + pad]
    return min(xs), max(xs), min(ls), max(ls)


def _descend(m, x: float, y: float, step: float, stop: float) -> Tuple[float, float, float, float]:
    best = m(x, y)
    while step >= stop:
        moves = [(x - step * y, y), (x + step * y, y), (x, y * math.exp(-step)), (x, y * math.exp(step))]
        vals = [m(px, py) for px, py in moves]
        k = min(range(4), key=lambda i: (vals[i], moves[i]))
        if vals[k] < best:
            best = vals[k]
            x, y = moves[k]
        else:
            step *= 0.5
    return best, x, y, step


def _equalize_on_geodesic(g, h, v, w) -> UhpPoint:
    # along the segment v -> w the g-term grows and the h-term shrinks
    lo, hi = 0.0, 1.0
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        z = geodesic_point(v, w, mid)
        if half_displacement(g, z) < half_displacement(h, z):
            lo = mid
        else:
            hi = mid
    return geodesic_point(v, w, 0.5 * (lo + hi))


def minimize_minmax(g: GroupElement, h: GroupElement) -> MinMaxResult:
    """Estimate ``inf_z max(sinh(rho(z, gz)/2), sinh(rho(z, hz)/2))``.

    A coarse grid over ``(x, ln y)`` covering both fixed loci (padded by two
    units of hyperbolic distance) supplies seeds; for two elliptic elements
    the geodesic between their fixed points supplies more, and the crossing
    of the two displacement terms on it is located by bisection. Each seed is
    then polished by four-neighbor step-halving descent. The returned value
    is attained at ``argmin`` and so bounds the infimum from above.
    """
    # fixed argument order makes the search exactly symmetric in (g, h)
    g, h = sorted((g, h), key=lambda e: e.entries)

    def m(x, y):
        z = UhpPoint(x, y)
        return max(half_displacement(g, z), half_displacement(h, z))

    anchors = [fixed_locus_point(g), fixed_locus_point(h)]
    x0, x1, l0, l1 = _box(anchors, HULL_PAD)
    xs = np.linspace(x0, x1, GRID_SIZE)
    ls = np.linspace(l0, l1, GRID_SIZE)
    X, L = np.meshgrid(xs, ls, indexing="ij")
    Z = X + 1j * np.exp(L)
    vals = np.maximum(_half_disp_grid(g, Z), _half_disp_grid(h, Z)).ravel()
    resolution = float(ls[1] - ls[0])

    # x-major flattening: argsort ties resolve lexicographically in (x, y)
    order = np.argsort(vals, kind="stable")[:4]
    seeds = [(float(X.ravel()[k]), float(math.exp(L.ravel()[k]))) for k in order]

    if classify(g) is ElementClass.ELLIPTIC and classify(h) is ElementClass.ELLIPTIC:
        v, w = anchors
        if distance(v, w) < 1e-12:
            seeds.insert(0, (v.x, v.y))
        else:
            ts = np.linspace(0.0, 1.0, GEODESIC_SEEDS)
            line = [geodesic_point(v, w, float(t)) for t in ts]
            k = min(range(len(line)), key=lambda i: m(line[i].x, line[i].y))
            seeds.append((line[k].x, line[k].y))
            z = _equalize_on_geodesic(g, h, v, w)
            seeds.insert(0, (z.x, z.y))

    best = None
    for sx, sy in seeds:
        val, x, y, step = _descend(m, sx, sy, resolution, STOP_STEP)
        cand = (val, x, y, step)
        if best is None or (cand[0], cand[1], cand[2]) < (best[0], best[1], best[2]):
            best = cand
    val, x, y, step = best
    return MinMaxResult(value=val, argmin=UhpPoint(x, y), grid_resolution=resolution, refined_step=step)


# checks ----------------------------------------------------------------------


def _smaller_angle(*angles: float) -> float:
    return min(abs(a) for a in angles)


def check_nonelementary_bound(g: GroupElement, h: GroupElement) -> BoundReport:
    """``sinh rho(v_g, v_h) >= C / |sin(theta/2)|`` with ``theta`` the smaller rotation angle."""
    diag = diagnose_pair(g, h)
    if diag.elementary:
        raise ElementaryPair("the pair generates an elementary group")
    dg, dh = elliptic_datum(g), elliptic_datum(h)
    theta = _smaller_angle(dg.angle, dh.angle)
    lhs = math.sinh(distance(dg.fixed, dh.fixed))
    rhs = yamada_constant() / abs(math.sin(0.5 * theta))
    return BoundReport.compare(
        Claim.NON_ELEM_BOUND, lhs, rhs, f"orders {diag.orders}, theta {theta!r}"
    )


def check_marden_yamada(g: GroupElement, h: GroupElement) -> Tuple[BoundReport, MinMaxResult]:
    res = minimize_minmax(g, h)
    report = BoundReport.compare(
        Claim.MARDEN_YAMADA,
        res.value,
        yamada_constant(),
        f"min-max estimate at ({res.argmin.x!r}, {res.argmin.y!r})",
    )
    return report, res


def check_proposition(gap: GapResult, eps: Optional[EllipticPointSet] = None) -> BoundReport:
    """``2 cosh(d_min / 2) >= 1 / |sin(theta/2)|`` for the closest pair."""
    if eps is not None and tuple(eps.points[i].order for i in gap.pair) != gap.orders:
        raise ValueError("gap result does not belong to this point set")
    theta = 2.0 * math.pi / max(gap.orders)
    lhs = 2.0 * math.cosh(0.5 * gap.d_min)
    rhs = 1.0 / abs(math.sin(0.5 * theta))
    return BoundReport.compare(
        Claim.PROPOSITION, lhs, rhs, f"pair orders {gap.orders}, d_min {gap.d_min!r}"
    )


def check_main_theorem(gap: GapResult, l0: float, all_orders_above_two: bool) -> BoundReport:
    """``d_min >= min(l0 / 2, arcsinh(2C/sqrt 3))``; the ``l0`` term is dropped without order-two points."""
    const = theorem_constant()
    if all_orders_above_two:
        rhs, ctx = const, "all orders > 2: universal constant only"
    else:
        rhs, ctx = min(0.5 * l0, const), f"min(l0/2 = {0.5 * l0!r}, {const!r})"
    return BoundReport.compare(Claim.MAIN_THEOREM, gap.d_min, rhs, ctx)


def check_displacement_identity(samples: Sequence[Tuple[GroupElement, UhpPoint]]) -> BoundReport:
    """Worst residual of the rotation displacement identity; passes below ``IDENTITY_TOL``."""
    if not samples:
        raise InsufficientPoints("no samples for the displacement identity")
    worst = max(displacement_identity_residual(g, z) for g, z in samples)
    return BoundReport.compare(
        Claim.LEMMA14, IDENTITY_TOL, worst, f"{len(samples)} samples; lhs is the tolerance, rhs the worst residual", tol=0.0
    )


def check_order_two_products(pairs: Sequence[Tuple[GroupElement, GroupElement]]) -> BoundReport:
    """Worst ``|T_AB - 2 rho(z, w)|`` over order-two pairs; fails if any product is not hyperbolic."""
    if not pairs:
        raise InsufficientPoints("no order-two pairs")
    worst = 0.0
    for a, b in pairs:
        diag = diagnose_pair(a, b)
        if diag.product_class is not ElementClass.HYPERBOLIC:
            worst = math.inf
            break
        worst = max(worst, order_two_product_residual(a, b))
    return BoundReport.compare(
        Claim.LEMMA12, IDENTITY_TOL, worst, f"{len(pairs)} pairs; lhs is the tolerance, rhs the worst residual", tol=0.0
    )


def nonelementary_generator_pairs(gens: Sequence[GroupElement]) -> List[Tuple[int, int]]:
    out = []
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            if not diagnose_pair(gens[i], gens[j]).elementary:
                out.append((i, j))
    return out
