"""Elementarity of two-generator elliptic subgroups.

For a pair of elliptic elements the group they generate is elementary exactly
when they share a fixed point (the group is then cyclic) or both have order
two. In the second case the product is hyperbolic with translation length
twice the distance between the fixed points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple

from .exceptions import CoincidentFixedPoints, WrongOrders
from .metric import distance
from .moebius import (
    ElementClass,
    GroupElement,
    classify,
    compose,
    elliptic_datum,
    translation_length,
)

TOL_COINCIDE = 1e-8


@dataclass(frozen=True)
class PairDiagnosis:
    shared_fixed_point: bool
    orders: Tuple[Optional[int], Optional[int]]
    elementary: bool
    product_class: ElementClass
    product_translation_length: Optional[float] = None


def shares_fixed_point(A: GroupElement, B: GroupElement, tol: float = TOL_COINCIDE) -> bool:
    va = elliptic_datum(A).fixed
    vb = elliptic_datum(B).fixed
    return distance(va, vb) < tol


def diagnose_pair(A: GroupElement, B: GroupElement) -> PairDiagnosis:
    da, db = elliptic_datum(A), elliptic_datum(B)
    shared = distance(da.fixed, db.fixed) < TOL_COINCIDE
    orders = (da.order, db.order)
    product = compose(A, B)
    cls = classify(product)
    length = translation_length(product) if cls is ElementClass.HYPERBOLIC else None
    return PairDiagnosis(
        shared_fixed_point=shared,
        orders=orders,
        elementary=shared or orders == (2, 2),
        product_class=cls,
        product_translation_length=length,
    )


def order_two_product_residual(A: GroupElement, B: GroupElement) -> float:
    """``|T_AB - 2 rho(z, w)|`` for order-two ``A``, ``B`` fixing ``z != w``."""
    da, db = elliptic_datum(A), elliptic_datum(B)
    if (da.order, db.order) != (2, 2):
        raise WrongOrders(f"both elements must have order two, got {(da.order, db.order)}")
    rho = distance(da.fixed, db.fixed)
    if rho < TOL_COINCIDE:
        raise CoincidentFixedPoints("order-two elements share their fixed point")
    return abs(translation_length(compose(A, B)) - 2.0 * rho)


def order_two_model_pair(s: float) -> Tuple[GroupElement, GroupElement]:
    """Half-turns about ``i`` and ``i e^s``; their product translates by ``2 s``."""
    k = math.exp(s)
    return (
        GroupElement(0.0, -1.0, 1.0, 0.0),
        GroupElement(0.0, -k, 1.0 / k, 0.0),
    )
