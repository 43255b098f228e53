import math

import mpmath
import numpy as np
import pytest
from scipy.optimize import brentq

from conftest import random_element, random_elliptic
from fgap.bounds import (
    Claim,
    check_displacement_identity,
    check_main_theorem,
    check_marden_yamada,
    check_nonelementary_bound,
    check_order_two_products,
    check_proposition,
    minimize_minmax,
    minmax_objective,
    nonelementary_generator_pairs,
    theorem_constant,
    theorem_sinh_constant,
    yamada_constant,
)
from fgap.exceptions import ElementaryPair, NotElliptic
from fgap.groups import EllipticPointSet, GapResult, min_elliptic_gap, parse_preset, triangle_vertices
from fgap.metric import distance, half_displacement
from fgap.moebius import GroupElement, UhpPoint, conjugate, elliptic_datum, elliptic_from

S = GroupElement(0.0, -1.0, 1.0, 0.0)
ST = GroupElement(0.0, -1.0, 1.0, 1.0)
PRESETS = ["modular", "hecke:5", "hecke:7", "triangle:2,3,7", "triangle:3,3,4"]


def mp_constants():
    mpmath.mp.dps = 40
    c = mpmath.cos(mpmath.pi / 7)
    C = mpmath.sqrt((4 * c**2 - 3) / (8 * c + 7))
    k = 2 * C / mpmath.sqrt(3)
    return float(C), float(k), float(mpmath.asinh(k))


# frozen from mp_constants() at 40 digits
C_REF = 0.1318462788366012762
SINH_REF = 0.1522429691559244106
THEOREM_REF = 0.1516609072912367919


def test_constants_against_extended_precision():
    C, k, t = mp_constants()
    assert abs(C - C_REF) < 1e-17 and abs(k - SINH_REF) < 1e-17 and abs(t - THEOREM_REF) < 1e-17
    assert abs(yamada_constant() - C_REF) < 2e-16
    assert abs(theorem_sinh_constant() - SINH_REF) < 2e-16
    assert abs(theorem_constant() - THEOREM_REF) < 2e-16


def test_constant_digits_and_identities():
    C = yamada_constant()
    assert f"{C:.6f}".startswith("0.1318")
    assert f"{theorem_sinh_constant():.6f}".startswith("0.152")
    assert f"{theorem_constant():.6f}".startswith("0.151")
    c = math.cos(math.pi / 7)
    assert abs(C * C * (8 * c + 7) - (4 * c * c - 3)) < 1e-15
    assert abs(math.sinh(theorem_constant()) - 2 * C / math.sqrt(3)) < 1e-14


def grid_oracle(g, h, n=400):
    xs = np.linspace(-0.6, 0.1, n)
    ys = np.linspace(0.5, 1.5, n)
    best = math.inf
    for x in xs:
        for y in ys:
            z = UhpPoint(float(x), float(y))
            best = min(best, max(half_displacement(g, z), half_displacement(h, z)))
    return best


def equalization_oracle():
    d = math.acosh(2 / math.sqrt(3))
    a = brentq(lambda a: math.sinh(a) - math.sqrt(3) / 2 * math.sinh(d - a), 0.0, d, xtol=1e-15)
    return math.sinh(a)


def test_minmax_modular():
    res = minimize_minmax(S, ST)
    oracle = grid_oracle(S, ST)
    assert abs(res.value - oracle) < 2e-3 and res.value <= oracle + 1e-12
    assert abs(res.value - equalization_oracle()) < 1e-9
    assert abs(res.value - 0.2582) < 1e-4
    # the minimizer sits on the geodesic from i to the order-three point
    v, w = UhpPoint(0, 1), UhpPoint(-0.5, math.sqrt(3) / 2)
    assert abs(distance(v, res.argmin) + distance(res.argmin, w) - distance(v, w)) < 1e-9
    assert res.value == minmax_objective(S, ST, res.argmin)
    assert res.refined_step < 1e-7


def test_minmax_same_element():
    g = elliptic_from(UhpPoint(0.4, 2.0), 2 * math.pi / 5)
    res = minimize_minmax(g, g)
    assert res.value < 1e-12 and distance(res.argmin, UhpPoint(0.4, 2.0)) < 1e-6


def test_minmax_symmetric(rng):
    for _ in range(20):
        g, _, _ = random_elliptic(rng)
        h, _, _ = random_elliptic(rng)
        assert abs(minimize_minmax(g, h).value - minimize_minmax(h, g).value) < 1e-9


def test_minmax_conjugation_invariant(rng):
    for name in PRESETS:
        gens = parse_preset(name).elliptic_generators
        for i, j in nonelementary_generator_pairs(gens):
            base = minimize_minmax(gens[i], gens[j]).value
            for _ in range(3):
                gamma = random_element(rng, -2, 2)
                moved = minimize_minmax(conjugate(gamma, gens[i]), conjugate(gamma, gens[j])).value
                assert abs(moved - base) < 1e-6


def test_objective_at_fixed_point(rng):
    for _ in range(200):
        g, v, _ = random_elliptic(rng)
        h, w, _ = random_elliptic(rng)
        theta_h = elliptic_datum(h).angle
        expected = math.sinh(distance(v, w)) * abs(math.sin(theta_h / 2))
        assert abs(minmax_objective(g, h, elliptic_datum(g).fixed) - expected) < 1e-9 * max(1.0, expected)


@pytest.mark.parametrize("name", PRESETS)
def test_marden_yamada_presets(name):
    gens = parse_preset(name).elliptic_generators
    pairs = nonelementary_generator_pairs(gens)
    assert pairs
    for i, j in pairs:
        rep, res = check_marden_yamada(gens[i], gens[j])
        assert res.value >= yamada_constant() - 1e-6 and rep.passed


def test_marden_yamada_extremal_237():
    # the order-2 / order-3 generators of the (2,3,7) group realize the bound
    x, y, _ = parse_preset("triangle:2,3,7").generators
    assert abs(minimize_minmax(x, y).value - yamada_constant()) < 1e-9


def test_nonelementary_modular():
    rep = check_nonelementary_bound(S, ST)
    assert abs(rep.lhs - 1 / math.sqrt(3)) < 1e-12
    assert abs(rep.rhs - C_REF / math.sin(math.pi / 3)) < 1e-12
    assert abs(rep.rhs - 0.152243) < 1e-6
    assert rep.passed and rep.claim is Claim.NON_ELEM_BOUND


def test_nonelementary_237():
    _, y, z = parse_preset("triangle:2,3,7").generators
    _, v2, v3 = triangle_vertices(2, 3, 7)
    side = math.acosh((math.cos(math.pi / 3) * math.cos(math.pi / 7) + math.cos(math.pi / 2))
                      / (math.sin(math.pi / 3) * math.sin(math.pi / 7)))
    assert abs(distance(v2, v3) - side) < 1e-12
    rep = check_nonelementary_bound(y, z)
    assert abs(rep.rhs - C_REF / math.sin(math.pi / 7)) < 1e-12
    assert abs(rep.rhs - 0.303875) < 1e-6
    assert abs(rep.lhs - math.sinh(side)) < 1e-12 and rep.passed


def test_nonelementary_errors():
    half = GroupElement(1.0, -1.0, 2.0, -1.0)
    with pytest.raises(ElementaryPair):
        check_nonelementary_bound(S, half)
    with pytest.raises(NotElliptic):
        check_nonelementary_bound(S, GroupElement(2.0, 1.0, 1.0, 1.0))


def gap_for(d, orders):
    p = UhpPoint(0.0, 1.0)
    q = UhpPoint(0.0, math.exp(d))
    return GapResult(d, (0, 1), orders, True, d, (p, q))


def test_proposition_modular():
    d = math.acosh(2 / math.sqrt(3))
    rep = check_proposition(gap_for(d, (2, 3)))
    assert abs(rep.lhs - 2 * math.cosh(d / 2)) < 1e-15
    assert abs(rep.lhs - 2.0759097) < 1e-6
    assert abs(rep.rhs - 2 / math.sqrt(3)) < 1e-12 and rep.passed


def test_proposition_order_two_trivial():
    rep = check_proposition(gap_for(0.3, (2, 2)))
    assert abs(rep.rhs - 1.0) < 1e-15 and rep.lhs >= 2 and rep.passed


def test_proposition_synthetic_violation():
    eps = EllipticPointSet.from_points([(UhpPoint(0, 1), 7), (UhpPoint(0, math.exp(0.01)), 7)])
    gap = min_elliptic_gap(eps)
    rep = check_proposition(gap, eps)
    assert abs(rep.rhs - 1 / math.sin(math.pi / 7)) < 1e-12 and abs(rep.rhs - 2.3048) < 1e-4
    assert abs(rep.lhs - 2.000025) < 1e-6 and not rep.passed


def test_main_theorem_modular():
    d = math.acosh(2 / math.sqrt(3))
    l0 = 2 * math.acosh(1.5)
    rep = check_main_theorem(gap_for(d, (2, 3)), l0, False)
    assert rep.rhs == theorem_constant() and rep.passed
    assert abs(rep.margin - 0.3976452) < 1e-6


def test_main_theorem_order_two_free_branch():
    rep = check_main_theorem(gap_for(0.5, (3, 4)), 0.01, True)
    assert rep.rhs == theorem_constant() and rep.passed
    rep = check_main_theorem(gap_for(0.5, (2, 4)), 0.01, False)
    assert rep.rhs == 0.005


def test_report_tolerance_semantics():
    rep = check_main_theorem(gap_for(theorem_constant() - 5e-7, (3, 3)), 1.0, True)
    assert rep.passed and rep.margin < 0
    rep = check_main_theorem(gap_for(theorem_constant() - 2e-6, (3, 3)), 1.0, True)
    assert not rep.passed


def test_identity_checks(rng):
    samples = [(random_elliptic(rng)[0], UhpPoint(0.1, 1.1)) for _ in range(20)]
    assert check_displacement_identity(samples).passed
    half = GroupElement(1.0, -1.0, 2.0, -1.0)
    rep = check_order_two_products([(S, half)])
    assert rep.passed and rep.rhs < 1e-12 and rep.tolerance == 0.0
