import math

import pytest
from scipy.integrate import quad

from conftest import point_at_distance, random_element, random_elliptic, random_point
from fgap.exceptions import CoincidentPoints, NotElliptic
from fgap.metric import (
    GeodesicSegment,
    displacement_identity_residual,
    distance,
    geodesic_point,
    half_displacement,
    to_disk,
)
from fgap.moebius import GroupElement, UhpPoint, apply, elliptic_datum

I = UhpPoint(0.0, 1.0)
P = UhpPoint(0.5, math.sqrt(3.0) / 2.0)
E = GroupElement(0.0, -1.0, 1.0, 0.0)


def arc_length_oracle():
    # i and P lie on the unit circle; ds = dphi / sin(phi) along it
    val, _ = quad(lambda phi: 1.0 / math.sin(phi), math.pi / 3.0, math.pi / 2.0, epsabs=1e-14)
    return val


def test_distance_examples():
    assert abs(distance(I, UhpPoint(0.0, math.e)) - 1.0) < 1e-15
    expected = arc_length_oracle()
    assert abs(expected - 0.5493061443340548) < 1e-12
    assert abs(distance(I, P) - expected) < 1e-12
    assert abs(distance(I, P) - math.acosh(2.0 / math.sqrt(3.0))) < 1e-12
    assert distance(P, P) == 0.0


def test_distance_near_coincident():
    z = UhpPoint(0.3, 0.7)
    w = UhpPoint(0.3 + 1e-10, 0.7)
    assert abs(distance(z, w) - (w.x - z.x) / 0.7) < 1e-24


def midpoint_oracle():
    lo, hi = math.pi / 3.0, math.pi / 2.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        m = UhpPoint(math.cos(mid), math.sin(mid))
        if distance(P, m) < distance(m, I):
            lo = mid
        else:
            hi = mid
    return UhpPoint(math.cos(lo), math.sin(lo))


def test_geodesic_point_examples():
    q = UhpPoint(0.0, math.e)
    assert geodesic_point(I, q, 0.0) == I and geodesic_point(I, q, 1.0) == q
    mid = geodesic_point(I, q, 0.5)
    assert abs(mid.x) < 1e-15 and abs(mid.y - math.exp(0.5)) < 1e-12
    mid = geodesic_point(I, P, 0.5)
    assert distance(mid, midpoint_oracle()) < 1e-9
    half = 0.27465307216702745
    assert abs(distance(I, mid) - half) < 1e-9 and abs(distance(mid, P) - half) < 1e-9
    with pytest.raises(CoincidentPoints):
        geodesic_point(P, P, 0.5)


def test_geodesic_parametrization_random(rng):
    for _ in range(1000):
        p, q = random_point(rng), random_point(rng)
        t = rng.uniform(0, 1)
        z = geodesic_point(p, q, t)
        d = distance(p, q)
        assert abs(distance(p, z) - t * d) < 1e-9
        assert abs(distance(z, q) - (1 - t) * d) < 1e-9


def test_segment():
    seg = GeodesicSegment(I, P)
    assert abs(seg.length - distance(I, P)) < 1e-12
    assert seg(0.0) == I and seg(1.0) == P
    assert abs(distance(seg.midpoint(), I) - seg.length / 2) < 1e-12


def test_to_disk_sends_i_to_origin():
    assert to_disk(I) == 0
    assert abs(to_disk(UhpPoint(0.0, 1e9))) < 1 and abs(to_disk(UhpPoint(0.0, 1e9)) - 1) < 1e-8


def test_half_displacement_examples():
    g = E
    assert half_displacement(g, I) == 0.0
    t = GroupElement(1.0, 1.0, 0.0, 1.0)
    assert half_displacement(t, I) == pytest.approx(math.sinh(0.5 * distance(I, UhpPoint(1.0, 1.0))), abs=1e-15)
    # e(ie) = i/e, two units apart
    z = UhpPoint(0.0, math.e)
    assert abs(distance(z, apply(E, z)) - 2.0) < 1e-12
    assert abs(half_displacement(E, z) - math.sinh(1.0)) < 1e-12


def test_displacement_identity_examples(rng):
    g, v, _ = random_elliptic(rng)
    assert displacement_identity_residual(g, elliptic_datum(g).fixed) < 1e-12
    assert displacement_identity_residual(E, UhpPoint(0.0, math.e)) < 1e-12
    with pytest.raises(NotElliptic):
        displacement_identity_residual(GroupElement(2.0, 1.0, 1.0, 1.0), I)


def test_isometry_invariance(rng):
    for _ in range(10_000):
        g = random_element(rng, -3, 3)
        z, w = random_point(rng), random_point(rng)
        assert abs(distance(apply(g, z), apply(g, w)) - distance(z, w)) < 1e-10 * max(1.0, distance(z, w))


def test_triangle_inequality(rng):
    for _ in range(10_000):
        a, b, c = random_point(rng), random_point(rng), random_point(rng)
        assert distance(a, b) + distance(b, c) - distance(a, c) >= -1e-12
        assert distance(a, b) == distance(b, a)


def test_displacement_identity_random(rng):
    for _ in range(2000):
        g, v, _ = random_elliptic(rng)
        z = point_at_distance(v, rng.uniform(0, 10), rng.uniform(0, 2 * math.pi))
        assert displacement_identity_residual(g, z) < 1e-9


def test_sinh_ratio_identity(rng):
    for rho in rng.uniform(1e-6, 10, size=1000):
        assert abs(math.sinh(rho) / math.sinh(rho / 2) - 2 * math.cosh(rho / 2)) < 1e-12
