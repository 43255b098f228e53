import math

import numpy as np
import pytest

from fgap.moebius import GroupElement, UhpPoint, elliptic_from

ACCEPTANCE_LINES = []


def random_element(rng, lo=-10.0, hi=10.0):
    while True:
        a, b, c, d = rng.uniform(lo, hi, size=4)
        if a * d - b * c > 1.0:
            return GroupElement(a, b, c, d)


def random_point(rng, spread=3.0):
    return UhpPoint(rng.uniform(-spread, spread), math.exp(rng.uniform(-spread / 2, spread / 2)))


def point_at_distance(v, r, phi):
    """Point at hyperbolic distance r from v in direction phi."""
    w = math.tanh(0.5 * r) * complex(math.cos(phi), math.sin(phi))
    vc = v.z
    return UhpPoint.from_complex((vc - w * vc.conjugate()) / (1.0 - w))


def random_elliptic(rng, angle=None):
    v = random_point(rng)
    if angle is None:
        if rng.random() < 0.5:
            angle = 2.0 * math.pi / rng.integers(2, 13)
        else:
            angle = rng.uniform(1e-3, math.pi)
        angle *= rng.choice([-1.0, 1.0])
    return elliptic_from(v, angle), v, angle


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def accept_line():
    def record(number, passed, detail):
        line = f"criterion {number}: {'PASS' if passed else 'FAIL'}  {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
