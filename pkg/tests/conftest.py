import sys
from fractions import Fraction as F

import pytest
from hypothesis import settings

from rittlab.bessel import gaussian_field
from rittlab.exppoly import ExpPoly
from rittlab.numberfield import field_create, rationals

settings.register_profile("rittlab", deadline=None, max_examples=40, derandomize=True)
settings.load_profile("rittlab")


@pytest.fixture(scope="session")
def QQ():
    return rationals()


@pytest.fixture(scope="session")
def QI():
    return gaussian_field()


@pytest.fixture(scope="session")
def QSQRT2():
    return field_create([-2, 0, 1], (F(13, 10), F(3, 2), F(-1, 10), F(1, 10)))


@pytest.fixture(scope="session")
def Z8():
    # t = e^{i pi/4}
    return field_create([1, 0, 0, 0, 1], (F(1, 2), F(9, 10), F(1, 2), F(9, 10)))


@pytest.fixture(scope="session")
def Z12():
    # t = e^{i pi/6}, minimal polynomial t^4 - t^2 + 1
    return field_create([1, 0, -1, 0, 1], (F(4, 5), F(19, 20), F(2, 5), F(3, 5)))


class Kit:
    """Shorthands for building exponential polynomials over one field."""

    def __init__(self, K):
        self.K = K
        self.x = ExpPoly.x(K)
        self.one = ExpPoly.const(K, 1)

    def E(self, beta, c=1):
        return ExpPoly.exp(self.K, self.K(beta), c)

    def c(self, v):
        return ExpPoly.const(self.K, v)


@pytest.fixture(scope="session")
def kq(QQ):
    return Kit(QQ)


@pytest.fixture(scope="session")
def ki(QI):
    return Kit(QI)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
