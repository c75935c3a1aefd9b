import os
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from mcfg_mix.geometry import Configuration, PolyPath, point

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("thorough", max_examples=400, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# x, y pairs of the four path figures (ASCII syntax)
FIG1 = ("aBABAb", "ba")
FIG2 = ("abaBB", "AAb")
FIG3 = ("baaab", "AABBA")
FIG4 = ("bbaaBaaBA", "AAA")


def poly(*pts) -> PolyPath:
    """Polyline from decimal-string or int coordinates."""
    return PolyPath(tuple(point(str(x), str(y)) for x, y in pts))


def shapes_to_config(a_abs, b1_abs, d, origin) -> Configuration:
    """Configuration from absolute A[0] and B[1] vertices."""
    o = point(*origin)
    p1 = o + d
    a = [(v[0] - o[0], v[1] - o[1]) for v in a_abs.vertices]
    b = [(v[0] - p1[0], v[1] - p1[1]) for v in b1_abs.vertices]
    return Configuration.from_shapes(a, b, origin=o)


def make_fig5() -> Configuration:
    """An excursion from the right at line 0 in the style of the excursion figure.

    d = (4, 0) and P[0] = (-2, -1/2), so line 0 is x = 0.
    """
    a0 = poly((-2, -0.5), (-2, 4), (1, 4), (1, 3.3), (0, 2.3), (0, 1.8), (-1, 1),
              (-1, -0.25), (1, -0.25), (-0.5, 0.75), (0, 1), (1.5, 1.75), (2, -0.5))
    b1 = poly((2, -0.5), (0, -2), (-2, -0.5))
    return shapes_to_config(a0, b1, (4, 0), ("-2", "-0.5"))


def make_channel() -> Configuration:
    """A0 has a right excursion at line 0 whose mouth B[1] threads for every offset.

    d = (8, 0), P[0] = (-4, 0); the pocket spans y in [2, 3] and reaches
    x = 3.9, and B[1] runs in and out of it along y = 2.6 and y = 2.4.
    """
    a0 = poly((-4, 0), (-4, 4), (3.9, 4), (3.9, 3), (-1, 3), (-1, 2), (3.9, 2), (3.9, 0), (4, 0))
    b1 = poly((4, 0), (4, 2.6), (-0.5, 2.6), (-0.5, 2.4), (5, 2.4), (5, -2), (-5, -2), (-5, 0), (-4, 0))
    return shapes_to_config(a0, b1, (8, 0), (-4, 0))


@pytest.fixture
def fig5():
    return make_fig5()


@pytest.fixture
def channel():
    return make_channel()


F = Fraction


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
