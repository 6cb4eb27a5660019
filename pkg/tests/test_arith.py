import math
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from coxlab.intpoly import IntPoly
from coxlab.quadext import QuadExt

polys = st.lists(st.integers(-20, 20), max_size=7).map(IntPoly)
rats = st.fractions(min_value=-20, max_value=20, max_denominator=6)


@settings(max_examples=200, deadline=None)
@given(polys, polys, polys)
def test_intpoly_ring_laws(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a - a == IntPoly(())
    assert (a * b)(3) == a(3) * b(3)


@settings(max_examples=200, deadline=None)
@given(polys)
def test_intpoly_text_round_trip(p):
    assert IntPoly.from_csv(p.to_csv()) == p
    n = max(p.degree, 0)
    assert p.reversed(n).reversed(n) == p or p.is_zero()


def test_intpoly_render():
    assert IntPoly((1, 0, -3, 1)).render("q") == "1-3q^2+q^3"
    assert IntPoly(()).render() == "0"
    assert IntPoly((0, 1)).render("t") == "t"


@settings(max_examples=300, deadline=None)
@given(rats, rats, rats, rats, st.sampled_from([2, 3, 5]))
def test_quadratic_field_matches_floats(a, b, c, d, rad):
    x, y = QuadExt(a, b, rad), QuadExt(c, d, rad)
    fx = float(a) + float(b) * math.sqrt(rad)
    fy = float(c) + float(d) * math.sqrt(rad)
    assert math.isclose(_f(x * y, rad), fx * fy, abs_tol=1e-7)
    assert math.isclose(_f(x + y, rad), fx + fy, abs_tol=1e-9)
    if abs(fx - fy) > 1e-9:
        assert (x < y) == (fx < fy)
    if not y.is_zero():
        assert (x / y) * y == x


def _f(z, rad):
    return float(z.a) + float(z.b) * math.sqrt(rad)


def test_sqrt_squares():
    r = QuadExt(0, 1, 2)
    assert r * r == QuadExt(2, 0, 2)
    assert QuadExt(Fraction(1, 2), 0, 5) + QuadExt(Fraction(1, 2), 0, 5) == QuadExt(1, 0, 5)
