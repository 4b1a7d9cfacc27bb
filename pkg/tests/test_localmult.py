"""Local intersection numbers: axioms, known germs, and a dual oracle."""

from fractions import Fraction

import pytest
from hypothesis import given, settings

from folindex.exactcore import PreconditionError
from folindex.localmult import (
    INFINITE,
    curve_multiplicity,
    intersection_multiplicity,
    milnor_number,
)

from conftest import ORIGIN, P2, dual_oracle_pairs
from test_exactcore import polys

CUSP = P2("y^2 - x^3")
NODE = P2("x*y")
TACNODE = P2("y^2 - x^4")
INF = INFINITE


def I0(f, g):
    return intersection_multiplicity(f, g, ORIGIN).value


# -------------------------------------------------------------------- axioms

def test_known_values():
    assert I0(P2("x"), P2("y")) == 1
    assert I0(CUSP, P2("y")) == 3
    assert I0(CUSP, P2("x")) == 2
    assert I0(CUSP, P2("y^2 + x^3")) == 6
    assert I0(NODE, P2("x + y")) == 2
    assert I0(TACNODE, P2("y")) == 4
    # nonvanishing factor contributes nothing
    assert I0(CUSP, P2("1 + x")) == 0
    # common component
    assert I0(P2("x"), NODE) == INF
    assert I0(CUSP, CUSP * P2("y")) == INF
    assert not intersection_multiplicity(P2("x"), NODE, ORIGIN).is_finite


@settings(max_examples=40, deadline=None)
@given(polys(), polys())
def test_symmetry(f, g):
    if f.is_zero or g.is_zero:
        return
    assert I0(f, g) == I0(g, f)


@settings(max_examples=40, deadline=None)
@given(polys(), polys(), polys())
def test_multiplicativity(f, g, h):
    if f.is_zero or g.is_zero or h.is_zero:
        return
    left = I0(f, g * h)
    a, b = I0(f, g), I0(f, h)
    if INF in (a, b):
        assert left == INF
    else:
        assert left == a + b


@settings(max_examples=40, deadline=None)
@given(polys(), polys(), polys())
def test_invariance_under_combination(f, g, h):
    # adding a multiple of f to g never changes the number against f
    if f.is_zero or g.is_zero or (g + h * f).is_zero:
        return
    assert I0(f, g + h * f) == I0(f, g)


@settings(max_examples=40, deadline=None)
@given(polys())
def test_vanishing_dichotomy(f):
    g = P2("x + y^2")
    if f.is_zero:
        return
    v = I0(f, g)
    if v == INF:
        return
    zero = {"x": Fraction(0), "y": Fraction(0)}
    if f.evaluate(zero).is_zero:
        assert v >= 1
    else:
        assert v == 0


# ------------------------------------------------------------- milnor / mult

def test_milnor_numbers():
    assert milnor_number(P2("x^2 + y^2"), ORIGIN) == 1
    assert milnor_number(NODE, ORIGIN) == 1
    assert milnor_number(CUSP, ORIGIN) == 2
    assert milnor_number(TACNODE, ORIGIN) == 3
    assert milnor_number(P2("x^3 + y^3"), ORIGIN) == 4
    assert milnor_number(P2("x^3 + y^5"), ORIGIN) == 8
    assert milnor_number(P2("x + y^7"), ORIGIN) == 0
    # two cusps meeting with contact 4:  2 + 2 + 2*4 - 1
    assert milnor_number(P2("(y^2 - x^3) * (x^2 - y^3)"), ORIGIN) == 11


def test_milnor_away_from_origin():
    f = P2("y^2 - (x - 1)^3")
    assert milnor_number(f, (Fraction(1), Fraction(0))) == 2
    # smooth point of the same curve
    assert milnor_number(f, (Fraction(2), Fraction(1))) == 0
    # the origin is not on the curve at all
    with pytest.raises(PreconditionError):
        milnor_number(f, ORIGIN)


def test_curve_multiplicity():
    assert curve_multiplicity(CUSP, ORIGIN) == 2
    assert curve_multiplicity(NODE, ORIGIN) == 2
    assert curve_multiplicity(P2("x^3 + y^3"), ORIGIN) == 3
    assert curve_multiplicity(P2("x + y^2"), ORIGIN) == 1
    assert curve_multiplicity(CUSP, (Fraction(1), Fraction(1))) == 1


def test_milnor_plus_mult_bound():
    # for an irreducible germ, I(f, f_y) = mu + m - 1 once y^m is in the cone
    for text in ("y^2 - x^3", "y^2 - x^5", "y^3 - x^4", "y^3 - x^5"):
        f = P2(text)
        mu = milnor_number(f, ORIGIN)
        m = curve_multiplicity(f, ORIGIN)
        assert I0(f, f.diff("y")) == mu + m - 1


# --------------------------------------------------------------- dual oracle

def test_branch_expansion_agrees_with_recursion():
    """Two independent computations of the same number on 100 random pairs."""
    pairs = dual_oracle_pairs(count=100, seed=20260822)
    assert len(pairs) == 100
    for f, g, fulton, total in pairs:
        assert total == fulton, f"disagreement on f={f!r} g={g!r}"
