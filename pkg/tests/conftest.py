"""Shared helpers for the test suite: parsers, germs, random samplers."""

import random
from fractions import Fraction

import pytest

from folindex import (
    ExtensionRequiredError,
    InsufficientPrecisionError,
    MultiPoly,
    NonReducedError,
    VectorFieldGerm,
    branches,
    intersection_multiplicity,
    ord_along_branch,
    parse_poly,
)
from folindex.puiseux import ZERO_UP_TO_TRUNCATION
from folindex.exactcore import QQ, FieldElem
from folindex.localmult import INFINITE

V2 = ("x", "y")
V3 = ("x", "y", "z")
ORIGIN = (Fraction(0), Fraction(0))


def P2(text):
    return parse_poly(text, V2)


def P3(text):
    return parse_poly(text, V3)


def germ(a, b):
    return VectorFieldGerm(P2(a), P2(b))


@pytest.fixture
def p2():
    return P2


@pytest.fixture
def p3():
    return P3


def random_poly(rng, max_degree=4, max_coeff=2, origin_zero=True):
    """A random small polynomial; with origin_zero the constant term is 0."""
    terms = {}
    for _ in range(rng.randint(2, 6)):
        i = rng.randint(0, max_degree)
        j = rng.randint(0, max_degree - i)
        if origin_zero and i + j == 0:
            continue
        c = rng.randint(-max_coeff, max_coeff)
        if c:
            terms[(i, j)] = FieldElem.of(c, QQ)
    return MultiPoly(V2, QQ, terms)


def branch_order_sum(f, g, precision=32, ceiling=512):
    """Conjugacy-weighted order of g along every branch of f, or None when
    g vanishes identically on a branch or precision runs out."""
    while True:
        try:
            pairs = [(b, ord_along_branch(b, g))
                     for b in branches(f, ORIGIN, precision)]
        except InsufficientPrecisionError:
            precision *= 2
            continue
        if all(isinstance(o, int) for _, o in pairs):
            return sum(b.conjugacy_size * o for b, o in pairs)
        if any(b.exact and o is ZERO_UP_TO_TRUNCATION for b, o in pairs):
            return None
        if precision >= ceiling:
            return None
        precision *= 2


def dual_oracle_sample(count, seed):
    """Yield (f, g, fulton, branch total) for reduced pairs with finite
    intersection; draws that need unreachable extensions are resampled."""
    rng = random.Random(seed)
    produced = 0
    while produced < count:
        f = random_poly(rng)
        g = random_poly(rng)
        if f.is_zero or g.is_zero:
            continue
        fulton = intersection_multiplicity(f, g, ORIGIN)
        if not fulton.is_finite or fulton.value == 0:
            continue
        fulton = fulton.value
        try:
            total = branch_order_sum(f, g)
        except (ExtensionRequiredError, NonReducedError):
            continue
        if total is None:
            continue
        yield f, g, fulton, total
        produced += 1


_DUAL_ORACLE_CACHE = {}


def dual_oracle_pairs(count=100, seed=20260822):
    """The sample above, materialized once per session."""
    key = (count, seed)
    if key not in _DUAL_ORACLE_CACHE:
        _DUAL_ORACLE_CACHE[key] = list(dual_oracle_sample(count, seed))
    return _DUAL_ORACLE_CACHE[key]
