"""Local intersection numbers of plane curves, Milnor numbers, multiplicities.

The central routine is an exact recursion on the defining equations that
evaluates the colength of the ideal (f, g) in the local ring at a point.
It is field-agnostic and independent of the series-expansion machinery,
which lets the two act as oracles for each other in the test suite.
"""

from dataclasses import dataclass

from .exactcore import (
    MultiPoly,
    NonIsolatedError,
    PreconditionError,
    ResourceCapError,
    translate_to_origin,
    gcd_bivariate,
    divexact,
    squarefree_at,
)


class _Infinite:
    """Sentinel for an unbounded colength (curves sharing a component)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITE"

    def __eq__(self, other):
        return isinstance(other, _Infinite)

    def __hash__(self):
        return hash("_Infinite")


INFINITE = _Infinite()

_DEPTH_CAP = 10 ** 4


@dataclass(frozen=True)
class LocalMultiplicity:
    """Colength of (f, g) at a point, with the algorithm that produced it."""

    value: object  # int >= 0, or INFINITE
    method: str    # "fulton-recursive" | "puiseux-oracle"

    @property
    def is_finite(self):
        return self.value is not INFINITE


def _restriction(f, main, aux):
    """f with ``aux`` set to 0, as a dict exponent -> FieldElem in ``main``."""
    im = f.variables.index(main)
    ia = f.variables.index(aux)
    out = {}
    for k, c in f.terms.items():
        if k[ia] == 0:
            out[k[im]] = c
    return out


def _ord(univ):
    return min(univ) if univ else None


def _lead(univ):
    d = max(univ)
    return d, univ[d]


def _origin_value(f):
    return f.terms.get((0,) * len(f.variables))


def _fulton(f, g, x, y, depth):
    if depth > _DEPTH_CAP:
        raise ResourceCapError(
            f"intersection-multiplicity recursion exceeded {_DEPTH_CAP} steps")
    if _origin_value(f) is not None or _origin_value(g) is not None:
        return 0
    f0 = _restriction(f, x, y)
    g0 = _restriction(g, x, y)
    if not f0 and not g0:
        # both divisible by y: a common component through the origin, which
        # the up-front gcd test already excluded
        raise PreconditionError("internal: common factor survived the gcd test")
    if not f0:
        f, g = g, f
        f0, g0 = g0, f0
    if not g0:
        # g = y * q, and I(y, f) is the x-order of f on the y = 0 axis
        q = divexact(g, MultiPoly.variable(y, f.variables, f.descriptor))
        return _ord(f0) + _fulton(f, q, x, y, depth + 1)
    r, fr = _lead(f0)
    s, gs = _lead(g0)
    if r > s:
        f, g = g, f
        (r, fr), (s, gs) = (s, gs), (r, fr)
    # kill the top x-coefficient of g's restriction; scaling by the nonzero
    # constant fr and adding a multiple of f both leave the colength fixed
    shift = MultiPoly.variable(x, f.variables, f.descriptor) ** (s - r)
    g2 = g * fr - f * shift * gs
    return _fulton(f, g2, x, y, depth + 1)


def intersection_multiplicity(f, g, p):
    """Colength of (f, g) in the local ring at p; INFINITE on shared components.

    Symmetric in f and g.  The value is 0 exactly when one of the curves
    misses p, and INFINITE exactly when gcd(f, g) vanishes at p.
    """
    if f.is_zero or g.is_zero:
        raise PreconditionError("intersection multiplicity of the zero polynomial")
    f, g = f._pair(g)
    if len(f.variables) != 2:
        raise PreconditionError("intersection multiplicity needs two variables")
    ft = translate_to_origin(f, p)
    gt = translate_to_origin(g, p)
    ft, gt = ft._pair(gt)
    common = gcd_bivariate(ft, gt)
    if not common.is_constant and _origin_value(common) is None:
        return LocalMultiplicity(INFINITE, "fulton-recursive")
    x, y = ft.variables
    value = _fulton(ft, gt, x, y, 0)
    return LocalMultiplicity(value, "fulton-recursive")


def milnor_number(f, p):
    """Colength of the Jacobian ideal of f at the point p on V(f).

    Requires f reduced at p and 0 at p; 0 answers characterize smooth
    points.  A non-isolated singularity is a structured error.
    """
    value = f.evaluate({v: c for v, c in zip(f.variables, p)})
    if not value.is_zero:
        raise PreconditionError("point is not on the curve")
    if not squarefree_at(f, p):
        raise PreconditionError("curve is not reduced at the point")
    x, y = f.variables
    fx, fy = f.diff(x), f.diff(y)
    point = {v: c for v, c in zip(f.variables, p)}
    if (not fx.is_zero and not fx.evaluate(point).is_zero) or \
            (not fy.is_zero and not fy.evaluate(point).is_zero):
        return 0
    im = intersection_multiplicity(fx, fy, p)
    if not im.is_finite:
        raise NonIsolatedError("partial derivatives share a component through the point")
    return im.value


def curve_multiplicity(f, p):
    """Order of vanishing of f at p; 0 when p is off the curve."""
    if f.is_zero:
        raise PreconditionError("multiplicity of the zero polynomial")
    ft = translate_to_origin(f, p)
    return ft.order_at_origin()
