"""Local indices of a vector field germ at a plane singular point.

Every operation takes the germ together with the curves it interacts
with in one shared ambient coordinate system; the basepoint recorded on
the germ is where everything is localized, and all colength and branch
computations happen after translating that point to the origin.

The computable surface is: the Poincare-Hopf index as a colength, the
Euler obstruction pairing of the field with an invariant curve through
branch lifts, the GSV and Schwartz indices derived from it, the
logarithmic index with respect to a free-divisor basis, and the derived
multiplicity / polar / chi quantities.  n = 2 is baked into every sign;
the reports carry their ingredients so each value can be recomputed from
its defining formula.
"""

import os
from dataclasses import dataclass
from fractions import Fraction

from .exactcore import (
    MissingInputError,
    MultiPoly,
    NonIsolatedError,
    NonTangentError,
    NotLogarithmicError,
    ParseError,
    PreconditionError,
    ResourceCapError,
    SaitoCheckError,
    translate_to_origin,
    try_divide,
)
from .localmult import INFINITE, curve_multiplicity, intersection_multiplicity, milnor_number
from .puiseux import InsufficientPrecisionError, branches, nash_lift_order

_ORIGIN = (Fraction(0), Fraction(0))
_DEFAULT_CAP = 512


class VectorFieldGerm:
    """A polynomial vector field germ a*d/dx + b*d/dy at a basepoint.

    Components are stored translated to the origin; ``basepoint`` records
    where the germ came from so curves given in ambient coordinates can be
    localized consistently.
    """

    def __init__(self, a, b, basepoint=None):
        a, b = a._pair(b)
        if len(a.variables) != 2:
            raise PreconditionError("vector field germs need exactly two variables")
        if basepoint is None:
            basepoint = _ORIGIN
        basepoint = tuple(basepoint)
        al = translate_to_origin(a, basepoint)
        bl = translate_to_origin(b, basepoint)
        al, bl = al._pair(bl)
        self.components = (al, bl)
        self.basepoint = basepoint
        self.variables = al.variables
        self.descriptor = al.descriptor

    def __repr__(self):
        a, b = self.components
        return f"VectorFieldGerm({a.to_str()}, {b.to_str()}; basepoint={self.basepoint})"


@dataclass(frozen=True)
class LogBasis:
    """A free basis (chi1, chi2) of the fields tangent to V(divisor)."""

    chi1: VectorFieldGerm
    chi2: VectorFieldGerm
    divisor: MultiPoly


@dataclass(frozen=True)
class IndexReport:
    kind: str
    value: int
    ingredients: dict


def _precision_cap():
    raw = os.environ.get("FOLINDEX_PRECISION_CAP", str(_DEFAULT_CAP))
    try:
        cap = int(raw)
    except ValueError:
        raise ParseError(f"FOLINDEX_PRECISION_CAP must be an integer, got {raw!r}")
    if cap < 2:
        raise ParseError("FOLINDEX_PRECISION_CAP must be at least 2")
    return cap


def _localize_curve(v, f):
    if f.is_zero:
        raise PreconditionError("the zero polynomial does not define a curve")
    if tuple(f.variables) != tuple(v.variables):
        a = v.components[0]
        f, _ = f._pair(a)
    return translate_to_origin(f, v.basepoint)


def _vanishes_at_origin(poly):
    zero = (0,) * len(poly.variables)
    return zero not in poly.terms


def ph_index(v):
    """Colength of the component ideal: the Poincare-Hopf index at the point."""
    a, b = v.components
    if not (_vanishes_at_origin(a) and _vanishes_at_origin(b)):
        raise PreconditionError("vector field does not vanish at the basepoint")
    im = intersection_multiplicity(a, b, _ORIGIN)
    if im.value is INFINITE:
        raise NonIsolatedError("vector field has a non-isolated zero")
    return IndexReport("PH", im.value, {"colength": im.value})


def _derivation_applied(v, f_local):
    a, b = v.components
    fl, a = f_local._pair(a)
    fl, b = fl._pair(b)
    x, y = fl.variables
    return a * fl.diff(x) + b * fl.diff(y), fl


def is_logarithmic(v, f):
    """True when the field preserves the ideal of the curve: f | v(f)."""
    fl = _localize_curve(v, f)
    vf, fl = _derivation_applied(v, fl)
    return try_divide(vf, fl) is not None


def _adaptive(f_local, work):
    """Run ``work(branches)`` with doubling precision until it certifies."""
    cap = _precision_cap()
    prec = min(max(8, 2 * max(f_local.total_degree(), 1)), cap)
    while True:
        try:
            return work(branches(f_local, _ORIGIN, prec))
        except InsufficientPrecisionError:
            if prec >= cap:
                raise ResourceCapError(
                    f"precision cap {cap} reached before the computation was "
                    "certified; the field may vanish along a branch "
                    "(set FOLINDEX_PRECISION_CAP to raise the cap)")
            prec = min(2 * prec, cap)


def _certified_branch_orders(v, f_local):
    """(branch, lift order) pairs at adaptively chosen precision."""
    a, b = v.components
    return _adaptive(f_local, lambda bs: [(br, nash_lift_order(br, (a, b))) for br in bs])


def euler_obstruction_field(v, f):
    """Sum of Nash lift orders of the field over the branches of V(f).

    Requires the field tangent to V(f) at the basepoint; the divisibility
    test f | v(f) and the branchwise tangency test must agree, and either
    failing is an error.
    """
    fl = _localize_curve(v, f)
    vf, fl = _derivation_applied(v, fl)
    if try_divide(vf, fl) is None:
        raise NonTangentError("field does not preserve the curve ideal: f does not divide v(f)")
    pairs = _certified_branch_orders(v, fl)
    orders = tuple(o for _, o in pairs)
    conj = tuple(br.conjugacy_size for br, _ in pairs)
    value = sum(o * c for o, c in zip(orders, conj))
    return IndexReport("EU_OBSTRUCTION", value, {
        "branch_orders": orders,
        "branch_conjugacy": conj,
    })


def gsv_index(v, f):
    """Euler obstruction corrected by Milnor number and multiplicity."""
    fl = _localize_curve(v, f)
    eu = euler_obstruction_field(v, f)
    mu = milnor_number(fl, _ORIGIN)
    m = curve_multiplicity(fl, _ORIGIN)
    value = eu.value + 1 - mu - m
    return IndexReport("GSV", value, {
        "euler_obstruction": eu.value,
        "milnor": mu,
        "multiplicity": m,
        "mu_sign": -1,  # (-1)^(n-1) with n = 2
    })


def schwartz_index(v, f):
    """GSV index shifted back by the Milnor number (n = 2 sign)."""
    g = gsv_index(v, f)
    mu = g.ingredients["milnor"]
    value = g.value + mu
    ing = dict(g.ingredients)
    ing["gsv"] = g.value
    return IndexReport("SCHWARTZ", value, ing)


def _det(p, q, r, s):
    return p * s - q * r


def saito_check(chi1, chi2, f):
    """Unit u with det(chi1, chi2) = u * f; structured failure otherwise."""
    if chi1.basepoint != chi2.basepoint:
        raise PreconditionError("basis fields live at different basepoints")
    for chi in (chi1, chi2):
        if not is_logarithmic(chi, f):
            raise NotLogarithmicError("a basis field does not preserve the curve ideal")
    fl = _localize_curve(chi1, f)
    a1, b1 = chi1.components
    a2, b2 = chi2.components
    det = _det(a1, a2, b1, b2)
    u = try_divide(det, fl)
    if u is None:
        raise SaitoCheckError("determinant of the basis is not a multiple of the divisor")
    if _vanishes_at_origin(u):
        raise SaitoCheckError("determinant unit factor vanishes at the basepoint")
    return u


def log_index(v, basis):
    """Colength of the coefficient ideal of the field in the Saito basis.

    The coefficients alpha with v = alpha1*chi1 + alpha2*chi2 are computed
    by Cramer's rule; the determinant is a unit times the divisor, and the
    unit is dropped since it does not change the ideal.
    """
    chi1, chi2, f = basis.chi1, basis.chi2, basis.divisor
    if v.basepoint != chi1.basepoint:
        raise PreconditionError("field and basis live at different basepoints")
    saito_check(chi1, chi2, f)
    fl = _localize_curve(v, f)
    a, b = v.components
    a1, b1 = chi1.components
    a2, b2 = chi2.components
    if not (_vanishes_at_origin(a) and _vanishes_at_origin(b)):
        raise PreconditionError("vector field does not vanish at the basepoint")
    amb = intersection_multiplicity(a, b, _ORIGIN)
    if amb.value is INFINITE:
        raise NonIsolatedError("vector field has a non-isolated ambient zero")
    num1 = _det(a, a2, b, b2)
    num2 = _det(a1, a, b1, b)
    alpha1 = try_divide(num1, fl)
    alpha2 = try_divide(num2, fl)
    if alpha1 is None or alpha2 is None:
        raise NotLogarithmicError("field is not in the span of the basis")
    if alpha1.is_zero and alpha2.is_zero:
        raise PreconditionError("field is identically zero in the basis")
    if alpha1.is_zero or alpha2.is_zero:
        nz = alpha2 if alpha1.is_zero else alpha1
        if _vanishes_at_origin(nz):
            raise NonIsolatedError("coefficient ideal is not zero-dimensional")
        value = 0
    else:
        im = intersection_multiplicity(alpha1, alpha2, _ORIGIN)
        if im.value is INFINITE:
            raise NonIsolatedError("coefficient ideal is not zero-dimensional")
        value = im.value
    return IndexReport("LOG", value, {"alpha_colength": value, "ambient_ph": amb.value})


def _one_branch(bs):
    # a single orbit of conjugate branches is still reducible when the
    # orbit has more than one member
    return len(bs) == 1 and bs[0].conjugacy_size == 1


def mu_along_curve(v, curve):
    """Multiplicity of the field along an irreducible invariant curve germ."""
    fl = _localize_curve(v, curve)
    if not _adaptive(fl, _one_branch):
        raise PreconditionError("curve germ is not irreducible")
    s = schwartz_index(v, curve)
    ing = dict(s.ingredients)
    ing["schwartz"] = s.value
    return IndexReport("MU_ALONG_CURVE", s.value, ing)


def polar_intersection(v, curve):
    """Intersection of the polar object of the field with the curve germ."""
    eu = euler_obstruction_field(v, curve)
    ing = dict(eu.ingredients)
    ing["euler_obstruction"] = eu.value
    return IndexReport("POLAR", eu.value, ing)


def chi_number(v, weighted_curves):
    """Index pairing against the complement of a balanced invariant divisor.

    ``weighted_curves`` lists (curve, coefficient) with positive integer
    coefficients; each curve must be an irreducible invariant germ.
    """
    ph = ph_index(v)
    total = 0
    schs = []
    degree = 0
    for curve, coeff in weighted_curves:
        if not isinstance(coeff, int) or coeff < 1:
            raise PreconditionError("curve coefficients must be positive integers")
        if not is_logarithmic(v, curve):
            raise NotLogarithmicError("a listed curve is not invariant under the field")
        s = mu_along_curve(v, curve)
        schs.append(s.value)
        total += coeff * s.value
        degree += coeff
    value = ph.value - total + (degree - 1)
    return IndexReport("CHI_NUMBER", value, {
        "ph": ph.value,
        "schwartz_each": tuple(schs),
        "degree": degree,
    })


# -- automatic bases ---------------------------------------------------------

def weighted_homogeneous_weights(f):
    """Positive coprime weights making f weighted homogeneous, or None.

    Returns (w1, w2, total) with w1*i + w2*j = total on every term.
    """
    from math import gcd

    pts = sorted({(k[0], k[1]) for k in f.terms})
    if not pts:
        return None
    if len(pts) == 1:
        i, j = pts[0]
        return (1, 1, i + j)
    base = pts[0]
    diffs = [(i - base[0], j - base[1]) for i, j in pts[1:]]
    di, dj = diffs[0]
    # all difference vectors must be parallel, with slopes giving positive weights
    for ei, ej in diffs[1:]:
        if di * ej - dj * ei != 0:
            return None
    if di == 0 or dj == 0 or (di > 0) == (dj > 0):
        return None
    w1, w2 = abs(dj), abs(di)
    g = gcd(w1, w2)
    w1, w2 = w1 // g, w2 // g
    total = w1 * base[0] + w2 * base[1]
    for i, j in pts:
        if w1 * i + w2 * j != total:
            return None
    return (w1, w2, total)


def auto_saito_basis(f, point=None):
    """A Saito basis for V(f) at the point, for the shapes we can write down.

    Smooth points get the Hamiltonian field paired with a multiple of the
    curve equation; weighted-homogeneous germs get the Euler and
    Hamiltonian fields.  Anything else must be supplied by the caller.
    The basis fields are germs at the point, in ambient coordinates.
    """
    if point is None:
        point = _ORIGIN
    point = tuple(point)
    if f.is_zero:
        raise PreconditionError("the zero polynomial does not define a curve")
    fl = translate_to_origin(f, point)
    if not _vanishes_at_origin(fl):
        raise PreconditionError("point is not on the curve")
    x, y = f.variables
    fx = f.diff(x)
    fy = f.diff(y)
    hamiltonian = VectorFieldGerm(fy, -fx, point)
    zero = MultiPoly.zero(f.variables, f.descriptor)
    if not _vanishes_at_origin(translate_to_origin(fy, point)):
        return LogBasis(hamiltonian, VectorFieldGerm(zero, f, point), f)
    if not _vanishes_at_origin(translate_to_origin(fx, point)):
        return LogBasis(hamiltonian, VectorFieldGerm(f, zero, point), f)
    w = weighted_homogeneous_weights(fl)
    if w is not None:
        w1, w2, _ = w
        # the Euler field for the local weights, written in ambient coordinates
        ex = (MultiPoly.variable(x, f.variables, f.descriptor)
              - MultiPoly.constant(point[0], f.variables, f.descriptor)) * w1
        ey = (MultiPoly.variable(y, f.variables, f.descriptor)
              - MultiPoly.constant(point[1], f.variables, f.descriptor)) * w2
        euler = VectorFieldGerm(ex, ey, point)
        return LogBasis(euler, hamiltonian, f)
    raise MissingInputError(
        "no automatic basis for this germ; supply chi1 and chi2 explicitly")
