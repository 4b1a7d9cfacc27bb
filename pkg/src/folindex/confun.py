"""Constructible functions on a plane germ and their index pairing.

Every function in scope is supported on the ambient surface germ, on
finitely many reduced curve germs through the basepoint, and on the
basepoint itself.  Such a function is stored by its coordinates in the
basis

    1[W]      the ambient germ (its Euler obstruction is 1),
    Eu[C]     the Euler obstruction of a tracked curve germ C,
    1[0]      the basepoint.

Two facts make this basis convenient.  A curve germ of multiplicity m
satisfies 1_C = Eu_C - (m - 1) 1_0, so indicator functions convert to
the stored basis by an integer shift of the point coefficient.  And the
characteristic cycle of the Euler obstruction of a subvariety is plus or
minus a single conormal cycle, so :func:`cc` is sign bookkeeping.

Pairing a function with a vector field germ vanishing at the basepoint
evaluates the ambient coefficient against the Poincare-Hopf index, each
curve coefficient against the branchwise Nash-lift order sum over that
curve, and the point coefficient against 1.  The local index formulas
realized elsewhere (Schwartz, GSV, logarithmic) are pairings of this
kind, which the test suite checks identity by identity.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .exactcore import NonReducedError, PreconditionError, squarefree_at, translate_to_origin
from .indices import _adaptive, euler_obstruction_field, ph_index
from .localmult import milnor_number

_ORIGIN = (0, 0)


@dataclass(frozen=True)
class CurveRecord:
    """One reduced curve germ tracked by a constructible function."""

    key: str
    poly: object          # defining equation as given, ambient coordinates
    point: tuple
    mult: int
    mu: int
    branch_summary: tuple  # (parametrization order, conjugate count) per branch


def _make_record(f, point):
    if f.is_zero or f.is_constant:
        raise PreconditionError("a curve germ needs a nonconstant equation")
    if len(f.variables) != 2:
        raise PreconditionError("curve germs live in exactly two variables")
    point = tuple(point)
    fl = translate_to_origin(f, point)
    m = fl.order_at_origin()
    if m == 0:
        raise PreconditionError("curve does not pass through the basepoint")
    if not squarefree_at(f, point):
        raise NonReducedError("curve equation has a repeated factor through the basepoint")
    mu = milnor_number(fl, _ORIGIN)
    summary = _adaptive(
        fl, lambda bs: tuple((b.multiplicity, b.conjugacy_size) for b in bs))
    return CurveRecord(key=f.to_str(), poly=f, point=point,
                       mult=m, mu=mu, branch_summary=summary)


def _merged_registry(r1, r2):
    out = dict(r1)
    for k, rec in r2.items():
        if k in out and out[k] != rec:
            raise PreconditionError(f"conflicting curve records under the key {k!r}")
        out[k] = rec
    return out


def _format_term(coeff, label):
    if coeff == 1:
        return "+ " + label
    if coeff == -1:
        return "- " + label
    sign = "-" if coeff < 0 else "+"
    return f"{sign} {abs(coeff)}*{label}"


@dataclass(frozen=True)
class ConstructibleFn:
    """Integer combination  a*1[W] + sum_i c_i*Eu[C_i] + p*1[0].

    ``curve_terms`` holds (curve key, coefficient) pairs sorted by key
    with every coefficient nonzero; ``registry`` maps each key to its
    :class:`CurveRecord`.  Values are immutable; arithmetic returns new
    functions with merged registries.
    """

    ambient_coeff: int
    curve_terms: tuple
    point_coeff: int
    registry: dict = field(default_factory=dict)

    @classmethod
    def whole_space(cls):
        return cls(1, (), 0, {})

    @classmethod
    def point_mass(cls):
        return cls(0, (), 1, {})

    # -- algebra -------------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, ConstructibleFn):
            return NotImplemented
        terms = dict(self.curve_terms)
        for k, c in other.curve_terms:
            terms[k] = terms.get(k, 0) + c
        registry = _merged_registry(self.registry, other.registry)
        return _canonical(self.ambient_coeff + other.ambient_coeff, terms,
                          self.point_coeff + other.point_coeff, registry)

    def __sub__(self, other):
        if not isinstance(other, ConstructibleFn):
            return NotImplemented
        return self + (-other)

    def __mul__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        terms = {k: n * c for k, c in self.curve_terms}
        return _canonical(n * self.ambient_coeff, terms,
                          n * self.point_coeff, dict(self.registry))

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    # -- evaluation (for tests and reports) ----------------------------------

    def value_at_origin(self):
        """Value at the basepoint, where Eu[C] takes the multiplicity of C."""
        curves = sum(c * self.registry[k].mult for k, c in self.curve_terms)
        return self.ambient_coeff + curves + self.point_coeff

    def value_at_smooth_point(self, key):
        """Value at a generic smooth point of the named curve."""
        if key not in self.registry:
            raise PreconditionError(f"no tracked curve under the key {key!r}")
        coeff = dict(self.curve_terms).get(key, 0)
        return self.ambient_coeff + coeff

    # -- basis conversion ----------------------------------------------------

    def indicator_coefficients(self):
        """Coordinates on (1_W, 1_C, 1_0) instead of (1_W, Eu_C, 1_0)."""
        shift = sum(c * (self.registry[k].mult - 1) for k, c in self.curve_terms)
        return (self.ambient_coeff, self.curve_terms, self.point_coeff + shift)

    @classmethod
    def from_indicator(cls, ambient, terms, point_coeff, registry):
        """Inverse of :meth:`indicator_coefficients` over the same registry."""
        terms = dict(terms)
        shift = sum(c * (registry[k].mult - 1) for k, c in terms.items())
        return _canonical(ambient, terms, point_coeff - shift, dict(registry))

    def __str__(self):
        parts = []
        if self.ambient_coeff:
            parts.append(_format_term(self.ambient_coeff, "1[W]"))
        for k, c in self.curve_terms:
            parts.append(_format_term(c, f"Eu[{k}]"))
        if self.point_coeff:
            parts.append(_format_term(self.point_coeff, "1[0]"))
        if not parts:
            return "0"
        out = " ".join(parts)
        return out[2:] if out.startswith("+ ") else out[0] + out[2:]


def _canonical(ambient, terms, point_coeff, registry):
    kept = tuple(sorted((k, c) for k, c in terms.items() if c != 0))
    reg = {k: registry[k] for k, _ in kept}
    return ConstructibleFn(ambient, kept, point_coeff, reg)


@dataclass(frozen=True)
class LagrangianCycle:
    """Signed formal sum of conormal supports in the cotangent space."""

    terms: tuple  # (support label, integer multiplicity)


# -- constructors -----------------------------------------------------------

def indicator_curve(f, point=None):
    """Indicator function of the reduced curve V(f) in the stored basis.

    The result is Eu[C] - (m - 1)*1[0] for the multiplicity m of the germ
    at the point, so it evaluates to 1 on the curve and 0 elsewhere.  A
    reducible equation is kept as a single record.
    """
    rec = _make_record(f, _ORIGIN if point is None else point)
    return ConstructibleFn(0, ((rec.key, 1),), -(rec.mult - 1), {rec.key: rec})


def nearby_cycles(f, point=None):
    """Euler characteristic function of the local Milnor fibers of f.

    Stored as Eu[C] - (m - 1 + mu)*1[0]; the value at the basepoint is
    1 - mu and the value at a nearby curve point is 1.  Requires f
    reduced with an isolated singularity.
    """
    rec = _make_record(f, _ORIGIN if point is None else point)
    return ConstructibleFn(0, ((rec.key, 1),),
                           -(rec.mult - 1 + rec.mu), {rec.key: rec})


def vanishing_cycles(f, point=None):
    """Difference of the nearby cycles and the curve indicator: -mu*1[0]."""
    rec = _make_record(f, _ORIGIN if point is None else point)
    return ConstructibleFn(0, (), -rec.mu, {})


def complement_of_divisor(curves, point=None):
    """Indicator of the complement of a weighted divisor, in the basis.

    ``curves`` lists (equation, weight) with positive integer weights and
    equations that are irreducible germs at the point, pairwise distinct.
    Writing B = sum a_i C_i and deg B = sum a_i, the result is

        1[W] - sum a_i 1[C_i] + (deg B - 1) 1[0]

    expanded over the Euler-obstruction basis.  The empty divisor is
    rejected: the defining shift deg B - 1 has no sensible value there.
    """
    point = _ORIGIN if point is None else point
    if not curves:
        raise PreconditionError("the divisor must have at least one component")
    terms = {}
    registry = {}
    degree = 0
    point_coeff = 0
    for f, a in curves:
        if not isinstance(a, int) or a < 1:
            raise PreconditionError("component weights must be positive integers")
        rec = _make_record(f, point)
        if rec.key in registry:
            raise PreconditionError("divisor components must be pairwise distinct")
        if len(rec.branch_summary) != 1 or rec.branch_summary[0][1] != 1:
            raise PreconditionError("a divisor component is not an irreducible germ")
        registry[rec.key] = rec
        terms[rec.key] = -a
        point_coeff += a * (rec.mult - 1)
        degree += a
    point_coeff += degree - 1
    return _canonical(1, terms, point_coeff, registry)


# -- pairing and characteristic cycles --------------------------------------

def index_pairing(gamma, v):
    """Pair a constructible function with a vector field germ at its zero.

    The ambient coefficient weighs the Poincare-Hopf index of the field,
    each curve coefficient the Nash-lift order sum over that curve, and
    the point coefficient a transversal count of 1.  Tangency or
    isolated-zero failures from those computations propagate unchanged.
    Terms with coefficient zero are skipped, so the pairing against a
    pure point mass needs nothing from the field.
    """
    total = gamma.point_coeff
    for key, c in gamma.curve_terms:
        rec = gamma.registry[key]
        if rec.point != tuple(v.basepoint):
            raise PreconditionError("curve and field live at different basepoints")
        total += c * euler_obstruction_field(v, rec.poly).value
    if gamma.ambient_coeff:
        total += gamma.ambient_coeff * ph_index(v).value
    return total


def cc(gamma):
    """Characteristic cycle of a constructible function.

    Each basis support contributes its coefficient times (-1)^dim, so the
    ambient and point supports keep their signs and curve supports flip.
    Supports with coefficient zero are omitted.
    """
    terms = []
    if gamma.ambient_coeff:
        terms.append(("zero-section", gamma.ambient_coeff))
    for key, c in gamma.curve_terms:
        terms.append((f"conormal[{key}]", -c))
    if gamma.point_coeff:
        terms.append(("point-fiber", gamma.point_coeff))
    return LagrangianCycle(tuple(terms))
