"""Exact scalar, polynomial and power-series arithmetic.

Scalars are arbitrary-precision rationals or elements of a simple extension
field Q(g) presented by a monic minimal polynomial; there is no floating
point anywhere in the package.  On top of the scalars this module provides
sparse multivariate polynomials, truncated univariate power series, the
elimination kernels (resultants, gcds, exact division) and the coordinate
changes (translation, homogenization) that every other module consumes, plus
the text grammar used by the CLI.

Extension fields are deliberately shallow: a computation that would need a
second extension on top of an existing one fails with ExtensionRequiredError
carrying the offending univariate polynomial instead of silently flattening
a tower.
"""

from __future__ import annotations

import string
from dataclasses import dataclass
from fractions import Fraction
from math import lcm


# ---------------------------------------------------------------------------
# Error taxonomy.  The CLI maps these onto its exit codes, so the split
# between "bad input text", "mathematical precondition violated" and
# "resource cap hit" is part of the public contract.
# ---------------------------------------------------------------------------

class FolindexError(Exception):
    """Base class for all structured errors raised by this package."""


class ParseError(FolindexError):
    """Input text (polynomial grammar or problem file) could not be parsed."""


class DescriptorMismatchError(FolindexError):
    """Two values over different coefficient fields were combined."""


class PreconditionError(FolindexError):
    """A mathematical precondition of the requested operation is violated."""


class NonReducedError(PreconditionError):
    """A curve that must be reduced has a repeated factor through the point."""


class NonIsolatedError(PreconditionError):
    """A zero or singularity that must be isolated is not."""


class NonTangentError(PreconditionError):
    """A vector field that must be tangent to a curve is not."""


class NotLogarithmicError(PreconditionError):
    """A vector field is not logarithmic along the divisor (or not in the span)."""


class SaitoCheckError(PreconditionError):
    """A claimed basis of logarithmic fields fails the determinant criterion."""


class NotSaturatedError(PreconditionError):
    """Vector-field components share a nonconstant common factor."""


class MissingInputError(PreconditionError):
    """The problem file lacks data the requested computation needs."""


class ResourceCapError(FolindexError):
    """A configurable resource cap (recursion depth, series precision) was hit."""


class ExtensionRequiredError(PreconditionError):
    """An operation needs a field extension beyond a single simple extension.

    ``polynomial`` holds the offending univariate polynomial as a coefficient
    list (constant term first) over the field where splitting failed.
    """

    def __init__(self, message, polynomial=None, descriptor=None):
        super().__init__(message)
        self.polynomial = polynomial
        self.descriptor = descriptor


# ---------------------------------------------------------------------------
# Rational univariate helpers (coefficient lists, constant term first).
# These run below FieldElem: plain Fraction arithmetic.
# ---------------------------------------------------------------------------

def _strip(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _poly_mul_q(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _strip(out)


def _poly_rem_q(a, m):
    # remainder of a modulo monic m
    a = list(a)
    dm = len(m) - 1
    while len(a) - 1 >= dm:
        c = a[-1]
        if c:
            shift = len(a) - 1 - dm
            for i in range(dm):
                a[shift + i] -= c * m[i]
        a.pop()
    return _strip(a)


def _poly_sub_q(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return _strip([x - y for x, y in zip(a, b)])


def _poly_divmod_q(a, b):
    # b need not be monic; field division
    a, b = _strip(a), _strip(b)
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    db, lb = len(b) - 1, b[-1]
    q = [Fraction(0)] * max(0, len(a) - db)
    r = list(a)
    while r and len(r) - 1 >= db:
        c = r[-1] / lb
        shift = len(r) - 1 - db
        q[shift] = c
        for i in range(db + 1):
            r[shift + i] -= c * b[i]
        r = _strip(r)
    return _strip(q), r


def _poly_gcd_q(a, b):
    a, b = _strip(a), _strip(b)
    while b:
        _, r = _poly_divmod_q(a, b)
        a, b = b, r
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    return a


def _poly_ext_gcd_q(a, m):
    # returns (g, s) with s*a = g modulo m
    r0, r1 = _strip(list(m)), _strip(list(a))
    s0, s1 = [], [Fraction(1)]
    while r1:
        q, r = _poly_divmod_q(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub_q(s0, _poly_mul_q(q, s1))
    return r0, s0


def _has_rational_root(int_coeffs):
    # rational root test on an integer coefficient list, constant first
    coeffs = _strip(int_coeffs)
    if not coeffs:
        return True
    # pull out x = 0 roots
    k = 0
    while coeffs[k] == 0:
        k += 1
    if k > 0:
        return True
    a0, an = abs(coeffs[0]), abs(coeffs[-1])

    def divisors(n):
        out = []
        d = 1
        while d * d <= n:
            if n % d == 0:
                out.append(d)
                out.append(n // d)
            d += 1
        return out

    for p in divisors(a0):
        for q in divisors(an):
            for sgn in (1, -1):
                x = Fraction(sgn * p, q)
                acc = Fraction(0)
                for c in reversed(coeffs):
                    acc = acc * x + c
                if acc == 0:
                    return True
    return False


# ---------------------------------------------------------------------------
# Field descriptors and field elements
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FieldDescriptor:
    """The coefficient field: the rationals, or one simple extension of them.

    ``minimal_polynomial`` is a monic coefficient tuple (constant term first)
    of degree >= 2, present only for extensions.  Irreducibility is the
    caller's assertion; construction runs only the cheap necessary checks
    (square-freeness and absence of a rational root).
    """

    kind: str
    generator_name: str | None = None
    minimal_polynomial: tuple | None = None

    @staticmethod
    def rationals():
        return _QQ

    @staticmethod
    def simple_extension(generator_name, minpoly_coeffs):
        coeffs = tuple(Fraction(c) for c in minpoly_coeffs)
        if len(coeffs) < 3:
            raise PreconditionError("minimal polynomial must have degree >= 2")
        if coeffs[-1] != 1:
            raise PreconditionError("minimal polynomial must be monic")
        deriv = _strip([i * coeffs[i] for i in range(1, len(coeffs))])
        if len(_poly_gcd_q(list(coeffs), deriv)) != 1:
            raise PreconditionError("minimal polynomial is not square-free")
        den = lcm(*(c.denominator for c in coeffs))
        if _has_rational_root([int(c * den) for c in coeffs]):
            raise PreconditionError("minimal polynomial has a rational root")
        return FieldDescriptor("simple-extension", generator_name, coeffs)

    @property
    def is_extension(self):
        return self.kind == "simple-extension"

    @property
    def degree(self):
        return 1 if not self.is_extension else len(self.minimal_polynomial) - 1

    def __repr__(self):
        if not self.is_extension:
            return "QQ"
        return f"QQ({self.generator_name})"


_QQ = FieldDescriptor("rationals")
QQ = _QQ


class FieldElem:
    """An element of the field named by a FieldDescriptor.

    Stored as a tuple of rationals (coordinates in the power basis of the
    generator), reduced modulo the minimal polynomial, trailing zeros
    stripped; the zero element is the empty tuple.
    """

    __slots__ = ("descriptor", "coefficients")

    def __init__(self, descriptor, coefficients):
        coeffs = [Fraction(c) for c in coefficients]
        if descriptor.is_extension and len(coeffs) >= len(descriptor.minimal_polynomial):
            coeffs = _poly_rem_q(coeffs, list(descriptor.minimal_polynomial))
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        if not descriptor.is_extension and len(coeffs) > 1:
            raise DescriptorMismatchError("rational element with generator coordinates")
        object.__setattr__(self, "descriptor", descriptor)
        object.__setattr__(self, "coefficients", tuple(coeffs))

    def __setattr__(self, *a):
        raise AttributeError("FieldElem is immutable")

    @staticmethod
    def of(value, descriptor=QQ):
        if isinstance(value, FieldElem):
            return value
        return FieldElem(descriptor, [Fraction(value)])

    @staticmethod
    def generator(descriptor):
        if not descriptor.is_extension:
            raise DescriptorMismatchError("the rationals have no generator")
        return FieldElem(descriptor, [0, 1])

    @property
    def is_zero(self):
        return not self.coefficients

    @property
    def is_rational(self):
        return len(self.coefficients) <= 1

    def as_fraction(self):
        if not self.is_rational:
            raise DescriptorMismatchError("element is not rational")
        return self.coefficients[0] if self.coefficients else Fraction(0)

    def lift(self, descriptor):
        """Re-express this element in ``descriptor`` (identity, or Q into Q(g))."""
        if descriptor == self.descriptor:
            return self
        if not self.descriptor.is_extension:
            return FieldElem(descriptor, list(self.coefficients))
        raise DescriptorMismatchError(
            f"cannot move element of {self.descriptor!r} into {descriptor!r}")

    def _pair(self, other):
        other = FieldElem.of(other, self.descriptor) if not isinstance(other, FieldElem) else other
        if other.descriptor != self.descriptor:
            if not other.descriptor.is_extension:
                other = other.lift(self.descriptor)
            elif not self.descriptor.is_extension:
                return self.lift(other.descriptor)._pair(other)
            else:
                raise DescriptorMismatchError("elements of two different extensions")
        return (self, other)

    def __add__(self, other):
        a, b = self._pair(other)
        n = max(len(a.coefficients), len(b.coefficients))
        ca = list(a.coefficients) + [Fraction(0)] * (n - len(a.coefficients))
        cb = list(b.coefficients) + [Fraction(0)] * (n - len(b.coefficients))
        return FieldElem(a.descriptor, [x + y for x, y in zip(ca, cb)])

    __radd__ = __add__

    def __neg__(self):
        return FieldElem(self.descriptor, [-c for c in self.coefficients])

    def __sub__(self, other):
        return self + (-other if isinstance(other, FieldElem) else FieldElem.of(-Fraction(other), self.descriptor))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = self._pair(other)
        return FieldElem(a.descriptor, _poly_mul_q(list(a.coefficients), list(b.coefficients)))

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero:
            raise ZeroDivisionError("inverse of zero field element")
        if self.is_rational:
            return FieldElem(self.descriptor, [1 / self.coefficients[0]])
        g, s = _poly_ext_gcd_q(list(self.coefficients), list(self.descriptor.minimal_polynomial))
        # the minimal polynomial is irreducible, so the gcd is a nonzero constant
        if len(g) != 1:
            raise PreconditionError("minimal polynomial is reducible: gcd with element nontrivial")
        inv = [c / g[0] for c in s]
        return FieldElem(self.descriptor, inv)

    def __truediv__(self, other):
        a, b = self._pair(other)
        return a * b.inverse()

    def __rtruediv__(self, other):
        return FieldElem.of(other, self.descriptor) / self

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = FieldElem.of(1, self.descriptor)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational and self.as_fraction() == other
        if not isinstance(other, FieldElem):
            return NotImplemented
        a, b = self._pair(other)
        return a.coefficients == b.coefficients

    def __hash__(self):
        if self.is_rational:
            return hash(self.as_fraction())
        return hash((self.descriptor, self.coefficients))

    def __repr__(self):
        return self.to_str()

    def to_str(self):
        if self.is_zero:
            return "0"
        if self.is_rational:
            return str(self.coefficients[0])
        name = self.descriptor.generator_name
        parts = []
        for i, c in enumerate(self.coefficients):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                mono = name if i == 1 else f"{name}^{i}"
                if c == 1:
                    parts.append(mono)
                elif c == -1:
                    parts.append(f"-{mono}")
                else:
                    parts.append(f"{c}*{mono}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out


# ---------------------------------------------------------------------------
# Sparse multivariate polynomials
# ---------------------------------------------------------------------------

class MultiPoly:
    """A sparse polynomial: a map from exponent vectors to nonzero scalars.

    Immutable; ``variables`` fixes both the arity and the display order.
    Monomials are ordered graded-lexicographically in the declared variable
    order, ties broken lexicographically, for printing and leading-term work.
    """

    __slots__ = ("variables", "descriptor", "terms")

    def __init__(self, variables, descriptor, terms):
        clean = {}
        nv = len(variables)
        for exps, c in terms.items():
            c = c if isinstance(c, FieldElem) else FieldElem.of(c, descriptor)
            if c.descriptor != descriptor:
                c = c.lift(descriptor)
            if len(exps) != nv:
                raise ParseError("exponent vector arity mismatch")
            if not c.is_zero:
                clean[tuple(int(e) for e in exps)] = c
        object.__setattr__(self, "variables", tuple(variables))
        object.__setattr__(self, "descriptor", descriptor)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *a):
        raise AttributeError("MultiPoly is immutable")

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero(variables, descriptor=QQ):
        return MultiPoly(variables, descriptor, {})

    @staticmethod
    def constant(value, variables, descriptor=QQ):
        c = FieldElem.of(value, descriptor) if not isinstance(value, FieldElem) else value
        return MultiPoly(variables, c.descriptor if descriptor == QQ and c.descriptor != QQ else descriptor,
                         {tuple([0] * len(variables)): c})

    @staticmethod
    def variable(name, variables, descriptor=QQ):
        if name not in variables:
            raise ParseError(f"unknown variable {name!r}")
        exps = tuple(1 if v == name else 0 for v in variables)
        return MultiPoly(variables, descriptor, {exps: FieldElem.of(1, descriptor)})

    # -- basic queries ------------------------------------------------------

    @property
    def is_zero(self):
        return not self.terms

    @property
    def is_constant(self):
        return all(all(e == 0 for e in k) for k in self.terms)

    def constant_value(self):
        if not self.is_constant:
            raise PreconditionError("polynomial is not constant")
        zero = tuple([0] * len(self.variables))
        return self.terms.get(zero, FieldElem.of(0, self.descriptor))

    def total_degree(self):
        """Total degree; -1 for the zero polynomial."""
        if self.is_zero:
            return -1
        return max(sum(k) for k in self.terms)

    def degree_in(self, var):
        if self.is_zero:
            return -1
        i = self.variables.index(var)
        return max(k[i] for k in self.terms)

    def order_at_origin(self):
        """Smallest total degree of a term; None for the zero polynomial."""
        if self.is_zero:
            return None
        return min(sum(k) for k in self.terms)

    def monomials_sorted(self):
        return sorted(self.terms, key=lambda k: (sum(k), k), reverse=True)

    def leading(self):
        """(exponents, coefficient) of the graded-lex leading term."""
        k = self.monomials_sorted()[0]
        return k, self.terms[k]

    def homogeneous_part(self, d):
        return MultiPoly(self.variables, self.descriptor,
                         {k: c for k, c in self.terms.items() if sum(k) == d})

    def lift(self, descriptor):
        if descriptor == self.descriptor:
            return self
        return MultiPoly(self.variables, descriptor,
                         {k: c.lift(descriptor) for k, c in self.terms.items()})

    # -- arithmetic ---------------------------------------------------------

    def _pair(self, other):
        if isinstance(other, (int, Fraction, FieldElem)):
            other = MultiPoly.constant(other if isinstance(other, FieldElem) else FieldElem.of(other, self.descriptor),
                                       self.variables, self.descriptor)
        if not isinstance(other, MultiPoly):
            return None
        if other.variables != self.variables:
            raise DescriptorMismatchError("polynomials in different variable lists")
        if other.descriptor != self.descriptor:
            if not other.descriptor.is_extension:
                other = other.lift(self.descriptor)
            elif not self.descriptor.is_extension:
                return self.lift(other.descriptor)._pair(other)
            else:
                raise DescriptorMismatchError("polynomials over two different extensions")
        return (self, other)

    def __add__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        out = dict(a.terms)
        for k, c in b.terms.items():
            out[k] = out[k] + c if k in out else c
        return MultiPoly(a.variables, a.descriptor, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.variables, self.descriptor, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        out = {}
        for ka, ca in a.terms.items():
            for kb, cb in b.terms.items():
                k = tuple(x + y for x, y in zip(ka, kb))
                c = ca * cb
                out[k] = out[k] + c if k in out else c
        return MultiPoly(a.variables, a.descriptor, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise PreconditionError("negative polynomial power")
        out = MultiPoly.constant(1, self.variables, self.descriptor)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, FieldElem)):
            other = MultiPoly.constant(other, self.variables, self.descriptor)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        pair = self._pair(other)
        a, b = pair
        return a.terms == b.terms

    def __hash__(self):
        return hash((self.variables, self.descriptor, frozenset(self.terms.items())))

    # -- calculus and evaluation -------------------------------------------

    def diff(self, var):
        i = self.variables.index(var)
        out = {}
        for k, c in self.terms.items():
            if k[i] == 0:
                continue
            nk = list(k)
            nk[i] -= 1
            out[tuple(nk)] = c * k[i]
        return MultiPoly(self.variables, self.descriptor, out)

    def evaluate(self, values):
        """Value at a point; ``values`` maps each variable to a scalar."""
        desc = self.descriptor
        for v in self.variables:
            val = values[v]
            if isinstance(val, FieldElem) and val.descriptor.is_extension:
                desc = val.descriptor
        acc = FieldElem.of(0, desc)
        for k, c in self.terms.items():
            term = c.lift(desc) if c.descriptor != desc else c
            for v, e in zip(self.variables, k):
                if e:
                    val = values[v]
                    val = val if isinstance(val, FieldElem) else FieldElem.of(val, desc)
                    term = term * (val.lift(desc) if val.descriptor != desc else val) ** e
            acc = acc + term
        return acc

    # -- univariate views ---------------------------------------------------

    def coeffs_in(self, var):
        """Coefficient list of this polynomial viewed in ``var`` (constant first).

        Entries are polynomials in the same variable list with ``var``-degree 0.
        """
        i = self.variables.index(var)
        d = self.degree_in(var)
        if d < 0:
            return []
        buckets = [dict() for _ in range(d + 1)]
        for k, c in self.terms.items():
            nk = list(k)
            e = nk[i]
            nk[i] = 0
            buckets[e][tuple(nk)] = c
        return [MultiPoly(self.variables, self.descriptor, b) for b in buckets]

    @staticmethod
    def from_coeffs_in(coeffs, var, variables, descriptor):
        i = variables.index(var)
        terms = {}
        for e, p in enumerate(coeffs):
            for k, c in p.terms.items():
                nk = list(k)
                nk[i] = nk[i] + e
                terms[tuple(nk)] = terms[tuple(nk)] + c if tuple(nk) in terms else c
        return MultiPoly(variables, descriptor, terms)

    # -- printing -----------------------------------------------------------

    def to_str(self):
        if self.is_zero:
            return "0"
        parts = []
        for k in self.monomials_sorted():
            c = self.terms[k]
            mono = "*".join(
                (v if e == 1 else f"{v}^{e}")
                for v, e in zip(self.variables, k) if e)
            if not mono:
                parts.append(c.to_str() if c.is_rational else f"({c.to_str()})")
                continue
            if c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            elif c.is_rational:
                parts.append(f"{c.to_str()}*{mono}")
            else:
                parts.append(f"({c.to_str()})*{mono}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def __repr__(self):
        return self.to_str()


# ---------------------------------------------------------------------------
# Truncated power series in one variable
# ---------------------------------------------------------------------------

class PowerSeries:
    """A univariate power series truncated at order N.

    ``coefficients`` has length exactly N and covers t^0 .. t^(N-1); nothing
    is known about higher terms.  ``order`` is the index of the first nonzero
    coefficient, or None when the series is zero up to the truncation.
    """

    __slots__ = ("variable", "truncation_order", "coefficients", "descriptor")

    def __init__(self, variable, truncation_order, coefficients, descriptor=QQ):
        if truncation_order < 1:
            raise PreconditionError("truncation order must be >= 1")
        coeffs = [c if isinstance(c, FieldElem) else FieldElem.of(c, descriptor)
                  for c in coefficients]
        coeffs = coeffs[:truncation_order]
        coeffs += [FieldElem.of(0, descriptor)] * (truncation_order - len(coeffs))
        coeffs = [c.lift(descriptor) if c.descriptor != descriptor else c for c in coeffs]
        object.__setattr__(self, "variable", variable)
        object.__setattr__(self, "truncation_order", truncation_order)
        object.__setattr__(self, "coefficients", tuple(coeffs))
        object.__setattr__(self, "descriptor", descriptor)

    def __setattr__(self, *a):
        raise AttributeError("PowerSeries is immutable")

    @staticmethod
    def zero(variable, truncation_order, descriptor=QQ):
        return PowerSeries(variable, truncation_order, [], descriptor)

    @staticmethod
    def from_dict(variable, truncation_order, coeff_by_exp, descriptor=QQ):
        coeffs = [FieldElem.of(0, descriptor)] * truncation_order
        for e, c in coeff_by_exp.items():
            if 0 <= e < truncation_order:
                coeffs[e] = c if isinstance(c, FieldElem) else FieldElem.of(c, descriptor)
        return PowerSeries(variable, truncation_order, coeffs, descriptor)

    def order(self):
        for i, c in enumerate(self.coefficients):
            if not c.is_zero:
                return i
        return None

    @property
    def is_zero_up_to_truncation(self):
        return self.order() is None

    def coefficient(self, e):
        return self.coefficients[e]

    def lift(self, descriptor):
        if descriptor == self.descriptor:
            return self
        return PowerSeries(self.variable, self.truncation_order,
                           [c.lift(descriptor) for c in self.coefficients], descriptor)

    def _pair(self, other):
        if isinstance(other, (int, Fraction, FieldElem)):
            other = PowerSeries(self.variable, self.truncation_order,
                                [other], self.descriptor)
        if other.variable != self.variable:
            raise DescriptorMismatchError("series in different variables")
        if other.truncation_order != self.truncation_order:
            raise DescriptorMismatchError("series with different truncation orders")
        if other.descriptor != self.descriptor:
            if not other.descriptor.is_extension:
                other = other.lift(self.descriptor)
            elif not self.descriptor.is_extension:
                return self.lift(other.descriptor)._pair(other)
            else:
                raise DescriptorMismatchError("series over two different extensions")
        return (self, other)

    def __add__(self, other):
        a, b = self._pair(other)
        return PowerSeries(a.variable, a.truncation_order,
                           [x + y for x, y in zip(a.coefficients, b.coefficients)], a.descriptor)

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries(self.variable, self.truncation_order,
                           [-c for c in self.coefficients], self.descriptor)

    def __sub__(self, other):
        a, b = self._pair(other)
        return a + (-b)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, FieldElem)):
            c = other if isinstance(other, FieldElem) else FieldElem.of(other, self.descriptor)
            return PowerSeries(self.variable, self.truncation_order,
                               [x * c for x in self.coefficients], self.descriptor)
        a, b = self._pair(other)
        n = a.truncation_order
        out = [FieldElem.of(0, a.descriptor)] * n
        for i, ai in enumerate(a.coefficients):
            if ai.is_zero:
                continue
            for j in range(n - i):
                bj = b.coefficients[j]
                if not bj.is_zero:
                    out[i + j] = out[i + j] + ai * bj
        return PowerSeries(a.variable, n, out, a.descriptor)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, PowerSeries):
            return NotImplemented
        a, b = self._pair(other)
        return a.coefficients == b.coefficients

    def derivative(self):
        """Termwise derivative, truncated at order N-1."""
        if self.truncation_order == 1:
            raise PreconditionError("cannot differentiate a series truncated at order 1")
        coeffs = [self.coefficients[i] * i for i in range(1, self.truncation_order)]
        return PowerSeries(self.variable, self.truncation_order - 1, coeffs, self.descriptor)

    def truncate(self, n):
        return PowerSeries(self.variable, n, list(self.coefficients[:n]), self.descriptor)

    def __repr__(self):
        parts = []
        for e, c in enumerate(self.coefficients):
            if c.is_zero:
                continue
            mono = "1" if e == 0 else (self.variable if e == 1 else f"{self.variable}^{e}")
            cs = c.to_str() if c.is_rational else f"({c.to_str()})"
            parts.append(mono if cs == "1" and e > 0 else (f"{cs}*{mono}" if e > 0 else cs))
        body = " + ".join(parts) if parts else "0"
        return f"{body} + O({self.variable}^{self.truncation_order})"


# ---------------------------------------------------------------------------
# Substitution, translation, (de)homogenization
# ---------------------------------------------------------------------------

def substitute(poly, assignment):
    """Evaluate ``poly`` with every variable replaced per ``assignment``.

    All variables of ``poly`` must be assigned.  Targets are either all
    polynomials (over one shared variable list) or all power series (in one
    variable, one truncation order); constants may be given as scalars.
    The composite is exact, truncated at N when any target is a series.
    """
    for v in poly.variables:
        if v not in assignment:
            raise PreconditionError(f"variable {v!r} is not assigned")
    targets = {v: assignment[v] for v in poly.variables}
    series = [t for t in targets.values() if isinstance(t, PowerSeries)]
    if series:
        model = series[0]
        n, var = model.truncation_order, model.variable
        desc = model.descriptor
        for s in series:
            if s.truncation_order != n:
                raise DescriptorMismatchError("series targets with different truncation orders")
            if s.variable != var:
                raise DescriptorMismatchError("series targets in different variables")
            if s.descriptor.is_extension:
                desc = s.descriptor
        if poly.descriptor.is_extension:
            if desc.is_extension and desc != poly.descriptor:
                raise DescriptorMismatchError("polynomial and series over different extensions")
            desc = poly.descriptor
        fixed = {}
        for v, t in targets.items():
            if isinstance(t, PowerSeries):
                fixed[v] = t.lift(desc) if t.descriptor != desc else t
            elif isinstance(t, (int, Fraction, FieldElem)):
                fixed[v] = PowerSeries(var, n, [t], desc)
            elif isinstance(t, MultiPoly) and t.is_constant:
                fixed[v] = PowerSeries(var, n, [t.constant_value()], desc)
            else:
                raise DescriptorMismatchError("cannot mix series and nonconstant polynomial targets")
        powers = {}
        for v in poly.variables:
            d = poly.degree_in(v)
            pw = [PowerSeries(var, n, [1], desc)]
            for _ in range(max(d, 0)):
                pw.append(pw[-1] * fixed[v])
            powers[v] = pw
        acc = PowerSeries.zero(var, n, desc)
        for k, c in poly.terms.items():
            term = PowerSeries(var, n, [c.lift(desc) if c.descriptor != desc else c], desc)
            for v, e in zip(poly.variables, k):
                if e:
                    term = term * powers[v][e]
            acc = acc + term
        return acc

    # polynomial targets
    model = None
    for t in targets.values():
        if isinstance(t, MultiPoly):
            model = t
            break
    if model is None:
        raise PreconditionError("assignment contains no polynomial or series target")
    desc = model.descriptor
    for t in targets.values():
        if isinstance(t, MultiPoly) and t.descriptor.is_extension:
            desc = t.descriptor
        if isinstance(t, FieldElem) and t.descriptor.is_extension:
            desc = t.descriptor
    if poly.descriptor.is_extension:
        if desc.is_extension and desc != poly.descriptor:
            raise DescriptorMismatchError("polynomial and targets over different extensions")
        desc = poly.descriptor
    variables = model.variables
    fixed = {}
    for v, t in targets.items():
        if isinstance(t, MultiPoly):
            if t.variables != variables:
                raise DescriptorMismatchError("polynomial targets over different variable lists")
            fixed[v] = t.lift(desc) if t.descriptor != desc else t
        else:
            fixed[v] = MultiPoly.constant(t, variables, desc)
    powers = {}
    for v in poly.variables:
        d = poly.degree_in(v)
        pw = [MultiPoly.constant(1, variables, desc)]
        for _ in range(max(d, 0)):
            pw.append(pw[-1] * fixed[v])
        powers[v] = pw
    acc = MultiPoly.zero(variables, desc)
    for k, c in poly.terms.items():
        term = MultiPoly.constant(c.lift(desc) if c.descriptor != desc else c, variables, desc)
        for v, e in zip(poly.variables, k):
            if e:
                term = term * powers[v][e]
        acc = acc + term
    return acc


def translate_to_origin(poly, point):
    """The polynomial poly(x + p) in the same variables: p becomes the origin."""
    coords = [c if isinstance(c, FieldElem) else FieldElem.of(c) for c in point]
    if len(coords) != len(poly.variables):
        raise PreconditionError("point arity does not match the variable list")
    desc = poly.descriptor
    for c in coords:
        if c.descriptor.is_extension:
            if desc.is_extension and desc != c.descriptor:
                raise DescriptorMismatchError("point coordinates outside the polynomial's field")
            desc = c.descriptor
    lifted = poly.lift(desc) if poly.descriptor != desc else poly
    assignment = {}
    for v, c in zip(poly.variables, coords):
        assignment[v] = MultiPoly.variable(v, poly.variables, desc) + MultiPoly.constant(c.lift(desc) if c.descriptor != desc else c, poly.variables, desc)
    return substitute(lifted, assignment)


def homogenize(poly, new_var, degree):
    """Multiply each term by new_var^(degree - total degree of the term)."""
    d = poly.total_degree()
    if degree < d:
        raise PreconditionError("homogenization degree below the total degree")
    if new_var in poly.variables:
        raise PreconditionError(f"variable {new_var!r} already present")
    variables = poly.variables + (new_var,)
    terms = {}
    for k, c in poly.terms.items():
        terms[k + (degree - sum(k),)] = c
    return MultiPoly(variables, poly.descriptor, terms)


def dehomogenize(poly, var):
    """Set ``var`` to 1 and drop it from the variable list."""
    if var not in poly.variables:
        raise PreconditionError(f"variable {var!r} not present")
    i = poly.variables.index(var)
    variables = tuple(v for v in poly.variables if v != var)
    terms = {}
    for k, c in poly.terms.items():
        nk = tuple(e for j, e in enumerate(k) if j != i)
        terms[nk] = terms[nk] + c if nk in terms else c
    return MultiPoly(variables, poly.descriptor, terms)


# ---------------------------------------------------------------------------
# Exact division, gcd, resultant
# ---------------------------------------------------------------------------

def try_divide(f, g):
    """Exact quotient f/g, or None when g does not divide f."""
    pair = f._pair(g)
    f, g = pair
    if g.is_zero:
        raise ZeroDivisionError("division by the zero polynomial")
    if f.is_zero:
        return f
    gk, gc = g.leading()
    q_terms = {}
    r = f
    guard = 0
    while not r.is_zero:
        guard += 1
        if guard > 200000:
            raise ResourceCapError("division loop guard exceeded")
        rk, rc = r.leading()
        dk = tuple(a - b for a, b in zip(rk, gk))
        if any(d < 0 for d in dk):
            return None
        qc = rc / gc
        q_terms[dk] = qc
        r = r - MultiPoly(f.variables, f.descriptor, {dk: qc}) * g
    return MultiPoly(f.variables, f.descriptor, q_terms)


def divides(g, f):
    """True when g divides f exactly in the polynomial ring."""
    if g.is_zero:
        return f.is_zero
    return try_divide(f, g) is not None


def divexact(f, g):
    q = try_divide(f, g)
    if q is None:
        raise PreconditionError("inexact polynomial division")
    return q


def _univ_coeff_list(p, var):
    # FieldElem coefficient list of a polynomial that involves only `var`
    out = [FieldElem.of(0, p.descriptor)] * (p.degree_in(var) + 1 if not p.is_zero else 0)
    i = p.variables.index(var)
    for k, c in p.terms.items():
        for j, e in enumerate(k):
            if j != i and e:
                raise PreconditionError("polynomial is not univariate")
        if out:
            out[k[i]] = c
    return out


def _univ_from_list(coeffs, var, variables, descriptor):
    i = variables.index(var)
    terms = {}
    for e, c in enumerate(coeffs):
        k = [0] * len(variables)
        k[i] = e
        terms[tuple(k)] = c
    return MultiPoly(variables, descriptor, terms)


def gcd_univariate(f, g, var):
    """Monic gcd of two polynomials involving only ``var``."""
    a, b = _univ_coeff_list(f, var), _univ_coeff_list(g, var)

    def strip(c):
        while c and c[-1].is_zero:
            c.pop()
        return c

    a, b = strip(a), strip(b)
    while b:
        # remainder of a mod b
        db, lb = len(b) - 1, b[-1]
        r = list(a)
        while strip(r) and len(r) - 1 >= db:
            c = r[-1] / lb
            shift = len(r) - 1 - db
            for i in range(db + 1):
                r[shift + i] = r[shift + i] - c * b[i]
            r.pop()
        a, b = b, strip(r)
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    else:
        return MultiPoly.zero(f.variables, f.descriptor)
    return _univ_from_list(a, var, f.variables, f.descriptor)


def _pseudo_rem(f, g, var):
    # pseudo-remainder of f by g viewed in var
    cf, cg = f.coeffs_in(var), g.coeffs_in(var)
    df, dg = len(cf) - 1, len(cg) - 1
    lg = cg[-1]
    r = list(cf)
    for _ in range(df - dg + 1):
        if len(r) - 1 < dg or all(p.is_zero for p in r):
            while r and r[-1].is_zero:
                r.pop()
            if len(r) - 1 < dg:
                break
        lead = r[-1]
        r = [p * lg for p in r[:-1]]
        shift = len(r) - dg
        for i in range(dg):
            r[shift + i] = r[shift + i] - lead * cg[i]
        while r and r[-1].is_zero:
            r.pop()
        if not r:
            break
    return MultiPoly.from_coeffs_in(r, var, f.variables, f.descriptor) if r else MultiPoly.zero(f.variables, f.descriptor)


def _content_in(p, var, other):
    # gcd of the `var`-coefficients, each a polynomial in `other` alone
    coeffs = p.coeffs_in(var)
    g = MultiPoly.zero(p.variables, p.descriptor)
    for c in coeffs:
        if c.is_zero:
            continue
        g = c if g.is_zero else gcd_univariate(g, c, other)
        if not g.is_zero and g.is_constant:
            return MultiPoly.constant(1, p.variables, p.descriptor)
    return g


def gcd_bivariate(f, g):
    """Gcd of two polynomials in (the same) two variables, leading coefficient 1.

    Runs a primitive pseudo-remainder sequence in the second variable with
    univariate gcds for the contents; works over the rationals and over a
    simple extension alike.
    """
    pair = f._pair(g)
    f, g = pair
    if f.is_zero:
        return _normalize_lead(g)
    if g.is_zero:
        return _normalize_lead(f)
    if len(f.variables) != 2:
        raise PreconditionError("gcd_bivariate needs exactly two variables")
    x, y = f.variables
    dfy, dgy = f.degree_in(y), g.degree_in(y)
    if dfy <= 0 and dgy <= 0:
        return _normalize_lead(gcd_univariate(f, g, x))
    if dfy <= 0:
        return _normalize_lead(gcd_univariate(f, _content_in(g, y, x), x))
    if dgy <= 0:
        return _normalize_lead(gcd_univariate(g, _content_in(f, y, x), x))
    cf, cg = _content_in(f, y, x), _content_in(g, y, x)
    content_gcd = gcd_univariate(cf, cg, x)
    a, b = divexact(f, cf), divexact(g, cg)
    if a.degree_in(y) < b.degree_in(y):
        a, b = b, a
    while True:
        r = _pseudo_rem(a, b, y)
        if r.is_zero:
            break
        if r.degree_in(y) <= 0:
            b = MultiPoly.constant(1, f.variables, f.descriptor)
            break
        r = divexact(r, _content_in(r, y, x))
        a, b = b, r
    pp = b if b.is_constant else divexact(b, _content_in(b, y, x))
    return _normalize_lead(content_gcd * pp)


def _normalize_lead(p):
    if p.is_zero:
        return p
    _, c = p.leading()
    return p * c.inverse()


def squarefree_at(f, point=None):
    """True when f has no repeated factor vanishing at the point.

    With no point, plain square-freeness.  Two variables only: the repeated
    part is gcd(f, df/dx, df/dy).
    """
    if len(f.variables) != 2:
        raise PreconditionError("squarefree_at expects two variables")
    reps = f
    for v in f.variables:
        reps = gcd_bivariate(reps, f.diff(v))
    if reps.is_constant:
        return True
    if point is None:
        return False
    val = reps.evaluate({v: c for v, c in zip(f.variables, point)})
    return not val.is_zero


def resultant(f, g, var):
    """Sylvester resultant of f and g eliminating ``var``."""
    pair = f._pair(g)
    f, g = pair
    if f.is_zero or g.is_zero:
        raise PreconditionError("resultant of a zero polynomial")
    m, n = f.degree_in(var), g.degree_in(var)
    if m <= 0 and n <= 0:
        raise PreconditionError(f"variable {var!r} absent from both polynomials")
    if m <= 0:
        return f ** n
    if n <= 0:
        return g ** m
    cf = f.coeffs_in(var)
    cg = g.coeffs_in(var)
    size = m + n
    zero = MultiPoly.zero(f.variables, f.descriptor)
    mat = []
    for i in range(n):
        row = [zero] * size
        for j, c in enumerate(reversed(cf)):
            row[i + j] = c
        mat.append(row)
    for i in range(m):
        row = [zero] * size
        for j, c in enumerate(reversed(cg)):
            row[i + j] = c
        mat.append(row)
    return _bareiss_det(mat, f.variables, f.descriptor)


def _bareiss_det(mat, variables, descriptor):
    # fraction-free determinant; entries are polynomials in an integral domain
    n = len(mat)
    sign = 1
    prev = MultiPoly.constant(1, variables, descriptor)
    m = [row[:] for row in mat]
    for k in range(n - 1):
        if m[k][k].is_zero:
            pivot_row = None
            for i in range(k + 1, n):
                if not m[i][k].is_zero:
                    pivot_row = i
                    break
            if pivot_row is None:
                return MultiPoly.zero(variables, descriptor)
            m[k], m[pivot_row] = m[pivot_row], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = divexact(num, prev)
            m[i][k] = MultiPoly.zero(variables, descriptor)
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign == 1 else -det


# ---------------------------------------------------------------------------
# Univariate factorization kernel (the one bought dependency: sympy)
# ---------------------------------------------------------------------------

def factor_univariate(coeffs, descriptor):
    """Monic irreducible factorization of a univariate polynomial over the field.

    ``coeffs``: FieldElem (or rational) list, constant term first.  Returns
    (unit FieldElem, list of (factor coefficient list, multiplicity)) with
    monic factors over ``descriptor``.  Over a simple extension the
    factorization is delegated to sympy's algebraic-field routines; if they
    cannot run, ExtensionRequiredError is raised.
    """
    import sympy

    coeffs = [c if isinstance(c, FieldElem) else FieldElem.of(c, descriptor) for c in coeffs]
    while coeffs and coeffs[-1].is_zero:
        coeffs.pop()
    if not coeffs:
        raise PreconditionError("factorization of the zero polynomial")
    if len(coeffs) == 1:
        return coeffs[0], []
    z = sympy.Symbol("_z")
    if not descriptor.is_extension:
        expr = sum(sympy.Rational(c.as_fraction()) * z ** i for i, c in enumerate(coeffs))
        _, factors = sympy.factor_list(sympy.Poly(expr, z, domain="QQ"))
        out = []
        for fac, mult in factors:
            fc = [Fraction(c.p, c.q) for c in fac.all_coeffs()[::-1]]
            lead = fc[-1]
            out.append(([FieldElem.of(c / lead, descriptor) for c in fc], mult))
        return coeffs[-1], out
    # extension field: delegate to sympy over QQ(alpha)
    try:
        g = sympy.Symbol("_g")
        mp_expr = sum(sympy.Rational(c) * g ** i for i, c in enumerate(descriptor.minimal_polynomial))
        alpha = sympy.CRootOf(sympy.Poly(mp_expr, g), 0)
        dom = sympy.QQ.algebraic_field(alpha)
        expr = 0
        for i, c in enumerate(coeffs):
            celt = sum(sympy.Rational(q) * alpha ** j for j, q in enumerate(c.coefficients))
            expr += celt * z ** i
        poly = sympy.Poly(expr, z, domain=dom)
        _, factors = poly.factor_list()

        def back(c):
            c = dom.convert(c)
            rep = c.to_list() if hasattr(c, "to_list") else list(c.rep)
            fr = [Fraction(int(q.numerator), int(q.denominator)) for q in rep]
            return FieldElem(descriptor, fr[::-1])

        out = []
        for fac, mult in factors:
            felems = [back(c) for c in fac.all_coeffs()[::-1]]
            lead = felems[-1]
            out.append(([c / lead for c in felems], mult))
        return coeffs[-1], out
    except Exception as exc:  # sympy could not produce a certified split
        raise ExtensionRequiredError(
            f"cannot factor over {descriptor!r}: {exc}",
            polynomial=[tuple(c.coefficients) for c in coeffs],
            descriptor=descriptor)


_FRESH_NAMES = ("theta", "omega", "zeta", "eta", "xi")


def univariate_roots(coeffs, descriptor, allow_extension=True, name_hint=None):
    """Roots of a univariate polynomial, extending the field when necessary.

    Returns a list of (root, multiplicity, descriptor, conjugacy) where
    ``conjugacy`` counts the Galois conjugates the representative stands for.
    Over the rationals an irreducible factor of degree e >= 2 contributes one
    root generating a fresh degree-e extension with conjugacy e; over an
    extension, factors that remain nonlinear raise ExtensionRequiredError
    (no towers), as does allow_extension=False.
    """
    unit, factors = factor_univariate(coeffs, descriptor)
    out = []
    fresh = 0
    for fac, mult in factors:
        deg = len(fac) - 1
        if deg == 0:
            continue
        if deg == 1:
            root = -fac[0]
            out.append((root, mult, descriptor, 1))
            continue
        if descriptor.is_extension or not allow_extension:
            raise ExtensionRequiredError(
                "roots require a further field extension",
                polynomial=[tuple(c.coefficients) for c in fac],
                descriptor=descriptor)
        if name_hint:
            name = name_hint if fresh == 0 else f"{name_hint}{fresh}"
        elif fresh < len(_FRESH_NAMES):
            name = _FRESH_NAMES[fresh]
        else:
            name = f"{_FRESH_NAMES[0]}{fresh}"
        fresh += 1
        ext = FieldDescriptor.simple_extension(name, [c.as_fraction() for c in fac])
        out.append((FieldElem.generator(ext), mult, ext, deg))
    return out


# ---------------------------------------------------------------------------
# Text grammar
# ---------------------------------------------------------------------------

_NAME_START = set(string.ascii_letters)
_NAME_CONT = set(string.ascii_letters + string.digits + "_")


def _tokenize(text):
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "+-*^()":
            if ch == "*" and i + 1 < n and text[i + 1] == "*":
                tokens.append(("^", "^"))
                i += 2
                continue
            tokens.append((ch, ch))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            num = int(text[i:j])
            if j < n and text[j] == "/":
                k = j + 1
                if k < n and text[k].isdigit():
                    end = k
                    while end < n and text[end].isdigit():
                        end += 1
                    den = int(text[k:end])
                    if den == 0:
                        raise ParseError("zero denominator in rational literal")
                    tokens.append(("num", Fraction(num, den)))
                    i = end
                    continue
                raise ParseError("expected digits after '/' in rational literal")
            tokens.append(("num", Fraction(num)))
            i = j
            continue
        if ch in _NAME_START:
            j = i
            while j < n and text[j] in _NAME_CONT:
                j += 1
            tokens.append(("name", text[i:j]))
            i = j
            continue
        raise ParseError(f"unexpected character {ch!r} in polynomial text")
    tokens.append(("end", None))
    return tokens


class _Parser:
    def __init__(self, tokens, variables, descriptor):
        self.tokens = tokens
        self.pos = 0
        self.variables = tuple(variables)
        self.descriptor = descriptor

    def peek(self):
        return self.tokens[self.pos][0]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def parse(self):
        p = self.expr()
        if self.peek() != "end":
            raise ParseError("trailing input after polynomial expression")
        return p

    def expr(self):
        sign = 1
        while self.peek() in "+-":
            if self.next()[0] == "-":
                sign = -sign
        p = self.term()
        if sign == -1:
            p = -p
        while self.peek() in "+-":
            op = self.next()[0]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self):
        p = self.factor()
        while self.peek() == "*":
            self.next()
            p = p * self.factor()
        return p

    def factor(self):
        p = self.base()
        if self.peek() == "^":
            self.next()
            kind, val = self.next()
            if kind != "num" or val.denominator != 1 or val < 0:
                raise ParseError("exponent must be a nonnegative integer")
            p = p ** int(val)
        return p

    def base(self):
        kind, val = self.next()
        if kind == "(":
            p = self.expr()
            if self.next()[0] != ")":
                raise ParseError("unbalanced parenthesis")
            return p
        if kind == "num":
            return MultiPoly.constant(FieldElem.of(val, self.descriptor), self.variables, self.descriptor)
        if kind == "name":
            if val in self.variables:
                return MultiPoly.variable(val, self.variables, self.descriptor)
            if self.descriptor.is_extension and val == self.descriptor.generator_name:
                return MultiPoly.constant(FieldElem.generator(self.descriptor), self.variables, self.descriptor)
            raise ParseError(f"unknown identifier {val!r}")
        if kind == "-":
            return -self.base()
        raise ParseError("malformed polynomial expression")


def parse_poly(text, variables, descriptor=QQ):
    """Parse polynomial text over the given variables and coefficient field.

    Grammar: integers, rationals p/q, declared variable names, the extension
    generator's name, operators + - * ^ and parentheses; ** is accepted as a
    synonym for ^, whitespace is insignificant and multiplication is always
    explicit.
    """
    if not isinstance(text, str):
        raise ParseError("polynomial input must be a string")
    return _Parser(_tokenize(text), variables, descriptor).parse()
