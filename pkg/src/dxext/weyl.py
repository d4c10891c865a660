"""Exact arithmetic in the Weyl algebra over the rationals.

The n-th Weyl algebra D_n is generated by x_1..x_n and d_1..d_n subject
to d_i x_i = x_i d_i + 1, all other pairs of generators commuting.
Elements are stored in normal order (every x to the left of every d)
as a dict mapping (x_exponents, d_exponents) to a nonzero Fraction, so
equality, hashing and arithmetic are exact.

Products are normal-ordered through the closed per-variable formula

    d^b x^a = sum_k  C(b,k) * a!/(a-k)! * x^(a-k) d^(b-k)

which avoids the quadratic blowup of rewriting one commutator at a time.
"""

from __future__ import annotations

import itertools
import math
from enum import Enum
from fractions import Fraction

__all__ = [
    "Filtration",
    "WeylElement",
    "SymbolPoly",
    "variable_names",
    "dual_names",
]


class Filtration(Enum):
    """Filtration used for degrees and principal symbols."""

    BERNSTEIN = "bernstein"  # total degree in all x_i and d_i
    ORDER = "order"          # total degree in the d_i only


def variable_names(n):
    """Display names for the polynomial variables (aliases for n <= 4)."""
    if n <= 4:
        return ["x", "y", "z", "w"][:n]
    return [f"x{i + 1}" for i in range(n)]


def dual_names(n):
    """Display names for the differentials."""
    if n <= 4:
        return ["dx", "dy", "dz", "dw"][:n]
    return [f"d{i + 1}" for i in range(n)]


def symbol_names(n):
    """Display names for the commuting symbols of the differentials."""
    if n <= 4:
        return ["sx", "sy", "sz", "sw"][:n]
    return [f"s{i + 1}" for i in range(n)]


def monomial_degree(mono, kind=Filtration.BERNSTEIN):
    xexp, dexp = mono
    if kind is Filtration.ORDER:
        return sum(dexp)
    return sum(xexp) + sum(dexp)


def _mono_mul(a, b, n):
    """Normal-ordered product of two monomials as a dict of terms.

    a = x^ax d^ad and b = x^bx d^bd; commuting d^ad past x^bx produces one
    term per vector k with 0 <= k_i <= min(ad_i, bx_i).
    """
    (ax, ad), (bx, bd) = a, b
    ranges = [range(min(ad[i], bx[i]) + 1) for i in range(n)]
    out = {}
    for k in itertools.product(*ranges):
        coeff = 1
        for i in range(n):
            if k[i]:
                coeff *= math.comb(ad[i], k[i]) * math.perm(bx[i], k[i])
        xs = tuple(ax[i] + bx[i] - k[i] for i in range(n))
        ds = tuple(ad[i] + bd[i] - k[i] for i in range(n))
        out[(xs, ds)] = out.get((xs, ds), 0) + coeff
    return out


class WeylElement:
    """An element of the n-th Weyl algebra with rational coefficients.

    terms maps (x_exponents, d_exponents) to a nonzero Fraction.  The
    zero element has an empty term dict.  Instances are treated as
    immutable; all operations return new elements.
    """

    __slots__ = ("n", "terms")

    def __init__(self, n, terms=None):
        if n < 1:
            raise ValueError("need at least one variable")
        clean = {}
        for mono, coeff in (terms or {}).items():
            xexp, dexp = mono
            if len(xexp) != n or len(dexp) != n:
                raise ValueError(f"exponent tuples must have length {n}")
            if any(e < 0 for e in xexp) or any(e < 0 for e in dexp):
                raise ValueError("negative exponent")
            c = Fraction(coeff)
            if c:
                clean[(tuple(xexp), tuple(dexp))] = c
        self.n = n
        self.terms = clean

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, n):
        return cls(n, {})

    @classmethod
    def one(cls, n):
        return cls.scalar(n, 1)

    @classmethod
    def scalar(cls, n, c):
        zero = (0,) * n
        return cls(n, {(zero, zero): Fraction(c)})

    @classmethod
    def monomial(cls, n, xexp, dexp, coeff=1):
        return cls(n, {(tuple(xexp), tuple(dexp)): Fraction(coeff)})

    @classmethod
    def x(cls, i, n):
        xe = tuple(1 if j == i else 0 for j in range(n))
        return cls(n, {(xe, (0,) * n): Fraction(1)})

    @classmethod
    def d(cls, i, n):
        de = tuple(1 if j == i else 0 for j in range(n))
        return cls(n, {((0,) * n, de): Fraction(1)})

    # -- ring structure -------------------------------------------------

    def _check(self, other):
        if self.n != other.n:
            raise ValueError("mixed variable counts")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = WeylElement.scalar(self.n, other)
        self._check(other)
        terms = dict(self.terms)
        for mono, c in other.terms.items():
            nc = terms.get(mono, Fraction(0)) + c
            if nc:
                terms[mono] = nc
            else:
                terms.pop(mono, None)
        return WeylElement(self.n, terms)

    __radd__ = __add__

    def __neg__(self):
        return WeylElement(self.n, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = WeylElement.scalar(self.n, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return WeylElement(self.n, {m: c * v for m, v in self.terms.items()})
        self._check(other)
        acc = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                c = ca * cb
                for mono, k in _mono_mul(ma, mb, self.n).items():
                    nc = acc.get(mono, Fraction(0)) + c * k
                    if nc:
                        acc[mono] = nc
                    else:
                        acc.pop(mono, None)
        return WeylElement(self.n, acc)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.__mul__(other)
        return NotImplemented

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power")
        out = WeylElement.one(self.n)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = WeylElement.scalar(self.n, other)
        return isinstance(other, WeylElement) and self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # -- structure queries ----------------------------------------------

    @property
    def is_zero(self):
        return not self.terms

    @property
    def is_polynomial(self):
        """True when no differential occurs (element of C[x_1..x_n])."""
        return all(not any(dexp) for _, dexp in self.terms)

    def degree(self, kind=Filtration.BERNSTEIN):
        """Filtration degree; None is the degree of the zero element."""
        if not self.terms:
            return None
        return max(monomial_degree(m, kind) for m in self.terms)

    def homogeneous_parts(self, kind=Filtration.BERNSTEIN):
        """Split into filtration-homogeneous parts, keyed by degree."""
        parts = {}
        for mono, c in self.terms.items():
            parts.setdefault(monomial_degree(mono, kind), {})[mono] = c
        return {d: WeylElement(self.n, t) for d, t in sorted(parts.items())}

    def is_homogeneous(self, kind=Filtration.BERNSTEIN):
        return len(self.homogeneous_parts(kind)) <= 1

    def principal_symbol(self, kind=Filtration.BERNSTEIN):
        """Top filtration part as a commutative polynomial in x_i, s_i."""
        top = self.degree(kind)
        terms = {}
        if top is not None:
            for mono, c in self.terms.items():
                if monomial_degree(mono, kind) == top:
                    terms[mono] = c
        return SymbolPoly(self.n, terms)

    def coefficient(self, xexp, dexp):
        return self.terms.get((tuple(xexp), tuple(dexp)), Fraction(0))

    def monomials(self):
        return list(self.terms)

    # -- display ----------------------------------------------------------

    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return f"WeylElement({self.n}, {format_element(self)!r})"


class SymbolPoly:
    """Commutative polynomial in x_1..x_n and the symbols s_1..s_n.

    This is the value of a principal symbol: the class of a filtered
    element in the associated graded ring, where every d_i commutes and
    is written s_i.
    """

    __slots__ = ("n", "terms")

    def __init__(self, n, terms=None):
        clean = {}
        for mono, coeff in (terms or {}).items():
            c = Fraction(coeff)
            if c:
                clean[(tuple(mono[0]), tuple(mono[1]))] = c
        self.n = n
        self.terms = clean

    def __add__(self, other):
        terms = dict(self.terms)
        for mono, c in other.terms.items():
            nc = terms.get(mono, Fraction(0)) + c
            if nc:
                terms[mono] = nc
            else:
                terms.pop(mono, None)
        return SymbolPoly(self.n, terms)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return SymbolPoly(self.n, {m: c * v for m, v in self.terms.items()})
        acc = {}
        for (ax, ad), ca in self.terms.items():
            for (bx, bd), cb in other.terms.items():
                mono = (
                    tuple(ax[i] + bx[i] for i in range(self.n)),
                    tuple(ad[i] + bd[i] for i in range(self.n)),
                )
                nc = acc.get(mono, Fraction(0)) + ca * cb
                if nc:
                    acc[mono] = nc
                else:
                    acc.pop(mono, None)
        return SymbolPoly(self.n, acc)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, SymbolPoly) and self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    @property
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        xnames = variable_names(self.n)
        snames = symbol_names(self.n)
        chunks = []
        order = sorted(
            self.terms.items(),
            key=lambda kv: (sum(kv[0][0]) + sum(kv[0][1]), kv[0]),
            reverse=True,
        )
        for (xe, se), c in order:
            factors = _mono_factors(xe, xnames) + _mono_factors(se, snames)
            chunks.append(_render_term(c, factors))
        return _join_terms(chunks)

    def __repr__(self):
        return f"SymbolPoly({self.n}, {str(self)!r})"


# -- canonical text form ----------------------------------------------------


def _mono_factors(exps, names):
    out = []
    for e, name in zip(exps, names):
        if e == 1:
            out.append(name)
        elif e > 1:
            out.append(f"{name}^{e}")
    return out


def _render_term(coeff, factors):
    """Return (sign, body) for one term."""
    sign = "-" if coeff < 0 else "+"
    mag = -coeff if coeff < 0 else coeff
    if not factors:
        body = str(mag)
    elif mag == 1:
        body = "*".join(factors)
    else:
        body = f"{mag}*" + "*".join(factors)
    return sign, body


def _join_terms(chunks):
    first_sign, first_body = chunks[0]
    text = ("-" if first_sign == "-" else "") + first_body
    for sign, body in chunks[1:]:
        text += f" {sign} {body}"
    return text


def format_element(elem):
    """Canonical text form: graded-lex order, explicit '*', p/q coefficients.

    parse(format_element(e), e.n) == e for every element.
    """
    if not elem.terms:
        return "0"
    xnames = variable_names(elem.n)
    dnames = dual_names(elem.n)
    order = sorted(
        elem.terms.items(),
        key=lambda kv: (monomial_degree(kv[0]), kv[0]),
        reverse=True,
    )
    chunks = []
    for (xe, de), c in order:
        factors = _mono_factors(xe, xnames) + _mono_factors(de, dnames)
        chunks.append(_render_term(c, factors))
    return _join_terms(chunks)
