"""Right modules over the Weyl algebra given by explicit basis actions.

Each model enumerates a labeled basis degree by degree and gives the
right action of every algebra generator on a basis label as a finite
combination of labels.  That is enough to act by arbitrary elements,
to check the module axioms exactly, and to run the Ext computations.

Shipped models:

  FreeWeylModule(n)      D itself; labels are Weyl monomials
  DeltaModule(n)         C[d_1..d_n], the module supported at the origin
  LineICModule(lines)    C[x] tensor C[dy]: the minimal extension of the
                         trivial rank-one system on a punctured line,
                         pushed into the plane along the x-axis
  KummerICModule(lam)    basis e_k tensor dy^j, k in Z: the minimal
                         extension of the rank-one system with monodromy
                         exp(2*pi*i*lam), lam a non-integer rational
  DXQuotientModule(f)    D/fD with canonical monomial representatives

Right-action sign conventions on the line models follow the volume-form
realization of a right module: x^i . dx = -i x^(i-1) on the polynomial
factor and e_k . dx = -(lam+k) e_(k-1) on the Kummer factor.  These are
the unique signs under which the defining relation dx * x = x * dx + 1
holds on the right, which check_module_axioms verifies.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .grading import GradedMonomialIndex, compositions, monomials_of_degree
from .linalg import SparseEchelon
from .parser import parse
from .weyl import Filtration, WeylElement

__all__ = [
    "FreeWeylModule",
    "DeltaModule",
    "LineICModule",
    "KummerICModule",
    "DXQuotientModule",
    "act_combination",
    "act_word",
    "check_module_axioms",
    "parse_model",
]


def _scaled(comb, c):
    return {label: v * c for label, v in comb.items()}


def _merge(acc, comb, c=1):
    for label, v in comb.items():
        nv = acc.get(label, Fraction(0)) + v * c
        if nv:
            acc[label] = nv
        else:
            acc.pop(label, None)
    return acc


def act_combination(module, comb, gen):
    """Extend the generator action linearly to a combination of labels."""
    acc = {}
    for label, c in comb.items():
        _merge(acc, module.act(label, gen), c)
    return acc


def act_word(module, comb, elem):
    """Right action of a Weyl element: comb . elem.

    Each normal-ordered monomial x^a d^b acts as the product of its
    generators, x factors first; the results are summed with the
    monomial coefficients.
    """
    if elem.n != module.n:
        raise ValueError("variable count mismatch")
    acc = {}
    for (xexp, dexp), c in elem.terms.items():
        cur = dict(comb)
        for i in range(module.n):
            for _ in range(xexp[i]):
                cur = act_combination(module, cur, ("x", i))
        for i in range(module.n):
            for _ in range(dexp[i]):
                cur = act_combination(module, cur, ("d", i))
        _merge(acc, cur, c)
    return acc


@dataclass
class AxiomViolation:
    label: object
    relation: str
    difference: dict


@dataclass
class AxiomReport:
    checked_degree: int
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations


def check_module_axioms(module, deg_bound):
    """Verify the Weyl relations on every basis label up to deg_bound.

    Checks d_i x_i = x_i d_i + 1, commutation of every other generator
    pair, and that degrees rise by at most one per generator.
    """
    report = AxiomReport(deg_bound)
    gens = [("x", i) for i in range(module.n)] + [("d", i) for i in range(module.n)]
    for label in module.basis(deg_bound):
        base = {label: Fraction(1)}
        for gi, gj in itertools.combinations(gens, 2):
            ab = act_combination(module, act_combination(module, base, gi), gj)
            ba = act_combination(module, act_combination(module, base, gj), gi)
            expected = {}
            if gi[1] == gj[1] and gi[0] != gj[0]:
                # (m.d_i).x_i = (m.x_i).d_i + m, so the commutator of the
                # two action orders is -m when x acts first, +m otherwise.
                expected = {label: Fraction(-1)} if gi[0] == "x" else dict(base)
            diff = _merge(dict(ab), ba, -1)
            diff = _merge(diff, expected, -1)
            if diff:
                report.violations.append(AxiomViolation(label, f"{gi}~{gj}", diff))
        for g in gens:
            for out in module.act(label, g):
                if module.degree(out) > module.degree(label) + 1:
                    report.violations.append(
                        AxiomViolation(label, f"degree jump under {g}", {out: Fraction(1)})
                    )
    return report


class FreeWeylModule:
    """D as a right module over itself; labels are monomials."""

    def __init__(self, n):
        self.n = n
        self.name = f"free:{n}"

    def basis(self, deg_bound):
        out = []
        for d in range(deg_bound + 1):
            out.extend(monomials_of_degree(self.n, d))
        return out

    def degree(self, label):
        return sum(label[0]) + sum(label[1])

    def act(self, label, gen):
        xexp, dexp = label
        kind, i = gen
        if kind == "d":
            de = list(dexp)
            de[i] += 1
            return {(xexp, tuple(de)): Fraction(1)}
        # (x^a d^b) . x_i = x^(a+e_i) d^b + b_i x^a d^(b-e_i)
        xe = list(xexp)
        xe[i] += 1
        out = {(tuple(xe), dexp): Fraction(1)}
        if dexp[i]:
            de = list(dexp)
            de[i] -= 1
            out[(xexp, tuple(de))] = Fraction(dexp[i])
        return out

    def mf_level_bound(self, f, level):
        # Degree additivity in a domain: v*f nonzero has degree
        # deg v + deg f, so F_level meets M*f inside (F_(level-deg f))*f.
        return level - f.degree()


class DeltaModule:
    """C[d_1..d_n]: the right module supported at the origin."""

    def __init__(self, n):
        self.n = n
        self.name = f"delta:{n}"

    def basis(self, deg_bound):
        out = []
        for d in range(deg_bound + 1):
            out.extend(compositions(d, self.n))
        return out

    def degree(self, label):
        return sum(label)

    def act(self, label, gen):
        kind, i = gen
        exp = list(label)
        if kind == "d":
            exp[i] += 1
            return {tuple(exp): Fraction(1)}
        if exp[i] == 0:
            return {}
        exp[i] -= 1
        return {tuple(exp): Fraction(label[i])}

    def mf_level_bound(self, f, level):
        # For x-homogeneous f of degree s, acting by f shifts the grading
        # by exactly -s, so F_level meets M*f inside (F_(level+s))*f.
        if not f.is_polynomial:
            return None
        degs = {sum(xexp) for xexp, _ in f.terms}
        if len(degs) != 1:
            return None
        return level + degs.pop()


def _ic_mf_level_bound(f, level):
    """Generator bound for the line models, exact for homogeneous f.

    Acting by homogeneous f of degree s shifts the auxiliary grading
    (x or e exponent minus dy exponent) by exactly s.  Within one
    auxiliary grade the labels are totally ordered by dy exponent, and
    v*f has a nonzero component at the dy level just below v's top
    (through f's lowest y-power monomial, with leading coefficient a
    nonzero falling factorial).  That triangularity forces any member
    of M*f lying in filtration level m to be a combination of v*f with
    deg v <= m + s; see the self-Ext engine notes for why no such bound
    exists in the two-sided case.
    """
    if not f.is_polynomial:
        return None
    degs = {sum(xexp) for xexp, _ in f.terms}
    if len(degs) != 1:
        return None
    return level + degs.pop()


class LineICModule:
    """C[x] tensor C[dy] with basis (i, j) = x^i dy^j, degree i + j."""

    def __init__(self, lines=2):
        self.n = 2
        self.lines = lines
        self.name = f"nlines-ic:{lines}"

    def basis(self, deg_bound):
        out = []
        for d in range(deg_bound + 1):
            for i in range(d + 1):
                out.append((i, d - i))
        return out

    def degree(self, label):
        return label[0] + label[1]

    def act(self, label, gen):
        i, j = label
        kind, k = gen
        if kind == "x" and k == 0:
            return {(i + 1, j): Fraction(1)}
        if kind == "x" and k == 1:
            return {(i, j - 1): Fraction(j)} if j else {}
        if kind == "d" and k == 0:
            return {(i - 1, j): Fraction(-i)} if i else {}
        return {(i, j + 1): Fraction(1)}

    def mf_level_bound(self, f, level):
        return _ic_mf_level_bound(f, level)


class KummerICModule:
    """Basis e_k tensor dy^j with k in Z; e_k stands for x^(lam+k).

    lam must be a non-integer rational, so multiplication by x is
    bijective on the e_k line and the module is simple.  The degree of
    (k, j) is |k| + j, which makes every filtered piece finite.
    """

    def __init__(self, lam, lines=2):
        lam = Fraction(lam)
        if lam.denominator == 1:
            raise ValueError("lam must be a non-integer rational")
        self.lam = lam
        self.n = 2
        self.lines = lines
        self.name = f"kummer:{lines}:{lam}"

    def basis(self, deg_bound):
        out = []
        for d in range(deg_bound + 1):
            for j in range(d + 1):
                r = d - j
                if r == 0:
                    out.append((0, j))
                else:
                    out.append((-r, j))
                    out.append((r, j))
        return out

    def degree(self, label):
        return abs(label[0]) + label[1]

    def act(self, label, gen):
        k, j = label
        kind, idx = gen
        if kind == "x" and idx == 0:
            return {(k + 1, j): Fraction(1)}
        if kind == "x" and idx == 1:
            return {(k, j - 1): Fraction(j)} if j else {}
        if kind == "d" and idx == 0:
            return {(k - 1, j): -(self.lam + k)}
        return {(k, j + 1): Fraction(1)}

    def mf_level_bound(self, f, level):
        return _ic_mf_level_bound(f, level)


class DXQuotientModule:
    """D/fD with canonical representatives.

    fD meets each Bernstein level F_k exactly in f*F_(k - deg f), by
    degree additivity, so an echelon of the products f*m (trailing
    pivots in graded monomial order) identifies a stable complement:
    the non-pivot monomials.  Those monomials label the basis, and the
    action reduces products against the echelon.
    """

    def __init__(self, f):
        if f.is_zero:
            raise ValueError("f must be nonzero")
        self.f = f
        self.n = f.n
        self.name = f"dx:{f}"
        self._fdeg = f.degree()
        self._index = GradedMonomialIndex(f.n)
        self._echelon = SparseEchelon(trailing=True)
        self._built_degree = -1

    def _extend(self, degree):
        while self._built_degree < degree:
            self._built_degree += 1
            gdeg = self._built_degree - self._fdeg
            if gdeg < 0:
                continue
            for mono in monomials_of_degree(self.n, gdeg):
                prod = self.f * WeylElement.monomial(self.n, mono[0], mono[1])
                self._echelon.add(self._index.vector(prod))

    def basis(self, deg_bound):
        self._extend(deg_bound)
        self._index.extend_to(deg_bound)
        out = []
        pivots = self._echelon.rows.keys()
        for i in range(self._index.prefix_size(deg_bound)):
            if i not in pivots:
                out.append(self._index.monomial(i))
        return out

    def degree(self, label):
        return sum(label[0]) + sum(label[1])

    def reduce_element(self, elem):
        """Canonical representative of elem modulo fD as a combination."""
        deg = elem.degree()
        if deg is None:
            return {}
        self._extend(deg)
        vec = self._echelon.reduce_fractions(self._index.vector(elem))
        return {self._index.monomial(i): c for i, c in vec.items()}

    def act(self, label, gen):
        kind, i = gen
        mono = WeylElement.monomial(self.n, label[0], label[1])
        factor = WeylElement.x(i, self.n) if kind == "x" else WeylElement.d(i, self.n)
        return self.reduce_element(mono * factor)

    def mf_level_bound(self, f, level):
        return None  # no a-priori bound for sums v*f + f*h in the quotient


def parse_model(text):
    """Build a model from its command-line serialization."""
    parts = text.split(":")
    kind = parts[0]
    try:
        if kind == "free" and len(parts) == 2:
            return FreeWeylModule(int(parts[1]))
        if kind == "delta" and len(parts) == 2:
            return DeltaModule(int(parts[1]))
        if kind == "nlines-ic" and len(parts) == 2:
            return LineICModule(int(parts[1]))
        if kind == "kummer" and len(parts) == 3:
            return KummerICModule(Fraction(parts[2]), int(parts[1]))
        if kind == "dx" and len(parts) == 2:
            return DXQuotientModule(parse(parts[1]))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad model spec {text!r}: {exc}") from None
    raise ValueError(f"bad model spec {text!r}")
