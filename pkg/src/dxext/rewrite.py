"""Diamond Lemma rewriting for two-sided monomial quotients.

A RewriteSystem holds rules that send a normal-ordered monomial to an
equivalent lower element (graded lex order, x before y before dx before
dy).  Every rule must be order-decreasing, which is validated on all
monomials up to a probe degree at registration, so reduction always
terminates; confluence_check then explores every reduction path to
certify unique normal forms degree by degree.

The node preset encodes the two-sided quotient by x*y: the span of
g*(x*y) and (x*y)*g over all g.  Its irreducible monomials are
P(dx,dy) and y*dy*P(dx,dy), which is what irreducible_dims counts.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .grading import count_through_degree, monomials_of_degree
from .tables import EXACT_GRADED, STABILIZED, TruncationLevel, TruncationTable
from .weyl import WeylElement, monomial_degree

__all__ = [
    "RewriteRule",
    "RewriteSystem",
    "ConfluenceReport",
    "node_system",
    "confluence_check",
    "irreducible_dims",
    "PRESETS",
]


def order_key(mono):
    """Graded lexicographic key with variable priority x1 > .. > d_n."""
    return (monomial_degree(mono), mono[0] + mono[1])


@dataclass
class RewriteRule:
    """One reduction: a monomial predicate plus its replacement element.

    Replacement coefficients may depend on the exponents of the matched
    monomial; the replacement must be strictly smaller in order_key.
    """

    name: str
    applies: object  # callable(mono) -> bool
    rewrite: object  # callable(mono) -> WeylElement


class RewriteSystem:
    def __init__(self, n, associated_poly=None, probe_degree=8):
        self.n = n
        self.rules = []
        self.associated_poly = associated_poly
        self.probe_degree = probe_degree
        self._nf_cache = {}

    def add_rule(self, rule):
        """Register a rule after checking it is order-decreasing on all
        monomials up to the probe degree."""
        for d in range(self.probe_degree + 1):
            for mono in monomials_of_degree(self.n, d):
                if not rule.applies(mono):
                    continue
                key = order_key(mono)
                out = rule.rewrite(mono)
                for omono in out.terms:
                    if order_key(omono) >= key:
                        raise ValueError(
                            f"rule {rule.name!r} does not decrease {mono}: "
                            f"produces {omono}"
                        )
        self.rules.append(rule)
        self._nf_cache.clear()

    def first_applicable(self, mono):
        for rule in self.rules:
            if rule.applies(mono):
                return rule
        return None

    def is_irreducible(self, mono):
        return self.first_applicable(mono) is None

    def _mono_normal_form(self, mono):
        """Normal form of a single monomial under first-rule strategy."""
        cached = self._nf_cache.get(mono)
        if cached is not None:
            return cached
        rule = self.first_applicable(mono)
        if rule is None:
            result = {mono: Fraction(1)}
        else:
            result = {}
            for omono, oc in rule.rewrite(mono).terms.items():
                for rmono, rc in self._mono_normal_form(omono).items():
                    nc = result.get(rmono, Fraction(0)) + oc * rc
                    if nc:
                        result[rmono] = nc
                    else:
                        result.pop(rmono, None)
        self._nf_cache[mono] = result
        return result

    def normal_form(self, elem):
        """Fully reduced form of an element; deterministic and idempotent."""
        if elem.n != self.n:
            raise ValueError("variable count mismatch")
        acc = {}
        for mono, c in elem.terms.items():
            for rmono, rc in self._mono_normal_form(mono).items():
                nc = acc.get(rmono, Fraction(0)) + c * rc
                if nc:
                    acc[rmono] = nc
                else:
                    acc.pop(rmono, None)
        return WeylElement(self.n, acc)

    reduce = normal_form

    def irreducible_projection(self, elem):
        """Drop every reducible monomial, keeping irreducible terms as is.

        This projects onto the span of irreducible monomials along the
        reducible ones, not along the rewriting ideal: a reducible
        monomial is deleted even when its normal form is nonzero.  It
        agrees with normal_form exactly on elements whose reducible
        terms rewrite to zero.
        """
        if elem.n != self.n:
            raise ValueError("variable count mismatch")
        kept = {m: c for m, c in elem.terms.items() if self.is_irreducible(m)}
        return WeylElement(self.n, kept)


def _element_key(terms):
    return tuple(sorted(terms.items()))


@dataclass
class ConfluenceReport:
    max_degree: int
    violations: list = field(default_factory=list)  # (mono, normal form keys)

    @property
    def confluent(self):
        return not self.violations


def confluence_check(system, max_deg):
    """Explore every reduction path of every monomial of degree <= max_deg.

    Records each monomial that reaches two or more distinct normal
    forms.  Memoization is shared across monomials, so overlapping
    reduction trees are walked once.
    """
    memo = {}

    def all_normal_forms(terms):
        # No cycle guard needed: every rule strictly decreases the multiset
        # of monomial order keys, so recursion is well-founded.
        key = _element_key(terms)
        if key in memo:
            return memo[key]
        branches = []
        for mono in terms:
            for rule in system.rules:
                if rule.applies(mono):
                    branches.append((mono, rule))
        if not branches:
            result = frozenset([key])
        else:
            found = set()
            for mono, rule in branches:
                coeff = terms[mono]
                new_terms = dict(terms)
                del new_terms[mono]
                for omono, oc in rule.rewrite(mono).terms.items():
                    nc = new_terms.get(omono, Fraction(0)) + coeff * oc
                    if nc:
                        new_terms[omono] = nc
                    else:
                        new_terms.pop(omono, None)
                found |= all_normal_forms(new_terms)
            result = frozenset(found)
        memo[key] = result
        return result

    report = ConfluenceReport(max_deg)
    for d in range(max_deg + 1):
        for mono in monomials_of_degree(system.n, d):
            forms = all_normal_forms({mono: Fraction(1)})
            if len(forms) > 1:
                report.violations.append((mono, sorted(forms)))
    return report


def irreducible_dims(system, max_deg, check_confluence=True):
    """Cumulative count of irreducible monomials per degree level.

    With a confluent system these are exact quotient dimensions
    (exact-graded); without confluence the counts are only upper bounds
    for the quotient, since normal forms still span it.
    """
    certified = False
    if check_confluence:
        certified = confluence_check(system, max_deg).confluent
    status = EXACT_GRADED if certified else STABILIZED
    levels = []
    running = 0
    for d in range(max_deg + 1):
        for mono in monomials_of_degree(system.n, d):
            if system.is_irreducible(mono):
                running += 1
        levels.append(TruncationLevel(d, running, status))
    f_text = str(system.associated_poly) if system.associated_poly is not None else ""
    table = TruncationTable(f_text, "irreducible-monomials", levels)
    table.notes["certified"] = certified
    return table


# -- node preset --------------------------------------------------------------


def node_system():
    """Rewrite system for the two-sided quotient by the node polynomial x*y.

    Monomials are x^i y^j dx^a dy^b.  Rules, with A = a and B = b + 1
    when stripping one x and one dx (so A, B are one plus the dx / dy
    degrees of the stripped monomial):

      xy-annihilates   i>=1, j>=1            -> 0
      x-without-dx     i>=1, a==0            -> 0
      y-without-dy     j>=1, b==0            -> 0
      y2-dy-descends   j>=2, b>=1            -> -b * x^i y^(j-1) dx^a dy^(b-1)
      x-dx-descends    i>=1, a>=1            -> -(A/B) x^(i-1) y^(j+1) dx^(a-1) dy^(b+1)
                                                - A x^(i-1) y^j dx^(a-1) dy^b

    The two descent rules are the derived consequences of commuting the
    quotient generators; together with the annihilation rules they are
    confluent, with irreducible monomials dx^a dy^b and y dx^a dy^(b+1).
    """
    n = 2
    sys_ = RewriteSystem(n, associated_poly=WeylElement.x(0, 2) * WeylElement.x(1, 2))

    def mk(i, j, a, b, coeff):
        return WeylElement(2, {((i, j), (a, b)): Fraction(coeff)})

    sys_.add_rule(RewriteRule(
        "xy-annihilates",
        lambda m: m[0][0] >= 1 and m[0][1] >= 1,
        lambda m: WeylElement.zero(2),
    ))
    sys_.add_rule(RewriteRule(
        "x-without-dx",
        lambda m: m[0][0] >= 1 and m[1][0] == 0,
        lambda m: WeylElement.zero(2),
    ))
    sys_.add_rule(RewriteRule(
        "y-without-dy",
        lambda m: m[0][1] >= 1 and m[1][1] == 0,
        lambda m: WeylElement.zero(2),
    ))
    sys_.add_rule(RewriteRule(
        "y2-dy-descends",
        lambda m: m[0][1] >= 2 and m[1][1] >= 1,
        lambda m: mk(m[0][0], m[0][1] - 1, m[1][0], m[1][1] - 1, -m[1][1]),
    ))

    def x_dx_rewrite(m):
        (i, j), (a, b) = m
        big_a, big_b = a, b + 1
        return (
            mk(i - 1, j + 1, a - 1, b + 1, Fraction(-big_a, big_b))
            + mk(i - 1, j, a - 1, b, -big_a)
        )

    sys_.add_rule(RewriteRule(
        "x-dx-descends",
        lambda m: m[0][0] >= 1 and m[1][0] >= 1,
        x_dx_rewrite,
    ))
    return sys_


PRESETS = {"node-xy": node_system}
