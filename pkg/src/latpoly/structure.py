"""Weighted-disjunction and chain-form detection.

Over a bounded chain a polynomial function is self-commuting exactly when it
is a weighted disjunction

    a_0 v a_1 x_1 v ... v a_n x_n

or has chain form: a weighted disjunction joined with terms a_S (meet x_i,
i in S) for a chain of sets S_1 < S_2 < ... < S_r with |S_1| >= 2, where
every variable outside S_1 has a singleton coefficient below that of some
variable in S_1. Off chains the shape is still sufficient for
self-commutation; whether it is necessary is not known, so nothing here
claims it.

The classifier reads the shape off the essential terms of the canonical
form, so every function has one well-defined answer.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence, Union

from .lattice import BoundedLattice
from .polynomial import (
    DnfPolynomial,
    PolynomialError,
    Term,
    canonicalize,
    essential_terms,
    eval_poly,
    format_subset,
    subset_sort_key,
)


class NotAChainError(ValueError):
    """The fast decision procedure only applies over chains."""


@dataclass(frozen=True)
class WeightedDisjunction:
    constant: int
    singletons: tuple[int, ...]

    name = "WeightedDisjunction"

    def summary(self) -> str:
        return self.name


@dataclass(frozen=True)
class ChainForm:
    constant: int
    singletons: tuple[int, ...]
    chain: tuple[Term, ...]

    name = "ChainForm"

    def summary(self) -> str:
        sets = " ".join(f"S_{l}={format_subset(t.subset)}" for l, t in enumerate(self.chain, 1))
        return f"{self.name}: {sets}"


@dataclass(frozen=True)
class IncomparableTerms:
    first: int
    second: int

    def __str__(self) -> str:
        return f"incomparable essential terms {format_subset(self.first)}, {format_subset(self.second)}"


@dataclass(frozen=True)
class UndominatedVariable:
    variable: int
    base: int

    def __str__(self) -> str:
        return (
            f"variable {self.variable} outside S_1={format_subset(self.base)} "
            f"has a_{self.variable} not below any a_j, j in S_1"
        )


@dataclass(frozen=True)
class NotChainStructured:
    violation: Union[IncomparableTerms, UndominatedVariable]

    name = "NotChainStructured"

    def summary(self) -> str:
        return f"{self.name}: {self.violation}"


Classification = Union[WeightedDisjunction, ChainForm, NotChainStructured]


def is_chain_structured(c: Classification) -> bool:
    return not isinstance(c, NotChainStructured)


def classify(p: DnfPolynomial) -> Classification:
    q = canonicalize(p)
    lat = q.lattice
    n = q.arity
    c = q.coefficients
    constant = int(c[0])
    singletons = tuple(int(c[1 << i]) for i in range(n))
    big = sorted(
        (t for t in essential_terms(q) if t.size >= 2), key=lambda t: subset_sort_key(t.subset)
    )
    if not big:
        return WeightedDisjunction(constant, singletons)

    for s, t in itertools.combinations(big, 2):
        a, b = s.subset, t.subset
        if a & b != a and a & b != b:
            return NotChainStructured(IncomparableTerms(a, b))

    base = big[0].subset
    inside = [singletons[j] for j in range(n) if base >> j & 1]
    if lat.is_chain:
        # on a chain "below some a_j" is "below the largest a_j"
        top_inside = lat.join_all(inside)
        dominated = lambda a: lat.leq(a, top_inside)  # noqa: E731
    else:
        dominated = lambda a: any(lat.leq(a, b) for b in inside)  # noqa: E731
    for i in range(n):
        if not base >> i & 1 and not dominated(singletons[i]):
            return NotChainStructured(UndominatedVariable(i + 1, base))
    return ChainForm(constant, singletons, tuple(big))


def polynomial_of(c: WeightedDisjunction | ChainForm, lattice: BoundedLattice) -> DnfPolynomial:
    """The DNF built from exactly the reported coefficients."""
    n = len(c.singletons)
    terms = {0: c.constant}
    for i, a in enumerate(c.singletons):
        terms[1 << i] = a
    for t in getattr(c, "chain", ()):
        terms[t.subset] = t.coefficient
    return DnfPolynomial.from_terms(lattice, n, terms)


def is_self_commuting_fast(p: DnfPolynomial) -> tuple[bool, Classification]:
    if not p.lattice.is_chain:
        raise NotAChainError(
            "the shape criterion decides self-commutation only over chains; "
            "use the brute-force oracle for other lattices"
        )
    c = classify(p)
    return is_chain_structured(c), c


def sufficiency_expansion_check(
    p: DnfPolynomial,
    x: Sequence[Sequence[int]],
    form: WeightedDisjunction | ChainForm | None = None,
) -> bool:
    """Rows-first and columns-first nested evaluation against the closed-form expansion.

    For a weighted disjunction or chain-form f and an n-by-n matrix x,

        f(f(row_1), ..., f(row_n))
          = a_0 v (join over i, j of a_i a_j x_ij) v (join over l of a_{S_l} meet x_ij, i, j in S_l)

    and the column-first composite equals the same right-hand side. Returns
    True when both identities hold. The coefficients come from ``form`` when
    given (any chain-form representation of ``p``), else from :func:`classify`.
    """
    c = classify(p) if form is None else form
    if not is_chain_structured(c):
        raise PolynomialError(f"expansion only applies to chain-structured input, got {c.summary()}")
    n = p.arity
    lat = p.lattice
    if len(x) != n or any(len(row) != n for row in x):
        raise PolynomialError(f"expected a {n}x{n} matrix")
    x = [[lat.check(v) for v in row] for row in x]
    cols = [list(col) for col in zip(*x)]

    def closed(entry):
        val = c.constant
        for i in range(n):
            for j in range(n):
                t = lat.meet_all((c.singletons[i], c.singletons[j], entry(i, j)))
                val = lat.join(val, t)
        for term in getattr(c, "chain", ()):
            idx = [i for i in range(n) if term.subset >> i & 1]
            t = lat.meet_all((entry(i, j) for i in idx for j in idx), start=term.coefficient)
            val = lat.join(val, t)
        return val

    rows_first = eval_poly(p, [eval_poly(p, row) for row in x])
    cols_first = eval_poly(p, [eval_poly(p, col) for col in cols])
    rhs = closed(lambda i, j: x[i][j])
    return rows_first == rhs and cols_first == rhs


def necessity_inequality_check(p: DnfPolynomial) -> bool:
    """a_ij meet a_jk <= a_i v a_j <= a_ij for all distinct i, j, k."""
    n = p.arity
    if n < 3:
        raise PolynomialError("the pair inequalities need arity at least 3")
    q = canonicalize(p)
    lat = q.lattice
    c = q.coefficients

    def pair(i, j):
        return int(c[(1 << i) | (1 << j)])

    for i, j, k in itertools.permutations(range(n), 3):
        mid = lat.join(int(c[1 << i]), int(c[1 << j]))
        if not (lat.leq(lat.meet(pair(i, j), pair(j, k)), mid) and lat.leq(mid, pair(i, j))):
            return False
    return True


def describe(c: Classification, lattice: BoundedLattice) -> list[str]:
    """Human-readable lines: the summary, then the reported coefficients."""
    lines = [c.summary()]
    if is_chain_structured(c):
        fmt = lattice.format_element
        lines.append(f"  a_{{}}={fmt(c.constant)}")
        lines.append("  " + " ".join(f"a_{i}={fmt(a)}" for i, a in enumerate(c.singletons, 1)))
        for l, t in enumerate(getattr(c, "chain", ()), 1):
            lines.append(f"  S_{l}={format_subset(t.subset)} a_S_{l}={fmt(t.coefficient)}")
    return lines


def record(c: Classification) -> str:
    """One-line machine form."""
    if isinstance(c, NotChainStructured):
        v = c.violation
        if isinstance(v, IncomparableTerms):
            detail = f"violation=incomparable terms={format_subset(v.first)};{format_subset(v.second)}"
        else:
            detail = f"violation=undominated variable={v.variable} base={format_subset(v.base)}"
        return f"class={c.name} {detail}"
    parts = [f"class={c.name}", f"constant={c.constant}", "singletons=" + ",".join(map(str, c.singletons))]
    if isinstance(c, ChainForm):
        parts.append("chain=" + ";".join(f"{format_subset(t.subset)}:{t.coefficient}" for t in c.chain))
    return " ".join(parts)
