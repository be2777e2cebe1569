"""Exhaustive enumeration of polynomial functions and verification runs.

Polynomial functions of arity n over L correspond one-to-one to nondecreasing
maps from the subsets of [n] to L (their values at characteristic vectors),
so enumerating those maps enumerates every function exactly once.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator

from .commutation import DEFAULT_MATRIX_CAP, CapExceededError, CommutationWitness, self_commuting
from .lattice import BoundedLattice
from .polynomial import (
    DnfPolynomial,
    VariableMap,
    from_boolean_restriction,
    simple_minor,
    subsets_in_order,
    substitute_constant,
)
from .structure import (
    Classification,
    NotAChainError,
    classify,
    is_chain_structured,
    record,
)

MAX_ENUMERATED = 10**6
MAX_ARITY = 4


class HarnessError(ValueError):
    """Bad harness parameters (wrong lattice kind, sizes beyond the caps)."""


def _check_oracle_cap(n: int, lattice: BoundedLattice, cap: int = DEFAULT_MATRIX_CAP) -> None:
    total = lattice.size ** (n * n)
    if total > cap:
        raise CapExceededError(
            f"self-commutation scan needs {lattice.size}^{n * n} = {total} matrices, cap is {cap}"
        )


def enumerate_restrictions(n: int, lattice: BoundedLattice, limit: int = MAX_ENUMERATED) -> Iterator[tuple[int, ...]]:
    """Every nondecreasing map from subsets of [n] to the lattice, as a mask-indexed tuple.

    Subsets are filled by size then lexicographically, each with the
    elements above its already-chosen lower covers, bottom to top.
    """
    if not 1 <= n <= MAX_ARITY:
        raise HarnessError(f"enumeration supports arity 1..{MAX_ARITY}, got {n}")
    order = subsets_in_order(n)
    elems = sorted(lattice.elements, key=lambda e: (lattice.order_ranks[e], e))
    leq = lattice.leq_matrix
    lower = [[mask ^ (1 << i) for i in range(n) if mask >> i & 1] for mask in range(1 << n)]
    values = [0] * (1 << n)
    count = 0

    def fill(pos):
        nonlocal count
        if pos == len(order):
            count += 1
            if count > limit:
                raise CapExceededError(f"more than {limit} polynomials to enumerate")
            yield tuple(values)
            return
        mask = order[pos]
        below = [values[s] for s in lower[mask]]
        for v in elems:
            if all(leq[b, v] for b in below):
                values[mask] = v
                yield from fill(pos + 1)

    yield from fill(0)


def enumerate_polynomials(n: int, lattice: BoundedLattice, limit: int = MAX_ENUMERATED) -> Iterator[DnfPolynomial]:
    lattice.require_valid()
    for values in enumerate_restrictions(n, lattice, limit):
        yield from_boolean_restriction(values, n, lattice)


# per-polynomial verdicts -----------------------------------------------------

@dataclass(frozen=True)
class PolyVerdict:
    coefficients: tuple[int, ...]
    classification: Classification
    shape: bool
    oracle: bool
    witness: CommutationWitness | None

    def line(self) -> str:
        w = ""
        if self.witness is not None:
            w = " witness=" + ";".join(",".join(map(str, r)) for r in self.witness.matrix)
        return (
            "coeffs=" + ",".join(map(str, self.coefficients))
            + f" shape={str(self.shape).lower()} oracle={str(self.oracle).lower()} "
            + record(self.classification) + w
        )


def _verdict(p: DnfPolynomial) -> PolyVerdict:
    c = classify(p)
    v = self_commuting(p)
    return PolyVerdict(
        tuple(int(a) for a in p.coefficients), c, is_chain_structured(c), v.holds, v.witness
    )


def _run_all(polys: list[DnfPolynomial], jobs: int) -> list[PolyVerdict]:
    if jobs <= 1:
        return [_verdict(p) for p in polys]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        # map keeps enumeration order
        return list(ex.map(_verdict, polys, chunksize=max(1, len(polys) // (4 * jobs))))


@dataclass
class VerificationReport:
    lattice: str
    arity: int
    checked: int
    self_commuting: int
    shape_self_commuting: int
    mismatches: list[PolyVerdict]
    verdicts: list[PolyVerdict] = field(repr=False)
    duration: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def summary(self) -> str:
        return (
            f"checked={self.checked} selfcommuting={self.self_commuting} "
            f"mismatches={len(self.mismatches)}"
        )

    def text(self) -> str:
        out = [
            f"lattice={self.lattice} arity={self.arity}",
            self.summary(),
            f"shape_selfcommuting={self.shape_self_commuting}",
        ]
        out += ["MISMATCH " + m.line() for m in self.mismatches]
        out.append(f"duration={self.duration:.3f}s")
        return "\n".join(out)

    def lines(self) -> list[str]:
        return [v.line() for v in self.verdicts]


def verify_theorem(n: int, lattice: BoundedLattice, jobs: int = 1) -> VerificationReport:
    """Shape verdict against the oracle on every polynomial over a chain."""
    if not lattice.is_chain:
        raise NotAChainError("verify_theorem needs a chain; use search_counterexample instead")
    _check_oracle_cap(n, lattice)
    t0 = time.perf_counter()
    verdicts = _run_all(list(enumerate_polynomials(n, lattice)), jobs)
    return VerificationReport(
        lattice=lattice.describe(),
        arity=n,
        checked=len(verdicts),
        self_commuting=sum(v.oracle for v in verdicts),
        shape_self_commuting=sum(v.shape for v in verdicts),
        mismatches=[v for v in verdicts if v.shape != v.oracle],
        verdicts=verdicts,
        duration=time.perf_counter() - t0,
    )


@dataclass
class SearchReport:
    lattice: str
    arity: int
    checked: int
    self_commuting: int
    sufficiency_confirmed: int
    candidates: list[PolyVerdict]
    sufficiency_violations: list[PolyVerdict]
    duration: float = 0.0

    def summary(self) -> str:
        return (
            f"checked={self.checked} selfcommuting={self.self_commuting} "
            f"sufficiency_confirmed={self.sufficiency_confirmed} "
            f"sufficiency_violations={len(self.sufficiency_violations)} "
            f"candidates={len(self.candidates)}"
        )

    def text(self) -> str:
        out = [f"lattice={self.lattice} arity={self.arity}", self.summary()]
        out += ["CANDIDATE " + c.line() for c in self.candidates]
        out += ["BUG sufficiency violated " + c.line() for c in self.sufficiency_violations]
        out.append(f"duration={self.duration:.3f}s")
        return "\n".join(out)

    def lines(self) -> list[str]:
        return ["candidate " + c.line() for c in self.candidates] + [
            "sufficiency_violation " + c.line() for c in self.sufficiency_violations
        ]


def search_counterexample(n: int, lattice: BoundedLattice, jobs: int = 1) -> SearchReport:
    """Self-commuting polynomials over a non-chain lattice that lack the chain shape.

    Such polynomials would show the shape condition is not necessary off
    chains; they are reported, never judged. Shape-conforming polynomials
    that fail the oracle would contradict the sufficiency direction and are
    listed separately as implementation bugs.
    """
    lattice.require_valid()
    if lattice.is_chain:
        raise HarnessError("lattice is a chain; use verify_theorem")
    _check_oracle_cap(n, lattice)
    t0 = time.perf_counter()
    verdicts = _run_all(list(enumerate_polynomials(n, lattice)), jobs)
    return SearchReport(
        lattice=lattice.describe(),
        arity=n,
        checked=len(verdicts),
        self_commuting=sum(v.oracle for v in verdicts),
        sufficiency_confirmed=sum(v.shape and v.oracle for v in verdicts),
        candidates=[v for v in verdicts if v.oracle and not v.shape],
        sufficiency_violations=[v for v in verdicts if v.shape and not v.oracle],
        duration=time.perf_counter() - t0,
    )


# closure suites ---------------------------------------------------------------

@dataclass
class SuiteReport:
    checked: int = 0
    failures: list[tuple] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def self_commuting_polynomials(n: int, lattice: BoundedLattice) -> list[DnfPolynomial]:
    _check_oracle_cap(n, lattice)
    return [p for p in enumerate_polynomials(n, lattice) if self_commuting(p)]


def minor_closure_suite(
    n: int,
    lattice: BoundedLattice,
    sample_size: int | None = None,
    maps_per_polynomial: int | None = None,
    seed: int = 0,
) -> SuiteReport:
    """Minors of self-commuting polynomials stay self-commuting.

    Without ``sample_size`` every self-commuting polynomial is used; without
    ``maps_per_polynomial`` every map [n] -> [n] is tried, otherwise that many
    random ones per polynomial.
    """
    rng = random.Random(seed)
    polys = self_commuting_polynomials(n, lattice)
    if sample_size is not None and sample_size < len(polys):
        polys = rng.sample(polys, sample_size)
    report = SuiteReport()
    all_maps = list(VariableMap.all_maps(n, n))
    for p in polys:
        maps = all_maps if maps_per_polynomial is None else [
            VariableMap(tuple(rng.randint(1, n) for _ in range(n)), n)
            for _ in range(maps_per_polynomial)
        ]
        for sigma in maps:
            report.checked += 1
            v = self_commuting(simple_minor(p, sigma))
            if not v:
                report.failures.append((p, sigma, v.witness))
    return report


def constant_substitution_suite(n: int, lattice: BoundedLattice) -> SuiteReport:
    """Pinning an idempotent point into a self-commuting polynomial keeps it self-commuting."""
    report = SuiteReport()
    for p in self_commuting_polynomials(n, lattice):
        for c in lattice.elements:
            if p(*([c] * n)) != c:
                continue
            for i in range(1, n + 1):
                report.checked += 1
                v = self_commuting(substitute_constant(p, i, c))
                if not v:
                    report.failures.append((p, i, c, v.witness))
    return report
