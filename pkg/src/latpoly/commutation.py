"""Operation tables on finite domains and the brute-force commutation oracle.

``f`` (arity n) commutes with ``g`` (arity m) when for every n-by-m matrix
``a`` applying g to each row and then f to the results gives the same value
as applying f to each column and then g. Matrices are scanned in row-major
lexicographic order of their entries, so the reported witness is the first
failing matrix in that order.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import _kernels
from .polynomial import DnfPolynomial

DEFAULT_MATRIX_CAP = 1 << 24
DEFAULT_TABLE_CAP = 1 << 20


class CommutationError(ValueError):
    """Domain mismatch or malformed operation table."""


class CapExceededError(CommutationError):
    """The requested scan or table is larger than the configured cap."""


@dataclass(frozen=True)
class OperationTable:
    """An operation ``A^arity -> A`` on ``A = range(domain_size)``.

    ``values`` is flat with the first argument most significant.
    """

    domain_size: int
    arity: int
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=np.int64)
        if self.arity < 1 or self.domain_size < 1:
            raise CommutationError("arity and domain size must be positive")
        if vals.shape != (self.domain_size ** self.arity,):
            raise CommutationError(
                f"table for arity {self.arity} over {self.domain_size} elements "
                f"needs {self.domain_size ** self.arity} entries, got {vals.size}"
            )
        if vals.size and (vals.min() < 0 or vals.max() >= self.domain_size):
            raise CommutationError("table entry outside the domain")
        vals = vals.copy()
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_function(cls, domain_size: int, arity: int, fn) -> "OperationTable":
        idx = np.arange(domain_size ** arity)
        digits = np.unravel_index(idx, (domain_size,) * arity)
        vals = [fn(*(int(d[t]) for d in digits)) for t in range(idx.size)]
        return cls(domain_size, arity, np.array(vals, dtype=np.int64))

    def index(self, args: Sequence[int]) -> int:
        if len(args) != self.arity:
            raise CommutationError(f"expected {self.arity} arguments, got {len(args)}")
        idx = 0
        for a in args:
            if not 0 <= a < self.domain_size:
                raise CommutationError(f"argument {a} outside the domain")
            idx = idx * self.domain_size + int(a)
        return idx

    def __call__(self, *args) -> int:
        return int(self.values[self.index(args)])

    def __eq__(self, other) -> bool:
        if not isinstance(other, OperationTable):
            return NotImplemented
        return (
            self.domain_size == other.domain_size
            and self.arity == other.arity
            and np.array_equal(self.values, other.values)
        )

    def __hash__(self) -> int:
        return hash((self.domain_size, self.arity, self.values.tobytes()))


@dataclass(frozen=True)
class CommutationWitness:
    """A matrix on which ``f(g(rows)) != g(f(columns))``."""

    matrix: tuple[tuple[int, ...], ...]
    row_first: int
    column_first: int

    def replay(self, f: OperationTable, g: OperationTable) -> tuple[int, int]:
        """Recompute both sides from scratch."""
        rows = self.matrix
        cols = tuple(zip(*rows))
        return f(*(g(*r) for r in rows)), g(*(f(*c) for c in cols))

    def format(self) -> str:
        return "\n".join(" ".join(map(str, row)) for row in self.matrix)


@dataclass(frozen=True)
class Verdict:
    """Outcome of a commutation check; truthy when the identity holds."""

    holds: bool
    witness: CommutationWitness | None = None
    pair: tuple[int, int] | None = None

    def __bool__(self) -> bool:
        return self.holds


def table_of(p: DnfPolynomial, cap: int = DEFAULT_TABLE_CAP) -> OperationTable:
    size = p.lattice.size ** p.arity
    if size > cap:
        raise CapExceededError(f"table with {size} entries exceeds cap {cap}")
    return OperationTable(p.lattice.size, p.arity, p.table)


def _as_table(op) -> OperationTable:
    return table_of(op) if isinstance(op, DnfPolynomial) else op


def matrix_from_number(num: int, n: int, m: int, k: int) -> tuple[tuple[int, ...], ...]:
    digits = np.unravel_index(num, (k,) * (n * m)) if n * m else ()
    flat = [int(d) for d in digits]
    return tuple(tuple(flat[i * m:(i + 1) * m]) for i in range(n))


def commute(f, g, cap: int = DEFAULT_MATRIX_CAP, jobs: int = 1, use_numba: bool | None = None) -> Verdict:
    """Decide ``f`` commutes with ``g`` by scanning every matrix.

    ``f`` and ``g`` are :class:`OperationTable` or :class:`DnfPolynomial`.
    With ``jobs > 1`` the matrix range is split into contiguous blocks and
    the smallest failing matrix number across blocks is reported, so the
    witness does not depend on ``jobs``.
    """
    f, g = _as_table(f), _as_table(g)
    if f.domain_size != g.domain_size:
        raise CommutationError(
            f"domain mismatch: {f.domain_size} vs {g.domain_size} elements"
        )
    k, n, m = f.domain_size, f.arity, g.arity
    total = k ** (n * m)
    if total > cap:
        raise CapExceededError(
            f"{k}^({n}*{m}) = {total} matrices exceeds the cap of {cap}"
        )

    def scan(bounds):
        return _kernels.first_failure(f.values, n, g.values, m, k, *bounds, use_numba=use_numba)

    if jobs <= 1 or total < 4096:
        num, lhs, rhs = scan((0, total))
    else:
        edges = np.linspace(0, total, jobs + 1, dtype=np.int64)
        blocks = [(int(a), int(b)) for a, b in zip(edges[:-1], edges[1:]) if b > a]
        with ThreadPoolExecutor(max_workers=jobs) as ex:
            hits = [r for r in ex.map(scan, blocks) if r[0] >= 0]
        num, lhs, rhs = min(hits) if hits else (-1, 0, 0)
    if num < 0:
        return Verdict(True)
    return Verdict(False, CommutationWitness(matrix_from_number(num, n, m, k), lhs, rhs))


def self_commuting(f, **kwargs) -> Verdict:
    return commute(f, f, **kwargs)


def strongly_bisymmetric(family: Sequence, **kwargs) -> Verdict:
    """Every ordered pair (including each member with itself) commutes.

    The first failing pair is reported with 1-based indices.
    """
    tables = [_as_table(op) for op in family]
    if not tables:
        raise CommutationError("empty family")
    sizes = {t.domain_size for t in tables}
    if len(sizes) > 1:
        raise CommutationError(f"family spans domains of sizes {sorted(sizes)}")
    for i, f in enumerate(tables, 1):
        for j, g in enumerate(tables, 1):
            v = commute(f, g, **kwargs)
            if not v:
                return Verdict(False, v.witness, (i, j))
    return Verdict(True)
