"""Finite bounded distributive lattices with dense integer element ids."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

DEFAULT_SIZE_CAP = 64


class LatticeError(ValueError):
    """Raised for out-of-range elements and malformed lattice descriptions."""


class LatticeSizeError(LatticeError):
    """Raised when a lattice would exceed the configured size cap."""


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: tuple[int, ...]

    def __str__(self) -> str:
        return f"{self.axiom}: witness {self.witness}"


class BoundedLattice:
    """A finite lattice on ``range(size)`` given by meet and join tables.

    Chains and products of chains are built with :func:`chain` and
    :func:`product`; arbitrary tables go through :meth:`from_tables` and
    are only trusted after :meth:`validate` comes back empty.

    For a product lattice the id of ``(c_1, ..., c_r)`` is the mixed-radix
    number with ``c_1`` as the most significant digit, so the id order is
    a linear extension of the coordinatewise order.
    """

    def __init__(self, kind: str, meet_table, join_table, factors: Sequence[int] = ()):
        meet_table = np.asarray(meet_table, dtype=np.int64)
        join_table = np.asarray(join_table, dtype=np.int64)
        size = meet_table.shape[0]
        if meet_table.shape != (size, size) or join_table.shape != (size, size):
            raise LatticeError("meet and join tables must be square and of equal size")
        if size < 1:
            raise LatticeError("a lattice needs at least one element")
        for name, table in (("meet", meet_table), ("join", join_table)):
            if table.min() < 0 or table.max() >= size:
                raise LatticeError(f"{name} table has entries outside 0..{size - 1}")
        meet_table.setflags(write=False)
        join_table.setflags(write=False)
        self.kind = kind
        self.size = size
        self.factors = tuple(factors)
        self.meet_table = meet_table
        self.join_table = join_table

    # construction -------------------------------------------------------

    @classmethod
    def from_tables(cls, meet_table, join_table) -> "BoundedLattice":
        return cls("table", meet_table, join_table)

    # element helpers ----------------------------------------------------

    def check(self, a) -> int:
        if isinstance(a, (bool, np.bool_)) or not isinstance(a, (int, np.integer)):
            raise LatticeError(f"lattice element must be an integer id, got {a!r}")
        a = int(a)
        if not 0 <= a < self.size:
            raise LatticeError(f"element id {a} out of range 0..{self.size - 1}")
        return a

    def meet(self, a, b) -> int:
        return int(self.meet_table[self.check(a), self.check(b)])

    def join(self, a, b) -> int:
        return int(self.join_table[self.check(a), self.check(b)])

    def leq(self, a, b) -> bool:
        a = self.check(a)
        return int(self.meet_table[a, self.check(b)]) == a

    def lt(self, a, b) -> bool:
        return a != b and self.leq(a, b)

    def meet_all(self, items, start: int | None = None) -> int:
        acc = self.top if start is None else start
        for x in items:
            acc = int(self.meet_table[acc, x])
        return acc

    def join_all(self, items, start: int | None = None) -> int:
        acc = self.bottom if start is None else start
        for x in items:
            acc = int(self.join_table[acc, x])
        return acc

    @property
    def elements(self) -> range:
        return range(self.size)

    @cached_property
    def leq_matrix(self) -> np.ndarray:
        ids = np.arange(self.size)
        m = self.meet_table == ids[:, None]
        m.setflags(write=False)
        return m

    @cached_property
    def bottom(self) -> int:
        return self._bound(self.meet_table)

    @cached_property
    def top(self) -> int:
        return self._bound(self.join_table)

    def _bound(self, table: np.ndarray) -> int:
        # the bound of a finite semilattice is the fold of the operation
        acc = 0
        for x in range(1, self.size):
            acc = int(table[acc, x])
        return acc

    @cached_property
    def is_chain(self) -> bool:
        leq = self.leq_matrix
        return bool(np.all(leq | leq.T))

    @cached_property
    def order_ranks(self) -> tuple[int, ...]:
        """Height of each element above bottom (longest chain length)."""
        leq = self.leq_matrix
        rank = [0] * self.size
        for x in sorted(range(self.size), key=lambda e: int(leq[:, e].sum())):
            below = [y for y in range(self.size) if y != x and leq[y, x]]
            rank[x] = max((rank[y] + 1 for y in below), default=0)
        return tuple(rank)

    def coords(self, a) -> tuple[int, ...]:
        """Coordinates of a product-lattice element (the id itself otherwise)."""
        a = self.check(a)
        if self.kind != "product":
            return (a,)
        out = []
        for k in reversed(self.factors):
            out.append(a % k)
            a //= k
        return tuple(reversed(out))

    def from_coords(self, coords: Sequence[int]) -> int:
        if self.kind != "product":
            if len(coords) != 1:
                raise LatticeError("coordinate tuples only apply to product lattices")
            return self.check(coords[0])
        if len(coords) != len(self.factors):
            raise LatticeError(f"expected {len(self.factors)} coordinates, got {len(coords)}")
        a = 0
        for c, k in zip(coords, self.factors):
            if not isinstance(c, (int, np.integer)) or not 0 <= c < k:
                raise LatticeError(f"coordinate {c!r} out of range for factor {k}")
            a = a * k + int(c)
        return a

    def format_element(self, a) -> str:
        if self.kind == "product":
            return "(" + ",".join(map(str, self.coords(a))) + ")"
        return str(self.check(a))

    # validation ---------------------------------------------------------

    def validate(self) -> list[Violation]:
        """Every violated lattice, bound and distributivity axiom, one witness each."""
        meet, join = self.meet_table, self.join_table
        n = self.size
        ids = np.arange(n)
        out: list[Violation] = []

        def first(mask: np.ndarray, axiom: str):
            hits = np.argwhere(mask)
            if len(hits):
                out.append(Violation(axiom, tuple(int(v) for v in hits[0])))

        for name, op in (("meet", meet), ("join", join)):
            first(op[ids, ids] != ids, f"{name} idempotence")
            first(op != op.T, f"{name} commutativity")
            # (a op b) op c vs a op (b op c)
            left = op[op[:, :, None], ids[None, None, :]]
            right = op[ids[:, None, None], op[None, :, :]]
            first(left != right, f"{name} associativity")
        first(meet[ids[:, None], join] != ids[:, None], "absorption a meet (a join b) = a")
        first(join[ids[:, None], meet] != ids[:, None], "absorption a join (a meet b) = a")
        lhs = meet[ids[:, None, None], join[None, :, :]]
        rhs = join[meet[:, :, None], meet[:, None, :]]
        first(lhs != rhs, "distributivity")
        if out:
            return out
        bot, top = self.bottom, self.top
        first(meet[bot, ids][None, :] != bot, "bottom absorbs meet")
        first(join[top, ids][None, :] != top, "top absorbs join")
        return out

    @cached_property
    def is_valid(self) -> bool:
        return not self.validate()

    def require_valid(self) -> None:
        problems = self.validate()
        if problems:
            raise LatticeError(
                "not a bounded distributive lattice: " + "; ".join(map(str, problems))
            )

    # descriptors ---------------------------------------------------------

    def descriptor(self) -> dict:
        if self.kind == "chain":
            return {"type": "chain", "size": self.size}
        if self.kind == "product":
            return {"type": "product", "factors": list(self.factors)}
        return {
            "type": "table",
            "size": self.size,
            "meet": self.meet_table.tolist(),
            "join": self.join_table.tolist(),
        }

    def describe(self) -> str:
        if self.kind == "chain":
            return f"C_{self.size}"
        if self.kind == "product":
            return "x".join(map(str, self.factors))
        return f"table({self.size})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, BoundedLattice):
            return NotImplemented
        return (
            self.size == other.size
            and np.array_equal(self.meet_table, other.meet_table)
            and np.array_equal(self.join_table, other.join_table)
        )

    def __hash__(self) -> int:
        return hash((self.size, self.meet_table.tobytes(), self.join_table.tobytes()))

    def __repr__(self) -> str:
        return f"BoundedLattice({self.describe()})"


def chain(k: int, cap: int = DEFAULT_SIZE_CAP) -> BoundedLattice:
    """The chain 0 < 1 < ... < k-1."""
    if k < 2:
        raise LatticeError("a chain needs at least 2 elements")
    if k > cap:
        raise LatticeSizeError(f"chain of size {k} exceeds cap {cap}")
    ids = np.arange(k)
    return BoundedLattice(
        "chain", np.minimum.outer(ids, ids), np.maximum.outer(ids, ids), factors=(k,)
    )


def product(factors: Sequence[int], cap: int = DEFAULT_SIZE_CAP) -> BoundedLattice:
    """Direct product of chains with coordinatewise meet and join.

    A single factor gives the chain itself.
    """
    factors = [int(k) for k in factors]
    if not factors or any(k < 2 for k in factors):
        raise LatticeError("every factor must be a chain size >= 2")
    size = math.prod(factors)
    if size > cap:
        raise LatticeSizeError(f"product {factors} has {size} elements, cap is {cap}")
    if len(factors) == 1:
        return chain(factors[0], cap)
    coords = np.array(np.unravel_index(np.arange(size), factors)).T  # (size, r)
    radix = np.array([math.prod(factors[i + 1:]) for i in range(len(factors))])
    lo = np.minimum(coords[:, None, :], coords[None, :, :]) @ radix
    hi = np.maximum(coords[:, None, :], coords[None, :, :]) @ radix
    return BoundedLattice("product", lo, hi, factors=factors)


def from_descriptor(desc: dict, cap: int = DEFAULT_SIZE_CAP) -> BoundedLattice:
    """Build a lattice from its JSON descriptor."""
    if not isinstance(desc, dict) or "type" not in desc:
        raise LatticeError("lattice descriptor must be an object with a 'type' key")
    kind = desc["type"]
    if kind == "chain":
        return chain(int(desc["size"]), cap)
    if kind == "product":
        return product(desc["factors"], cap)
    if kind == "table":
        size = int(desc["size"])
        if size > cap:
            raise LatticeSizeError(f"table lattice of size {size} exceeds cap {cap}")
        lat = BoundedLattice.from_tables(desc["meet"], desc["join"])
        if lat.size != size:
            raise LatticeError(f"declared size {size} but tables have {lat.size} rows")
        return lat
    raise LatticeError(f"unknown lattice type {kind!r}")


def maximal_chains(lat: BoundedLattice) -> list[tuple[int, ...]]:
    """All maximal chains bottom -> top, following covering pairs."""
    leq = lat.leq_matrix
    n = lat.size

    def covers(x):
        ups = [y for y in range(n) if y != x and leq[x, y]]
        return [y for y in ups if not any(z != y and leq[z, y] for z in ups)]

    out = []

    def walk(path):
        nxt = covers(path[-1])
        if not nxt:
            out.append(tuple(path))
        for y in nxt:
            walk(path + [y])

    walk([lat.bottom])
    return out
