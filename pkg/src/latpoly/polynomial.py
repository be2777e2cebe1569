"""Lattice polynomial functions in disjunctive normal form.

A polynomial of arity n over a bounded distributive lattice L is stored as
one coefficient per subset I of {1..n}; the function is

    f(x) = join over I of ( a_I meet (meet of x_i for i in I) )

with the empty meet equal to top. Subsets are bitmasks: variable i (1-based)
is bit i-1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np

from .lattice import BoundedLattice, LatticeError

MAX_ARITY = 16


class PolynomialError(ValueError):
    """Invalid polynomial input: arity mismatch, bad subset, bad variable map."""


class NonMonotoneError(PolynomialError):
    """A map on subsets is not nondecreasing; carries the offending pair."""

    def __init__(self, smaller: int, larger: int, message: str):
        super().__init__(message)
        self.smaller = smaller
        self.larger = larger


# subset helpers ----------------------------------------------------------

def subset_mask(variables: Iterable[int]) -> int:
    """Bitmask of a collection of 1-based variable indices."""
    mask = 0
    for v in variables:
        if v < 1:
            raise PolynomialError(f"variable index {v} must be >= 1")
        mask |= 1 << (v - 1)
    return mask


def subset_vars(mask: int) -> tuple[int, ...]:
    """Sorted 1-based variable indices of a bitmask."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def format_subset(mask: int) -> str:
    return "{" + ",".join(map(str, subset_vars(mask))) + "}"


def subset_sort_key(mask: int) -> tuple:
    """Size first, then lexicographic on the sorted variable tuple."""
    return (bin(mask).count("1"), subset_vars(mask))


def subsets_in_order(n: int) -> list[int]:
    return sorted(range(1 << n), key=subset_sort_key)


def _as_mask(subset, n: int) -> int:
    if isinstance(subset, (int, np.integer)):
        mask = int(subset)
    else:
        mask = subset_mask(subset)
    if mask < 0 or mask >> n:
        raise PolynomialError(f"subset {subset!r} is not contained in [1..{n}]")
    return mask


@dataclass(frozen=True)
class Term:
    subset: int
    coefficient: int

    @property
    def size(self) -> int:
        return bin(self.subset).count("1")

    @property
    def variables(self) -> tuple[int, ...]:
        return subset_vars(self.subset)


@dataclass(frozen=True)
class VariableMap:
    """A map sigma: [m] -> [nu], stored as ``images[i-1] = sigma(i)``."""

    images: tuple[int, ...]
    target_arity: int

    def __post_init__(self):
        if self.target_arity < 1:
            raise PolynomialError("target arity must be >= 1")
        for v in self.images:
            if not 1 <= v <= self.target_arity:
                raise PolynomialError(
                    f"image {v} outside [1..{self.target_arity}] in variable map"
                )

    @property
    def source_arity(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def then(self, other: "VariableMap") -> "VariableMap":
        """The composite ``other o self``."""
        if other.source_arity != self.target_arity:
            raise PolynomialError("variable maps do not compose")
        return VariableMap(tuple(other(v) for v in self.images), other.target_arity)

    @classmethod
    def all_maps(cls, m: int, nu: int) -> Iterable["VariableMap"]:
        for imgs in itertools.product(range(1, nu + 1), repeat=m):
            yield cls(imgs, nu)


class DnfPolynomial:
    """An n-ary lattice polynomial held as its DNF coefficient vector.

    ``coefficients[mask]`` is a_I for the subset encoded by ``mask``.
    Instances are immutable. ``canonical`` is set on polynomials whose
    coefficients equal their values at characteristic vectors.
    """

    def __init__(self, lattice: BoundedLattice, arity: int, coefficients, canonical: bool = False):
        if not 1 <= arity <= MAX_ARITY:
            raise PolynomialError(f"arity must be in 1..{MAX_ARITY}, got {arity}")
        if not lattice.is_valid:
            raise LatticeError(
                "refusing to build a polynomial over a lattice that fails validation"
            )
        coeffs = np.asarray(coefficients, dtype=np.int64)
        if coeffs.shape != (1 << arity,):
            raise PolynomialError(f"expected {1 << arity} coefficients, got shape {coeffs.shape}")
        if coeffs.size and (coeffs.min() < 0 or coeffs.max() >= lattice.size):
            raise LatticeError("coefficient outside the lattice")
        coeffs = coeffs.copy()
        coeffs.setflags(write=False)
        self.lattice = lattice
        self.arity = arity
        self.coefficients = coeffs
        self.canonical = canonical

    @classmethod
    def from_terms(
        cls, lattice: BoundedLattice, arity: int, terms: Mapping | None = None
    ) -> "DnfPolynomial":
        """Build from ``{subset: coefficient}``; missing subsets get bottom.

        Subsets may be bitmasks or iterables of 1-based variable indices.
        """
        coeffs = np.full(1 << arity, lattice.bottom, dtype=np.int64)
        for subset, value in (terms or {}).items():
            coeffs[_as_mask(subset, arity)] = lattice.check(value)
        return cls(lattice, arity, coeffs)

    @classmethod
    def constant(cls, lattice: BoundedLattice, arity: int, value: int) -> "DnfPolynomial":
        return cls.from_terms(lattice, arity, {0: value})

    @classmethod
    def projection(cls, lattice: BoundedLattice, arity: int, i: int) -> "DnfPolynomial":
        return cls.from_terms(lattice, arity, {(i,): lattice.top})

    def coefficient(self, subset) -> int:
        return int(self.coefficients[_as_mask(subset, self.arity)])

    def terms(self) -> list[Term]:
        return [Term(mask, int(self.coefficients[mask])) for mask in subsets_in_order(self.arity)]

    # evaluation ----------------------------------------------------------

    def __call__(self, *x) -> int:
        return eval_poly(self, x)

    @cached_property
    def table(self) -> np.ndarray:
        """Values on the whole domain, flat with x_1 most significant."""
        from ._kernels import tabulate

        lat = self.lattice
        vals = tabulate(
            self.coefficients, self.arity, lat.size, lat.meet_table, lat.join_table, lat.bottom
        )
        vals.setflags(write=False)
        return vals

    def __eq__(self, other) -> bool:
        if not isinstance(other, DnfPolynomial):
            return NotImplemented
        if self.lattice != other.lattice or self.arity != other.arity:
            return False
        return equal(self, other)

    def __hash__(self) -> int:
        return hash((self.lattice, self.arity, canonicalize(self).coefficients.tobytes()))

    def __repr__(self) -> str:
        body = " v ".join(
            _format_term(self.lattice, t) for t in self.terms() if t.coefficient != self.lattice.bottom
        )
        return f"DnfPolynomial({self.lattice.describe()}, n={self.arity}: {body or '0'})"


def _format_term(lat: BoundedLattice, t: Term) -> str:
    c = lat.format_element(t.coefficient)
    if not t.subset:
        return c
    xs = "".join(f"x{v}" for v in t.variables)
    return xs if t.coefficient == lat.top else f"{c}{xs}"


# operations ---------------------------------------------------------------

def eval_poly(p: DnfPolynomial, x: Sequence[int]) -> int:
    if len(x) != p.arity:
        raise PolynomialError(f"expected {p.arity} arguments, got {len(x)}")
    lat = p.lattice
    xs = [lat.check(v) for v in x]
    meet, join = lat.meet_table, lat.join_table
    val = lat.bottom
    for mask in range(1 << p.arity):
        t = int(p.coefficients[mask])
        m, i = mask, 0
        while m and t != lat.bottom:
            if m & 1:
                t = int(meet[t, xs[i]])
            m >>= 1
            i += 1
        val = int(join[val, t])
    return val


def characteristic_vector(subset, n: int, lattice: BoundedLattice) -> tuple[int, ...]:
    mask = _as_mask(subset, n)
    return tuple(lattice.top if (mask >> i) & 1 else lattice.bottom for i in range(n))


def canonicalize(p: DnfPolynomial) -> DnfPolynomial:
    """Coefficients replaced by the values at characteristic vectors.

    At e_I only the terms with J inside I survive, so the value there is the
    join of a_J over subsets J of I; computed bit by bit.
    """
    if p.canonical:
        return p
    join = p.lattice.join_table
    c = np.array(p.coefficients)
    for i in range(p.arity):
        bit = 1 << i
        for mask in range(1 << p.arity):
            if mask & bit:
                c[mask] = join[c[mask], c[mask ^ bit]]
    return DnfPolynomial(p.lattice, p.arity, c, canonical=True)


def restriction(p: DnfPolynomial) -> dict[int, int]:
    """The values of p at every characteristic vector, keyed by subset mask."""
    return {
        mask: eval_poly(p, characteristic_vector(mask, p.arity, p.lattice))
        for mask in range(1 << p.arity)
    }


def monotonicity_violation(values: Sequence[int], n: int, lattice: BoundedLattice):
    """First pair (I, I + {i}) with values[I] not below values[I + {i}], else None."""
    for mask in subsets_in_order(n):
        for i in range(n):
            bit = 1 << i
            if not mask & bit and not lattice.leq(values[mask], values[mask | bit]):
                return mask, mask | bit
    return None


def from_boolean_restriction(g: Mapping[int, int] | Sequence[int], n: int, lattice: BoundedLattice) -> DnfPolynomial:
    """The unique polynomial with prescribed values at characteristic vectors.

    ``g`` maps subset masks (or variable tuples) to lattice elements and must
    cover every subset of [n]. A map that is not nondecreasing has no
    polynomial extension and raises :class:`NonMonotoneError`.
    """
    if isinstance(g, Mapping):
        values = [None] * (1 << n)
        for subset, v in g.items():
            values[_as_mask(subset, n)] = lattice.check(v)
        missing = [m for m, v in enumerate(values) if v is None]
        if missing:
            raise PolynomialError(f"restriction is missing subset {format_subset(missing[0])}")
    else:
        if len(g) != 1 << n:
            raise PolynomialError(f"restriction needs {1 << n} values, got {len(g)}")
        values = [lattice.check(v) for v in g]
    bad = monotonicity_violation(values, n, lattice)
    if bad is not None:
        lo, hi = bad
        raise NonMonotoneError(
            lo, hi,
            f"not nondecreasing: g({format_subset(lo)})={values[lo]} "
            f"is not below g({format_subset(hi)})={values[hi]}",
        )
    return DnfPolynomial(lattice, n, values, canonical=True)


def essential_variable(p: DnfPolynomial, j: int) -> bool:
    if not 1 <= j <= p.arity:
        raise PolynomialError(f"variable {j} out of range 1..{p.arity}")
    c = canonicalize(p).coefficients
    bit = 1 << (j - 1)
    # canonical coefficients are monotone, so "<" reduces to "!="
    return any(c[mask] != c[mask | bit] for mask in range(1 << p.arity) if not mask & bit)


def essential_variables(p: DnfPolynomial) -> tuple[int, ...]:
    return tuple(j for j in range(1, p.arity + 1) if essential_variable(p, j))


def essential_terms(p: DnfPolynomial) -> list[Term]:
    """Nonempty I whose canonical a_I lies strictly above every proper-subset coefficient's join."""
    q = canonicalize(p)
    lat = q.lattice
    c = q.coefficients
    out = []
    for mask in subsets_in_order(q.arity):
        if not mask:
            continue
        # by monotonicity the join over proper subsets is the join over the
        # maximal ones
        below = lat.join_all(int(c[mask ^ (1 << i)]) for i in range(q.arity) if mask >> i & 1)
        if below != c[mask] and lat.leq(below, int(c[mask])):
            out.append(Term(mask, int(c[mask])))
    return out


def simple_minor(p: DnfPolynomial, sigma: VariableMap | Sequence[int], target_arity: int | None = None) -> DnfPolynomial:
    """The nu-ary function x -> p(x_sigma(1), ..., x_sigma(m)), canonical.

    At e_I the arguments become e_J with J = sigma^-1(I), so the canonical
    coefficient is p's canonical a_J.
    """
    if not isinstance(sigma, VariableMap):
        sigma = VariableMap(tuple(sigma), target_arity if target_arity is not None else max(sigma))
    if sigma.source_arity != p.arity:
        raise PolynomialError(
            f"variable map has source arity {sigma.source_arity}, polynomial has {p.arity}"
        )
    c = canonicalize(p).coefficients
    nu = sigma.target_arity
    out = np.empty(1 << nu, dtype=np.int64)
    for mask in range(1 << nu):
        pulled = 0
        for i, v in enumerate(sigma.images):
            if mask >> (v - 1) & 1:
                pulled |= 1 << i
        out[mask] = c[pulled]
    return DnfPolynomial(p.lattice, nu, out, canonical=True)


def identify_variables(p: DnfPolynomial, i: int, j: int) -> DnfPolynomial:
    """Replace x_i by x_j, keeping the arity."""
    n = p.arity
    if i == j:
        raise PolynomialError("identify_variables needs two distinct positions")
    if not (1 <= i <= n and 1 <= j <= n):
        raise PolynomialError(f"positions must be in 1..{n}")
    images = tuple(j if v == i else v for v in range(1, n + 1))
    return simple_minor(p, VariableMap(images, n))


def substitute_constant(p: DnfPolynomial, i: int, c: int) -> DnfPolynomial:
    """Pin position i to the constant c; the result has arity n-1."""
    n = p.arity
    if n < 2:
        raise PolynomialError("cannot pin the only variable of a unary polynomial")
    if not 1 <= i <= n:
        raise PolynomialError(f"position {i} out of range 1..{n}")
    lat = p.lattice
    c = lat.check(c)
    values = []
    for mask in range(1 << (n - 1)):
        e = list(characteristic_vector(mask, n - 1, lat))
        e.insert(i - 1, c)
        values.append(eval_poly(p, e))
    return DnfPolynomial(lat, n - 1, values, canonical=True)


def equal(p: DnfPolynomial, q: DnfPolynomial) -> bool:
    if p.lattice != q.lattice:
        raise PolynomialError("polynomials live over different lattices")
    if p.arity != q.arity:
        raise PolynomialError(f"arity mismatch: {p.arity} vs {q.arity}")
    return bool(np.array_equal(canonicalize(p).coefficients, canonicalize(q).coefficients))
