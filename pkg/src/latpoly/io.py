"""JSON polynomial files.

    {
      "lattice": {"type": "chain", "size": 3},
      "arity": 2,
      "coefficients": {"": 0, "1": 1, "1,2": 2}
    }

Keys are comma-separated 1-based variable indices ("" is the empty set),
missing keys mean bottom. Values are element ids, or coordinate lists for
product lattices.
"""

from __future__ import annotations

import json
from pathlib import Path

from .lattice import BoundedLattice, LatticeError, from_descriptor
from .polynomial import DnfPolynomial, subset_mask, subset_vars


class FileFormatError(ValueError):
    pass


def parse_subset_key(key: str, arity: int) -> int:
    key = key.strip()
    if not key:
        return 0
    try:
        idx = [int(part) for part in key.split(",")]
    except ValueError:
        raise FileFormatError(f"bad subset key {key!r}") from None
    if len(set(idx)) != len(idx):
        raise FileFormatError(f"repeated variable in subset key {key!r}")
    if any(not 1 <= i <= arity for i in idx):
        raise FileFormatError(f"subset key {key!r} not inside [1..{arity}]")
    return subset_mask(idx)


def subset_key(mask: int) -> str:
    return ",".join(map(str, subset_vars(mask)))


def parse_element(value, lattice: BoundedLattice) -> int:
    if isinstance(value, list):
        return lattice.from_coords(value)
    if isinstance(value, bool) or not isinstance(value, int):
        raise FileFormatError(f"element must be an integer id or coordinate list, got {value!r}")
    return lattice.check(value)


def polynomial_from_dict(data: dict) -> DnfPolynomial:
    try:
        lattice = from_descriptor(data["lattice"])
        arity = data["arity"]
        coeffs = data.get("coefficients", {})
    except KeyError as e:
        raise FileFormatError(f"polynomial file is missing {e.args[0]!r}") from None
    if isinstance(arity, bool) or not isinstance(arity, int):
        raise FileFormatError("arity must be an integer")
    if not isinstance(coeffs, dict):
        raise FileFormatError("coefficients must be an object")
    problems = lattice.validate()
    if problems:
        raise LatticeError("lattice is not bounded distributive: " + "; ".join(map(str, problems)))
    terms = {}
    for key, value in coeffs.items():
        mask = parse_subset_key(key, arity)
        if mask in terms:
            raise FileFormatError(f"subset {key!r} given twice")
        terms[mask] = parse_element(value, lattice)
    return DnfPolynomial.from_terms(lattice, arity, terms)


def polynomial_to_dict(p: DnfPolynomial, skip_bottom: bool = True) -> dict:
    lat = p.lattice

    def enc(a):
        return list(lat.coords(a)) if lat.kind == "product" else int(a)

    coeffs = {
        subset_key(t.subset): enc(t.coefficient)
        for t in p.terms()
        if not (skip_bottom and t.coefficient == lat.bottom)
    }
    return {"lattice": lat.descriptor(), "arity": p.arity, "coefficients": coeffs}


def _read_json(source):
    if isinstance(source, dict):
        return source
    text = str(source)
    if text.lstrip().startswith("{"):
        return json.loads(text)
    return json.loads(Path(text).read_text())


def load_polynomial(source) -> DnfPolynomial:
    """Polynomial from a path, a JSON string, or an already-parsed dict."""
    try:
        return polynomial_from_dict(_read_json(source))
    except json.JSONDecodeError as e:
        raise FileFormatError(f"invalid JSON: {e}") from None


def load_lattice(source) -> BoundedLattice:
    """Lattice from a descriptor, or from a polynomial file's ``lattice`` entry."""
    try:
        data = _read_json(source)
    except json.JSONDecodeError as e:
        raise FileFormatError(f"invalid JSON: {e}") from None
    if "lattice" in data:
        data = data["lattice"]
    return from_descriptor(data)


def dump_polynomial(p: DnfPolynomial) -> str:
    return json.dumps(polynomial_to_dict(p), sort_keys=False)

