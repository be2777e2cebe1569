"""Lattice polynomial functions over finite distributive lattices and their self-commutation."""

from .commutation import (
    CommutationWitness,
    OperationTable,
    Verdict,
    commute,
    self_commuting,
    strongly_bisymmetric,
    table_of,
)
from .lattice import BoundedLattice, chain, from_descriptor, product
from .polynomial import (
    DnfPolynomial,
    Term,
    VariableMap,
    canonicalize,
    characteristic_vector,
    equal,
    essential_terms,
    essential_variable,
    eval_poly,
    from_boolean_restriction,
    identify_variables,
    simple_minor,
    substitute_constant,
)
from .structure import (
    ChainForm,
    NotChainStructured,
    WeightedDisjunction,
    classify,
    is_self_commuting_fast,
)

__version__ = "0.1.0"
