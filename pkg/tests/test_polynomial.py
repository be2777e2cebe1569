import itertools

import pytest
from conftest import median, poly
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import all_subsets, dnf_eval, semantically_essential

from latpoly import DnfPolynomial, VariableMap, chain, product
from latpoly.lattice import BoundedLattice, LatticeError
from latpoly.polynomial import (
    NonMonotoneError,
    PolynomialError,
    canonicalize,
    characteristic_vector,
    equal,
    essential_terms,
    essential_variable,
    eval_poly,
    from_boolean_restriction,
    identify_variables,
    restriction,
    simple_minor,
    subset_mask,
    substitute_constant,
)
from conftest import N5_JOIN, N5_MEET


def sets(*groups):
    return {subset_mask(g) for g in groups}


def oracle_value(p, x):
    lat = p.lattice
    coeffs = {
        frozenset(i + 1 for i in range(p.arity) if m >> i & 1): int(p.coefficients[m])
        for m in range(1 << p.arity)
    }
    return dnf_eval(coeffs, x, lat.meet, lat.join, lat.bottom, lat.top)


def domain(p):
    return itertools.product(p.lattice.elements, repeat=p.arity)


# evaluation -------------------------------------------------------------------

def test_eval_examples(c2, c3):
    assert eval_poly(poly(c3, 2, {(1, 2): 2}), (2, 1)) == 1
    const = poly(c3, 2, {(): 1})
    assert {const(*x) for x in domain(const)} == {1}
    assert median(c2)(1, 1, 0) == 1


def test_eval_errors(c2, c3):
    p = poly(c2, 2, {(1, 2): 1})
    with pytest.raises(PolynomialError):
        p(1)
    with pytest.raises(LatticeError):
        p(1, 2)


def test_table_matches_pointwise_eval(c3):
    p = poly(c3, 3, {(): 0, (1,): 1, (2, 3): 2, (1, 2, 3): 1})
    assert [p(*x) for x in domain(p)] == list(p.table)


def test_characteristic_vector(c2, c3):
    assert characteristic_vector({1, 3}, 3, c2) == (1, 0, 1)
    assert characteristic_vector((), 2, c3) == (0, 0)
    assert characteristic_vector((1, 2, 3), 3, c3) == (2, 2, 2)


# canonical form ----------------------------------------------------------------

def test_canonicalize_examples(c2, c3):
    q = canonicalize(poly(c3, 1, {(): 1, (1,): 0}))
    assert q.coefficient((1,)) == 1

    p = poly(c2, 3, {(1,): 1, (2, 3): 1})
    q = canonicalize(p)
    # evaluate the original at every e_I independently
    for I in all_subsets(3):
        assert q.coefficient(I) == oracle_value(p, characteristic_vector(I, 3, c2))
    assert q.coefficient((1, 2)) == q.coefficient((1, 3)) == q.coefficient((1, 2, 3)) == 1
    assert q.coefficient((2,)) == 0
    assert canonicalize(q) is q
    assert list(canonicalize(DnfPolynomial(c2, 3, q.coefficients)).coefficients) == list(q.coefficients)


def test_from_boolean_restriction_examples(c2, c3):
    p = from_boolean_restriction({(): 0, (1,): 1}, 1, c2)
    assert equal(p, DnfPolynomial.projection(c2, 1, 1))

    with pytest.raises(NonMonotoneError) as e:
        from_boolean_restriction({(): 0, (1,): 1, (2,): 0, (1, 2): 0}, 2, c2)
    assert (e.value.smaller, e.value.larger) == (subset_mask([1]), subset_mask([1, 2]))

    p = from_boolean_restriction({(): 0, (1,): 1, (2,): 1, (1, 2): 2}, 2, c3)
    assert p.canonical and p(2, 2) == 2
    assert [int(v) for v in p.coefficients] == [0, 1, 1, 2]


def test_from_boolean_restriction_needs_every_subset(c2):
    with pytest.raises(PolynomialError):
        from_boolean_restriction({(): 0}, 1, c2)


def test_invalid_lattice_refused():
    n5 = BoundedLattice.from_tables(N5_MEET, N5_JOIN)
    with pytest.raises(LatticeError):
        DnfPolynomial(n5, 1, [0, 4])


# essentiality ------------------------------------------------------------------

def test_essential_variable_examples(c2):
    p = poly(c2, 2, {(1,): 1, (2,): 0})
    assert essential_variable(p, 1) and not essential_variable(p, 2)
    assert all(essential_variable(median(c2), j) for j in (1, 2, 3))
    const = poly(c2, 3, {(): 1})
    assert not any(essential_variable(const, j) for j in (1, 2, 3))
    with pytest.raises(PolynomialError):
        essential_variable(const, 4)


def test_essential_terms_examples(c2, c3):
    p = poly(c2, 3, {(1,): 1, (2, 3): 1})
    assert {t.subset for t in essential_terms(p)} == sets([1], [2, 3])
    assert {t.subset for t in essential_terms(median(c2))} == sets([1, 2], [1, 3], [2, 3])
    assert essential_terms(poly(c3, 2, {(): 2})) == []


# minors --------------------------------------------------------------------------

def test_simple_minor_examples(c2, c3):
    meet2 = poly(c3, 2, {(1, 2): 2})
    assert equal(simple_minor(meet2, VariableMap((1, 1), 1)), DnfPolynomial.projection(c3, 1, 1))

    x1 = DnfPolynomial.projection(c3, 1, 1)
    r = simple_minor(x1, VariableMap((2,), 3))
    assert r.arity == 3 and equal(r, DnfPolynomial.projection(c3, 3, 2))
    assert [essential_variable(r, j) for j in (1, 2, 3)] == [False, True, False]

    r = simple_minor(median(c2), (1, 1, 2), 2)
    for x in domain(r):
        assert r(*x) == x[0]


def test_simple_minor_rejects_bad_map(c2):
    with pytest.raises(PolynomialError):
        VariableMap((1, 4), 3)
    with pytest.raises(PolynomialError):
        simple_minor(median(c2), VariableMap((1, 2), 2))


def test_identify_variables_examples(c2):
    p = poly(c2, 2, {(1,): 1, (2,): 1})
    assert equal(identify_variables(p, 2, 1), DnfPolynomial.projection(c2, 2, 1))
    p = poly(c2, 3, {(1, 2, 3): 1})
    assert equal(identify_variables(p, 3, 1), poly(c2, 3, {(1, 2): 1}))
    assert equal(identify_variables(median(c2), 2, 1), DnfPolynomial.projection(c2, 3, 1))
    with pytest.raises(PolynomialError):
        identify_variables(p, 2, 2)


def test_substitute_constant_examples(c2):
    p = poly(c2, 2, {(1, 2): 1})
    assert equal(substitute_constant(p, 2, 1), DnfPolynomial.projection(c2, 1, 1))
    assert equal(substitute_constant(p, 2, 0), DnfPolynomial.constant(c2, 1, 0))
    assert equal(substitute_constant(median(c2), 3, 1), poly(c2, 2, {(1,): 1, (2,): 1}))
    with pytest.raises(PolynomialError):
        substitute_constant(DnfPolynomial.projection(c2, 1, 1), 1, 0)


def test_equal_examples(c2, c3):
    p = poly(c2, 2, {(1,): 1, (1, 2): 1})
    assert equal(p, canonicalize(p))
    assert not equal(poly(c2, 2, {(1,): 1, (2,): 1}), poly(c2, 2, {(1, 2): 1}))
    assert equal(p, DnfPolynomial.projection(c2, 2, 1))
    with pytest.raises(PolynomialError):
        equal(p, poly(c3, 2, {}))
    with pytest.raises(PolynomialError):
        equal(p, poly(c2, 3, {}))


# properties ----------------------------------------------------------------------

LATTICES = [chain(2), chain(3), chain(4), product([2, 2]), product([3, 2])]


@st.composite
def polynomials(draw, max_arity=3):
    lat = draw(st.sampled_from(LATTICES))
    n = draw(st.integers(1, max_arity))
    coeffs = draw(st.lists(st.integers(0, lat.size - 1), min_size=1 << n, max_size=1 << n))
    return DnfPolynomial(lat, n, coeffs)


@st.composite
def points(draw, p):
    return tuple(draw(st.integers(0, p.lattice.size - 1)) for _ in range(p.arity))


@given(polynomials(), st.data())
def test_eval_matches_reference(p, data):
    x = data.draw(points(p))
    assert p(*x) == oracle_value(p, x)


@given(polynomials(), st.data())
def test_eval_monotone(p, data):
    lat = p.lattice
    x = data.draw(points(p))
    y = tuple(lat.join(a, data.draw(st.integers(0, lat.size - 1))) for a in x)
    assert lat.leq(p(*x), p(*y))


@given(polynomials())
def test_canonical_agreement_and_round_trip(p):
    q = canonicalize(p)
    lat = p.lattice
    for mask in range(1 << p.arity):
        assert p(*characteristic_vector(mask, p.arity, lat)) == q.coefficients[mask]
    assert list(p.table) == list(q.table)
    back = from_boolean_restriction(restriction(p), p.arity, lat)
    assert list(back.coefficients) == list(q.coefficients)
    assert canonicalize(q) is q


@given(polynomials())
def test_dropping_inessential_terms_keeps_function(p):
    q = canonicalize(p)
    lat = p.lattice
    kept = {t.subset: t.coefficient for t in essential_terms(q)}
    kept[0] = int(q.coefficients[0])
    r = DnfPolynomial.from_terms(lat, p.arity, kept)
    assert list(r.table) == list(p.table)


@settings(max_examples=50)
@given(polynomials(max_arity=3))
def test_essential_variable_is_semantic(p):
    for j in range(1, p.arity + 1):
        assert essential_variable(p, j) == semantically_essential(p, p.arity, p.lattice.elements, j)


@given(polynomials(), st.data())
def test_minor_composition(p, data):
    nu = data.draw(st.integers(1, 3))
    mu = data.draw(st.integers(1, 3))
    sigma = VariableMap(tuple(data.draw(st.integers(1, nu)) for _ in range(p.arity)), nu)
    tau = VariableMap(tuple(data.draw(st.integers(1, mu)) for _ in range(nu)), mu)
    once = simple_minor(p, sigma.then(tau))
    twice = simple_minor(simple_minor(p, sigma), tau)
    assert list(once.coefficients) == list(twice.coefficients)
    x = data.draw(st.tuples(*[st.integers(0, p.lattice.size - 1)] * nu))
    assert simple_minor(p, sigma)(*x) == p(*(x[sigma(i) - 1] for i in range(1, p.arity + 1)))


@given(polynomials(), st.data())
def test_substitute_constant_pointwise(p, data):
    if p.arity < 2:
        return
    lat = p.lattice
    i = data.draw(st.integers(1, p.arity))
    c = data.draw(st.integers(0, lat.size - 1))
    r = substitute_constant(p, i, c)
    for x in itertools.product(lat.elements, repeat=p.arity - 1):
        full = list(x)
        full.insert(i - 1, c)
        assert r(*x) == p(*full)
