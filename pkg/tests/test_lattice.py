import itertools

import numpy as np
import pytest
from conftest import M3_JOIN, M3_MEET, N5_JOIN, N5_MEET
from hypothesis import given
from hypothesis import strategies as st
from oracles import count_maximal_chains_grid, distributivity_failures, product_ops

from latpoly.lattice import (
    BoundedLattice,
    LatticeError,
    LatticeSizeError,
    chain,
    from_descriptor,
    maximal_chains,
    product,
)

LATTICES = [chain(2), chain(3), chain(5), product([2, 2]), product([3, 2]), product([2, 2, 2])]


def test_chain_meet_join():
    c3, c5 = chain(3), chain(5)
    assert c3.meet(2, 1) == 1
    assert c5.meet(0, 4) == 0
    assert c3.join(2, 1) == 2
    assert c5.join(0, 4) == 4
    assert c3.leq(1, 2)


def test_product_operations():
    b = product([2, 2])
    a, c = b.from_coords((1, 0)), b.from_coords((0, 1))
    assert b.coords(b.meet(a, c)) == (0, 0)
    assert b.coords(b.join(a, c)) == (1, 1)
    assert not b.leq(a, c) and not b.leq(c, a)


@pytest.mark.parametrize("lat", LATTICES, ids=repr)
def test_bottom_below_everything(lat):
    assert all(lat.leq(lat.bottom, x) for x in lat.elements)
    assert all(lat.leq(x, lat.top) for x in lat.elements)


def test_out_of_range():
    c3 = chain(3)
    with pytest.raises(LatticeError):
        c3.meet(3, 0)
    with pytest.raises(LatticeError):
        c3.join(-1, 0)
    with pytest.raises(LatticeError):
        c3.leq(0, 7)


def test_chain_ids_are_ranks():
    c = chain(4)
    assert c.is_chain
    assert c.order_ranks == (0, 1, 2, 3)
    assert all(c.leq(a, b) == (a <= b) for a in range(4) for b in range(4))


@pytest.mark.parametrize("lat", LATTICES, ids=repr)
def test_chains_and_products_validate(lat):
    assert lat.validate() == []


def test_pentagon_rejected_with_distributivity_witness():
    lat = BoundedLattice.from_tables(N5_MEET, N5_JOIN)
    report = lat.validate()
    assert [v.axiom for v in report] == ["distributivity"]
    # brute-force scan of the same tables finds the same first triple
    meet = lambda a, b: N5_MEET[a][b]  # noqa: E731
    join = lambda a, b: N5_JOIN[a][b]  # noqa: E731
    failures = distributivity_failures(range(5), meet, join)
    assert report[0].witness == failures[0] == (2, 1, 3)


def test_diamond_rejected():
    lat = BoundedLattice.from_tables(M3_MEET, M3_JOIN)
    assert [v.axiom for v in lat.validate()] == ["distributivity"]
    assert not lat.is_valid


def test_broken_table_reports_each_axiom():
    meet = np.array(N5_MEET)
    meet[1, 2] = 2  # breaks commutativity
    lat = BoundedLattice.from_tables(meet, N5_JOIN)
    axioms = {v.axiom for v in lat.validate()}
    assert "meet commutativity" in axioms


def test_product_sizes():
    assert product([2, 2]).size == 4
    single = product([2])
    assert single.is_chain and single.size == 2
    assert not product([2, 2]).is_chain


def test_product_3x2_maximal_chains():
    lat = product([3, 2])
    chains = maximal_chains(lat)
    assert lat.size == 6
    assert len(chains) == count_maximal_chains_grid([3, 2]) == 3
    assert all(len(c) == 4 for c in chains)


def test_product_cap():
    with pytest.raises(LatticeSizeError):
        product([4, 4, 5])
    assert product([4, 4, 5], cap=80).size == 80
    with pytest.raises(LatticeError):
        product([1, 3])


def test_product_matches_coordinatewise_oracle():
    factors = [3, 2, 2]
    lat = product(factors)
    elems, meet, join = product_ops(factors)
    for a, b in itertools.product(elems, repeat=2):
        ia, ib = lat.from_coords(a), lat.from_coords(b)
        assert lat.coords(lat.meet(ia, ib)) == meet(a, b)
        assert lat.coords(lat.join(ia, ib)) == join(a, b)


@pytest.mark.parametrize("desc", [
    {"type": "chain", "size": 4},
    {"type": "product", "factors": [2, 3]},
    {"type": "table", "size": 5, "meet": M3_MEET, "join": M3_JOIN},
])
def test_descriptor_round_trip(desc):
    lat = from_descriptor(desc)
    assert from_descriptor(lat.descriptor()) == lat


def test_bad_descriptor():
    with pytest.raises(LatticeError):
        from_descriptor({"type": "cube"})
    with pytest.raises(LatticeError):
        from_descriptor({"type": "table", "size": 3, "meet": N5_MEET, "join": N5_JOIN})


@pytest.mark.parametrize("lat", LATTICES, ids=repr)
def test_is_chain_iff_total(lat):
    total = all(lat.leq(a, b) or lat.leq(b, a) for a in lat.elements for b in lat.elements)
    assert lat.is_chain == total


lattices = st.sampled_from(LATTICES)


@given(lattices, st.data())
def test_meet_below_join(lat, data):
    a = data.draw(st.integers(0, lat.size - 1))
    b = data.draw(st.integers(0, lat.size - 1))
    assert lat.leq(lat.meet(a, b), a)
    assert lat.leq(a, lat.join(a, b))
    assert lat.leq(a, b) == (lat.meet(a, b) == a)


@given(lattices, st.data())
def test_distributive_law(lat, data):
    a, b, c = (data.draw(st.integers(0, lat.size - 1)) for _ in range(3))
    assert lat.meet(a, lat.join(b, c)) == lat.join(lat.meet(a, b), lat.meet(a, c))
