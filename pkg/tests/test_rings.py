import pytest
from hypothesis import given, settings, strategies as st

from modlab.errors import AxiomViolation, SizeCapExceeded
from modlab.rings import (FiniteRing, cyclic_ring, enumerate_ideals,
                          ideal_intersection, ideal_sum, is_ideal_mask,
                          make_ring, matrix_ring, product_ring, quotient_ring,
                          ring_from_tables)


def test_cyclic4_basic():
    r = cyclic_ring(4)
    assert r.order == 4
    assert r.one == 1
    assert r.mul[2][2] == 0


def test_cyclic1_rejected():
    with pytest.raises(AxiomViolation) as exc:
        cyclic_ring(1)
    assert exc.value.axiom == "nontriviality"


def test_matrix_ring_order_and_noncommutativity():
    m = matrix_ring(cyclic_ring(2), 2)
    assert m.order == 16
    assert not m.is_commutative()


def test_matrix_ring_cap():
    with pytest.raises(SizeCapExceeded):
        matrix_ring(cyclic_ring(3), 2)  # 81 > 16


def test_left_ideals_of_z4():
    r = cyclic_ring(4)
    ideals = enumerate_ideals(r, "left")
    assert [i.carrier for i in ideals] == [(0,), (0, 2), (0, 1, 2, 3)]


def test_ideal_list_contains_zero_and_full():
    for ring in (cyclic_ring(6), product_ring([cyclic_ring(2), cyclic_ring(2)])):
        for sided in ("left", "two-sided"):
            ideals = enumerate_ideals(ring, sided)
            assert ideals[0].is_zero()
            assert ideals[-1].is_full()


def test_matrix_ring_is_simple():
    m = matrix_ring(cyclic_ring(2), 2)
    assert len(enumerate_ideals(m, "two-sided")) == 2


def test_quotient_z4_by_2z4():
    r = cyclic_ring(4)
    ideal = enumerate_ideals(r, "two-sided")[1]
    assert ideal.carrier == (0, 2)
    q = quotient_ring(r, ideal)
    assert q.order == 2
    assert q.projection == (0, 1, 0, 1)


def test_quotient_by_zero_keeps_tables():
    r = matrix_ring(cyclic_ring(2), 2)
    zero = enumerate_ideals(r, "two-sided")[0]
    q = quotient_ring(r, zero)
    assert q.order == 16
    assert q.add == r.add and q.mul == r.mul


def test_quotient_requires_proper_two_sided():
    r = cyclic_ring(4)
    full = enumerate_ideals(r, "two-sided")[-1]
    with pytest.raises(AxiomViolation):
        quotient_ring(r, full)
    left_only = enumerate_ideals(r, "left")[1]
    # over a commutative ring the handle is still tagged by sidedness
    assert left_only.sidedness == "left"
    with pytest.raises(AxiomViolation):
        quotient_ring(r, left_only)


def test_make_ring_dispatch():
    r = make_ring(("quotient", ("cyclic", 8), 2))
    assert r.order == 2
    p = make_ring(("product", [("cyclic", 2), ("cyclic", 3)]))
    assert p.order == 6


def test_raw_tables_roundtrip():
    base = cyclic_ring(3)
    r = ring_from_tables(base.add, base.mul)
    assert (r.zero, r.one) == (base.zero, base.one)


# --- lattice closure of the ideal set -------------------------------------

@pytest.mark.parametrize("ring_fn", [
    lambda: cyclic_ring(8),
    lambda: product_ring([cyclic_ring(2), cyclic_ring(2)]),
    lambda: matrix_ring(cyclic_ring(2), 2),
])
@pytest.mark.parametrize("sided", ["left", "two-sided"])
def test_ideals_closed_under_sum_and_intersection(ring_fn, sided):
    ring = ring_fn()
    ideals = enumerate_ideals(ring, sided)
    masks = {i.mask for i in ideals}
    for a in ideals:
        for b in ideals:
            assert ideal_sum(a, b).mask in masks
            assert ideal_intersection(a, b).mask in masks


# --- power-set oracle -------------------------------------------------------

def powerset_ideals(ring, sided):
    hits = []
    for mask in range(1 << ring.order):
        if is_ideal_mask(ring, mask, sided):
            hits.append(mask)
    return sorted(hits)


@pytest.mark.parametrize("ring_fn", [
    lambda: cyclic_ring(4),
    lambda: cyclic_ring(6),
    lambda: cyclic_ring(8),
    lambda: product_ring([cyclic_ring(2), cyclic_ring(2)]),
])
@pytest.mark.parametrize("sided", ["left", "two-sided"])
def test_ideal_enumeration_matches_powerset_oracle(ring_fn, sided):
    ring = ring_fn()
    assert ring.order <= 8
    got = sorted(i.mask for i in enumerate_ideals(ring, sided))
    assert got == powerset_ideals(ring, sided)


# --- corruption rejection ---------------------------------------------------

RINGS_FOR_CORRUPTION = [cyclic_ring(4), cyclic_ring(6),
                        product_ring([cyclic_ring(2), cyclic_ring(2)])]


@settings(max_examples=120, deadline=None)
@given(st.data())
def test_single_entry_corruption_is_rejected(data):
    base = data.draw(st.sampled_from(RINGS_FOR_CORRUPTION))
    n = base.order
    which = data.draw(st.sampled_from(["add", "mul"]))
    i = data.draw(st.integers(0, n - 1))
    j = data.draw(st.integers(0, n - 1))
    table = [list(row) for row in getattr(base, which)]
    old = table[i][j]
    new = data.draw(st.integers(0, n - 1).filter(lambda v: v != old))
    table[i][j] = new
    add = table if which == "add" else base.add
    mul = table if which == "mul" else base.mul
    with pytest.raises(AxiomViolation):
        FiniteRing(add, mul)
