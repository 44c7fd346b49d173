import random

import pytest
from hypothesis import given, settings, strategies as st

from modlab.actions import (FiniteBoundedLattice, FinitePoset, PosetAction,
                            first_witness, interval, is_first, is_prime,
                            module_action_instance, pullback, random_action,
                            random_instance_holds, random_lattice,
                            random_monotone_map, random_poset,
                            restrict_action)
from modlab.errors import AxiomViolation
from modlab.modules import direct_sum_module, regular_module
from modlab.preradicals import SOC, Trad, ZERO
from modlab.rings import cyclic_ring, enumerate_ideals


def chain(n):
    return FiniteBoundedLattice.from_leq([[i <= j for j in range(n)]
                                          for i in range(n)])


def antichain_poset(n):
    return FinitePoset([[i == j for j in range(n)] for i in range(n)])


def test_poset_axioms_enforced():
    with pytest.raises(AxiomViolation):
        FinitePoset([[False]])  # not reflexive
    with pytest.raises(AxiomViolation):
        FinitePoset([[True, True], [True, True]])  # not antisymmetric


def test_lattice_from_leq_rejects_non_lattice():
    # two incomparable elements with no top
    leq = [[True, False], [False, True]]
    with pytest.raises(AxiomViolation):
        FiniteBoundedLattice.from_leq(leq)


def test_action_axioms_enforced():
    lat = chain(3)
    poset = antichain_poset(1)
    with pytest.raises(AxiomViolation):
        PosetAction(poset, lat, [[0, 2, 2]])  # s.1 = 2 not below 1
    PosetAction(poset, lat, [[0, 1, 1]])


def test_identity_action_everything_first():
    lat = chain(4)
    poset = antichain_poset(2)
    action = PosetAction(poset, lat, [[0, 1, 2, 3], [0, 1, 2, 3]])
    for x in range(1, 4):
        assert is_first(action, x)
        assert first_witness(action, x) is None


def test_firstness_requires_nonzero():
    lat = chain(3)
    action = PosetAction(antichain_poset(1), lat, [[0, 1, 2]])
    with pytest.raises(AxiomViolation):
        is_first(action, lat.bottom)


def test_killing_action_detects_non_first():
    # s kills the middle element but not the top
    lat = chain(3)
    action = PosetAction(antichain_poset(1), lat, [[0, 0, 2]])
    assert not is_first(action, 2)
    assert first_witness(action, 2) == (1, 0)
    assert is_first(action, 1)


def test_atoms_always_first_random():
    rng = random.Random(7)
    for _ in range(30):
        lat = random_lattice(rng, 8)
        poset = random_poset(rng, rng.randrange(1, 5))
        action = random_action(rng, poset, lat)
        for a in lat.atoms():
            assert is_first(action, a)


def test_interval_endpoints():
    lat = chain(4)
    whole, keep = interval(lat, lat.bottom, lat.top)
    assert whole.size == 4 and keep == (0, 1, 2, 3)
    point, keep = interval(lat, 2, 2)
    assert point.size == 1
    with pytest.raises(AxiomViolation):
        interval(lat, 3, 1)


def test_first_iff_zero_prime_in_interval():
    rng = random.Random(11)
    for _ in range(40):
        lat = random_lattice(rng, 8)
        poset = random_poset(rng, rng.randrange(1, 5))
        action = random_action(rng, poset, lat)
        for x in range(lat.size):
            if x == lat.bottom:
                continue
            restricted, _ = restrict_action(action, x)
            assert is_first(action, x) == is_prime(restricted, 0)


def test_pullback_identity_is_same_action():
    rng = random.Random(3)
    lat = random_lattice(rng, 6)
    poset = random_poset(rng, 3)
    action = random_action(rng, poset, lat)
    pulled = pullback(action, range(poset.size), poset)
    assert pulled.act == action.act


def test_pullback_constant_at_top_element():
    rng = random.Random(5)
    lat = chain(4)
    poset = FinitePoset([[True, True], [False, True]])  # 0 < 1
    action = random_action(rng, poset, lat)
    one_el = antichain_poset(1)
    pulled = pullback(action, [1], one_el)
    assert pulled.act == (action.act[1],)


def test_pullback_rejects_non_monotone():
    lat = chain(3)
    poset = FinitePoset([[True, True], [False, True]])
    action = random_action(random.Random(0), poset, lat)
    flipped = FinitePoset([[True, True], [False, True]])
    with pytest.raises(AxiomViolation):
        pullback(action, [1, 0], flipped)


def test_pullback_preserves_first():
    rng = random.Random(23)
    checked = 0
    while checked < 40:
        lat = random_lattice(rng, 8)
        poset = random_poset(rng, rng.randrange(1, 5))
        action = random_action(rng, poset, lat)
        domain = random_poset(rng, rng.randrange(1, 5))
        f = random_monotone_map(rng, domain, poset)
        if f is None:
            continue
        pulled = pullback(action, f, domain)
        for x in range(lat.size):
            if x != lat.bottom and is_first(action, x):
                assert is_first(pulled, x)
        checked += 1


def test_restriction_is_pullback_along_inclusion():
    # restricting the acting poset to a subset preserves firstness
    rng = random.Random(29)
    lat = random_lattice(rng, 7)
    poset = random_poset(rng, 4)
    action = random_action(rng, poset, lat)
    sub_indices = [0, 2]
    sub = FinitePoset([[poset.leq[a][b] for b in sub_indices]
                       for a in sub_indices])
    restricted = pullback(action, sub_indices, sub)
    for x in range(lat.size):
        if x != lat.bottom and is_first(action, x):
            assert is_first(restricted, x)


def test_module_instance_trad_family_over_z4():
    z4 = cyclic_ring(4)
    m = regular_module(z4)
    family = [Trad(i) for i in enumerate_ideals(z4, "two-sided")]
    inst = module_action_instance(m, family)
    assert inst.action.lattice.size == 3
    assert inst.action.poset.size == 3
    # the middle ideal kills the socle but not the module
    assert not is_first(inst.action, inst.action.lattice.top)


def test_module_instance_zero_family():
    z4 = cyclic_ring(4)
    inst = module_action_instance(regular_module(z4), [ZERO])
    assert inst.action.act == ((0, 0, 0),)


def test_module_instance_soc_on_semisimple_is_identity():
    z2 = cyclic_ring(2)
    v = direct_sum_module([regular_module(z2), regular_module(z2)])
    inst = module_action_instance(v, [SOC])
    assert inst.action.act[0] == tuple(range(inst.action.lattice.size))


def test_module_instance_collapses_ties():
    z4 = cyclic_ring(4)
    m = regular_module(z4)
    ideals = enumerate_ideals(z4, "two-sided")
    # the same trad twice collapses to one poset element
    inst = module_action_instance(m, [Trad(ideals[1]), Trad(ideals[1])])
    assert inst.action.poset.size == 1
    assert len(inst.classes[0]) == 2


def test_action_instance_firstness_matches_family_firstness():
    # firstness of the top of the submodule lattice under the family action
    # is family-firstness of the module itself
    from modlab.firstness import is_A_first
    from modlab.modules import enumerate_submodules, simple_modules, submodule
    from modlab.preradicals import Alpha, RAD
    z4 = cyclic_ring(4)
    z6 = cyclic_ring(6)
    cases = []
    for ring in (z4, z6):
        m = regular_module(ring)
        soc_like = [Alpha(submodule(s, s.full_mask()))
                    for s in simple_modules(ring)]
        cases.append((m, soc_like + [SOC, RAD]))
        cases.append((m, [Trad(i) for i in enumerate_ideals(ring, "two-sided")]))
    for m, family in cases:
        inst = module_action_instance(m, family)
        top = inst.action.lattice.top
        assert is_first(inst.action, top) == is_A_first(m, family)


def test_ideal_action_firstness_is_module_primeness():
    # under the two-sided-ideal multiplication action, first modules are
    # exactly the prime modules
    from modlab.firstness import is_prime_module
    from modlab.modules import direct_sum_module, simple_modules
    z4 = cyclic_ring(4)
    z6 = cyclic_ring(6)
    mods = [regular_module(z4), simple_modules(z4)[0],
            regular_module(z6), simple_modules(z6)[0],
            direct_sum_module([simple_modules(z6)[0], simple_modules(z6)[1]])]
    for m in mods:
        family = [Trad(i) for i in enumerate_ideals(m.ring, "two-sided")]
        inst = module_action_instance(m, family)
        top = inst.action.lattice.top
        assert is_first(inst.action, top) == is_prime_module(m)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_randomized_generic_facts(seed):
    assert random_instance_holds(seed) == []
