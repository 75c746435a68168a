import itertools

import pytest
from hypothesis import given, settings, strategies as st

from equilot import certify, oracle
from equilot.model import (
    EQ1,
    EQX,
    Allocation,
    InputError,
    Instance,
    Lottery,
    ResourceLimitError,
    check_bobw,
    is_fair,
    value_profile,
)

TWO = Instance(((1, 3, 5), (4, 3, 2)))
NOBOBW = Instance(((7, 11, 11, 11), (25, 5, 5, 5), (25, 5, 5, 5)))
NOBIASED = Instance(((9, 6, 6), (1, 10, 10), (7, 7, 7)))


def test_enumerate_fair_examples():
    fair = oracle.enumerate_fair(TWO, EQ1)
    assert len(fair) == 5
    assert {value_profile(TWO, a) for a in fair} == {
        (3, 6), (5, 7), (4, 2), (6, 3), (8, 4)
    }

    eqx = oracle.enumerate_fair(TWO, EQX)
    assert len(eqx) == 1
    assert value_profile(TWO, eqx[0]) == (5, 7)

    single = oracle.enumerate_fair(Instance(((1, 2),)), EQ1)
    assert single == [Allocation((0, 0))]


def test_profile_set_examples():
    pset = oracle.profile_set(TWO, EQ1)
    assert set(pset.profiles) == {(3, 6), (5, 7), (4, 2), (6, 3), (8, 4)}
    for prof in pset.profiles:
        rep = pset.representative[prof]
        assert value_profile(TWO, rep) == prof

    assert oracle.profile_set(Instance(((10, 10), (1, 1))), EQ1).profiles == ((10, 1),)

    for prof in oracle.profile_set(NOBOBW, EQ1).profiles:
        assert 2 * prof[0] - prof[1] - prof[2] < 0


def test_brute_force_bobw_examples():
    res = oracle.brute_force_bobw(TWO, EQ1)
    assert isinstance(res, Lottery)
    rep = check_bobw(TWO, res, EQ1)
    assert rep.ex_ante_eq and rep.ex_post_fair

    res = oracle.brute_force_bobw(NOBOBW, EQ1)
    assert isinstance(res, certify.Witness)
    assert res.lam[1] == res.lam[2] == -res.lam[0] / 2

    res = oracle.brute_force_bobw(TWO, EQX)
    assert isinstance(res, certify.Witness)
    assert res.lam[0] == -res.lam[1]


def test_exists_i_biased_examples():
    assert oracle.exists_i_biased(NOBIASED, 0, EQ1) is None
    a = oracle.exists_i_biased(TWO, 0, EQ1)
    assert value_profile(TWO, a) in {(4, 2), (6, 3), (8, 4)}
    ident = Instance(((3, 2, 1), (3, 2, 1)))
    for i in range(2):
        assert oracle.exists_i_biased(ident, i, EQ1) is not None
    with pytest.raises(InputError):
        oracle.exists_i_biased(TWO, 2, EQ1)


def test_cap():
    with pytest.raises(ResourceLimitError):
        oracle.enumerate_fair(TWO, EQ1, cap=4)


@st.composite
def small_instance(draw):
    n = draw(st.integers(1, 3))
    m = draw(st.integers(0, 4))
    vals = tuple(
        tuple(draw(st.integers(0, 6)) for _ in range(m)) for _ in range(n)
    )
    return Instance(vals)


@settings(max_examples=100, deadline=None)
@given(small_instance())
def test_double_enumeration(inst):
    """Enumeration matches an independent filter over all owner vectors."""
    for notion in (EQ1, EQX):
        got = oracle.enumerate_fair(inst, notion)
        want = [
            Allocation(owner)
            for owner in itertools.product(range(inst.n), repeat=inst.m)
            if is_fair(inst, Allocation(owner), notion)
        ]
        assert got == want


@settings(max_examples=100, deadline=None)
@given(small_instance())
def test_eqx_profiles_subset_of_eq1(inst):
    eqx = set(oracle.profile_set(inst, EQX).profiles)
    eq1 = set(oracle.profile_set(inst, EQ1).profiles)
    assert eqx <= eq1


@settings(max_examples=60, deadline=None)
@given(small_instance())
def test_brute_force_support_is_fair(inst):
    if inst.m == 0:
        return
    res = oracle.brute_force_bobw(inst, EQ1)
    if isinstance(res, Lottery):
        fair = set(oracle.enumerate_fair(inst, EQ1))
        assert {a for a, _ in res.support} <= fair
    else:
        assert certify.verify_witness(res, oracle.profile_set(inst, EQ1).profiles)
