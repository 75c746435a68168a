import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from equilot.model import (
    EQ1,
    EQX,
    Allocation,
    FractionalAllocation,
    InputError,
    Instance,
    Lottery,
    PreconditionError,
    allocation_from_json,
    allocation_to_json,
    bundle_value,
    check_bobw,
    expected_profile,
    format_fraction,
    instance_from_json,
    instance_to_json,
    is_eq,
    is_eq1,
    is_eqx,
    is_fair,
    is_i_biased,
    is_normalised,
    lottery_from_json,
    lottery_to_json,
    parse_fraction,
    value_profile,
)

TWO = Instance(((1, 3, 5), (4, 3, 2)))


def test_instance_validation():
    with pytest.raises(InputError):
        Instance(())
    with pytest.raises(InputError):
        Instance(((1, 2), (3,)))
    with pytest.raises(InputError):
        Instance(((1, -1),))
    assert Instance(((),)).m == 0


def test_allocation_validation():
    Allocation((0, 1, 0))
    with pytest.raises(InputError):
        Allocation((0, -1))


def test_fractional_allocation_columns():
    FractionalAllocation(((Fraction(1, 2),), (Fraction(1, 2),)))
    with pytest.raises(InputError):
        FractionalAllocation(((Fraction(1, 2),), (Fraction(1, 3),)))


def test_lottery_merges_duplicates():
    a = Allocation((0, 1))
    lot = Lottery.of([(a, Fraction(1, 2)), (a, Fraction(1, 2))])
    assert len(lot.support) == 1
    with pytest.raises(InputError):
        Lottery.of([(a, Fraction(1, 3))])


def test_bundle_value():
    assert bundle_value(TWO, 0, {2}) == 5
    assert bundle_value(TWO, 0, set()) == 0
    assert bundle_value(TWO, 1, {0, 1}) == 7
    with pytest.raises(InputError):
        bundle_value(TWO, 2, {0})
    with pytest.raises(InputError):
        bundle_value(TWO, 0, {3})


def test_is_normalised():
    assert is_normalised(TWO) == 9
    assert is_normalised(Instance(((10, 10), (1, 1)))) is None
    assert is_normalised(Instance(((),))) == 0


def test_is_eq1():
    assert is_eq1(TWO, Allocation((1, 1, 0)))  # 5 >= 7 - 4
    assert not is_eq1(TWO, Allocation((1, 1, 1)))  # 0 >= 9 - 4 fails
    # every agent holds at most one good
    assert is_eq1(Instance(((9, 1), (1, 9))), Allocation((0, 1)))


def test_is_eqx():
    assert is_eqx(TWO, Allocation((1, 1, 0)))
    assert not is_eqx(TWO, Allocation((0, 0, 1)))  # 2 >= 4 - 1 fails
    assert is_eqx(Instance(((9, 1), (1, 9))), Allocation((0, 1)))


def test_dimension_mismatch():
    with pytest.raises(InputError):
        is_eq1(TWO, Allocation((0, 1)))
    with pytest.raises(InputError):
        is_eq1(TWO, Allocation((0, 1, 2)))


def test_is_eq():
    assert is_eq((Fraction(9, 2), Fraction(9, 2)))
    assert not is_eq((5, 7))
    assert is_eq((3,))


def test_is_i_biased():
    assert is_i_biased(TWO, Allocation((0, 0, 1)), 0, EQ1)
    assert not is_i_biased(TWO, Allocation((1, 1, 0)), 0, EQ1)
    # EQ allocation is biased toward everyone
    ident = Instance(((2, 2), (2, 2)))
    assert is_i_biased(ident, Allocation((0, 1)), 0, EQ1)
    assert is_i_biased(ident, Allocation((0, 1)), 1, EQ1)
    with pytest.raises(PreconditionError):
        is_i_biased(TWO, Allocation((1, 1, 1)), 0, EQ1)


def test_check_bobw():
    lot = Lottery.of(
        [
            (Allocation((0, 0, 1)), Fraction(1, 2)),
            (Allocation((1, 1, 0)), Fraction(1, 2)),
        ]
    )
    rep = check_bobw(TWO, lot, EQ1)
    assert rep.ex_ante_eq and rep.ex_post_fair
    assert rep.expected_profile == (Fraction(9, 2), Fraction(9, 2))

    ident = Instance(((2, 2), (2, 2)))
    rep = check_bobw(ident, Lottery.of([(Allocation((0, 1)), Fraction(1))]), EQ1)
    assert rep.ex_ante_eq and rep.ex_post_fair

    nn = Instance(((10, 10), (1, 1)))
    rep = check_bobw(nn, Lottery.of([(Allocation((0, 1)), Fraction(1))]), EQ1)
    assert not rep.ex_ante_eq
    assert rep.ex_post_fair
    assert rep.expected_profile == (10, 1)


def test_fraction_strings():
    assert format_fraction(Fraction(3, 6)) == "1/2"
    assert format_fraction(Fraction(4)) == "4"
    assert parse_fraction("5/13") == Fraction(5, 13)
    assert parse_fraction("3") == 3
    for bad in ("0.5", "1e-3", "1/0.5", ""):
        with pytest.raises(InputError):
            parse_fraction(bad)


def test_json_round_trips():
    assert instance_from_json(instance_to_json(TWO)) == TWO
    a = Allocation((1, 0, 1))
    assert allocation_from_json(allocation_to_json(a)) == a
    lot = Lottery.of(
        [(Allocation((0, 1)), Fraction(1, 3)), (Allocation((1, 0)), Fraction(2, 3))]
    )
    blob = json.loads(json.dumps(lottery_to_json(lot)))
    assert lottery_from_json(blob) == lot
    with pytest.raises(InputError):
        instance_from_json({"n": 2, "m": 1, "valuations": [[1]]})


small_instances = st.integers(1, 3).flatmap(
    lambda n: st.integers(0, 5).flatmap(
        lambda m: st.tuples(
            st.just(n),
            st.lists(
                st.lists(st.integers(0, 8), min_size=m, max_size=m),
                min_size=n,
                max_size=n,
            ),
        )
    )
)


@st.composite
def instance_and_allocation(draw):
    n = draw(st.integers(1, 3))
    m = draw(st.integers(0, 5))
    vals = tuple(
        tuple(draw(st.integers(0, 8)) for _ in range(m)) for _ in range(n)
    )
    owner = tuple(draw(st.integers(0, n - 1)) for _ in range(m))
    return Instance(vals), Allocation(owner)


@given(instance_and_allocation())
def test_eqx_implies_eq1(pair):
    inst, alloc = pair
    if is_eqx(inst, alloc):
        assert is_eq1(inst, alloc)


@given(instance_and_allocation())
def test_equal_profile_implies_eq1(pair):
    inst, alloc = pair
    if is_eq(value_profile(inst, alloc)):
        assert is_eq1(inst, alloc)


@given(instance_and_allocation())
def test_bundle_value_additive(pair):
    inst, alloc = pair
    goods = list(range(inst.m))
    s = {g for g in goods if g % 2 == 0}
    t = set(goods) - s
    assert bundle_value(inst, 0, s) + bundle_value(inst, 0, t) == bundle_value(
        inst, 0, set(goods)
    )


@given(instance_and_allocation(), st.integers(1, 4))
def test_expected_profile_is_weighted_sum(pair, denom):
    inst, alloc = pair
    other = Allocation(tuple((o + 1) % inst.n for o in alloc.owner))
    p = Fraction(1, denom + 1)
    entries = [(alloc, p)] + ([(other, 1 - p)] if other != alloc else [(alloc, 1 - p)])
    lot = Lottery.of(entries)
    manual = tuple(
        sum(q * Fraction(value_profile(inst, a)[i]) for a, q in lot.support)
        for i in range(inst.n)
    )
    assert expected_profile(inst, lot) == manual
    # the induced fractional allocation is column-stochastic by construction
    lot.to_fractional(inst.n)


@given(instance_and_allocation())
def test_fairness_matches_direct_definition(pair):
    """Cross-check the w/h formulation against the literal pair definition."""
    inst, alloc = pair
    bundles = alloc.bundles(inst.n)
    for notion, pick in ((EQ1, max), (EQX, min)):
        expect = True
        for j in range(inst.n):
            if not bundles[j]:
                continue
            vj = bundle_value(inst, j, bundles[j])
            ext = pick(inst.valuations[j][g] for g in bundles[j])
            for i in range(inst.n):
                if bundle_value(inst, i, bundles[i]) < vj - ext:
                    expect = False
        assert is_fair(inst, alloc, notion) == expect
