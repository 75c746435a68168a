import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from equilot import certify, oracle
from equilot.certify import (
    Feasible,
    Infeasible,
    caratheodory_prune,
    decide_bobw,
    mix_to_equal,
    nonexistence_witness,
    verify_witness,
)
from equilot.model import EQ1, EQX, InputError, Instance

NOBOBW = Instance(((7, 11, 11, 11), (25, 5, 5, 5), (25, 5, 5, 5)))
TWO = Instance(((1, 3, 5), (4, 3, 2)))


def test_mix_to_equal_examples():
    probs, mu = mix_to_equal([(5, 7), (4, 2)])
    assert probs == (Fraction(1, 2), Fraction(1, 2))
    assert mu == Fraction(9, 2)

    assert mix_to_equal([(10, 1)]) is None

    probs, mu = mix_to_equal([(3, 3)])
    assert probs == (1,) and mu == 3

    with pytest.raises(InputError):
        mix_to_equal([])
    with pytest.raises(InputError):
        mix_to_equal([(1, 2), (1,)])


def test_nonexistence_witness_examples():
    profs = oracle.profile_set(NOBOBW, EQ1).profiles
    w = nonexistence_witness(profs)
    assert w is not None
    # proportional to (2, -1, -1)
    assert w.lam[0] > 0
    assert w.lam[1] == w.lam[2] == -w.lam[0] / 2
    assert verify_witness(w, profs)

    assert nonexistence_witness([(5, 7), (4, 2)]) is None

    w = nonexistence_witness([(0, 1), (0, 2)])
    assert w is not None and w.lam == (1, -1)


def test_caratheodory_prune():
    entries = [((0, 0), Fraction(1, 4)), ((2, 0), Fraction(1, 4)),
               ((0, 2), Fraction(1, 4)), ((2, 2), Fraction(1, 4))]
    pruned = caratheodory_prune(entries)
    assert len(pruned) <= 3
    for axis in range(2):
        assert sum(p * v[axis] for v, p in pruned) == 1

    small = [((1, 2), Fraction(1, 2)), ((3, 4), Fraction(1, 2))]
    assert sorted(caratheodory_prune(small)) == sorted(
        [(tuple(map(Fraction, v)), p) for v, p in small]
    )

    dup = [((1, 1), Fraction(1, 2)), ((1, 1), Fraction(1, 2))]
    assert caratheodory_prune(dup) == [((1, 1), Fraction(1))]

    with pytest.raises(InputError):
        caratheodory_prune([((1, 1), Fraction(1, 2))])


def test_decide_bobw_examples():
    res = decide_bobw(oracle.profile_set(TWO, EQ1))
    assert isinstance(res, Feasible)

    res = decide_bobw(oracle.profile_set(TWO, EQX))
    assert isinstance(res, Infeasible)
    lam = res.witness.lam
    assert lam[0] == -lam[1]  # (1, -1) direction

    res = decide_bobw(oracle.profile_set(NOBOBW, EQ1))
    assert isinstance(res, Infeasible)


@settings(max_examples=120, deadline=None)
@given(
    st.lists(
        st.tuples(st.integers(0, 9), st.integers(0, 9), st.integers(0, 9)),
        min_size=1,
        max_size=8,
    )
)
def test_dichotomy(profiles):
    mixed = mix_to_equal(profiles)
    witness = nonexistence_witness(profiles)
    assert (mixed is None) != (witness is None)
    if mixed is not None:
        probs, mu = mixed
        assert sum(probs) == 1 and all(p >= 0 for p in probs)
        for axis in range(3):
            assert sum(p * v[axis] for p, v in zip(probs, profiles)) == mu
    else:
        assert verify_witness(witness, profiles)


@settings(max_examples=80, deadline=None)
@given(
    st.lists(
        st.tuples(st.integers(0, 6), st.integers(0, 6)),
        min_size=1,
        max_size=10,
    ),
    st.randoms(use_true_random=False),
)
def test_prune_preserves_expectation(vectors, rng):
    weights = [rng.randint(1, 5) for _ in vectors]
    total = sum(weights)
    entries = [(v, Fraction(w, total)) for v, w in zip(vectors, weights)]
    before = [sum(p * v[a] for v, p in entries) for a in range(2)]
    pruned = certify.prune_support(entries)
    assert len(pruned) <= 3
    assert sum(p for _, p in pruned) == 1
    after = [sum(p * v[a] for v, p in pruned) for a in range(2)]
    assert before == after
