from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from equilot import exactlp
from equilot.exactlp import (
    EQ,
    GE,
    LE,
    Infeasible,
    LinearProgram,
    Optimal,
    Unbounded,
    affine_dependency,
    lp_solve,
    verify_infeasibility,
    verify_optimality,
)
from equilot.model import InputError


def test_simple_max():
    lp = LinearProgram(1, (((1,), LE, 3),), (1,), sense="max")
    res = lp_solve(lp)
    assert isinstance(res, Optimal)
    assert res.point == (3,)
    assert res.value == 3
    assert verify_optimality(lp, res)


def test_mixing_feasibility():
    # p1 + p2 = 1, 5 p1 + 4 p2 = 7 p1 + 2 p2, p >= 0
    lp = LinearProgram(
        2,
        (((1, 1), EQ, 1), ((5 - 7, 4 - 2), EQ, 0)),
        (0, 0),
    )
    res = lp_solve(lp)
    assert isinstance(res, Optimal)
    assert res.point == (Fraction(1, 2), Fraction(1, 2))


def test_infeasible_pair():
    lp = LinearProgram(1, (((1,), LE, 1), ((1,), GE, 2)), (0,))
    res = lp_solve(lp)
    assert isinstance(res, Infeasible)
    assert verify_infeasibility(lp, res.certificate)


def test_unbounded():
    lp = LinearProgram(1, (), (1,), sense="max")
    res = lp_solve(lp)
    assert isinstance(res, Unbounded)


def test_free_variable():
    # min y s.t. y >= x - 2, y >= 2 - x with x in [0, 4], y free
    lp = LinearProgram(
        2,
        (((1, -1), LE, 2), ((-1, -1), LE, -2)),
        (0, 1),
        sense="min",
        lower=(0, None),
        upper=(4, None),
    )
    res = lp_solve(lp)
    assert isinstance(res, Optimal)
    assert res.value == 0
    assert res.point[0] == 2


def test_malformed():
    with pytest.raises(InputError):
        LinearProgram(2, (((1,), LE, 0),), (0, 0))
    with pytest.raises(InputError):
        LinearProgram(1, (), (1, 2))
    with pytest.raises(InputError):
        LinearProgram(1, (((1,), "<>", 0),), (1,))


def test_determinism():
    lp = LinearProgram(
        3,
        (((1, 1, 1), EQ, 1), ((2, 1, 0), LE, 2)),
        (1, 2, 3),
        sense="max",
    )
    assert lp_solve(lp) == lp_solve(lp)


def test_affine_dependency():
    dep = affine_dependency([(0, 0), (1, 0), (2, 0), (0, 1)])
    assert dep is not None and any(c != 0 for c in dep)
    assert sum(dep) == 0
    assert sum(c * v[0] for c, v in zip(dep, [(0, 0), (1, 0), (2, 0), (0, 1)])) == 0
    assert sum(c * v[1] for c, v in zip(dep, [(0, 0), (1, 0), (2, 0), (0, 1)])) == 0

    assert affine_dependency([(0, 0), (1, 1)]) is None

    dup = [(3, 4)] * 4
    dep = affine_dependency(dup)
    assert dep is not None and sum(dep) == 0

    with pytest.raises(InputError):
        affine_dependency([(0, 0), (1,)])


@st.composite
def random_lp(draw):
    nv = draw(st.integers(1, 3))
    nc = draw(st.integers(0, 4))
    coef = st.integers(-4, 4)
    cons = tuple(
        (
            tuple(draw(coef) for _ in range(nv)),
            draw(st.sampled_from([LE, EQ, GE])),
            draw(coef),
        )
        for _ in range(nc)
    )
    obj = tuple(draw(coef) for _ in range(nv))
    upper = tuple(draw(st.sampled_from([None, 3])) for _ in range(nv))
    return LinearProgram(nv, cons, obj, sense="max", upper=upper)


@settings(max_examples=150, deadline=None)
@given(random_lp())
def test_solver_certificates(lp):
    """lp_solve verifies its own certificates; re-verify externally too."""
    res = lp_solve(lp)
    if isinstance(res, Optimal):
        assert verify_optimality(lp, res)
        for row, rel, rhs in lp.constraints:
            lhs = sum(c * x for c, x in zip(row, res.point))
            assert (
                (rel == LE and lhs <= rhs)
                or (rel == GE and lhs >= rhs)
                or (rel == EQ and lhs == rhs)
            )
    elif isinstance(res, Infeasible):
        assert verify_infeasibility(lp, res.certificate)
    else:
        assert exactlp.verify_unbounded(lp, res)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(st.integers(-5, 5), st.integers(-5, 5)), min_size=4, max_size=8))
def test_affine_dependency_always_verifies(vectors):
    dep = affine_dependency(vectors)
    # >= dim + 2 vectors in dimension 2 are always affinely dependent
    assert dep is not None
    assert any(c != 0 for c in dep)
    assert sum(dep) == 0
    for axis in range(2):
        assert sum(c * v[axis] for c, v in zip(dep, vectors)) == 0
