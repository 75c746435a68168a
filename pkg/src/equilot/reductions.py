"""Hardness-reduction instance generators and canned counterexamples.

Each generator maps a number-partitioning input to a normalised allocation
instance whose best-of-both-worlds (or biased-EQ1) answer encodes the
partition answer. The forward-direction lottery constructions are included
so that yes-instances can be certified mechanically.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction

from .model import (
    EQ1,
    Allocation,
    InputError,
    Instance,
    Lottery,
    check_bobw,
    is_normalised,
)


@dataclass(frozen=True)
class PartitionInput:
    """Positive integers b_1..b_m with target T; the applicable sum condition
    (2T for the two-way reductions, kT with m = 3k for the three-way one) is
    checked by each generator."""

    numbers: tuple
    target: int

    def __post_init__(self):
        if not self.numbers:
            raise InputError("partition input needs at least one number")
        if any(int(b) != b or b <= 0 for b in self.numbers):
            raise InputError("partition numbers must be positive integers")
        if int(self.target) != self.target or self.target <= 0:
            raise InputError("target must be a positive integer")

    @property
    def m(self) -> int:
        return len(self.numbers)


def _require_sum(inp: PartitionInput, expected: int, label: str) -> None:
    if sum(inp.numbers) != expected:
        raise InputError(
            f"{label} reduction needs the numbers to sum to {expected}, "
            f"got {sum(inp.numbers)}"
        )


def gen_weak(inp: PartitionInput) -> Instance:
    """Three agents, m+2 goods: agent 0 values every partition good at T plus
    dummies (4T, T); agents 1 and 2 value the numbers themselves plus dummies
    (5T, (m-2)T). Total (m+5)T for everyone."""
    _require_sum(inp, 2 * inp.target, "two-way")
    if inp.m < 20:
        warnings.warn(
            "the yes/no equivalence is guaranteed only for 20 or more numbers",
            stacklevel=2,
        )
    m, T = inp.m, inp.target
    row0 = tuple([T] * m) + (4 * T, T)
    row12 = tuple(inp.numbers) + (5 * T, (m - 2) * T)
    inst = Instance((row0, row12, row12))
    assert is_normalised(inst) == (m + 5) * T
    return inst


def weak_forward_lottery(inp: PartitionInput, s1, s2) -> Lottery:
    """Lottery certifying a yes-instance of the two-way reduction: agent 0
    keeps the small dummy, agents 1 and 2 keep their partition halves, and
    the big dummy rotates among the three agents."""
    _check_two_way_partition(inp, s1, s2)
    inst = gen_weak(inp)
    m = inp.m
    d1, d2 = m, m + 1
    entries = []
    for holder, prob in ((0, Fraction(5, 13)), (1, Fraction(4, 13)), (2, Fraction(4, 13))):
        owner = [0] * (m + 2)
        for g in s1:
            owner[g] = 1
        for g in s2:
            owner[g] = 2
        owner[d1] = holder
        owner[d2] = 0
        entries.append((Allocation(tuple(owner)), prob))
    lottery = Lottery.of(entries)
    report = check_bobw(inst, lottery, EQ1)
    assert report.ex_ante_eq and report.ex_post_fair
    assert all(v == Fraction(33 * inp.target, 13) for v in report.expected_profile)
    return lottery


def _check_two_way_partition(inp: PartitionInput, s1, s2) -> None:
    s1, s2 = set(s1), set(s2)
    if s1 & s2 or s1 | s2 != set(range(inp.m)):
        raise InputError("the two parts must partition the good indices")
    if sum(inp.numbers[g] for g in s1) != inp.target:
        raise InputError("each part must sum to the target")


def gen_strong(inp: PartitionInput) -> Instance:
    """k+1 agents, m+2 goods, for m = 3k numbers summing to kT: agent 0
    values partition goods at (2m/3)T with dummies (T, (m/3-1)T); agents
    1..k value the numbers with both dummies at (m^2/3)T."""
    m, T = inp.m, inp.target
    if m % 3 != 0:
        raise InputError("the three-way reduction needs a multiple of 3 numbers")
    k = m // 3
    _require_sum(inp, k * T, "three-way")
    row0 = tuple([(2 * m // 3) * T] * m) + (T, (m // 3 - 1) * T)
    rows = tuple(inp.numbers) + ((m * m // 3) * T, (m * m // 3) * T)
    inst = Instance((row0,) + (rows,) * k)
    assert is_normalised(inst) is not None
    return inst


def strong_forward_lottery(inp: PartitionInput, parts) -> Lottery:
    """Lottery certifying a yes-instance of the three-way reduction: each
    agent j in 1..k keeps its part, agent 0 keeps the first dummy, and the
    second dummy goes to agent i in allocation A^i."""
    m, T = inp.m, inp.target
    if m % 3 != 0:
        raise InputError("the three-way reduction needs a multiple of 3 numbers")
    k = m // 3
    _require_sum(inp, k * T, "three-way")
    if len(parts) != k:
        raise InputError(f"expected {k} parts")
    seen = set()
    for part in parts:
        part = set(part)
        if part & seen:
            raise InputError("parts must be disjoint")
        seen |= part
        if sum(inp.numbers[g] for g in part) != T:
            raise InputError("each part must sum to the target")
    if seen != set(range(m)):
        raise InputError("parts must cover all good indices")

    inst = gen_strong(inp)
    d1, d2 = m, m + 1
    base = [0] * (m + 2)
    for j, part in enumerate(parts, start=1):
        for g in part:
            base[g] = j
    base[d1] = 0
    p0 = Fraction(3 * m, 4 * m - 3)
    pi = Fraction(3 * m - 9, 4 * m * m - 3 * m)
    assert p0 + k * pi == 1
    entries = []
    for i, prob in [(0, p0)] + [(i, pi) for i in range(1, k + 1)]:
        if prob == 0:
            continue  # degenerate m=3 case collapses to a single allocation
        owner = list(base)
        owner[d2] = i
        entries.append((Allocation(tuple(owner)), prob))
    lottery = Lottery.of(entries)
    report = check_bobw(inst, lottery, EQ1)
    assert report.ex_ante_eq and report.ex_post_fair
    return lottery


def gen_biased(inp: PartitionInput) -> Instance:
    """Three agents, m+1 goods: agent 0 values everything at T; agents 1 and
    2 value the numbers plus one dummy at (m-1)T. A 0-biased EQ1 allocation
    encodes an equal two-way partition. Total (m+1)T for everyone."""
    _require_sum(inp, 2 * inp.target, "two-way")
    m, T = inp.m, inp.target
    row0 = tuple([T] * (m + 1))
    row12 = tuple(inp.numbers) + ((m - 1) * T,)
    inst = Instance((row0, row12, row12))
    assert is_normalised(inst) == (m + 1) * T
    return inst


_CANNED = {
    "no_bobw_3x4": {
        "valuations": ((7, 11, 11, 11), (25, 5, 5, 5), (25, 5, 5, 5)),
        "scale": 5,
        "verdicts": {"bobw_eq1": False},
        "caveats": ["values scaled by 5 to clear fractional entries"],
    },
    "no_eqx_2x3": {
        "valuations": ((1, 3, 5), (4, 3, 2)),
        "scale": 1,
        "verdicts": {"bobw_eqx": False, "bobw_eq1": True, "unique_eqx_profile": (5, 7)},
        "caveats": [],
    },
    "no_1biased_3x3": {
        "valuations": ((9, 6, 6), (1, 10, 10), (7, 7, 7)),
        "scale": 1,
        "verdicts": {"biased_eq1": {0: False, 1: True, 2: True}},
        "caveats": [],
    },
    "non_normalised_2x2": {
        "valuations": ((10, 10), (1, 1)),
        "scale": 1,
        "verdicts": {"bobw_eq1": False},
        "caveats": ["not normalised; two-agent existence guarantee does not apply"],
    },
}


def canned_names() -> tuple:
    return tuple(sorted(_CANNED))


def canned(name: str):
    """Known counterexample instance plus a metadata dict with the expected
    machine-checkable verdicts."""
    if name not in _CANNED:
        raise InputError(f"unknown canned instance {name!r}")
    spec = _CANNED[name]
    meta = {
        "name": name,
        "scale": spec["scale"],
        "verdicts": spec["verdicts"],
        "caveats": list(spec["caveats"]),
    }
    return Instance(spec["valuations"]), meta
