"""Constructive solvers with existence guarantees.

Greedy EQX (any number of agents), the two-agent biased-EQ1 transfer
algorithm, the two-agent equal-expectation mixing, and the two easy lottery
constructions for m = n and for identical valuations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .model import (
    EQ1,
    Allocation,
    InputError,
    Instance,
    Lottery,
    NotNormalisedError,
    PreconditionError,
    check_bobw,
    is_normalised,
    value_profile,
)

CASE_ALREADY = "already_biased"
CASE_1 = "case1_swap"
CASE_21 = "case2.1_all_transferred"
CASE_22A = "case2.2a_stop_before"
CASE_22B = "case2.2b_transfer_and_swap"


@dataclass(frozen=True)
class BiasedTrace:
    """Execution record of the biased-EQ1 construction for one favored agent."""

    start: Allocation
    delta: int
    case_taken: str
    transfers: tuple  # good indices, in move order
    result: Allocation

    def to_json(self) -> dict:
        return {
            "start": list(self.start.owner),
            "delta": self.delta,
            "case_taken": self.case_taken,
            "transfers": list(self.transfers),
            "result": list(self.result.owner),
        }


def greedy_eqx(instance: Instance) -> Allocation:
    """EQX allocation for any n: the currently poorest agent (ties: lowest
    index) repeatedly takes its highest-valued unallocated good (ties: lowest
    good index). Each agent picks its goods in non-increasing own value, so
    the last pick is the bundle minimum and the allocation stays EQX."""
    n, m = instance.n, instance.m
    owner = [0] * m
    totals = [0] * n
    free = list(range(m))
    for _ in range(m):
        agent = min(range(n), key=lambda i: (totals[i], i))
        row = instance.valuations[agent]
        best = max(free, key=lambda g: (row[g], -g))
        owner[best] = agent
        totals[agent] += row[best]
        free.remove(best)
    return Allocation(tuple(owner))


def _run_biased(instance: Instance) -> BiasedTrace:
    """Biased-EQ1 construction favoring agent 0 of a normalised 2-agent instance."""
    v0, v1 = instance.valuations
    start = greedy_eqx(instance)
    bundle0 = {g for g, o in enumerate(start.owner) if o == 0}
    bundle1 = {g for g, o in enumerate(start.owner) if o == 1}
    w0 = sum(v0[g] for g in bundle0)
    w1 = sum(v1[g] for g in bundle1)

    if w0 >= w1:
        return BiasedTrace(start, 0, CASE_ALREADY, (), start)

    delta = w1 - w0

    # case 1: some good in the other bundle is worth >= delta to the favored
    # agent, so swapping the bundles is already biased EQ1
    if any(v0[g] >= delta for g in sorted(bundle1)):
        result = _to_allocation(bundle1, bundle0)
        return BiasedTrace(start, delta, CASE_1, (), result)

    # case 2: transfer one good over, then give back compressing goods
    compressing = [g for g in range(instance.m) if v0[g] >= v1[g]]
    assert all(g in bundle0 for g in compressing), "compressing goods must start with agent 0"
    ghat = min(bundle1)
    bundle0.add(ghat)
    bundle1.remove(ghat)
    w0 += v0[ghat]
    w1 -= v1[ghat]
    transfers = [ghat]

    blocking = None
    for s in compressing:
        if w0 - v0[s] >= w1 + v1[s]:
            bundle0.remove(s)
            bundle1.add(s)
            w0 -= v0[s]
            w1 += v1[s]
            transfers.append(s)
        else:
            blocking = s
            break

    if blocking is None:
        result = _to_allocation(bundle0, bundle1)
        return BiasedTrace(start, delta, CASE_21, tuple(transfers), result)

    if w0 - v0[blocking] <= w1:
        result = _to_allocation(bundle0, bundle1)
        return BiasedTrace(start, delta, CASE_22A, tuple(transfers), result)

    # transfer the blocking good, then swap the bundles
    bundle0.remove(blocking)
    bundle1.add(blocking)
    transfers.append(blocking)
    result = _to_allocation(bundle1, bundle0)
    return BiasedTrace(start, delta, CASE_22B, tuple(transfers), result)


def _to_allocation(bundle0, bundle1) -> Allocation:
    owner = {}
    for g in bundle0:
        owner[g] = 0
    for g in bundle1:
        owner[g] = 1
    return Allocation(tuple(owner[g] for g in sorted(owner)))


def _swap_owners(allocation: Allocation) -> Allocation:
    return Allocation(tuple(1 - o for o in allocation.owner))


def one_biased_eq1(instance: Instance, i: int) -> BiasedTrace:
    """i-biased EQ1 allocation for a normalised 2-agent instance."""
    if instance.n != 2:
        raise InputError("biased construction supports exactly two agents")
    if i not in (0, 1):
        raise InputError("favored agent must be 0 or 1")
    if is_normalised(instance) is None:
        raise NotNormalisedError("existence guarantee requires a normalised instance")
    if i == 0:
        return _run_biased(instance)
    flipped = Instance((instance.valuations[1], instance.valuations[0]))
    trace = _run_biased(flipped)
    return BiasedTrace(
        start=_swap_owners(trace.start),
        delta=trace.delta,
        case_taken=trace.case_taken,
        transfers=trace.transfers,
        result=_swap_owners(trace.result),
    )


def solve_two_agents(instance: Instance) -> Lottery:
    """Equal-expectation EQ1 lottery for a normalised 2-agent instance, mixing
    one allocation biased toward each agent."""
    if instance.n != 2:
        raise InputError("two-agent solver requires exactly two agents")
    if is_normalised(instance) is None:
        raise NotNormalisedError("two-agent solver requires a normalised instance")
    a = one_biased_eq1(instance, 0).result
    b = one_biased_eq1(instance, 1).result
    pa = value_profile(instance, a)
    pb = value_profile(instance, b)
    d_a = pa[0] - pa[1]
    d_b = pb[0] - pb[1]
    assert d_a >= 0 >= d_b
    if d_a == d_b == 0:
        lottery = Lottery.of([(a, Fraction(1))])
    else:
        p = Fraction(-d_b, d_a - d_b)
        lottery = Lottery.of([(a, p), (b, 1 - p)])
    report = check_bobw(instance, lottery, EQ1)
    assert report.ex_ante_eq and report.ex_post_fair
    return lottery


def shift_lottery(instance: Instance) -> Lottery:
    """Uniform lottery over the n cyclic one-good-per-agent allocations of a
    normalised instance with m = n."""
    n = instance.n
    if instance.m != n:
        raise PreconditionError("shift lottery requires as many goods as agents")
    if is_normalised(instance) is None:
        raise NotNormalisedError("shift lottery requires a normalised instance")
    p = Fraction(1, n)
    entries = []
    for k in range(n):
        owner = [0] * n
        for i in range(n):
            owner[(i + k) % n] = i
        entries.append((Allocation(tuple(owner)), p))
    return Lottery.of(entries)


def identical_lottery(instance: Instance) -> Lottery:
    """Uniform lottery over the n cyclic rotations of a greedy EQX allocation;
    valid for agents with identical valuations (normalised or not)."""
    if not instance.has_identical_rows():
        raise PreconditionError("identical lottery requires identical valuation rows")
    n = instance.n
    base = greedy_eqx(instance)
    p = Fraction(1, n)
    entries = []
    for r in range(n):
        owner = tuple((o + r) % n for o in base.owner)
        entries.append((Allocation(owner), p))
    return Lottery.of(entries)
