"""Welfare-optimal equal-expectation lotteries for binary valuations.

Pipeline: an exact LP finds the welfare-maximizing fractional allocation that
gives every agent the same value, then the fractional point is decomposed
into integral allocations by iterative cycle/path shifting over the
bihierarchical constraint structure (per-good assignment columns on one side,
per-agent welfare rows on the other). Every support allocation keeps each
agent's value within one unit of the optimum, hence is EQ1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import certify, exactlp
from .model import (
    EQ1,
    Allocation,
    FractionalAllocation,
    InputError,
    Instance,
    Lottery,
    PreconditionError,
    check_bobw,
)

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class WelfareSolution:
    fractional: FractionalAllocation
    welfare_per_agent: Fraction
    lp: exactlp.LinearProgram
    optimal: exactlp.Optimal

    def certificate_valid(self) -> bool:
        return exactlp.verify_optimality(self.lp, self.optimal)


@dataclass(frozen=True)
class BihierarchyStructure:
    """Constraint cells split into two laminar families: per-agent welfare
    sets (valued cells of each row) and per-good assignment columns with
    their singleton subsets."""

    welfare_sets: tuple  # per agent: frozenset of (agent, good) with value 1
    assignment_sets: tuple  # per good: frozenset of (agent, good)
    welfare_bounds: tuple  # (floor(w*), ceil(w*))

    def validate(self) -> None:
        for a in range(len(self.welfare_sets)):
            for b in range(a + 1, len(self.welfare_sets)):
                if self.welfare_sets[a] & self.welfare_sets[b]:
                    raise AssertionError("welfare sets must be pairwise disjoint")
        cover = {}
        for g, cells in enumerate(self.assignment_sets):
            for cell in cells:
                if cell in cover:
                    raise AssertionError("assignment sets must be pairwise disjoint")
                cover[cell] = g
        # each singleton [0,1] cell sits inside exactly its good's column set
        for g, cells in enumerate(self.assignment_sets):
            for cell in cells:
                if cover[cell] != g:
                    raise AssertionError("singleton not nested in its column set")


def _require_binary(instance: Instance) -> None:
    if not instance.is_binary():
        raise InputError("all valuations must be 0 or 1")


def max_welfare_eq_lp(instance: Instance) -> WelfareSolution:
    """Welfare-maximizing fractional allocation giving every agent the same
    value, solved exactly. Always feasible: zero-valued goods absorb freely
    and universally-valued goods split evenly."""
    _require_binary(instance)
    n, m = instance.n, instance.m
    nv = n * m + 1  # x_{ig} row-major, then the common welfare w
    cons = []
    for i in range(n):
        row = [_ZERO] * nv
        for g in range(m):
            if instance.valuations[i][g]:
                row[i * m + g] = _ONE
        row[n * m] = Fraction(-1)
        cons.append((tuple(row), exactlp.EQ, 0))
    for g in range(m):
        row = [_ZERO] * nv
        for i in range(n):
            row[i * m + g] = _ONE
        cons.append((tuple(row), exactlp.EQ, 1))
    objective = tuple([0] * (n * m)) + (1,)
    lp = exactlp.LinearProgram(nv, tuple(cons), objective, sense="max")
    res = exactlp.lp_solve(lp)
    assert isinstance(res, exactlp.Optimal), "the welfare LP is always feasible"
    shares = tuple(
        tuple(res.point[i * m + g] for g in range(m)) for i in range(n)
    )
    return WelfareSolution(FractionalAllocation(shares), res.value, lp, res)


def bihierarchy_structure(instance: Instance, welfare: Fraction) -> BihierarchyStructure:
    n, m = instance.n, instance.m
    welfare_sets = tuple(
        frozenset((i, g) for g in range(m) if instance.valuations[i][g])
        for i in range(n)
    )
    assignment_sets = tuple(
        frozenset((i, g) for i in range(n)) for g in range(m)
    )
    return BihierarchyStructure(
        welfare_sets, assignment_sets, (math.floor(welfare), math.ceil(welfare))
    )


def _find_cycle_or_path(adj):
    """A cycle, or a maximal path whose endpoints tolerate +/- shifts.

    Nodes: ("g", g) equality columns, ("a", i) bounded welfare rows,
    ("s", i) unconstrained rows for zero-valued cells. Edges are the
    fractional cells. Returns (edges, closed) with edges in trail order."""

    def neighbors(node, used):
        return [e for e in adj[node] if e not in used]

    start_node = next(iter(adj))
    used = set()
    nodes = [start_node]
    edges = []
    # extend forward from the tail
    while True:
        outs = neighbors(nodes[-1], used)
        if not outs:
            break
        e = outs[0]
        used.add(e)
        nxt = e[2] if e[1] == nodes[-1] else e[1]
        if nxt in nodes:
            k = nodes.index(nxt)
            return edges[k:] + [e], True
        nodes.append(nxt)
        edges.append(e)
    # extend backward from the head
    while True:
        outs = neighbors(nodes[0], used)
        if not outs:
            break
        e = outs[0]
        used.add(e)
        nxt = e[2] if e[1] == nodes[0] else e[1]
        if nxt in nodes:
            k = nodes.index(nxt)
            return [e] + edges[:k], True
        nodes.insert(0, nxt)
        edges.insert(0, e)
    return edges, False


def _decompose(instance, x, lo, hi):
    """Recursive shifting: returns a list of (owner tuple, probability)."""
    n, m = instance.n, instance.m
    frac = [
        (i, g)
        for i in range(n)
        for g in range(m)
        if 0 < x[i][g] < 1
    ]
    if not frac:
        owner = []
        for g in range(m):
            holders = [i for i in range(n) if x[i][g] == 1]
            assert len(holders) == 1
            owner.append(holders[0])
        return [(tuple(owner), _ONE)]

    vals = instance.valuations
    adj = {}
    edges = []
    for i, g in frac:
        anode = ("a", i) if vals[i][g] else ("s", i)
        e = ((i, g), ("g", g), anode)
        edges.append(e)
        adj.setdefault(("g", g), []).append(e)
        adj.setdefault(anode, []).append(e)

    welfare = [sum(x[i][g] for g in range(m) if vals[i][g]) for i in range(n)]
    trail, closed = _find_cycle_or_path(adj)
    assert trail, "a fractional point always yields a nonempty trail"

    # orient alternating signs along the trail
    signs = [1 if k % 2 == 0 else -1 for k in range(len(trail))]

    def limits(direction):
        cap = None
        for e, s in zip(trail, signs):
            (i, g), _, _ = e
            move = s * direction
            room = (1 - x[i][g]) if move > 0 else x[i][g]
            cap = room if cap is None else min(cap, room)
        if not closed:
            # a path endpoint at a welfare node moves that agent's total
            for end, s in ((0, signs[0]), (1, signs[-1])):
                endpoint = _trail_endpoint(trail, end)
                if endpoint[0] != "a":
                    continue
                ai = endpoint[1]
                move = s * direction
                room = (hi - welfare[ai]) if move > 0 else (welfare[ai] - lo)
                cap = room if cap is None else min(cap, room)
        return cap

    eps_plus = limits(1)
    eps_minus = limits(-1)
    assert eps_plus > 0 and eps_minus > 0

    def shifted(direction, eps):
        y = [list(row) for row in x]
        for e, s in zip(trail, signs):
            (i, g), _, _ = e
            y[i][g] += s * direction * eps
        return tuple(tuple(r) for r in y)

    x_plus = shifted(1, eps_plus)
    x_minus = shifted(-1, eps_minus)
    p_plus = eps_minus / (eps_plus + eps_minus)
    out = {}
    for owner, q in _decompose(instance, x_plus, lo, hi):
        out[owner] = out.get(owner, _ZERO) + p_plus * q
    for owner, q in _decompose(instance, x_minus, lo, hi):
        out[owner] = out.get(owner, _ZERO) + (1 - p_plus) * q
    return list(out.items())


def _trail_endpoint(trail, end):
    """Node at the head (end=0) or tail (end=1) of an open trail."""
    if len(trail) == 1:
        e = trail[0]
        return e[1] if end == 0 else e[2]
    if end == 0:
        e, nxt = trail[0], trail[1]
        shared = {e[1], e[2]} & {nxt[1], nxt[2]}
        return ({e[1], e[2]} - shared).pop()
    e, prev = trail[-1], trail[-2]
    shared = {e[1], e[2]} & {prev[1], prev[2]}
    return ({e[1], e[2]} - shared).pop()


def bihierarchy_decompose(instance: Instance, sol: WelfareSolution) -> Lottery:
    """Exact lottery with sum_k p_k A^k equal to the fractional optimum
    entrywise; every support allocation is EQ1 with per-agent value in
    {floor(w*), ceil(w*)}."""
    _require_binary(instance)
    n, m = instance.n, instance.m
    x = sol.fractional.shares
    lo = Fraction(math.floor(sol.welfare_per_agent))
    hi = Fraction(math.ceil(sol.welfare_per_agent))
    for i in range(n):
        agent_val = sum(
            x[i][g] for g in range(m) if instance.valuations[i][g]
        )
        if not lo <= agent_val <= hi:
            raise PreconditionError("point violates the rounded welfare bounds")
    structure = bihierarchy_structure(instance, sol.welfare_per_agent)
    structure.validate()

    entries = _decompose(instance, x, lo, hi)
    if len(entries) > n * m + 1:
        flat = [(_flatten(owner, n, m), p) for owner, p in entries]
        pruned = certify.prune_support(flat)
        keep = {vec: p for vec, p in pruned}
        entries = [
            (owner, keep[_flatten(owner, n, m)])
            for owner, _ in entries
            if _flatten(owner, n, m) in keep
        ]
    entries.sort(key=lambda e: e[0])
    lottery = Lottery.of([(Allocation(owner), p) for owner, p in entries])

    # exactness: the lottery's marginal must reproduce the fractional point
    marginal = lottery.to_fractional(n)
    assert marginal.shares == x, "decomposition must reproduce the point exactly"
    return lottery


def _flatten(owner, n, m):
    return tuple(
        _ONE if owner[g] == i else _ZERO for i in range(n) for g in range(m)
    )


def solve_binary(instance: Instance) -> Lottery:
    """Equal-expectation EQ1 lottery at the optimum welfare of any fractional
    equal-value allocation."""
    _require_binary(instance)
    sol = max_welfare_eq_lp(instance)
    lottery = bihierarchy_decompose(instance, sol)
    report = check_bobw(instance, lottery, EQ1)
    assert report.ex_ante_eq and report.ex_post_fair
    assert all(v == sol.welfare_per_agent for v in report.expected_profile)
    return lottery
