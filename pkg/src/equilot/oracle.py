"""Brute-force enumeration ground truth for small instances.

Everything here walks all n^m owner vectors in lexicographic order; it is the
reference the solvers are validated against, never a production path.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from . import certify
from .model import (
    EQ1,
    Allocation,
    Instance,
    InputError,
    NOTIONS,
    ResourceLimitError,
)

DEFAULT_CAP = 10**7


@dataclass(frozen=True)
class ProfileSet:
    """Distinct fair value profiles with one realizing allocation each."""

    profiles: tuple
    representative: dict

    def __post_init__(self):
        for prof in self.profiles:
            if prof not in self.representative:
                raise InputError(f"profile {prof} lacks a representative")


def _check_cap(instance: Instance, cap: int) -> None:
    if instance.n ** instance.m > cap:
        raise ResourceLimitError(
            f"{instance.n}^{instance.m} allocations exceed the cap of {cap}"
        )


def _scan_fair(instance: Instance, notion: str):
    """Yield (owner vector, profile) for every fair allocation, lexicographically."""
    if notion not in NOTIONS:
        raise InputError(f"unknown notion {notion!r}")
    n, m = instance.n, instance.m
    vals = instance.valuations
    use_max = notion == EQ1
    for owner in itertools.product(range(n), repeat=m):
        w = [0] * n
        h = [-1] * n  # -1 marks an empty bundle
        for g in range(m):
            o = owner[g]
            v = vals[o][g]
            w[o] += v
            if h[o] < 0:
                h[o] = v
            elif use_max:
                if v > h[o]:
                    h[o] = v
            elif v < h[o]:
                h[o] = v
        w_min = min(w)
        ok = True
        for j in range(n):
            if h[j] >= 0 and w[j] - h[j] > w_min:
                ok = False
                break
        if ok:
            yield owner, tuple(w)


def enumerate_fair(instance: Instance, notion: str, cap: int = DEFAULT_CAP) -> list:
    """All allocations passing the notion predicate, in lexicographic owner order."""
    _check_cap(instance, cap)
    return [Allocation(owner) for owner, _ in _scan_fair(instance, notion)]


def profile_set(instance: Instance, notion: str, cap: int = DEFAULT_CAP) -> ProfileSet:
    """Distinct fair profiles, keeping the first allocation realizing each."""
    _check_cap(instance, cap)
    reps = {}
    order = []
    for owner, prof in _scan_fair(instance, notion):
        if prof not in reps:
            reps[prof] = Allocation(owner)
            order.append(prof)
    return ProfileSet(tuple(order), reps)


def brute_force_bobw(instance: Instance, notion: str, cap: int = DEFAULT_CAP):
    """Exhaustive best-of-both-worlds decision: a Lottery or a Witness."""
    pset = profile_set(instance, notion, cap)
    if not pset.profiles:
        raise AssertionError("a fair allocation always exists")
    decision = certify.decide_bobw(pset)
    if isinstance(decision, certify.Feasible):
        return decision.lottery
    return decision.witness


def exists_i_biased(
    instance: Instance, i: int, notion: str, cap: int = DEFAULT_CAP
) -> Optional[Allocation]:
    """Some fair allocation in which agent i is (weakly) richest, or None."""
    if not 0 <= i < instance.n:
        raise InputError(f"agent index {i} out of range")
    _check_cap(instance, cap)
    for owner, prof in _scan_fair(instance, notion):
        if all(prof[i] >= prof[j] for j in range(instance.n)):
            return Allocation(owner)
    return None
