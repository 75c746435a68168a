"""Pseudopolynomial dynamic program over value-profile states.

Goods are assigned one layer at a time; a state records, per agent, the
bundle value, the extreme own value inside the bundle (max for EQ1, min for
EQX) and whether the bundle is nonempty. Only reachable states are stored
(hash sets per layer), which is far smaller than the dense table bound.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

from . import certify
from .model import (
    EQ1,
    NOTIONS,
    Allocation,
    InputError,
    Instance,
    Lottery,
    ResourceLimitError,
    is_normalised,
)
from .oracle import DEFAULT_CAP, ProfileSet

_EMPTY_H = -1  # sentinel for the extreme value of an empty bundle


@dataclass(frozen=True)
class DPState:
    layer: int
    w: tuple
    h: tuple
    nonempty: tuple


@dataclass(frozen=True)
class DPResult:
    instance: Instance
    notion: str
    profiles: ProfileSet
    parents: dict  # (layer, w, h) -> (predecessor key, receiving agent)
    final_key: dict  # profile -> final state key


def _key(layer, w, h):
    return (layer, w, h)


def fair_profile_set_dp(
    instance: Instance, notion: str, cap: int = DEFAULT_CAP
) -> DPResult:
    """Reachable value profiles of fair allocations, with parent pointers.

    Each layer assigns one good to every possible receiver; h is maintained
    as a running max (EQ1) or min (EQX), which covers both the case where
    the new good becomes the extreme and the case where it does not. States
    visited across all layers are capped.
    """
    if notion not in NOTIONS:
        raise InputError(f"unknown notion {notion!r}")
    n, m = instance.n, instance.m
    vals = instance.valuations
    use_max = notion == EQ1

    start = (tuple([0] * n), tuple([_EMPTY_H] * n))
    states = {start}
    parents = {}
    visited = 1
    for t in range(m):
        nxt = set()
        for w, h in sorted(states):
            for i in range(n):
                v = vals[i][t]
                w2 = w[:i] + (w[i] + v,) + w[i + 1 :]
                if h[i] == _EMPTY_H:
                    h2i = v
                elif use_max:
                    h2i = max(h[i], v)
                else:
                    h2i = min(h[i], v)
                h2 = h[:i] + (h2i,) + h[i + 1 :]
                state = (w2, h2)
                if state not in nxt:
                    nxt.add(state)
                    visited += 1
                    if visited > cap:
                        raise ResourceLimitError(
                            f"dp state count exceeds the cap of {cap}"
                        )
                    parents[_key(t + 1, w2, h2)] = (_key(t, w, h), i)
        states = nxt

    order = []
    reps = {}
    final_key = {}
    for w, h in sorted(states):
        w_min = min(w)
        ok = True
        for j in range(n):
            if h[j] == _EMPTY_H:
                if use_max:
                    continue  # empty bundle: w_j = 0 <= w_min holds anyway
                continue  # EQX: empty bundles are exempt
            if w[j] - h[j] > w_min:
                ok = False
                break
        if ok and w not in reps:
            order.append(w)
            final_key[w] = _key(m, w, h)
            reps[w] = None  # filled below via reconstruction

    result = DPResult(
        instance,
        notion,
        ProfileSet((), {}),  # placeholder, replaced after reconstruction
        parents,
        final_key,
    )
    for w in order:
        reps[w] = _walk_back(result, final_key[w])
    profiles = ProfileSet(tuple(order), reps)
    return DPResult(instance, notion, profiles, parents, final_key)


def _walk_back(result: DPResult, key) -> Allocation:
    m = result.instance.m
    owner = [0] * m
    while key[0] > 0:
        prev, agent = result.parents[key]
        owner[key[0] - 1] = agent
        key = prev
    return Allocation(tuple(owner))


def reconstruct(result: DPResult, profile) -> Allocation:
    """Allocation realizing a profile from the DP's final fair states."""
    profile = tuple(profile)
    if profile not in result.final_key:
        raise InputError(f"profile {profile} is not a reachable fair profile")
    return result.profiles.representative[profile]


def solve_general(
    instance: Instance, notion: str, cap: int = DEFAULT_CAP
):
    """Best-of-both-worlds decision for any instance within the state cap:
    a Lottery with support at most n+1 or a verified non-existence Witness."""
    if is_normalised(instance) is None:
        warnings.warn(
            "instance is not normalised; existence guarantees do not apply",
            stacklevel=2,
        )
    result = fair_profile_set_dp(instance, notion, cap)
    decision = certify.decide_bobw(result.profiles)
    if isinstance(decision, certify.Feasible):
        return decision.lottery
    return decision.witness


def exists_i_biased_dp(
    instance: Instance, i: int, notion: str, cap: int = DEFAULT_CAP
):
    """Some fair allocation making agent i weakly richest, or None."""
    if not 0 <= i < instance.n:
        raise InputError(f"agent index {i} out of range")
    result = fair_profile_set_dp(instance, notion, cap)
    for prof in result.profiles.profiles:
        if all(prof[i] >= prof[j] for j in range(instance.n)):
            return result.profiles.representative[prof]
    return None
