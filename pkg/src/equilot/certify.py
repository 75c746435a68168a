"""Deciding mixability of value-profile sets, with exact certificates.

A finite set of fair value profiles either mixes to an all-equal expectation
(a convex combination, i.e. a best-of-both-worlds lottery over
representatives) or admits a zero-sum direction along which every profile has
strictly negative inner product. Exactly one of the two holds, and both sides
are certified exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import exactlp
from .model import InputError, Lottery, format_fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class Witness:
    """Zero-sum direction certifying non-existence of an equal-expectation mix."""

    lam: tuple
    max_inner: Fraction

    def to_json(self) -> dict:
        return {
            "lambda": [format_fraction(x) for x in self.lam],
            "max_inner": format_fraction(self.max_inner),
        }


@dataclass(frozen=True)
class Feasible:
    lottery: Lottery
    common_value: Fraction


@dataclass(frozen=True)
class Infeasible:
    witness: Witness


def verify_witness(witness: Witness, profiles: Sequence) -> bool:
    if sum(witness.lam, _ZERO) != 0:
        return False
    inners = [sum(l * Fraction(v) for l, v in zip(witness.lam, prof)) for prof in profiles]
    if not inners:
        return False
    return max(inners) == witness.max_inner and witness.max_inner < 0


def _check_profiles(profiles):
    if not profiles:
        raise InputError("profile list must be nonempty")
    n = len(profiles[0])
    for p in profiles:
        if len(p) != n:
            raise InputError("profiles must share one dimension")
    return n


def _mix_lp(profiles):
    """Variables: one probability per profile, then the free common value."""
    n = _check_profiles(profiles)
    k = len(profiles)
    cons = []
    for i in range(n):
        row = tuple(Fraction(p[i]) for p in profiles) + (Fraction(-1),)
        cons.append((row, exactlp.EQ, 0))
    cons.append((tuple([1] * k) + (0,), exactlp.EQ, 1))
    lower = tuple([_ZERO] * k) + (None,)
    return exactlp.LinearProgram(
        num_vars=k + 1,
        constraints=tuple(cons),
        objective=tuple([0] * (k + 1)),
        sense="max",
        lower=lower,
    )


def mix_to_equal(profiles: Sequence) -> Optional[tuple]:
    """Probabilities p and common value mu with sum_k p_k v^k = (mu, ..., mu),
    or None when no such convex combination exists."""
    res = exactlp.lp_solve(_mix_lp(profiles))
    if isinstance(res, exactlp.Infeasible):
        return None
    probs = res.point[: len(profiles)]
    mu = res.point[len(profiles)]
    return probs, mu


def _witness_from_farkas(profiles, cert: exactlp.FarkasCertificate) -> Witness:
    """The Farkas multipliers of the mixing LP's agent rows are the witness."""
    n = len(profiles[0])
    lam = list(cert.row_mults[:n])
    scale = max(abs(x) for x in lam)
    lam = [x / scale for x in lam]
    max_inner = max(sum(l * Fraction(v) for l, v in zip(lam, p)) for p in profiles)
    return Witness(tuple(lam), max_inner)


def nonexistence_witness(profiles: Sequence) -> Optional[Witness]:
    """Maximize the margin eps subject to lam . v <= -eps for every profile,
    sum(lam) = 0 and the box -1 <= lam_i <= 1; a witness exists iff eps > 0."""
    n = _check_profiles(profiles)
    cons = []
    for p in profiles:
        cons.append((tuple(Fraction(v) for v in p) + (_ONE,), exactlp.LE, 0))
    cons.append((tuple([1] * n) + (0,), exactlp.EQ, 0))
    lp = exactlp.LinearProgram(
        num_vars=n + 1,
        constraints=tuple(cons),
        objective=tuple([0] * n) + (1,),
        sense="max",
        lower=tuple([Fraction(-1)] * n) + (_ZERO,),
        upper=tuple([_ONE] * n) + (None,),
    )
    res = exactlp.lp_solve(lp)
    assert isinstance(res, exactlp.Optimal)
    if res.value <= 0:
        return None
    lam = res.point[:n]
    max_inner = max(sum(l * Fraction(v) for l, v in zip(lam, p)) for p in profiles)
    witness = Witness(tuple(lam), max_inner)
    assert verify_witness(witness, profiles)
    return witness


def prune_support(entries: Sequence) -> list:
    """Reduce (vector, probability) entries to at most dim+1 while preserving
    the exact expectation, by shifting mass along affine dependencies."""
    merged = {}
    order = []
    for vec, prob in entries:
        key = tuple(Fraction(v) for v in vec)
        prob = Fraction(prob)
        if key not in merged:
            merged[key] = _ZERO
            order.append(key)
        merged[key] += prob
    entries = [(k, merged[k]) for k in order if merged[k] != 0]
    if not entries:
        return []
    dim = len(entries[0][0])
    while len(entries) > dim + 1:
        vecs = [v for v, _ in entries]
        dep = exactlp.affine_dependency(vecs)
        if dep is None:
            break
        if all(c <= 0 for c in dep):
            dep = tuple(-c for c in dep)
        t = min(p / c for (_, p), c in zip(entries, dep) if c > 0)
        entries = [
            (v, p - t * c) for (v, p), c in zip(entries, dep) if p - t * c != 0
        ]
    return entries


def caratheodory_prune(lottery_profiles: Sequence) -> list:
    """Prune a list of (value profile, probability) pairs to at most n+1
    entries with the expectation exactly preserved."""
    total = sum((Fraction(p) for _, p in lottery_profiles), _ZERO)
    if total != 1:
        raise InputError("probabilities must sum to 1")
    return prune_support(lottery_profiles)


def decide_bobw(profile_set):
    """One arm exactly: a lottery over the profile set's representatives whose
    expectation is all-equal, or a verified non-existence witness."""
    profiles = list(profile_set.profiles)
    if not profiles:
        raise InputError("profile set must be nonempty")
    res = exactlp.lp_solve(_mix_lp(profiles))
    if isinstance(res, exactlp.Infeasible):
        witness = _witness_from_farkas(profiles, res.certificate)
        assert verify_witness(witness, profiles)
        return Infeasible(witness)
    probs = res.point[: len(profiles)]
    mu = res.point[len(profiles)]
    pruned = prune_support(
        [(p, q) for p, q in zip(profiles, probs) if q > 0]
    )
    lottery = Lottery.of(
        [(profile_set.representative[tuple(v)], q) for v, q in pruned]
    )
    return Feasible(lottery, mu)
