"""Core domain types and fairness predicates for indivisible-goods allocation.

All probability and expectation arithmetic is exact (`fractions.Fraction`);
no floating point appears anywhere in a decision path.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

EQ1 = "eq1"
EQX = "eqx"
NOTIONS = (EQ1, EQX)

Profile = tuple  # length-n vector of ints / Fractions


class InputError(ValueError):
    """Malformed or out-of-range input."""


class PreconditionError(ValueError):
    """A documented operation precondition does not hold."""


class NotNormalisedError(PreconditionError):
    """Operation requires all agents to value the grand bundle equally."""


class ResourceLimitError(RuntimeError):
    """An enumeration or state cap was exceeded."""


@dataclass(frozen=True)
class Instance:
    """n agents x m goods with nonnegative integer valuations."""

    valuations: tuple

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.valuations)
        object.__setattr__(self, "valuations", rows)
        if len(rows) < 1:
            raise InputError("instance needs at least one agent")
        m = len(rows[0])
        for r in rows:
            if len(r) != m:
                raise InputError("valuation rows must have equal length")
            for v in r:
                if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                    raise InputError(f"valuations must be nonnegative integers, got {v!r}")

    @property
    def n(self) -> int:
        return len(self.valuations)

    @property
    def m(self) -> int:
        return len(self.valuations[0])

    def value(self, agent: int, good: int) -> int:
        return self.valuations[agent][good]

    def row_total(self, agent: int) -> int:
        return sum(self.valuations[agent])

    @property
    def v_max(self) -> int:
        return max((v for r in self.valuations for v in r), default=0)

    def is_binary(self) -> bool:
        return all(v in (0, 1) for r in self.valuations for v in r)

    def has_identical_rows(self) -> bool:
        return all(r == self.valuations[0] for r in self.valuations)


@dataclass(frozen=True)
class Allocation:
    """Total assignment: owner[g] is the agent index holding good g."""

    owner: tuple

    def __post_init__(self):
        object.__setattr__(self, "owner", tuple(self.owner))
        for o in self.owner:
            if not isinstance(o, int) or isinstance(o, bool) or o < 0:
                raise InputError(f"owner entries must be nonnegative ints, got {o!r}")

    @property
    def m(self) -> int:
        return len(self.owner)

    def bundles(self, n: int):
        """Bundles as a list of n sorted good-index tuples."""
        out = [[] for _ in range(n)]
        for g, o in enumerate(self.owner):
            if o >= n:
                raise InputError(f"owner {o} out of range for {n} agents")
            out[o].append(g)
        return [tuple(b) for b in out]


@dataclass(frozen=True)
class FractionalAllocation:
    """n x m column-stochastic matrix of exact rationals."""

    shares: tuple

    def __post_init__(self):
        rows = tuple(tuple(Fraction(x) for x in r) for r in self.shares)
        object.__setattr__(self, "shares", rows)
        if not rows:
            raise InputError("fractional allocation needs at least one agent row")
        m = len(rows[0])
        for r in rows:
            if len(r) != m:
                raise InputError("rows must have equal length")
            for x in r:
                if x < 0 or x > 1:
                    raise InputError("shares must lie in [0, 1]")
        for g in range(m):
            if sum(r[g] for r in rows) != 1:
                raise InputError(f"column {g} does not sum to 1")

    @property
    def n(self) -> int:
        return len(self.shares)

    @property
    def m(self) -> int:
        return len(self.shares[0])


@dataclass(frozen=True)
class Lottery:
    """Finite support of (Allocation, probability) pairs; probabilities sum to 1."""

    support: tuple

    def __post_init__(self):
        entries = tuple((a, Fraction(p)) for a, p in self.support)
        object.__setattr__(self, "support", entries)
        if not entries:
            raise InputError("lottery support must be nonempty")
        seen = set()
        total = Fraction(0)
        for a, p in entries:
            if not isinstance(a, Allocation):
                raise InputError("support entries must be Allocations")
            if p <= 0 or p > 1:
                raise InputError("probabilities must lie in (0, 1]")
            if a.owner in seen:
                raise InputError("duplicate allocation in support; merge first")
            seen.add(a.owner)
            total += p
        if total != 1:
            raise InputError(f"probabilities sum to {total}, expected 1")

    @classmethod
    def of(cls, pairs: Iterable) -> "Lottery":
        """Build a lottery, merging duplicate allocations and dropping zeros."""
        merged = {}
        order = []
        for a, p in pairs:
            p = Fraction(p)
            if p == 0:
                continue
            if a.owner not in merged:
                merged[a.owner] = [a, Fraction(0)]
                order.append(a.owner)
            merged[a.owner][1] += p
        return cls(tuple((merged[k][0], merged[k][1]) for k in order))

    def to_fractional(self, n: int) -> FractionalAllocation:
        m = self.support[0][0].m
        shares = [[Fraction(0)] * m for _ in range(n)]
        for a, p in self.support:
            for g, o in enumerate(a.owner):
                shares[o][g] += p
        return FractionalAllocation(tuple(tuple(r) for r in shares))


@dataclass(frozen=True)
class BobwReport:
    ex_ante_eq: bool
    ex_post_fair: bool
    expected_profile: tuple


def bundle_value(instance: Instance, agent: int, goods: Iterable) -> int:
    """Additive value of a set of goods for one agent."""
    if not 0 <= agent < instance.n:
        raise InputError(f"agent index {agent} out of range")
    total = 0
    for g in goods:
        if not 0 <= g < instance.m:
            raise InputError(f"good index {g} out of range")
        total += instance.valuations[agent][g]
    return total


def is_normalised(instance: Instance) -> Optional[int]:
    """Common row total t if all agents value the grand bundle equally, else None."""
    totals = {instance.row_total(i) for i in range(instance.n)}
    if len(totals) == 1:
        return totals.pop()
    return None


def value_profile(instance: Instance, allocation: Allocation) -> tuple:
    """Per-agent own-bundle values of an integral allocation."""
    _check_dims(instance, allocation)
    w = [0] * instance.n
    for g, o in enumerate(allocation.owner):
        w[o] += instance.valuations[o][g]
    return tuple(w)


def _check_dims(instance: Instance, allocation: Allocation) -> None:
    if allocation.m != instance.m:
        raise InputError(f"allocation has {allocation.m} goods, instance has {instance.m}")
    for o in allocation.owner:
        if o >= instance.n:
            raise InputError(f"owner {o} out of range for {instance.n} agents")


def _profile_and_extremes(instance: Instance, allocation: Allocation, notion: str):
    """(w, h, nonempty) where h is each owner's max (EQ1) or min (EQX) own value."""
    n = instance.n
    w = [0] * n
    h = [0] * n
    nonempty = [False] * n
    use_max = notion == EQ1
    for g, o in enumerate(allocation.owner):
        v = instance.valuations[o][g]
        w[o] += v
        if not nonempty[o]:
            h[o] = v
            nonempty[o] = True
        elif use_max:
            h[o] = max(h[o], v)
        else:
            h[o] = min(h[o], v)
    return w, h, nonempty


def _is_fair(instance: Instance, allocation: Allocation, notion: str) -> bool:
    w, h, nonempty = _profile_and_extremes(instance, allocation, notion)
    w_min = min(w)
    for j in range(instance.n):
        if nonempty[j] and w[j] - h[j] > w_min:
            return False
    return True


def is_eq1(instance: Instance, allocation: Allocation) -> bool:
    """Equitable up to one good: each pairwise gap closes after removing the
    richer bundle's highest own-valued good (vacuous against empty bundles)."""
    _check_dims(instance, allocation)
    return _is_fair(instance, allocation, EQ1)


def is_eqx(instance: Instance, allocation: Allocation) -> bool:
    """Equitable up to any good: the gap closes after removing any good."""
    _check_dims(instance, allocation)
    return _is_fair(instance, allocation, EQX)


def is_fair(instance: Instance, allocation: Allocation, notion: str) -> bool:
    if notion not in NOTIONS:
        raise InputError(f"unknown notion {notion!r}")
    _check_dims(instance, allocation)
    return _is_fair(instance, allocation, notion)


def is_eq(profile: Sequence) -> bool:
    """True iff all entries of a value profile are equal."""
    return all(x == profile[0] for x in profile)


def is_i_biased(instance: Instance, allocation: Allocation, i: int, notion: str) -> bool:
    """True iff agent i is (weakly) richest; requires the allocation to pass the notion."""
    if not 0 <= i < instance.n:
        raise InputError(f"agent index {i} out of range")
    if not is_fair(instance, allocation, notion):
        raise PreconditionError(f"allocation is not {notion}")
    w = value_profile(instance, allocation)
    return all(w[i] >= w[j] for j in range(instance.n))


def expected_profile(instance: Instance, lottery: Lottery) -> tuple:
    """Exact expected per-agent values of a lottery."""
    total = [Fraction(0)] * instance.n
    for a, p in lottery.support:
        w = value_profile(instance, a)
        for i in range(instance.n):
            total[i] += p * w[i]
    return tuple(total)


def check_bobw(instance: Instance, lottery: Lottery, notion: str) -> BobwReport:
    """Verify ex ante EQ and ex post fairness of a lottery, exactly."""
    if notion not in NOTIONS:
        raise InputError(f"unknown notion {notion!r}")
    for a, _ in lottery.support:
        _check_dims(instance, a)
    profile = expected_profile(instance, lottery)
    ex_post = all(_is_fair(instance, a, notion) for a, _ in lottery.support)
    return BobwReport(ex_ante_eq=is_eq(profile), ex_post_fair=ex_post, expected_profile=profile)


# --- JSON wire formats ---------------------------------------------------


def format_fraction(x) -> str:
    return str(Fraction(x))


def parse_fraction(s: str) -> Fraction:
    s = s.strip()
    if "." in s or "e" in s.lower():
        raise InputError(f"decimal-free fraction string required, got {s!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad fraction string {s!r}") from exc


def instance_to_json(instance: Instance) -> dict:
    return {
        "n": instance.n,
        "m": instance.m,
        "valuations": [list(r) for r in instance.valuations],
    }


def instance_from_json(data: dict) -> Instance:
    try:
        n, m, rows = data["n"], data["m"], data["valuations"]
    except (KeyError, TypeError) as exc:
        raise InputError(f"bad instance JSON: {exc}") from exc
    inst = Instance(tuple(tuple(r) for r in rows))
    if inst.n != n or inst.m != m:
        raise InputError("instance JSON n/m do not match the valuation matrix")
    return inst


def allocation_to_json(allocation: Allocation) -> dict:
    return {"owner": list(allocation.owner)}


def allocation_from_json(data: dict) -> Allocation:
    try:
        return Allocation(tuple(data["owner"]))
    except (KeyError, TypeError) as exc:
        raise InputError(f"bad allocation JSON: {exc}") from exc


def lottery_to_json(lottery: Lottery) -> dict:
    return {
        "support": [
            {"owner": list(a.owner), "probability": format_fraction(p)}
            for a, p in lottery.support
        ]
    }


def lottery_from_json(data: dict) -> Lottery:
    try:
        entries = [
            (Allocation(tuple(e["owner"])), parse_fraction(e["probability"]))
            for e in data["support"]
        ]
    except (KeyError, TypeError) as exc:
        raise InputError(f"bad lottery JSON: {exc}") from exc
    return Lottery.of(entries)


def profile_to_json(profile: Sequence) -> list:
    return [format_fraction(x) for x in profile]


def load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read JSON from {path}: {exc}") from exc
