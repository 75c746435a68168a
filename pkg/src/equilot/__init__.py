"""Exact solvers for randomized equitable allocation of indivisible goods.

Decide, construct, and certify lotteries over allocations that are equitable
in expectation and equitable-up-to-one-good (or up-to-any-good) in every
outcome, using rational arithmetic throughout.
"""

from .model import (
    EQ1,
    EQX,
    NOTIONS,
    Allocation,
    BobwReport,
    FractionalAllocation,
    InputError,
    Instance,
    Lottery,
    NotNormalisedError,
    PreconditionError,
    ResourceLimitError,
    check_bobw,
    expected_profile,
    is_eq,
    is_eq1,
    is_eqx,
    is_fair,
    is_i_biased,
    is_normalised,
    value_profile,
)
from .certify import Witness, decide_bobw, nonexistence_witness, verify_witness
from .two_agents import greedy_eqx, one_biased_eq1, solve_two_agents
from .binary import solve_binary
from .dp import exists_i_biased_dp, fair_profile_set_dp, solve_general

__all__ = [
    "EQ1",
    "EQX",
    "NOTIONS",
    "Allocation",
    "BobwReport",
    "FractionalAllocation",
    "InputError",
    "Instance",
    "Lottery",
    "NotNormalisedError",
    "PreconditionError",
    "ResourceLimitError",
    "Witness",
    "check_bobw",
    "decide_bobw",
    "exists_i_biased_dp",
    "expected_profile",
    "fair_profile_set_dp",
    "greedy_eqx",
    "is_eq",
    "is_eq1",
    "is_eqx",
    "is_fair",
    "is_i_biased",
    "is_normalised",
    "nonexistence_witness",
    "one_biased_eq1",
    "solve_binary",
    "solve_general",
    "solve_two_agents",
    "value_profile",
    "verify_witness",
]
