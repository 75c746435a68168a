"""Command-line front end.

Exit codes: 0 solution exists / check passed, 2 input or parse error,
3 no solution exists / check failed, 4 resource cap exhausted. All rationals
are printed as reduced "p/q" strings; stdout is deterministic for fixed
inputs and flags (timing goes to stderr).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
import warnings

from . import binary, certify, dp, oracle, reductions, two_agents
from .model import (
    EQ1,
    EQX,
    NOTIONS,
    InputError,
    Instance,
    Lottery,
    NotNormalisedError,
    PreconditionError,
    ResourceLimitError,
    check_bobw,
    expected_profile,
    format_fraction,
    instance_from_json,
    instance_to_json,
    is_fair,
    is_normalised,
    load_json,
    lottery_from_json,
    lottery_to_json,
    profile_to_json,
    value_profile,
)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NOT_EXISTS = 3
EXIT_RESOURCE = 4

METHODS = ("auto", "identical", "shift", "two-agents", "binary", "dp", "oracle")


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2, sort_keys=True))


def _warn(obj) -> None:
    print(json.dumps({"warning": obj}), file=sys.stderr)


def _load_instance(path: str) -> Instance:
    return instance_from_json(load_json(path))


def _applicable(instance: Instance, method: str, notion: str) -> bool:
    if method == "identical":
        return instance.has_identical_rows()
    if method == "shift":
        return instance.m == instance.n and is_normalised(instance) is not None
    if method == "two-agents":
        return (
            notion == EQ1
            and instance.n == 2
            and is_normalised(instance) is not None
        )
    if method == "binary":
        return notion == EQ1 and instance.is_binary()
    return True  # dp and oracle are always applicable within their caps


def _dispatch(instance: Instance, method: str, notion: str, cap: int):
    """Returns (method_used, Lottery | certify.Witness)."""
    if method == "auto":
        for candidate in ("identical", "shift", "two-agents", "binary", "dp"):
            if _applicable(instance, candidate, notion):
                return _dispatch(instance, candidate, notion, cap)
        raise AssertionError("dp is always applicable")
    if not _applicable(instance, method, notion):
        if method in ("shift", "two-agents") and is_normalised(instance) is None:
            _warn(
                {
                    "kind": "not_normalised",
                    "detail": f"method {method} requires a normalised instance; "
                    "falling back to dp",
                }
            )
            return _dispatch(instance, "dp", notion, cap)
        raise InputError(f"method {method!r} is not applicable to this instance")
    if method == "identical":
        return method, two_agents.identical_lottery(instance)
    if method == "shift":
        return method, two_agents.shift_lottery(instance)
    if method == "two-agents":
        return method, two_agents.solve_two_agents(instance)
    if method == "binary":
        return method, binary.solve_binary(instance)
    if method == "dp":
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            return method, dp.solve_general(instance, notion, cap)
    if method == "oracle":
        return method, oracle.brute_force_bobw(instance, notion, cap)
    raise InputError(f"unknown method {method!r}")


def cmd_solve(args) -> int:
    instance = _load_instance(args.instance)
    t0 = time.perf_counter()
    method_used, result = _dispatch(instance, args.method, args.notion, args.cap)
    elapsed = time.perf_counter() - t0
    report = {"notion": args.notion, "method_used": method_used}
    if isinstance(result, Lottery):
        bobw = check_bobw(instance, result, args.notion)
        assert bobw.ex_ante_eq and bobw.ex_post_fair
        report["exists"] = True
        report["lottery"] = lottery_to_json(result)
        report["expected_profile"] = profile_to_json(bobw.expected_profile)
        if args.trace and method_used == "two-agents":
            report["traces"] = [
                two_agents.one_biased_eq1(instance, i).to_json() for i in (0, 1)
            ]
        exit_code = EXIT_OK
    else:
        report["exists"] = False
        report["witness"] = result.to_json()
        exit_code = EXIT_NOT_EXISTS
    _emit(report)
    print(f"elapsed: {elapsed:.3f}s", file=sys.stderr)
    return exit_code


def cmd_check(args) -> int:
    instance = _load_instance(args.instance)
    lottery = lottery_from_json(load_json(args.lottery))
    bobw = check_bobw(instance, lottery, args.notion)
    report = {
        "notion": args.notion,
        "ex_ante_eq": bobw.ex_ante_eq,
        "ex_post_fair": bobw.ex_post_fair,
        "expected_profile": profile_to_json(bobw.expected_profile),
        "support": [
            {
                "owner": list(alloc.owner),
                "probability": format_fraction(prob),
                "profile": profile_to_json(value_profile(instance, alloc)),
                "fair": is_fair(instance, alloc, args.notion),
            }
            for alloc, prob in lottery.support
        ],
    }
    _emit(report)
    return EXIT_OK if bobw.ex_ante_eq and bobw.ex_post_fair else EXIT_NOT_EXISTS


def cmd_enumerate(args) -> int:
    instance = _load_instance(args.instance)
    pset = oracle.profile_set(instance, args.notion, args.cap)
    _emit(
        {
            "notion": args.notion,
            "profiles": [profile_to_json(p) for p in sorted(pset.profiles)],
        }
    )
    return EXIT_OK


def cmd_witness(args) -> int:
    instance = _load_instance(args.instance)
    pset = oracle.profile_set(instance, args.notion, args.cap)
    decision = certify.decide_bobw(pset)
    if isinstance(decision, certify.Feasible):
        _emit({"notion": args.notion, "exists": True})
        return EXIT_OK
    _emit({"notion": args.notion, "exists": False, "witness": decision.witness.to_json()})
    return EXIT_NOT_EXISTS


def cmd_gen(args) -> int:
    numbers = tuple(int(x) for x in args.numbers.split(","))
    inp = reductions.PartitionInput(numbers, args.target)
    gen = {
        "weak": reductions.gen_weak,
        "strong": reductions.gen_strong,
        "biased": reductions.gen_biased,
    }[args.kind]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        instance = gen(inp)
    _emit(instance_to_json(instance))
    return EXIT_OK


def cmd_canned(args) -> int:
    instance, meta = reductions.canned(args.name)
    _emit(instance_to_json(instance))
    print(json.dumps(meta, sort_keys=True, default=list), file=sys.stderr)
    return EXIT_OK


def cmd_fuzz(args) -> int:
    """Random cross-check of the auto solver against the brute-force oracle."""
    rng = random.Random(args.seed)
    mismatches = 0
    for trial in range(args.trials):
        n = rng.randint(1, 3)
        m = rng.randint(1, 6)
        vals = tuple(
            tuple(rng.randint(0, 6) for _ in range(m)) for _ in range(n)
        )
        instance = Instance(vals)
        _, result = _dispatch(instance, "auto", args.notion, args.cap)
        expected = oracle.brute_force_bobw(instance, args.notion, args.cap)
        if isinstance(result, Lottery) != isinstance(expected, Lottery):
            mismatches += 1
            _warn({"kind": "fuzz_mismatch", "valuations": [list(r) for r in vals]})
    _emit({"trials": args.trials, "mismatches": mismatches, "seed": args.seed})
    return EXIT_OK if mismatches == 0 else EXIT_NOT_EXISTS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="equilot",
        description="equitable lotteries over indivisible goods, exactly",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, lottery=False):
        p.add_argument("--notion", choices=NOTIONS, default=EQ1)
        p.add_argument("--cap", type=int, default=oracle.DEFAULT_CAP)

    p = sub.add_parser("solve", help="find a lottery or a non-existence witness")
    p.add_argument("instance")
    add_common(p)
    p.add_argument("--method", choices=METHODS, default="auto")
    p.add_argument("--trace", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("check", help="verify a lottery against an instance")
    p.add_argument("instance")
    p.add_argument("lottery")
    add_common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("enumerate", help="list all fair value profiles")
    p.add_argument("instance")
    add_common(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("witness", help="existence bit with witness on no")
    p.add_argument("instance")
    add_common(p)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("gen", help="generate a hardness-reduction instance")
    p.add_argument("kind", choices=("weak", "strong", "biased"))
    p.add_argument("--numbers", required=True, help="comma-separated integers")
    p.add_argument("--target", type=int, required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("canned", help="emit a known counterexample instance")
    p.add_argument("name")
    p.set_defaults(func=cmd_canned)

    p = sub.add_parser("fuzz", help="randomized solver-vs-oracle cross-check")
    add_common(p)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_fuzz)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ResourceLimitError as exc:
        _warn({"kind": "resource_limit", "detail": str(exc)})
        return EXIT_RESOURCE
    except (InputError, PreconditionError, OSError, json.JSONDecodeError) as exc:
        _warn({"kind": "input_error", "detail": str(exc)})
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
