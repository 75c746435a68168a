#!/usr/bin/env python3
"""Randomized cross-validation of the specialized solvers against the
brute-force oracle, with per-method timing."""

import argparse
import random
import time
import warnings

from equilot import binary, dp, oracle, two_agents
from equilot.model import EQ1, Instance, Lottery, check_bobw


def random_normalised_two_agent(rng, m, v_max):
    row0 = tuple(rng.randint(0, v_max) for _ in range(m))
    total = sum(row0)
    cuts = sorted(rng.randint(0, total) for _ in range(m - 1))
    cuts = [0] + cuts + [total]
    row1 = tuple(cuts[i + 1] - cuts[i] for i in range(m))
    return Instance((row0, row1))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--trials", type=int, default=500)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)

    timings = {"two_agents": 0.0, "binary": 0.0, "dp": 0.0, "oracle": 0.0}
    mismatches = 0

    for _ in range(args.trials):
        # two-agent lane
        inst = random_normalised_two_agent(rng, rng.randint(1, 7), 9)
        t0 = time.perf_counter()
        lot = two_agents.solve_two_agents(inst)
        timings["two_agents"] += time.perf_counter() - t0
        rep = check_bobw(inst, lot, EQ1)
        assert rep.ex_ante_eq and rep.ex_post_fair

        # binary lane
        n, m = rng.randint(1, 4), rng.randint(1, 7)
        binst = Instance(
            tuple(tuple(rng.randint(0, 1) for _ in range(m)) for _ in range(n))
        )
        t0 = time.perf_counter()
        lot = binary.solve_binary(binst)
        timings["binary"] += time.perf_counter() - t0

        # general lane vs oracle
        n, m = rng.randint(1, 3), rng.randint(1, 6)
        ginst = Instance(
            tuple(tuple(rng.randint(0, 6) for _ in range(m)) for _ in range(n))
        )
        t0 = time.perf_counter()
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            a = dp.solve_general(ginst, EQ1)
        timings["dp"] += time.perf_counter() - t0
        t0 = time.perf_counter()
        b = oracle.brute_force_bobw(ginst, EQ1)
        timings["oracle"] += time.perf_counter() - t0
        if isinstance(a, Lottery) != isinstance(b, Lottery):
            mismatches += 1
            print(f"MISMATCH on {ginst.valuations}")

    print(f"trials: {args.trials}, mismatches: {mismatches}")
    for k, v in timings.items():
        print(f"  {k}: {v:.2f}s total, {1000 * v / args.trials:.2f}ms avg")


if __name__ == "__main__":
    main()
