#!/usr/bin/env python3
"""Solve every canned counterexample instance and compare against the
recorded verdicts. Exit nonzero on any disagreement."""

import sys
import warnings

from equilot import certify, dp, oracle, reductions
from equilot.model import EQ1, EQX, Lottery


def main() -> int:
    failures = 0
    for name in reductions.canned_names():
        inst, meta = reductions.canned(name)
        print(f"== {name} (scale {meta['scale']}) ==")
        for key, expected in meta["verdicts"].items():
            if key == "bobw_eq1":
                with warnings.catch_warnings():
                    warnings.simplefilter("ignore")
                    res = dp.solve_general(inst, EQ1)
                got = isinstance(res, Lottery)
                extra = "" if got else f" witness={res.to_json()['lambda']}"
            elif key == "bobw_eqx":
                res = dp.solve_general(inst, EQX)
                got = isinstance(res, Lottery)
                extra = ""
            elif key == "unique_eqx_profile":
                profs = oracle.profile_set(inst, EQX).profiles
                got = profs[0] if len(profs) == 1 else profs
                expected = tuple(expected)
                extra = ""
            elif key == "biased_eq1":
                got = {
                    i: dp.exists_i_biased_dp(inst, i, EQ1) is not None
                    for i in expected
                }
                extra = ""
            else:
                raise ValueError(f"unknown verdict key {key}")
            status = "ok" if got == expected else "MISMATCH"
            if got != expected:
                failures += 1
            print(f"  {key}: expected {expected}, got {got}{extra} [{status}]")
        for caveat in meta["caveats"]:
            print(f"  note: {caveat}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
