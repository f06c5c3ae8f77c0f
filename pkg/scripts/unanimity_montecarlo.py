#!/usr/bin/env python
"""Detection rate of the unanimity check when two objectors perturb at random.

Small perturbation windows make it likely that the two changes cancel.
"""

import argparse
import sys
from dataclasses import replace

from partition_schemes.scheme import SchemeParams
from partition_schemes.unanimity import run_unanimity_session


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sessions", type=int, default=200)
    parser.add_argument("--rounds", type=int, default=5)
    parser.add_argument("--r", type=int, default=4)
    parser.add_argument("--windows", default="1,2,8,65536")
    args = parser.parse_args()

    params = SchemeParams(19, 23, 2, r=args.r, rounds=args.rounds)
    print(f"{'window':>8} {'rounds passed':>14} {'sessions detected':>18}")
    for window in (int(w) for w in args.windows.split(",")):
        rounds_passed = detected = 0
        for seed in range(args.sessions):
            session = run_unanimity_session(replace(params, rng_seed=seed), [0, 1], window=window)
            rounds_passed += sum(r.passed for r in session.rounds)
            detected += session.verdict == "objection_detected"
        total_rounds = args.sessions * args.rounds
        print(f"{window:>8} {rounds_passed / total_rounds:>14.2%} {detected / args.sessions:>18.2%}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
