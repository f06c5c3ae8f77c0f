#!/usr/bin/env python
"""Share of random base sets with no zero factor in any distributed row, by density."""

import argparse
import sys
from fractions import Fraction

from partition_schemes.membership import membership_setup
from partition_schemes.scheme import SchemeParams, candidate_base_set


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n1", type=int, default=19)
    parser.add_argument("--n2", type=int, default=23)
    parser.add_argument("--alpha", type=int, default=2)
    parser.add_argument("--samples", type=int, default=500)
    args = parser.parse_args()

    for density in (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(9, 10)):
        params = SchemeParams(args.n1, args.n2, args.alpha, r=3, base_density=density)
        secret = membership_setup(params).secret
        ok = sum(secret.viable(candidate_base_set(7, i, params)) for i in range(args.samples))
        rate = ok / args.samples
        print(f"density {str(density):>5}: viable {rate:6.1%}  P(32 retries fail) = {(1 - rate) ** 32:.2e}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
