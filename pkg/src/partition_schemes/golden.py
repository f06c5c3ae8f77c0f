"""Worked example for n=10, alpha=1 on primes, squares and odds."""

from __future__ import annotations

from .identity import build_identity, verify_identity
from .partitions import BaseSet, count_bounded, count_unrestricted

ARGS = (1, 2, 3, 4, 5, 6, 8, 10)

EXPECTED = {
    "primes": {"p": 5, "p1": (0, 1, 1, 0, 2, 0, 1, 2)},
    "squares": {"p": 4, "p1": (1, 0, 0, 1, 1, 0, 0, 1)},
    "odds": {"p": 10, "p1": (1, 0, 1, 1, 1, 1, 2, 2)},
}

EXPECTED_TERMS = sorted(
    [
        (1, 1), (1, 2), (1, 3), (5,), (1, 2, 2), (2, 4), (1, 2), (2, 2),
        (1, 1, 4), (3, 4), (2, 6), (1, 6), (1, 8), (10,),
    ]
)


def check() -> tuple[bool, list[str]]:
    lines = []
    ok = True
    terms = sorted(t.args for t in build_identity(10, 1).terms)
    same = terms == EXPECTED_TERMS
    ok &= same
    lines.append(f"{'OK ' if same else 'BAD'} identity(10, 1) has {len(terms)} terms")
    for name, want in EXPECTED.items():
        base = BaseSet.parse(name)
        got_p = count_unrestricted(base, 10)
        got_p1 = tuple(count_bounded(base, 1, a) for a in ARGS)
        report = verify_identity(10, 1, base)
        good = got_p == want["p"] and got_p1 == want["p1"] and report.equal
        ok &= good
        table = " ".join(f"p1({a})={v}" for a, v in zip(ARGS, got_p1))
        lines.append(f"{'OK ' if good else 'BAD'} {name}: p(10)={got_p} rhs={report.rhs} {table}")
    return ok, lines
