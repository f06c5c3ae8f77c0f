"""Solution matrices and the partition identity built from them.

For a bound ``alpha`` write ``b = alpha + 1``.  Every partition of ``n`` splits
uniquely, by writing each multiplicity in base ``b``, into bounded partitions of
``u_0, u_1, ...`` with ``n = sum(u_i * b**i)``.  Hence

    p(n) = sum over rows (u_0, u_1, ...) of prod_i p_alpha(u_i)

holds for every base set.  Zero coefficients contribute ``p_alpha(0) = 1`` and
are dropped from terms.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import NoNontrivialRows
from .partitions import BaseSet, count_table, count_unrestricted


@dataclass(frozen=True)
class SolutionMatrix:
    n: int
    alpha: int
    rows: tuple[tuple[int, ...], ...]

    def __len__(self):
        return len(self.rows)

    @property
    def trivial_index(self) -> int:
        return self.rows.index((self.n,))

    def to_text(self) -> str:
        lines = [f"# n={self.n} alpha={self.alpha}"]
        lines += [",".join(map(str, row)) for row in self.rows]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "SolutionMatrix":
        lines = [line.strip() for line in text.splitlines() if line.strip()]
        header = dict(item.split("=") for item in lines[0].lstrip("#").split())
        rows = tuple(tuple(int(v) for v in line.split(",")) for line in lines[1:])
        return cls(int(header["n"]), int(header["alpha"]), rows)


@dataclass(frozen=True)
class Term:
    """A product of bounded partition counts, one factor per argument."""

    args: tuple[int, ...]
    provenance: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(sorted(a for a in self.args if a != 0)))

    @property
    def key(self) -> tuple[int, ...]:
        return self.args

    def __str__(self):
        if not self.args:
            return "1"
        return "".join(f"p({a})" for a in self.args)


@dataclass(frozen=True)
class IdentityExpr:
    n: int
    alpha: int
    terms: tuple[Term, ...]

    def evaluate(self, base: BaseSet) -> int:
        return sum(evaluate_term(t, base, self.alpha) for t in self.terms)

    def to_text(self) -> str:
        lines = [f"# n={self.n} alpha={self.alpha}"]
        lines += [",".join(map(str, t.args)) for t in self.terms]
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class ExpandedProduct:
    """Expansion of ``(p(n1) - p_a(n1)) * (p(n2) - p_a(n2))``.

    Each term's provenance is ``(row of n1, row of n2)`` in the respective
    solution matrices.
    """

    n1: int
    n2: int
    alpha: int
    terms: tuple[Term, ...]

    def evaluate(self, base: BaseSet) -> int:
        return sum(evaluate_term(t, base, self.alpha) for t in self.terms)


@dataclass(frozen=True)
class IdentityReport:
    lhs: int
    rhs: int
    equal: bool


def _check(n, alpha):
    if n < 1:
        raise ValueError("n must be a positive integer")
    if alpha < 1:
        raise ValueError("alpha must be a positive integer")


def enumerate_solutions(n: int, alpha: int) -> SolutionMatrix:
    """All ``(u_0, u_1, ...)`` with ``sum(u_i * (alpha+1)**i) == n``.

    Rows are trimmed of trailing zeros and sorted descending by
    ``(u_k, ..., u_1, u_0)`` on the zero-padded vectors, so the trivial row
    ``(n,)`` comes last.
    """
    _check(n, alpha)
    base = alpha + 1
    powers = [1]
    while powers[-1] * base <= n:
        powers.append(powers[-1] * base)

    found = []

    def descend(level, remaining, high):
        # high: coefficients for indices > level, highest index first
        if level == 0:
            found.append(tuple(high) + (remaining,))
            return
        for c in range(remaining // powers[level], -1, -1):
            high.append(c)
            descend(level - 1, remaining - c * powers[level], high)
            high.pop()

    descend(len(powers) - 1, n, [])
    # found is already in descending order of the reversed vectors
    rows = []
    for reversed_row in found:
        row = list(reversed(reversed_row))
        while len(row) > 1 and row[-1] == 0:
            row.pop()
        rows.append(tuple(row))
    return SolutionMatrix(n, alpha, tuple(rows))


def build_identity(n: int, alpha: int) -> IdentityExpr:
    matrix = enumerate_solutions(n, alpha)
    return IdentityExpr(n, alpha, tuple(Term(row, (i,)) for i, row in enumerate(matrix.rows)))


def evaluate_term(term: Term, base: BaseSet, alpha: int) -> int:
    if not term.args:
        return 1
    table = count_table(base, alpha, max(term.args))
    value = 1
    for a in term.args:
        value *= table[a]
    return value


def verify_identity(n: int, alpha: int, base: BaseSet) -> IdentityReport:
    lhs = count_unrestricted(base, n)
    rhs = build_identity(n, alpha).evaluate(base)
    return IdentityReport(lhs, rhs, lhs == rhs)


def nontrivial_terms(n: int, alpha: int) -> tuple[Term, ...]:
    identity = build_identity(n, alpha)
    return tuple(t for t in identity.terms if t.args != (n,))


def expand_pair_product(n1: int, n2: int, alpha: int) -> ExpandedProduct:
    _check(n1, alpha)
    _check(n2, alpha)
    left = nontrivial_terms(n1, alpha)
    right = nontrivial_terms(n2, alpha)
    for n, side in ((n1, left), (n2, right)):
        if not side:
            raise NoNontrivialRows(f"n={n} has only the trivial row for alpha={alpha}")
    terms = tuple(
        Term(s.args + t.args, s.provenance + t.provenance) for s, t in product(left, right)
    )
    return ExpandedProduct(n1, n2, alpha, terms)
