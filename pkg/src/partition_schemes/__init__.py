"""Bounded-multiplicity partition identities and protocol simulations built on them."""

from .identity import (
    ExpandedProduct,
    IdentityExpr,
    SolutionMatrix,
    Term,
    build_identity,
    enumerate_solutions,
    evaluate_term,
    expand_pair_product,
    verify_identity,
)
from .partitions import BaseSet, count_bounded, count_unrestricted, enumerate_partitions, parts_up_to
from .scheme import SchemeParams

__all__ = [
    "BaseSet",
    "ExpandedProduct",
    "IdentityExpr",
    "SchemeParams",
    "SolutionMatrix",
    "Term",
    "build_identity",
    "count_bounded",
    "count_unrestricted",
    "enumerate_partitions",
    "enumerate_solutions",
    "evaluate_term",
    "expand_pair_product",
    "parts_up_to",
    "verify_identity",
]
