"""Sequential operator splitting for linear delay differential equations."""

from ._core import (
    AlignmentError,
    ConfigError,
    NumericalError,
    Problem,
    ReferenceSolution,
    convergence,
    example_ids,
    l1_norm,
    left_shift,
    long_time,
    oracle_self_check,
    product_norm,
    reference,
    run,
    selftest,
    stability,
)

__all__ = [
    "AlignmentError",
    "ConfigError",
    "NumericalError",
    "Problem",
    "ReferenceSolution",
    "convergence",
    "example_ids",
    "l1_norm",
    "left_shift",
    "long_time",
    "oracle_self_check",
    "product_norm",
    "reference",
    "run",
    "selftest",
    "stability",
]
