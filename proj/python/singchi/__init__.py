"""Alexander polynomial and monodromy zeta function of plane curve singularities."""

from ._core import (
    CodimTable,
    Curve,
    InternalMismatch,
    NotCoprime,
    NotStabilized,
    ParseError,
    SingchiError,
    ValidationError,
    alexander,
    fiber_chi,
    load_curve,
    motivic_fiber_class,
    parse_curve,
    semigroup,
    torus_knot_alexander,
    verify,
    zeta,
)

__all__ = [
    "CodimTable",
    "Curve",
    "InternalMismatch",
    "NotCoprime",
    "NotStabilized",
    "ParseError",
    "SingchiError",
    "ValidationError",
    "alexander",
    "fiber_chi",
    "load_curve",
    "motivic_fiber_class",
    "parse_curve",
    "semigroup",
    "torus_knot_alexander",
    "verify",
    "zeta",
]
