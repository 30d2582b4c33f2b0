"""Exact calculus of discrete difference operators on integer lattices."""

from .expansion import (
    GroupedExpansion,
    cyclic_factor,
    expand_single,
    expand_word_grouped,
    expand_word_sequence,
)
from .fdeg import (
    DegreeReport,
    fdeg_general,
    fdeg_standard,
    fdeg_standard_by_search,
    leading_term_check,
)
from .group_ring import (
    DifferenceWord,
    DimensionMismatchError,
    GroupRingElement,
    IntegerFunction,
    LatticePoint,
    WindowError,
    apply,
    delta,
    identity,
    shift,
    word_operator,
    zero,
)
from .identities import (
    UnknownIdentityError,
    VerificationReport,
    alt_sum_multivariate,
    alt_sum_univariate,
    available_identities,
    verify_identity,
)
from .polyfract import (
    NEG_INFINITY,
    ExponentTuple,
    MonomialPolynomial,
    Polyfract,
    binom,
    exponent_tuples,
    from_monomial,
    from_samples,
)

__version__ = "0.1.0"

__all__ = [
    "DegreeReport",
    "DifferenceWord",
    "DimensionMismatchError",
    "ExponentTuple",
    "GroupRingElement",
    "GroupedExpansion",
    "IntegerFunction",
    "LatticePoint",
    "MonomialPolynomial",
    "NEG_INFINITY",
    "Polyfract",
    "UnknownIdentityError",
    "VerificationReport",
    "WindowError",
    "alt_sum_multivariate",
    "alt_sum_univariate",
    "apply",
    "available_identities",
    "binom",
    "cyclic_factor",
    "delta",
    "expand_single",
    "expand_word_grouped",
    "expand_word_sequence",
    "exponent_tuples",
    "fdeg_general",
    "fdeg_standard",
    "fdeg_standard_by_search",
    "from_monomial",
    "from_samples",
    "identity",
    "leading_term_check",
    "shift",
    "verify_identity",
    "word_operator",
    "zero",
]
