"""Critical values discriminants, monodromy of inverse functions and typicality probes."""

from .algebra import (
    Poly,
    SquareMatrix,
    charpoly,
    companion,
    cvd,
    disc_variety_member,
    discriminant,
    matpoly_eval,
    monic_derivative,
    monic_from_coeffs,
    resultant,
)
from .contour import ContourConfig, count_zeros, find_zeros, newton_sums, truncated_cvd
from .errors import CritvalsError, InputError, NumericalError
from .exact import ExactComplex
from .exprlang import EntireExpr, differentiate, evaluate, order_and_type, parse_expr
from .groups import Permutation, group_analyze
from .monodromy import (
    build_loops,
    entire_branch_probe,
    monodromy_group,
    radicals_verdict,
    track_fiber,
)
from .roots import roots
from .typicality import (
    classify_critical_cardinality,
    classify_surjectivity,
    hermite_interpolant,
    split_zeros,
    theta_bound,
    typicality_probe,
)

__all__ = [
    "Poly",
    "SquareMatrix",
    "charpoly",
    "companion",
    "cvd",
    "disc_variety_member",
    "discriminant",
    "matpoly_eval",
    "monic_derivative",
    "monic_from_coeffs",
    "resultant",
    "ContourConfig",
    "count_zeros",
    "find_zeros",
    "newton_sums",
    "truncated_cvd",
    "CritvalsError",
    "InputError",
    "NumericalError",
    "ExactComplex",
    "EntireExpr",
    "differentiate",
    "evaluate",
    "order_and_type",
    "parse_expr",
    "Permutation",
    "group_analyze",
    "build_loops",
    "entire_branch_probe",
    "monodromy_group",
    "radicals_verdict",
    "track_fiber",
    "roots",
    "classify_critical_cardinality",
    "classify_surjectivity",
    "hermite_interpolant",
    "split_zeros",
    "theta_bound",
    "typicality_probe",
]

__version__ = "0.1.0"
