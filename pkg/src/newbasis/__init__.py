"""Exact construction of the new basis of functions on V_D and its matrices."""

from .checks import CHECKS, VerifyReport, run_checks
from .dyadic import Dyadic, FunctionVector
from .gf2 import CircVector, Gf2Subspace, form, perp, span, vec_from_subset
from .intervals import Interval, Pattern, epsilon, parse_pattern, prec, spade
from .matrices import (
    BasisMatrix,
    FourierMatrix,
    build_all,
    d_matrix,
    n_matrix,
    r_matrix,
    vd_expansion,
)
from .phi import (
    PhiFamily,
    b_shift,
    enumerate_bruteforce,
    enumerate_phi,
    hasse_dot,
    t_insert,
)

__all__ = [
    "BasisMatrix",
    "CHECKS",
    "CircVector",
    "Dyadic",
    "FourierMatrix",
    "FunctionVector",
    "Gf2Subspace",
    "Interval",
    "Pattern",
    "PhiFamily",
    "VerifyReport",
    "b_shift",
    "build_all",
    "d_matrix",
    "enumerate_bruteforce",
    "enumerate_phi",
    "epsilon",
    "form",
    "hasse_dot",
    "n_matrix",
    "parse_pattern",
    "perp",
    "prec",
    "r_matrix",
    "run_checks",
    "spade",
    "span",
    "t_insert",
    "vd_expansion",
    "vec_from_subset",
]
