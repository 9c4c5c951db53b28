"""Diamond partial order on matrix algebras, its relatives, and its preservers."""

from .geninv import group_inverse, inner_inverse, is_ep, penrose_residuals, pinv
from .matcore import DEFAULT_TOL, BlockMat, Tol, approx_eq, rank, sample
from .orders import (
    HasseDiagram,
    OrderKind,
    OrderReport,
    gen_diamond_pair,
    hasse,
    leq,
    leq_diamond,
    leq_minus,
    leq_sharp,
    leq_star,
)
from .preservers import LinearMap, decompose_preserver, make_canonical, preserves_diamond
from .structure import Inapplicable

__version__ = "0.1.0"

__all__ = [
    "BlockMat",
    "DEFAULT_TOL",
    "HasseDiagram",
    "Inapplicable",
    "LinearMap",
    "OrderKind",
    "OrderReport",
    "Tol",
    "approx_eq",
    "decompose_preserver",
    "gen_diamond_pair",
    "group_inverse",
    "hasse",
    "inner_inverse",
    "is_ep",
    "leq",
    "leq_diamond",
    "leq_minus",
    "leq_sharp",
    "leq_star",
    "make_canonical",
    "penrose_residuals",
    "pinv",
    "preserves_diamond",
    "rank",
    "sample",
]
