"""Exact computer algebra for skein-module finiteness arguments at desk scale."""

from .exact_arith import DivisionByZero, LaurentPoly, RatFunc, eval_q1
from .polyring import Ring, SparsePoly, normal_form, weighted_degree

__all__ = [
    "DivisionByZero",
    "LaurentPoly",
    "RatFunc",
    "Ring",
    "SparsePoly",
    "eval_q1",
    "normal_form",
    "weighted_degree",
]

__version__ = "0.1.0"
