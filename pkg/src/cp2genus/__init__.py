"""Exact verification of CP(2)-multiplicative Hirzebruch genera."""

from .exactalg import Poly, VarSet, divide_exact, evaluate, format_poly, parse_poly, substitute
from .fps import BiSeries, LaurentSeries, bi_coeff, bi_embed, exp_linear, shift_expand
from .genera import (
    Classification,
    CurveParams,
    GenusSeries,
    classify,
    cp_genus,
    curve_params,
    elliptic_f,
    f8_from_u2,
    fe_residual,
    generic_solve,
    obstruction,
    todd_f,
    u1_residual,
    u2_residual,
    weierstrass_p,
)

__version__ = "0.1.0"

__all__ = [
    "Poly",
    "VarSet",
    "divide_exact",
    "evaluate",
    "format_poly",
    "parse_poly",
    "substitute",
    "BiSeries",
    "LaurentSeries",
    "bi_coeff",
    "bi_embed",
    "exp_linear",
    "shift_expand",
    "Classification",
    "CurveParams",
    "GenusSeries",
    "classify",
    "cp_genus",
    "curve_params",
    "elliptic_f",
    "f8_from_u2",
    "fe_residual",
    "generic_solve",
    "obstruction",
    "todd_f",
    "u1_residual",
    "u2_residual",
    "weierstrass_p",
]
