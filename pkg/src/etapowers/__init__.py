"""Exact coefficients of eta-function powers and the statistics built on them."""

from ._backend import BACKEND
from .errors import (EtaPowersError, FormulaError, InsufficientLengthError, RootNumberError,
                     UnknownLawError)
from .series import CoeffSeries, EtaProduct, expand_eta_product, multiply, linear_combine
from .arithmetic import sieve, factorize, cornacchia, quad_reps, residue_flags
from .multiplicative import FAMILIES, SERIES_ONLY, coefficient_via_f, coefficient_26, family_eta
from .moments import LAWS, get_law, prefix_stats, normalized_ratio, fit_constant, lehmer_scan
from .constants import PRODUCTS, euler_product_partial, extrapolate, lvalue_at_2

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "EtaPowersError", "FormulaError", "InsufficientLengthError", "RootNumberError",
    "UnknownLawError", "CoeffSeries", "EtaProduct", "expand_eta_product", "multiply",
    "linear_combine", "sieve", "factorize", "cornacchia", "quad_reps", "residue_flags",
    "FAMILIES", "SERIES_ONLY", "coefficient_via_f", "coefficient_26", "family_eta", "LAWS",
    "get_law", "prefix_stats", "normalized_ratio", "fit_constant", "lehmer_scan", "PRODUCTS",
    "euler_product_partial", "extrapolate", "lvalue_at_2",
]
