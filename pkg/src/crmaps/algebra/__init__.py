"""Exact algebra over the Gaussian rationals."""
from .poly import Poly, format_poly, format_terms
from .rational import Function, RationalFn, as_rational, divide_linear, substitute
from .scalars import (
    I, ONE, ZERO, Scalar, abs2, conj, fmt_scalar, gq, im, is_real, parse_scalar, re,
    real_sign, to_scalar,
)
from .series import (
    TruncSeries, divide_linear_series, series_lift, sqrt_series, substitute_series,
)
from .space import SpaceMismatch, VariableSpace, conj_name


def conjugate(f):
    """Complex conjugate of a Poly, RationalFn or TruncSeries."""
    return f.conj()


def wirtinger(f, var: str):
    """Formal partial derivative in ``var`` (partners held fixed)."""
    return f.diff(var)


__all__ = [
    "Function", "I", "ONE", "Poly", "RationalFn", "Scalar", "SpaceMismatch", "TruncSeries",
    "VariableSpace", "ZERO", "abs2", "as_rational", "conj", "conj_name", "conjugate",
    "divide_linear", "divide_linear_series", "fmt_scalar", "format_poly", "format_terms",
    "gq", "im", "is_real", "parse_scalar", "re", "real_sign", "series_lift", "sqrt_series",
    "substitute", "substitute_series", "to_scalar", "wirtinger",
]
