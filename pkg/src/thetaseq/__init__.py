"""Exact and high-precision computation of the d(n) Taylor coefficients of the centered theta constant."""
from .sequences import (
    DTable,
    IntegralityError,
    InsufficientTable,
    ThetaDerivCoeffs,
    compute_d,
    compute_r,
    compute_u,
    compute_v,
    sigma_hat_series,
    theta_deriv_coeffs,
)
from .series import TruncSeries, hypergeometric_series

__all__ = [
    "DTable",
    "IntegralityError",
    "InsufficientTable",
    "ThetaDerivCoeffs",
    "TruncSeries",
    "compute_d",
    "compute_r",
    "compute_u",
    "compute_v",
    "hypergeometric_series",
    "sigma_hat_series",
    "theta_deriv_coeffs",
]
