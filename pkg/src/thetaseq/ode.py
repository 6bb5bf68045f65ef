"""Residuals of Jacobi's third-order ODE for theta_3, sigma_3 and the rescaled sigma.

All three functions satisfy

    (y^2 y''' - 15 y y' y'' + 30 y'^3)^2 + 32 (y y'' - 3 y'^2)^3
        = K * y^10 * (y y'' - 3 y'^2)^2

with K = pi^2 for theta_3, 4 pi^2 for sigma_3 and 32 for the rescaled
series sum d(n)/(2n)! z^(2n). Only the last one is free of transcendental
constants and is checked exactly over the rationals.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

import mpmath
from mpmath import mpf

from .numerics import GUARD_BITS, DomainError, constants, theta3, theta3_derivs, to_mpf
from .sequences import DTable, InsufficientTable, compute_d, sigma_hat_series
from .series import TruncSeries, series_mul, series_pow

VALID_ORDER_MARGIN = 6


def _sides(y, y1, y2, y3):
    """LHS of the ODE and the factor y y'' - 3 y'^2, for anything supporting + - *."""
    a = y * y * y3 - 15 * y * y1 * y2 + 30 * y1 * y1 * y1
    b = y * y2 - 3 * y1 * y1
    return a * a + 32 * b * b * b, b


def ode_residual_series(y: TruncSeries, K=32) -> TruncSeries:
    """LHS - RHS as a truncated series; its order is y.order - 3."""
    y1 = y.derivative()
    y2 = y1.derivative()
    y3 = y2.derivative()
    lhs, b = _sides(y, y1, y2, y3)
    rhs = series_mul(series_pow(y, 10), series_mul(b, b)) * Fraction(K)
    return lhs - rhs


@dataclass(frozen=True)
class OdeResidual:
    truncation_order: int
    residual_coeffs: tuple
    valid_order: int

    @property
    def is_zero(self) -> bool:
        return not any(self.residual_coeffs)

    def first_nonzero(self) -> int | None:
        for k, c in enumerate(self.residual_coeffs):
            if c:
                return k
        return None


def sigma_hat_ode_residual(dtable: DTable, M: int) -> OdeResidual:
    """Exact residual of the rescaled ODE for sum_{2n<=M} d(n)/(2n)! z^(2n).

    Coefficients are reported through ``M - 6``. The third derivative alone
    costs three orders; the remaining margin is slack.
    """
    if M > 2 * dtable.n_max:
        raise InsufficientTable(f"order {M} needs d(0..{(M + 1) // 2}), table has d(0..{dtable.n_max})")
    if M < VALID_ORDER_MARGIN:
        raise ValueError(f"truncation order must be at least {VALID_ORDER_MARGIN}")
    y = sigma_hat_series(dtable.n_max, dtable).truncate(M)
    res = ode_residual_series(y, 32)
    valid = M - VALID_ORDER_MARGIN
    return OdeResidual(M, res.coeffs[: valid + 1], valid)


# -- pointwise residuals -----------------------------------------------------


def _numeric_sides(y, y1, y2, y3, K):
    lhs, b = _sides(y, y1, y2, y3)
    return lhs, K * y**10 * b * b


def theta_ode_sides(x, precision: int = 256, h=None) -> tuple[mpf, mpf]:
    """Both sides of the theta_3 ODE at x.

    Derivatives come from the term-wise differentiated theta series. With
    ``h`` set they are central finite differences instead, which is only
    good to roughly O(h^2).
    """
    with mpmath.workprec(precision + GUARD_BITS):
        x = to_mpf(x)
        if x <= 0:
            raise DomainError(f"theta_3 needs x > 0, got {x}")
        if h is None:
            ds = theta3_derivs(x, [0, 1, 2, 3], precision)
            y, y1, y2, y3 = ds[0], ds[1], ds[2], ds[3]
        else:
            h = to_mpf(h)
            f = {k: theta3(x + k * h, precision) for k in (-2, -1, 0, 1, 2)}
            y = f[0]
            y1 = (f[1] - f[-1]) / (2 * h)
            y2 = (f[1] - 2 * f[0] + f[-1]) / h**2
            y3 = (f[2] - 2 * f[1] + 2 * f[-1] - f[-2]) / (2 * h**3)
        return _numeric_sides(y, y1, y2, y3, mpmath.pi**2)


def theta_ode_residual(x, h=None, precision: int = 256) -> mpf:
    """|LHS - RHS| of the theta_3 ODE at x."""
    lhs, rhs = theta_ode_sides(x, precision, h)
    with mpmath.workprec(precision + GUARD_BITS):
        return abs(lhs - rhs)


def sigma_derivs(z, precision: int = 256, dtable: DTable | None = None) -> tuple[mpf, mpf, mpf, mpf]:
    """sigma_3 and its first three derivatives at z from the d(n) Taylor series.

    A supplied table is used as is. Without one, the table is lengthened
    until the last two terms of every derivative series fall below
    2^-(precision + guard) relative to sigma_3(z).
    """
    n_max = dtable.n_max if dtable is not None else 32
    while True:
        table = dtable if dtable is not None else compute_d(n_max)
        out, tail = _sigma_derivs_from(table, z, precision)
        if dtable is not None or tail:
            return out
        n_max *= 2


def _sigma_derivs_from(table: DTable, z, precision: int):
    c = constants(precision)
    with mpmath.workprec(precision + GUARD_BITS):
        z = to_mpf(z)
        out = [mpf(0)] * 4
        recent = []
        for n in range(table.n_max + 1):
            base = c.theta3_1 * mpf(table.d[n]) / factorial(2 * n) * c.phi**n
            p = 2 * n
            for r in range(4):
                if p < r:
                    continue
                # r-th derivative of z^p
                term = base * (factorial(p) // factorial(p - r)) * z ** (p - r)
                out[r] += term
                if n >= table.n_max - 1:
                    recent.append(abs(term))
        eps = mpf(2) ** (-(precision + GUARD_BITS)) * max(mpf(1), abs(out[0]))
        return tuple(out), all(t < eps for t in recent)


def sigma_ode_sides(z, precision: int = 256, dtable: DTable | None = None) -> tuple[mpf, mpf]:
    with mpmath.workprec(precision + GUARD_BITS):
        if abs(to_mpf(z)) >= 1:
            raise DomainError(f"sigma_3 needs |z| < 1, got {z}")
    y, y1, y2, y3 = sigma_derivs(z, precision, dtable)
    with mpmath.workprec(precision + GUARD_BITS):
        return _numeric_sides(y, y1, y2, y3, 4 * mpmath.pi**2)


def sigma_ode_residual(z, precision: int = 256, dtable: DTable | None = None) -> mpf:
    """|LHS - RHS| of the sigma_3 ODE at z."""
    lhs, rhs = sigma_ode_sides(z, precision, dtable)
    with mpmath.workprec(precision + GUARD_BITS):
        return abs(lhs - rhs)


def relative_residual(lhs, rhs, precision: int = 256) -> mpf:
    with mpmath.workprec(precision + GUARD_BITS):
        scale = max(abs(lhs), abs(rhs))
        return abs(lhs - rhs) / scale if scale else mpf(0)
