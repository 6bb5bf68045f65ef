"""Numerical oracles that re-derive d(n) and the related identities.

Each oracle compares a quantity assembled from the exact integers d(n)
against an independent floating evaluation and returns an
:class:`OracleVerdict`. Unless stated otherwise the pass threshold is
``max(tail estimate, 2^-(precision-48) * scale)`` where ``scale`` is the
magnitude of the largest number that entered the computation; a failure is
therefore attributable either to series truncation or to a wrong d(n), not
to rounding.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Any

import mpmath
from mpmath import mpf

from .numerics import GUARD_BITS, DomainError, constants, hyp2f1_value, sigma3, theta3_deriv, to_mpf
from .sequences import DTable, compute_d, theta_deriv_coeffs

ROUNDING_SLACK_BITS = 48


# -- Hermite polynomials -----------------------------------------------------


@dataclass(frozen=True)
class HermitePoly:
    """Physicists' Hermite polynomial; ``coeffs[i]`` multiplies x^i."""

    m: int
    coeffs: tuple

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc


@functools.lru_cache(maxsize=None)
def hermite(m: int) -> HermitePoly:
    """H_m from H_{m+1} = 2x H_m - 2m H_{m-1}, H_0 = 1, H_1 = 2x."""
    if m < 0:
        raise ValueError("degree must be nonnegative")
    if m == 0:
        return HermitePoly(0, (1,))
    if m == 1:
        return HermitePoly(1, (0, 2))
    h_prev, h = hermite(m - 2).coeffs, hermite(m - 1).coeffs
    k = m - 1
    out = [0] * (m + 1)
    for i, c in enumerate(h):
        out[i + 1] += 2 * c
    for i, c in enumerate(h_prev):
        out[i] -= 2 * k * c
    return HermitePoly(m, tuple(out))


# -- verdicts ----------------------------------------------------------------


@dataclass(frozen=True)
class OracleVerdict:
    quantity: str
    exact_value: Any
    reference_value: mpf  # the exact side evaluated numerically
    oracle_value: mpf
    abs_error: mpf
    tolerance: mpf
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return bool(self.abs_error <= self.tolerance)

    @property
    def rel_error(self) -> mpf:
        scale = abs(self.reference_value)
        return self.abs_error / scale if scale else self.abs_error

    def as_dict(self, digits: int = 30) -> dict:
        def s(x):
            return mpmath.nstr(x, digits) if isinstance(x, mpf) else str(x)

        return {
            "quantity": self.quantity,
            "exact_value": str(self.exact_value),
            "reference_value": s(self.reference_value),
            "oracle_value": s(self.oracle_value),
            "abs_error": mpmath.nstr(self.abs_error, 6),
            "tolerance": mpmath.nstr(self.tolerance, 6),
            "pass": self.passed,
        }


def _rounding_floor(precision: int, scale) -> mpf:
    return mpf(2) ** (-(precision - ROUNDING_SLACK_BITS)) * max(mpf(1), abs(scale))


def _table(dtable: DTable | None, n: int) -> DTable:
    if dtable is not None and dtable.n_max >= n:
        return dtable
    if dtable is not None:
        raise ValueError(f"d-table covers d(0..{dtable.n_max}), need d(0..{n})")
    return compute_d(n)


# -- Hermite sums ------------------------------------------------------------


def hermite_sum(k: int, precision: int = 512) -> tuple[mpf, mpf]:
    """sum_{n in Z} exp(-pi n^2) H_{2k}(sqrt(2 pi) n) and the largest |summand|."""
    H = hermite(2 * k)
    with mpmath.workprec(precision + GUARD_BITS):
        pi = mpmath.pi
        root = mpmath.sqrt(2 * pi)
        total = mpf(H.coeffs[0])
        biggest = abs(total)
        cutoff = mpf(2) ** (-(precision + GUARD_BITS))
        # summand ~ (2 sqrt(2 pi) n)^(2k) e^(-pi n^2) peaks near n^2 = k/pi
        n_peak = int(mpmath.sqrt(mpf(k) / pi)) + 1
        small = 0
        n = 1
        while True:
            term = 2 * mpmath.exp(-pi * n * n) * H(root * n)
            total += term
            biggest = max(biggest, abs(term))
            small = small + 1 if abs(term) < cutoff * max(1, biggest) else 0
            if n > n_peak and small >= 2:
                break
            n += 1
        return total, biggest


def hermite_oracle_d(j: int, precision: int = 512, dtable: DTable | None = None) -> OracleVerdict:
    """Recover d(j) as (Hermite sum for k = 2j) / (theta_3(1) 16^j Phi^j)."""
    if j < 0:
        raise ValueError("j must be nonnegative")
    table = _table(dtable, j)
    exact = table.d[j]
    c = constants(precision)
    s, biggest = hermite_sum(2 * j, precision)
    with mpmath.workprec(precision + GUARD_BITS):
        norm = c.theta3_1 * mpf(16) ** j * c.phi**j
        oracle = s / norm
        ref = mpf(exact)
        err = abs(oracle - ref)
        tol = _rounding_floor(precision, biggest / norm)
    return OracleVerdict(f"hermite d({j})", exact, ref, oracle, err, tol)


def hermite_odd_verdict(k: int, precision: int = 512) -> OracleVerdict:
    """For odd k the Hermite sum vanishes."""
    if k % 2 == 0:
        raise ValueError("k must be odd")
    s, biggest = hermite_sum(k, precision)
    with mpmath.workprec(precision + GUARD_BITS):
        tol = _rounding_floor(precision, biggest)
        return OracleVerdict(f"hermite sum k={k}", 0, mpf(0), s, abs(s), tol)


# -- power sums and derivatives ----------------------------------------------


def power_sum_oracle(k: int, dtable: DTable | None = None, precision: int = 256) -> OracleVerdict:
    """sum_{n in Z} n^(2k) e^(-pi n^2) against its closed form in d(0..k/2) and Omega."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    table = _table(dtable, k // 2)
    coeffs = theta_deriv_coeffs(k, table)
    c = constants(precision)
    with mpmath.workprec(precision + GUARD_BITS):
        pi = mpmath.pi
        cutoff = mpf(2) ** (-(precision + GUARD_BITS))
        lhs = mpf(1) if k == 0 else mpf(0)  # 0^0 = 1
        n_peak = int(mpmath.sqrt(mpf(k) / pi)) + 1
        small = 0
        n = 1
        while True:
            term = 2 * mpf(n) ** (2 * k) * mpmath.exp(-pi * n * n)
            lhs += term
            small = small + 1 if term < cutoff * max(1, abs(lhs)) else 0
            if n > n_peak and small >= 2:
                break
            n += 1
        prefactor = pi ** (mpf(1) / 4) / c.gamma_three_quarters / (4 * pi) ** k
        rhs = prefactor * coeffs.evaluate(c.omega)
        err = abs(lhs - rhs)
        tol = _rounding_floor(precision, lhs)
    return OracleVerdict(f"power sum k={k}", coeffs.polynomial(), rhs, lhs, err, tol)


def deriv_oracle(n: int, dtable: DTable | None = None, precision: int = 256) -> OracleVerdict:
    """Term-wise theta_3^(n)(1) against the Omega-polynomial built from d(k).

    Passes on relative error below 2^-(precision/2).
    """
    table = _table(dtable, n // 2)
    coeffs = theta_deriv_coeffs(n, table)
    c = constants(precision)
    direct = theta3_deriv(n, precision)
    with mpmath.workprec(precision + GUARD_BITS):
        ref = c.theta3_1 * coeffs.sign / mpf(4) ** n * coeffs.evaluate(c.omega)
        err = abs(direct - ref)
        tol = mpf(2) ** (-(precision // 2)) * abs(ref)
    return OracleVerdict(f"theta3 deriv n={n}", coeffs.polynomial(), ref, direct, err, tol)


# -- truncated-series oracles ------------------------------------------------

MAX_TAIL_TERMS = 1024


def _partial_and_tail(term, N: int, dtable: DTable | None, floor) -> tuple:
    """Partial sum through n = N and a bound on what was left out.

    ``term(n, d_n)`` gives the n-th summand. d(0..N) come from ``dtable``;
    the omitted terms use exact d(n) and are summed in absolute value until
    two in a row fall below ``floor``. The bound is that absolute sum plus
    ``floor``, or +inf (and the verdict fails) if the omitted terms never get
    that small within MAX_TAIL_TERMS.
    """
    head = _table(dtable, N).d[: N + 1]
    kept = [term(n, dn) for n, dn in enumerate(head)]
    extra = 16
    while True:
        d = compute_d(N + extra).d
        omitted = [abs(term(n, d[n])) for n in range(N + 1, N + extra + 1)]
        if len(omitted) >= 2 and omitted[-1] < floor and omitted[-2] < floor:
            return kept, mpmath.fsum(omitted) + floor, omitted[0]
        if extra >= MAX_TAIL_TERMS:
            return kept, mpf("inf"), omitted[0]
        extra *= 2


def genfun_oracle(t, N: int, dtable: DTable | None = None, precision: int = 256) -> OracleVerdict:
    """Partial sum of sum_n d(n)/(2^n (2n)!) t^n U(t)^(2n) against V(t)."""
    t = Fraction(t)
    if not 0 < t < Fraction(1, 4):
        raise DomainError(f"t must lie in (0, 1/4), got {t}")
    with mpmath.workprec(precision + GUARD_BITS):
        f1 = hyp2f1_value(Fraction(1, 4), Fraction(1, 4), Fraction(1, 2), 4 * t, precision)
        f2 = hyp2f1_value(Fraction(3, 4), Fraction(3, 4), Fraction(3, 2), 4 * t, precision)
        U = f2 / f1
        V = mpmath.sqrt(f1)
        w = to_mpf(t) * U * U
        floor = _rounding_floor(precision, V)

        def term(n, dn):
            return mpf(dn) / (mpf(2) ** n * factorial(2 * n)) * w**n

        kept, tail, first = _partial_and_tail(term, N, dtable, floor)
        lhs = mpmath.fsum(kept)
        err = abs(lhs - V)
    return OracleVerdict(
        f"genfun t={t} N={N}", tuple(_table(dtable, N).d[: N + 1]), lhs, V, err, tail,
        details={"first_omitted": first},
    )


def sigma_taylor_oracle(z, N: int, dtable: DTable | None = None, precision: int = 256) -> OracleVerdict:
    """Taylor partial sum of sigma_3 through z^(2N) against sigma_3(z) itself."""
    direct = sigma3(z, precision)
    c = constants(precision)
    with mpmath.workprec(precision + GUARD_BITS):
        zz = to_mpf(z)
        x = c.phi * zz * zz
        floor = _rounding_floor(precision, direct)

        def term(n, dn):
            return c.theta3_1 * mpf(dn) / factorial(2 * n) * x**n

        kept, tail, first = _partial_and_tail(term, N, dtable, floor)
        partial = mpmath.fsum(kept)
        err = abs(partial - direct)
    return OracleVerdict(
        f"sigma taylor z={mpmath.nstr(zz, 8)} N={N}", tuple(_table(dtable, N).d[: N + 1]),
        partial, direct, err, tail,
        details={"first_omitted": first},
    )
