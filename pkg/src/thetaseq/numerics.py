"""Arbitrary-precision evaluation of theta_3, sigma_3, 2F1 and the constants.

Values are :class:`mpmath.mpf`. Every public function takes the target
precision in bits and works internally with ``GUARD_BITS`` extra bits; series
are cut once the next term drops below 2^-(precision + GUARD_BITS).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import mpf

GUARD_BITS = 32
MIN_PRECISION = 64
MAX_TERMS = 200_000


class DomainError(ValueError):
    pass


class NoConvergence(ArithmeticError):
    pass


def _check_precision(precision: int) -> None:
    if precision < MIN_PRECISION:
        raise ValueError(f"precision must be at least {MIN_PRECISION} bits, got {precision}")


def to_mpf(x) -> mpf:
    """Exact conversion for int/Fraction/str; mpf passes through."""
    if isinstance(x, Fraction):
        return mpf(x.numerator) / x.denominator
    return mpf(x)


def _eps(precision: int) -> mpf:
    return mpf(2) ** (-(precision + GUARD_BITS))


def theta3(x, precision: int = 256) -> mpf:
    """theta_3(x) = 1 + 2 sum_{n>=1} exp(-pi n^2 x) for real x > 0."""
    _check_precision(precision)
    with mpmath.workprec(precision + GUARD_BITS):
        x = to_mpf(x)
        if x <= 0:
            raise DomainError(f"theta_3 needs x > 0, got {x}")
        eps = _eps(precision)
        pix = mpmath.pi * x
        total = mpf(0)
        n = 1
        while True:
            term = mpmath.exp(-pix * n * n)
            total += term
            if term < eps:
                break
            n += 1
            if n > MAX_TERMS:
                raise NoConvergence(f"theta_3({x}) did not converge")
        return 1 + 2 * total


def theta3_derivs(x, orders, precision: int = 256) -> dict:
    """theta_3^(n)(x) for each n in ``orders`` by term-wise differentiation.

    theta_3^(n)(x) = 2 sum_{m>=1} (-pi m^2)^n exp(-pi m^2 x)   (n >= 1)

    Summation stops once every requested order has had two consecutive
    terms below the cutoff past the peak of m^(2n) exp(-pi m^2 x).
    """
    _check_precision(precision)
    orders = sorted(set(orders))
    if orders and orders[0] < 0:
        raise ValueError("derivative orders must be nonnegative")
    with mpmath.workprec(precision + GUARD_BITS):
        x = to_mpf(x)
        if x <= 0:
            raise DomainError(f"theta_3 needs x > 0, got {x}")
        eps = _eps(precision)
        pi = mpmath.pi
        sums = {n: mpf(0) for n in orders}
        small = {n: 0 for n in orders}
        top = max(orders) if orders else 0
        # the summand m^(2n) e^(-pi m^2 x) peaks near m^2 = n/(pi x)
        m_peak = int(mpmath.sqrt(top / (pi * x))) + 1
        m = 1
        while True:
            base = -pi * m * m
            e = mpmath.exp(base * x)
            for n in orders:
                term = base**n * e
                sums[n] += term
                small[n] = small[n] + 1 if abs(term) < eps else 0
            if m > m_peak and all(c >= 2 for c in small.values()):
                break
            m += 1
            if m > MAX_TERMS:
                raise NoConvergence("theta_3 derivative series did not converge")
        return {n: (1 + 2 * sums[n]) if n == 0 else 2 * sums[n] for n in orders}


def theta3_deriv(n: int, precision: int = 256, x=1) -> mpf:
    """theta_3^(n)(x), by default at x = 1."""
    if n < 0:
        raise ValueError("derivative order must be nonnegative")
    return theta3_derivs(x, [n], precision)[n]


@dataclass(frozen=True)
class Constants:
    precision: int
    theta3_1: mpf
    gamma_quarter: mpf
    omega: mpf
    phi: mpf

    @property
    def gamma_three_quarters(self) -> mpf:
        """Gamma(3/4) from the reflection formula Gamma(1/4) Gamma(3/4) = sqrt(2) pi."""
        with mpmath.workprec(self.precision + GUARD_BITS):
            return mpmath.sqrt(2) * mpmath.pi / self.gamma_quarter


_constants_cache: dict[int, Constants] = {}


def constants(precision: int = 256) -> Constants:
    """theta_3(1), Gamma(1/4), Omega = Gamma(1/4)^8/(32 pi^4) and Phi = Omega/4.

    Gamma(1/4) comes from theta_3(1) = Gamma(1/4)/(sqrt(2) pi^(3/4)), and
    Omega from the equivalent pi^2 theta_3(1)^8 / 2.
    """
    _check_precision(precision)
    if precision in _constants_cache:
        return _constants_cache[precision]
    with mpmath.workprec(precision + GUARD_BITS):
        th = theta3(1, precision)
        pi = mpmath.pi
        gq = mpmath.sqrt(2) * pi ** (mpf(3) / 4) * th
        omega = pi**2 * th**8 / 2
        phi = omega / 4
    c = Constants(precision, th, gq, omega, phi)
    _constants_cache[precision] = c
    return c


def sigma3(z, precision: int = 256) -> mpf:
    """sigma_3(z) = theta_3((1-z)/(1+z)) / sqrt(1+z) for real |z| < 1."""
    _check_precision(precision)
    with mpmath.workprec(precision + GUARD_BITS):
        z = to_mpf(z)
        if abs(z) >= 1:
            raise DomainError(f"sigma_3 needs |z| < 1, got {z}")
        x = (1 - z) / (1 + z)
        # a few extra bits cover the loss when x is small and many terms contribute
        return theta3(x, precision + 8) / mpmath.sqrt(1 + z)


def hyp2f1_value(a, b, c, x, precision: int = 256) -> mpf:
    """Partial sums of 2F1(a, b; c; x) for rational parameters and |x| < 1."""
    _check_precision(precision)
    a, b, c = (Fraction(v) for v in (a, b, c))
    if c.denominator == 1 and c <= 0:
        raise DomainError(f"c = {c} is a nonpositive integer")
    with mpmath.workprec(precision + GUARD_BITS):
        x = to_mpf(x)
        if abs(x) >= 1:
            raise DomainError(f"series for 2F1 needs |x| < 1, got {x}")
        eps = _eps(precision)
        am, bm, cm = to_mpf(a), to_mpf(b), to_mpf(c)
        term = mpf(1)
        total = mpf(1)
        n = 0
        while True:
            term = term * (am + n) * (bm + n) / ((cm + n) * (n + 1)) * x
            total += term
            n += 1
            # the ratio tends to x, so a small term past the peak means the tail is small too
            if abs(term) < eps * (1 - abs(x)):
                ratio = abs((am + n) * (bm + n) / ((cm + n) * (n + 1)) * x)
                if ratio < 1:
                    return total
            if term == 0:
                return total
            if n > MAX_TERMS:
                raise NoConvergence(f"2F1({a},{b};{c};{x}) did not converge in {MAX_TERMS} terms")
