"""Exact integer sequences u(n), v(n), r(n, k) and d(n).

d(n) are the Taylor coefficients of the centered theta constant,

    sigma_3(z) = theta_3(1) * sum_n d(n)/(2n)! * Phi^n * z^(2n),

and are produced here from the integer recurrence

    d(n) = v(n) - sum_{k=1}^{n-1} r(n, k) d(k),

with r(n, k) = 2^(n-k) (2n)!/(2k)! [t^(n-k)] U(t)^(2k). Every intermediate
value is a Python int; a division that fails to be exact raises
:class:`IntegralityError` instead of silently producing a rational.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from operator import mul

from .series import (
    TruncSeries,
    hypergeometric_series,
    series_div,
    series_mul,
    series_sqrt,
)


class IntegralityError(ArithmeticError):
    """A quantity that must be an integer came out fractional."""


class InsufficientTable(ValueError):
    pass


def _exact_div(num: int, den: int, what: str) -> int:
    q, rem = divmod(num, den)
    if rem:
        raise IntegralityError(f"{what}: {num} is not divisible by {den}")
    return q


@functools.lru_cache(maxsize=None)
def _products(n_max: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """(1*5*9*...*(4n-3), 3*7*11*...*(4n-1)) for n = 0..n_max; empty product is 1."""
    ones, threes = [1], [1]
    for n in range(1, n_max + 1):
        ones.append(ones[-1] * (4 * n - 3))
        threes.append(threes[-1] * (4 * n - 1))
    return tuple(ones), tuple(threes)


def compute_u(n_max: int) -> list[int]:
    """u(0..n_max), where U(t) = sum u(n)/(2n+1)! t^n."""
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    ones, threes = _products(n_max)
    u = [1]
    for n in range(1, n_max + 1):
        acc = threes[n] ** 2
        for m in range(n):
            acc -= comb(2 * n + 1, 2 * m + 1) * ones[n - m] ** 2 * u[m]
        u.append(acc)
    return u


def compute_v(n_max: int) -> list[int]:
    """v(0..n_max), where V(t) = sqrt(2F1(1/4,1/4;1/2;4t)) = sum v(n)/(2^n (2n)!) t^n.

    Uses the symmetrised recurrence so the factor 1/2 only ever meets the
    even central binomial coefficient.
    """
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    ones, _ = _products(n_max)
    v = [1]
    for n in range(1, n_max + 1):
        acc = 2 ** (n - 1) * ones[n] ** 2
        m = 1
        while 2 * m < n:
            acc -= comb(2 * n, 2 * m) * v[m] * v[n - m]
            m += 1
        if n % 2 == 0:
            acc -= comb(2 * n, n) // 2 * v[n // 2] ** 2
        v.append(acc)
    return v


def _first_column(u: list[int], n_max: int) -> list[int]:
    """r(i+1, 1) for i = 0..n_max-1, i.e. 2^i (2i+2)!/2 [t^i] U(t)^2."""
    col = []
    for i in range(n_max):
        s = sum(comb(2 * i + 2, 2 * a + 1) * u[a] * u[i - a] for a in range(i + 1))
        col.append(_exact_div(s << i, 2, f"r({i + 1},1)"))
    return col


def compute_r(n_max: int, u: list[int] | None = None) -> list[list[int]]:
    """Triangle r(n, k) for 0 <= k <= n <= n_max, as rows ``r[n][k]``.

    Row 0 is ``[1]`` and r(n, 0) = 0 for n >= 1. The even powers U^(2k) are
    built incrementally as U^(2k-2) * U^2 in the scaled integer form
    E_k(j) = r(j+k, k):

        E_k(j) = sum_i C(2(j+k), 2i+2) r(i+1, 1) E_{k-1}(j-i) / (k (2k-1)).
    """
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    if u is None:
        u = compute_u(max(n_max - 1, 0))
    col = _first_column(u, n_max)
    # weights[n][i] = C(2n, 2i+2) * r(i+1, 1), shared by every k with j + k = n
    weights = [[comb(2 * n, 2 * i + 2) * col[i] for i in range(n)] for n in range(n_max + 1)]

    r = [[1]] + [[0] for _ in range(n_max)]
    prev = [1] + [0] * n_max  # E_0(j)
    for k in range(1, n_max + 1):
        den = k * (2 * k - 1)
        cur = []
        for j in range(n_max - k + 1):
            w = weights[j + k]
            s = sum(map(mul, w[: j + 1], reversed(prev[: j + 1])))
            cur.append(_exact_div(s, den, f"r({j + k},{k})"))
        for j, val in enumerate(cur):
            r[j + k].append(val)
        prev = cur
    return r


@dataclass(frozen=True)
class DTable:
    n_max: int
    d: tuple
    u: tuple
    v: tuple
    r: tuple

    def __post_init__(self):
        if len(self.d) != self.n_max + 1:
            raise ValueError("d must hold n_max+1 values")

    def __getitem__(self, n: int) -> int:
        return self.d[n]

    def __len__(self) -> int:
        return len(self.d)

    def with_entry(self, n: int, value: int) -> "DTable":
        """Copy with d(n) replaced; used to feed deliberately corrupted tables to checks."""
        d = list(self.d)
        d[n] = value
        return DTable(self.n_max, tuple(d), self.u, self.v, self.r)


@functools.lru_cache(maxsize=8)
def compute_d(n_max: int) -> DTable:
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    u = compute_u(n_max)
    v = compute_v(n_max)
    r = compute_r(n_max, u)
    d = [1]
    for n in range(1, n_max + 1):
        row = r[n]
        d.append(v[n] - sum(map(mul, row[1:n], d[1:n])))
    return DTable(
        n_max=n_max,
        d=tuple(d),
        u=tuple(u),
        v=tuple(v),
        r=tuple(tuple(row) for row in r),
    )


def d_values(n_max: int) -> list[int]:
    return list(compute_d(n_max).d)


# -- Taylor coefficients of theta_3 at x = 1 ---------------------------------


@dataclass(frozen=True)
class ThetaDerivCoeffs:
    """theta_3^(n)(1) = theta_3(1) (-1)^n / 4^n * sum_k coeff_k * Omega^k."""

    n: int
    terms: tuple  # ((k, Fraction), ...)

    @property
    def sign(self) -> int:
        return -1 if self.n % 2 else 1

    @property
    def is_integral(self) -> bool:
        return all(c.denominator == 1 for _, c in self.terms)

    def polynomial(self) -> list:
        """Coefficients of Omega^0 .. Omega^(n//2); ints where integral."""
        return [int(c) if c.denominator == 1 else c for _, c in self.terms]

    def evaluate(self, omega):
        """Sum of coeff_k * omega^k, without the theta_3(1) (-1)^n / 4^n prefactor."""
        acc = 0
        for k, c in reversed(self.terms):
            acc = acc * omega + _as_number(c, omega)
        return acc


def _as_number(c: Fraction, like):
    if isinstance(like, (int, Fraction)):
        return c
    return like.__class__(c.numerator) / c.denominator


def theta_deriv_coeffs(n: int, dtable: DTable) -> ThetaDerivCoeffs:
    if n < 0:
        raise ValueError("derivative order must be nonnegative")
    if n // 2 > dtable.n_max:
        raise InsufficientTable(f"need d(0..{n // 2}), table has d(0..{dtable.n_max})")
    f2n = factorial(2 * n)
    terms = []
    for k in range(n // 2 + 1):
        den = 2 ** (n - 2 * k) * factorial(4 * k) * factorial(n - 2 * k)
        terms.append((k, Fraction(f2n, den) * dtable.d[k]))
    return ThetaDerivCoeffs(n, tuple(terms))


def sigma_hat_series(n_max: int, dtable: DTable) -> TruncSeries:
    """sum_{n<=n_max} d(n)/(2n)! z^(2n) as a series of order 2*n_max."""
    if n_max > dtable.n_max:
        raise InsufficientTable(f"need d(0..{n_max}), table has d(0..{dtable.n_max})")
    coeffs = [Fraction(0)] * (2 * n_max + 1)
    for n in range(n_max + 1):
        coeffs[2 * n] = Fraction(dtable.d[n], factorial(2 * n))
    return TruncSeries(tuple(coeffs), 2 * n_max)


# -- the same objects through exact series arithmetic ------------------------


def f1_series(order: int) -> TruncSeries:
    """2F1(1/4, 1/4; 1/2; 4t)."""
    return hypergeometric_series(Fraction(1, 4), Fraction(1, 4), Fraction(1, 2), 4, order)


def f2_series(order: int) -> TruncSeries:
    """2F1(3/4, 3/4; 3/2; 4t)."""
    return hypergeometric_series(Fraction(3, 4), Fraction(3, 4), Fraction(3, 2), 4, order)


def u_series(order: int) -> TruncSeries:
    return series_div(f2_series(order), f1_series(order))


def v_series(order: int) -> TruncSeries:
    return series_sqrt(f1_series(order))


def d_from_generating_function(n_max: int) -> list[int]:
    """Solve sum_n d(n)/(2^n (2n)!) (t U^2)^n = V order by order.

    Independent of the r(n, k) recurrence; kept as a cross-check.
    """
    U, V = u_series(n_max), v_series(n_max)
    w = series_mul(TruncSeries.variable(n_max), series_mul(U, U))
    partial = TruncSeries.zero(n_max)
    w_pow = TruncSeries.constant(1, n_max)
    d = []
    for n in range(n_max + 1):
        # w^n = t^n + O(t^(n+1)), so the t^n coefficient of V - partial is c_n
        c = V.coeffs[n] - partial.coeffs[n]
        val = c * 2**n * factorial(2 * n)
        if val.denominator != 1:
            raise IntegralityError(f"d({n}) = {val} from the generating function")
        d.append(val.numerator)
        partial = partial + w_pow * c
        w_pow = series_mul(w_pow, w)
    return d
