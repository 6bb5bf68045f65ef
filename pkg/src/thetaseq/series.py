"""Truncated power series with exact rational coefficients.

A :class:`TruncSeries` holds the coefficients of t^0 .. t^M as
:class:`fractions.Fraction` values together with the truncation order M.
Binary operations on series of different orders truncate to the smaller
order, so coefficients that depend on terms beyond either input are never
reported.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable


class SeriesError(ArithmeticError):
    pass


class ZeroConstantTerm(SeriesError):
    pass


class OrderExceeded(SeriesError, IndexError):
    pass


class PoleInC(SeriesError, ValueError):
    pass


def _q(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("series coefficients must be exact (int or Fraction), got float")
    return Fraction(x)


@dataclass(frozen=True)
class TruncSeries:
    coeffs: tuple
    order: int

    def __post_init__(self):
        if self.order < 0:
            raise ValueError("truncation order must be nonnegative")
        cs = tuple(_q(c) for c in self.coeffs)
        if len(cs) > self.order + 1:
            cs = cs[: self.order + 1]
        elif len(cs) < self.order + 1:
            cs = cs + (Fraction(0),) * (self.order + 1 - len(cs))
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def from_coeffs(cls, coeffs: Iterable, order: int | None = None) -> "TruncSeries":
        cs = tuple(coeffs)
        if order is None:
            order = len(cs) - 1
        return cls(cs, order)

    @classmethod
    def constant(cls, c, order: int) -> "TruncSeries":
        return cls((c,), order)

    @classmethod
    def zero(cls, order: int) -> "TruncSeries":
        return cls((), order)

    @classmethod
    def variable(cls, order: int) -> "TruncSeries":
        """The series ``t`` itself."""
        return cls((0, 1), order)

    def __getitem__(self, j: int) -> Fraction:
        return series_coeff(self, j)

    def __len__(self) -> int:
        return self.order + 1

    def __iter__(self):
        return iter(self.coeffs)

    def __add__(self, other):
        return series_add(self, _lift(other, self.order))

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries(tuple(-c for c in self.coeffs), self.order)

    def __sub__(self, other):
        return series_add(self, -_lift(other, self.order))

    def __rsub__(self, other):
        return series_add(_lift(other, self.order), -self)

    def __mul__(self, other):
        if isinstance(other, TruncSeries):
            return series_mul(self, other)
        c = _q(other)
        return TruncSeries(tuple(c * a for a in self.coeffs), self.order)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, TruncSeries):
            return series_div(self, other)
        c = _q(other)
        return TruncSeries(tuple(a / c for a in self.coeffs), self.order)

    def __pow__(self, k: int):
        return series_pow(self, k)

    def truncate(self, order: int) -> "TruncSeries":
        return TruncSeries(self.coeffs[: order + 1], min(order, self.order))

    def derivative(self) -> "TruncSeries":
        """Term-wise derivative. The result is known one order less deep."""
        if self.order == 0:
            return TruncSeries((), 0)
        return TruncSeries(
            tuple(k * self.coeffs[k] for k in range(1, self.order + 1)), self.order - 1
        )

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __repr__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if k == 0 else f"{c}*t^{k}")
        body = " + ".join(terms) if terms else "0"
        return f"TruncSeries({body} + O(t^{self.order + 1}))"


def _lift(x, order: int) -> TruncSeries:
    if isinstance(x, TruncSeries):
        return x
    return TruncSeries.constant(_q(x), order)


def series_add(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    m = min(a.order, b.order)
    return TruncSeries(tuple(a.coeffs[i] + b.coeffs[i] for i in range(m + 1)), m)


def series_mul(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    m = min(a.order, b.order)
    ac, bc = a.coeffs, b.coeffs
    # even series (half the slots zero) are common; skip zero coefficients
    anz = [i for i in range(m + 1) if ac[i]]
    out = [Fraction(0)] * (m + 1)
    for i in anz:
        ai = ac[i]
        for j in range(m + 1 - i):
            bj = bc[j]
            if bj:
                out[i + j] += ai * bj
    return TruncSeries(tuple(out), m)


def series_div(num: TruncSeries, den: TruncSeries) -> TruncSeries:
    """Quotient q with q*den == num through the common order.

    Forward substitution: q_n = (num_n - sum_{i=1..n} den_i q_{n-i}) / den_0.
    """
    d0 = den.coeffs[0]
    if d0 == 0:
        raise ZeroConstantTerm("denominator series has zero constant term")
    m = min(num.order, den.order)
    dc, nc = den.coeffs, num.coeffs
    q = []
    for n in range(m + 1):
        s = nc[n]
        for i in range(1, n + 1):
            if dc[i]:
                s -= dc[i] * q[n - i]
        q.append(s / d0)
    return TruncSeries(tuple(q), m)


def series_pow(a: TruncSeries, k: int) -> TruncSeries:
    if k < 0:
        raise ValueError("exponent must be nonnegative")
    result = TruncSeries.constant(1, a.order)
    base = a
    # square-and-multiply keeps the number of products at O(log k)
    while k:
        if k & 1:
            result = series_mul(result, base)
        k >>= 1
        if k:
            base = series_mul(base, base)
    return result


def series_coeff(a: TruncSeries, j: int) -> Fraction:
    if j < 0:
        raise IndexError("coefficient index must be nonnegative")
    if j > a.order:
        raise OrderExceeded(f"t^{j} is beyond the truncation order {a.order}")
    return a.coeffs[j]


def series_sqrt(a: TruncSeries) -> TruncSeries:
    """Square root with positive constant term, solved coefficient by coefficient.

    The constant term must be the square of a rational.
    """
    c0 = a.coeffs[0]
    if c0 <= 0:
        raise ZeroConstantTerm("square root needs a positive constant term")
    r0 = _rational_sqrt(c0)
    ac = a.coeffs
    s = [r0]
    two_r0 = 2 * r0
    for n in range(1, a.order + 1):
        acc = ac[n]
        for i in range(1, n):
            acc -= s[i] * s[n - i]
        s.append(acc / two_r0)
    return TruncSeries(tuple(s), a.order)


def _rational_sqrt(x: Fraction) -> Fraction:
    from math import isqrt

    p, q = x.numerator, x.denominator
    rp, rq = isqrt(p), isqrt(q)
    if rp * rp != p or rq * rq != q:
        raise ValueError(f"{x} is not the square of a rational")
    return Fraction(rp, rq)


def hypergeometric_series(a, b, c, scale, order: int) -> TruncSeries:
    """2F1(a, b; c; scale*t) truncated at t^order.

    Built from the term ratio
    c_{n+1}/c_n = (a+n)(b+n) / ((c+n)(n+1)) * scale.
    """
    a, b, c, scale = (_q(v) for v in (a, b, c, scale))
    if c.denominator == 1 and c <= 0:
        raise PoleInC(f"c = {c} is a nonpositive integer")
    coeffs = [Fraction(1)]
    term = Fraction(1)
    for n in range(order):
        term = term * (a + n) * (b + n) * scale / ((c + n) * (n + 1))
        coeffs.append(term)
    return TruncSeries(tuple(coeffs), order)


def compose_even(a: TruncSeries) -> TruncSeries:
    """Substitute t -> t^2, doubling the truncation order."""
    out = [Fraction(0)] * (2 * a.order + 1)
    for k, c in enumerate(a.coeffs):
        out[2 * k] = c
    return TruncSeries(tuple(out), 2 * a.order + 1)

