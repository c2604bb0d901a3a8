"""Truncated formal power series with exact rational coefficients.

Every series carries a fixed ``order``: coefficients of ``x**order`` and
beyond are discarded.  Binary operations truncate to the smaller order.

>>> x = PowerSeries.x(6)
>>> (1 / (1 - x)).coefficients[:3]
[Fraction(1, 1), Fraction(1, 1), Fraction(1, 1)]
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence, Union

Scalar = Union[int, Fraction]


class PowerSeries:
    """Power series ``sum_k c_k x**k`` truncated to ``order`` terms."""

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: Iterable[Scalar], order: int | None = None):
        coeffs = [Fraction(c) for c in coefficients]
        if order is None:
            order = len(coeffs)
        if order < 1:
            raise ValueError("order must be >= 1")
        coeffs = coeffs[:order]
        coeffs.extend([Fraction(0)] * (order - len(coeffs)))
        self.coefficients: list[Fraction] = coeffs

    @classmethod
    def constant(cls, value: Scalar, order: int) -> PowerSeries:
        return cls([value], order)

    @classmethod
    def x(cls, order: int) -> PowerSeries:
        return cls([0, 1], order)

    @classmethod
    def polynomial(cls, coefficients: Sequence[Scalar], order: int) -> PowerSeries:
        return cls(coefficients, order)

    @property
    def order(self) -> int:
        return len(self.coefficients)

    def __getitem__(self, k: int) -> Fraction:
        return self.coefficients[k]

    def __repr__(self) -> str:
        terms = ", ".join(str(c) for c in self.coefficients)
        return f"PowerSeries([{terms}])"

    def __eq__(self, other: object) -> bool:
        if isinstance(other, PowerSeries):
            return self.coefficients == other.coefficients
        return NotImplemented

    def _coerce(self, other) -> PowerSeries:
        if isinstance(other, PowerSeries):
            return other
        if isinstance(other, (int, Fraction)):
            return PowerSeries.constant(other, self.order)
        raise TypeError(f"cannot combine PowerSeries with {type(other).__name__}")

    def __add__(self, other) -> PowerSeries:
        other = self._coerce(other)
        m = min(self.order, other.order)
        return PowerSeries([a + b for a, b in zip(self.coefficients[:m], other.coefficients[:m])])

    __radd__ = __add__

    def __neg__(self) -> PowerSeries:
        return PowerSeries([-c for c in self.coefficients])

    def __sub__(self, other) -> PowerSeries:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> PowerSeries:
        return self._coerce(other) - self

    def __mul__(self, other) -> PowerSeries:
        if isinstance(other, (int, Fraction)):
            return PowerSeries([c * other for c in self.coefficients])
        other = self._coerce(other)
        m = min(self.order, other.order)
        a, b = self.coefficients, other.coefficients
        # skip zero coefficients: the series built here are mostly sparse polynomials
        nz_a = [(i, a[i]) for i in range(m) if a[i]]
        out = [Fraction(0)] * m
        for i, ai in nz_a:
            for j in range(m - i):
                bj = b[j]
                if bj:
                    out[i + j] += ai * bj
        return PowerSeries(out)

    __rmul__ = __mul__

    def inverse(self) -> PowerSeries:
        """Multiplicative inverse; the constant term must be nonzero."""
        a = self.coefficients
        if a[0] == 0:
            raise ZeroDivisionError("series with zero constant term has no inverse")
        inv0 = 1 / a[0]
        out = [inv0]
        for k in range(1, self.order):
            s = sum((a[i] * out[k - i] for i in range(1, k + 1) if a[i]), Fraction(0))
            out.append(-s * inv0)
        return PowerSeries(out)

    def __truediv__(self, other) -> PowerSeries:
        if isinstance(other, (int, Fraction)):
            return PowerSeries([c / other for c in self.coefficients])
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other) -> PowerSeries:
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int) -> PowerSeries:
        if k < 0:
            return self.inverse() ** (-k)
        result = PowerSeries.constant(1, self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def derivative(self) -> PowerSeries:
        c = self.coefficients
        return PowerSeries([k * c[k] for k in range(1, self.order)], self.order)

    def integral(self) -> PowerSeries:
        """Antiderivative with zero constant term."""
        c = self.coefficients
        return PowerSeries([0] + [c[k] / (k + 1) for k in range(self.order - 1)])

    def exp(self) -> PowerSeries:
        """exp(f) for f with zero constant term, via k*e_k = sum_j j*f_j*e_{k-j}."""
        f = self.coefficients
        if f[0] != 0:
            raise ValueError("exp requires a zero constant term")
        nz = [(j, j * f[j]) for j in range(1, self.order) if f[j]]
        e = [Fraction(1)]
        for k in range(1, self.order):
            s = Fraction(0)
            for j, jf in nz:
                if j > k:
                    break
                s += jf * e[k - j]
            e.append(s / k)
        return PowerSeries(e)

    def log(self) -> PowerSeries:
        """log(f) for f with constant term 1."""
        if self.coefficients[0] != 1:
            raise ValueError("log requires constant term 1")
        return (self.derivative() / self).integral()

    def egf_coefficient(self, n: int) -> Fraction:
        """``n! [x^n] f``, i.e. the n-th derivative at zero."""
        from math import factorial

        return self.coefficients[n] * factorial(n)


def log_one_minus_x(order: int) -> PowerSeries:
    """log(1 - x) = -sum_{m>=1} x^m / m."""
    return PowerSeries([0] + [Fraction(-1, m) for m in range(1, order)])
