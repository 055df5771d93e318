"""Truncated power series in the spectral variable z.

A :class:`PowerSeries` of order N knows its coefficients of z^0 .. z^N and
nothing beyond; binary operations refuse operands of different orders so a
truncation mismatch can never silently turn unknown coefficients into zeros.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Callable, Sequence

from .ring import Polynomial, Scalar


class SeriesError(ValueError):
    pass


class TruncationMismatch(SeriesError):
    pass


class NonUnitConstantTerm(SeriesError):
    pass


class NonzeroConstantTerm(SeriesError):
    pass


class IndexBeyondTruncation(SeriesError, IndexError):
    pass


class PowerSeries:
    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Sequence[Polynomial | Scalar], order: int):
        if order < 0:
            raise ValueError("truncation order must be nonnegative")
        if len(coeffs) > order + 1:
            raise ValueError(f"{len(coeffs)} coefficients exceed order {order}")
        padded = [Polynomial.coerce(c) for c in coeffs]
        padded.extend(Polynomial() for _ in range(order + 1 - len(padded)))
        self.coeffs: tuple[Polynomial, ...] = tuple(padded)
        self.order = order

    @classmethod
    def monomial(cls, coeff: Polynomial | Scalar, power: int, order: int) -> "PowerSeries":
        coeffs: list[Polynomial | Scalar] = [0] * (order + 1)
        if power <= order:
            coeffs[power] = coeff
        return cls(coeffs, order)

    @classmethod
    def one(cls, order: int) -> "PowerSeries":
        return cls([1], order)

    def coeff(self, k: int) -> Polynomial:
        if k < 0:
            raise IndexError("negative index")
        if k > self.order:
            raise IndexBeyondTruncation(f"z^{k} lies beyond the truncation order {self.order}")
        return self.coeffs[k]

    __getitem__ = coeff

    def is_odd(self) -> bool:
        return all(c.is_zero() for c in self.coeffs[0::2])

    def is_even(self) -> bool:
        return all(c.is_zero() for c in self.coeffs[1::2])

    def _check(self, other: "PowerSeries") -> None:
        if self.order != other.order:
            raise TruncationMismatch(f"orders {self.order} and {other.order} differ")

    def truncate(self, order: int) -> "PowerSeries":
        if order > self.order:
            raise TruncationMismatch("cannot raise the truncation order")
        return PowerSeries(self.coeffs[: order + 1], order)

    def __add__(self, other: "PowerSeries") -> "PowerSeries":
        self._check(other)
        return PowerSeries([a + b for a, b in zip(self.coeffs, other.coeffs)], self.order)

    def __neg__(self) -> "PowerSeries":
        return PowerSeries([-a for a in self.coeffs], self.order)

    def __sub__(self, other: "PowerSeries") -> "PowerSeries":
        return self + (-other)

    def scale(self, c: Polynomial | Scalar) -> "PowerSeries":
        c = Polynomial.coerce(c)
        return PowerSeries([a * c for a in self.coeffs], self.order)

    def __mul__(self, other: "PowerSeries | Polynomial | Scalar") -> "PowerSeries":
        if not isinstance(other, PowerSeries):
            return self.scale(other)
        self._check(other)
        n = self.order
        a = [(i, c) for i, c in enumerate(self.coeffs) if c]
        b = [(j, c) for j, c in enumerate(other.coeffs) if c]
        out = [Polynomial() for _ in range(n + 1)]
        for i, ca in a:
            for j, cb in b:
                if i + j > n:
                    break
                out[i + j] = out[i + j] + ca * cb
        return PowerSeries(out, n)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    __hash__ = None  # type: ignore[assignment]

    def subs(self, bindings) -> "PowerSeries":
        return PowerSeries([c.subs(bindings) for c in self.coeffs], self.order)

    def __repr__(self) -> str:
        shown = ", ".join(f"z^{k}: {c!r}" for k, c in enumerate(self.coeffs) if c)
        return f"PowerSeries({{{shown}}}, order={self.order})"


def series_mul(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    return a * b


def series_inv(a: PowerSeries) -> PowerSeries:
    """Multiplicative inverse; the constant term must be a nonzero rational."""
    c0 = a.coeff(0)
    if not c0.is_constant() or c0.is_zero():
        raise NonUnitConstantTerm("constant term must be a nonzero rational")
    inv0 = 1 / c0.constant_term()
    n = a.order
    out = [Polynomial.constant(inv0)]
    for k in range(1, n + 1):
        acc = Polynomial()
        for i in range(1, k + 1):
            if a.coeffs[i]:
                acc = acc + a.coeffs[i] * out[k - i]
        out.append(acc.scale(-inv0))
    return PowerSeries(out, n)


@lru_cache(maxsize=None)
def zigzag(n: int) -> int:
    """Euler zigzag number: tangent numbers at odd n, secant numbers at even n."""
    if n < 2:
        return 1
    m = n - 1
    return sum(comb(m, k) * zigzag(k) * zigzag(m - k) for k in range(m + 1)) // 2


def _sinh(k: int) -> Fraction:
    return Fraction(1, factorial(k)) if k % 2 else Fraction(0)


def _cosh(k: int) -> Fraction:
    return Fraction(0) if k % 2 else Fraction(1, factorial(k))


def _exp(k: int) -> Fraction:
    return Fraction(1, factorial(k))


def _tanh(k: int) -> Fraction:
    if k % 2 == 0:
        return Fraction(0)
    sign = -1 if (k // 2) % 2 else 1
    return Fraction(sign * zigzag(k), factorial(k))


def _sech(k: int) -> Fraction:
    if k % 2:
        return Fraction(0)
    sign = -1 if (k // 2) % 2 else 1
    return Fraction(sign * zigzag(k), factorial(k))


def _arctanh(k: int) -> Fraction:
    return Fraction(1, k) if k % 2 else Fraction(0)


TAYLOR: dict[str, Callable[[int], Fraction]] = {
    "sinh": _sinh,
    "cosh": _cosh,
    "tanh": _tanh,
    "sech": _sech,
    "exp": _exp,
    "arctanh": _arctanh,
}


def taylor_coefficient(kind: str, k: int) -> Fraction:
    """Coefficient of w^k in the Maclaurin series of ``kind``."""
    try:
        return TAYLOR[kind](k)
    except KeyError:
        raise ValueError(f"unknown function {kind!r}") from None


def hyper_compose(kind: str, inner: PowerSeries) -> PowerSeries:
    """``kind(inner)`` by Horner evaluation of the outer Taylor polynomial."""
    if kind not in TAYLOR:
        raise ValueError(f"unknown function {kind!r}")
    if inner.coeff(0):
        raise NonzeroConstantTerm("inner series must vanish at z = 0")
    n = inner.order
    valuation = next((i for i, c in enumerate(inner.coeffs) if c), None)
    if valuation is None:
        return PowerSeries([taylor_coefficient(kind, 0)], n)
    # w^k = O(z^(k*valuation)), so terms past n // valuation are truncated away.
    top = n // valuation
    acc = PowerSeries([taylor_coefficient(kind, top)], n)
    for k in range(top - 1, -1, -1):
        acc = acc * inner + PowerSeries([taylor_coefficient(kind, k)], n)
    return acc


def series_coeff(a: PowerSeries, k: int) -> Polynomial:
    return a.coeff(k)


def odd_time_series(variables, order: int, start: int = 3) -> PowerSeries:
    """The odd series sum_k var(k) z^k for odd k >= start, e.g. eta = t3 z^3 + t5 z^5 + ..."""
    coeffs: list[Polynomial | Scalar] = [0] * (order + 1)
    for k in range(start, order + 1, 2):
        coeffs[k] = Polynomial.var(variables(k))
    return PowerSeries(coeffs, order)
