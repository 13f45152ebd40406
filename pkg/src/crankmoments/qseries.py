"""Truncated power series in q with exact rational coefficients.

A :class:`QSeries` of order ``N`` knows the coefficients of q^0 .. q^N and
nothing beyond. Binary operations truncate to the smaller order of the two
operands, so precision loss is always visible in ``.order``.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from numbers import Rational
from typing import Iterable, NamedTuple, Sequence

from .arith import bernoulli, pack_signed, unpack_signed

__all__ = [
    "QSeries",
    "series_mul",
    "series_inv",
    "series_exp",
    "series_log",
    "scale_q",
    "phi_series",
    "f_series",
    "eta_products",
    "EtaProducts",
    "eisenstein_series",
]


class QSeries:
    """Immutable truncated q-series ``sum_{n=0}^{N} c_n q^n``."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[int | Fraction], order: int | None = None):
        c = [Fraction(x) for x in coeffs]
        if order is not None:
            if order < 0:
                raise ValueError(f"order must be >= 0, got {order}")
            c = c[: order + 1] + [Fraction(0)] * (order + 1 - len(c))
        if not c:
            raise ValueError("a QSeries needs at least the constant coefficient")
        self._c = tuple(c)

    @classmethod
    def constant(cls, value: int | Fraction, order: int) -> "QSeries":
        return cls([value], order)

    @classmethod
    def one(cls, order: int) -> "QSeries":
        return cls([1], order)

    @classmethod
    def zero(cls, order: int) -> "QSeries":
        return cls([0], order)

    @property
    def order(self) -> int:
        return len(self._c) - 1

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._c

    def __len__(self) -> int:
        return len(self._c)

    def __getitem__(self, n: int) -> Fraction:
        if n < 0 or n > self.order:
            raise IndexError(f"q^{n} is beyond the truncation order {self.order}")
        return self._c[n]

    def __iter__(self):
        return iter(self._c)

    def truncate(self, order: int) -> "QSeries":
        if order > self.order:
            raise ValueError(f"cannot extend a series of order {self.order} to {order}")
        return QSeries(self._c[: order + 1])

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self._c)

    def to_ints(self) -> list[int]:
        if not self.is_integral():
            raise ValueError("series has non-integer coefficients")
        return [c.numerator for c in self._c]

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, QSeries):
            n = min(self.order, other.order)
            return QSeries([a + b for a, b in zip(self._c[: n + 1], other._c)])
        if isinstance(other, (int, Rational)):
            return QSeries((self._c[0] + other,) + self._c[1:])
        return NotImplemented

    __radd__ = __add__

    def __neg__(self) -> "QSeries":
        return QSeries([-a for a in self._c])

    def __sub__(self, other):
        if isinstance(other, (QSeries, int, Rational)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, QSeries):
            return series_mul(self, other)
        if isinstance(other, (int, Rational)):
            return QSeries([a * other for a in self._c])
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, QSeries):
            return series_mul(self, series_inv(other))
        if isinstance(other, (int, Rational)):
            return QSeries([a / other for a in self._c])
        return NotImplemented

    def __eq__(self, other) -> bool:
        if isinstance(other, QSeries):
            return self._c == other._c
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._c)

    def __repr__(self) -> str:
        terms = []
        for n, c in enumerate(self._c):
            if c:
                terms.append(f"{c}" if n == 0 else f"({c})*q^{n}")
        body = " + ".join(terms) if terms else "0"
        return f"QSeries({body} + O(q^{self.order + 1}))"

    # serialization --------------------------------------------------------

    def to_csv(self) -> str:
        lines = ["exponent,numerator,denominator"]
        lines += [f"{n},{c.numerator},{c.denominator}" for n, c in enumerate(self._c)]
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        return json.dumps([[n, f"{c.numerator}/{c.denominator}"] for n, c in enumerate(self._c)])

    @classmethod
    def from_json(cls, text: str) -> "QSeries":
        pairs = json.loads(text)
        order = max(n for n, _ in pairs)
        c = [Fraction(0)] * (order + 1)
        for n, v in pairs:
            c[n] = Fraction(v)
        return cls(c)


def _common_denominator(c: Sequence[Fraction]) -> tuple[list[int], int]:
    d = 1
    for x in c:
        d = math.lcm(d, x.denominator)
    return [x.numerator * (d // x.denominator) for x in c], d


def _int_convolve(a: list[int], b: list[int], length: int) -> list[int]:
    """First ``length`` coefficients of the product of two integer polynomials."""
    a = a[:length]
    b = b[:length]
    ma = max((abs(x) for x in a), default=0)
    mb = max((abs(x) for x in b), default=0)
    if ma == 0 or mb == 0:
        return [0] * length
    bits = ma.bit_length() + mb.bit_length() + min(len(a), len(b)).bit_length() + 2
    w = -(-bits // 8) * 8
    prod = pack_signed(a, w) * pack_signed(b, w)
    return unpack_signed(prod, len(a) + len(b) - 1, w)[:length] + [0] * max(
        0, length - (len(a) + len(b) - 1)
    )


def series_mul(a: QSeries, b: QSeries) -> QSeries:
    """Cauchy product truncated at ``min(a.order, b.order)``."""
    n = min(a.order, b.order)
    ia, da = _common_denominator(a.coeffs[: n + 1])
    ib, db = _common_denominator(b.coeffs[: n + 1])
    prod = _int_convolve(ia, ib, n + 1)
    den = da * db
    return QSeries([Fraction(x, den) for x in prod])


def series_inv(a: QSeries) -> QSeries:
    """Multiplicative inverse by Newton iteration ``b <- b + b(1 - ab)``."""
    if a[0] == 0:
        raise ZeroDivisionError("series is not invertible: zero constant term")
    n = a.order
    b = QSeries([1 / a[0]])
    prec = 0
    while prec < n:
        prec = min(2 * prec + 1, n)
        ab = series_mul(a.truncate(prec), QSeries(b.coeffs, prec))
        err = QSeries.one(prec) - ab
        b = QSeries(b.coeffs, prec) + series_mul(QSeries(b.coeffs, prec), err)
    return QSeries(b.coeffs, n)


def series_exp(a: QSeries) -> QSeries:
    """``exp(a)`` for ``a(0) = 0`` via ``n e_n = sum_{i=1}^{n} i a_i e_{n-i}``."""
    if a[0] != 0:
        raise ValueError("series_exp needs a zero constant term")
    n = a.order
    e = [Fraction(1)] + [Fraction(0)] * n
    ia = [i * a[i] for i in range(n + 1)]
    for m in range(1, n + 1):
        e[m] = sum((ia[i] * e[m - i] for i in range(1, m + 1) if ia[i]), Fraction(0)) / m
    return QSeries(e)


def series_log(a: QSeries) -> QSeries:
    """``log(a)`` for ``a(0) = 1``, as the integral of ``a'/a``."""
    if a[0] != 1:
        raise ValueError("series_log needs constant term 1")
    n = a.order
    if n == 0:
        return QSeries.zero(0)
    deriv = QSeries([i * a[i] for i in range(1, n + 1)])  # order n-1
    quot = series_mul(deriv, series_inv(a.truncate(n - 1)))
    return QSeries([0] + [quot[i - 1] / i for i in range(1, n + 1)])


def scale_q(a: QSeries, m: int) -> QSeries:
    """Substitute q -> q^m, keeping the truncation order."""
    if m < 1:
        raise ValueError(f"scale factor must be >= 1, got {m}")
    n = a.order
    c = [Fraction(0)] * (n + 1)
    for i in range(0, n // m + 1):
        c[i * m] = a[i]
    return QSeries(c)


def _divisor_power_sums(e: int, n: int) -> list[int]:
    s = [0] * (n + 1)
    for d in range(1, n + 1):
        p = d**e
        for j in range(d, n + 1, d):
            s[j] += p
    return s


def phi_series(k: int, order: int) -> QSeries:
    """``sum_{n>=1} sigma_{k-1}(n) q^n`` for even ``k >= 2``."""
    if k < 2 or k % 2:
        raise ValueError(f"phi_series needs even k >= 2, got {k}")
    s = _divisor_power_sums(k - 1, order)
    s[0] = 0
    return QSeries(s)


def f_series(k: int, order: int) -> QSeries:
    """The level-two combination ``2^{2k} Phi_{2k-1}(q^2) - Phi_{2k-1}(q)``."""
    if k < 1:
        raise ValueError(f"f_series needs k >= 1, got {k}")
    phi = phi_series(2 * k, order)
    return 4**k * scale_q(phi, 2) - phi


class EtaProducts(NamedTuple):
    pochhammer_q: QSeries
    pochhammer_minus_q: QSeries


def _product(order: int, sign: int) -> QSeries:
    c = [0] * (order + 1)
    c[0] = 1
    for n in range(1, order + 1):
        # multiply by (1 + sign*q^n), descending so old values are read
        for i in range(order, n - 1, -1):
            c[i] += sign * c[i - n]
    return QSeries(c)


def eta_products(order: int) -> EtaProducts:
    """``(q;q)_inf`` and ``(-q;q)_inf`` truncated at ``order``."""
    return EtaProducts(_product(order, -1), _product(order, 1))


def eisenstein_series(k: int, order: int) -> QSeries:
    """``E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n``."""
    if k < 2 or k % 2:
        raise ValueError(f"Eisenstein series needs even k >= 2, got {k}")
    return 1 - Fraction(2 * k) / bernoulli(k) * phi_series(k, order)
