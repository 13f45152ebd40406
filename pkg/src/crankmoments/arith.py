"""Exact integer/rational helpers used throughout the package.

Python ints are arbitrary precision and :class:`fractions.Fraction` is always
reduced with a positive denominator, so they serve directly as the big-integer
and rational types.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator

__all__ = [
    "sigma",
    "bernoulli",
    "euler_numbers",
    "EulerNumberTable",
    "kronecker12",
    "inv_mod_bracket",
    "is_prime",
    "primes_upto",
    "pack_signed",
    "unpack_signed",
]


def sigma(k: int, n: int) -> int:
    """Divisor power sum ``sum(d**(k-1) for d | n)``.

    Note the shifted exponent: ``sigma(2, n)`` is the ordinary divisor sum.
    """
    if n < 1:
        raise ValueError(f"sigma needs n >= 1, got n={n}")
    if k < 1:
        raise ValueError(f"sigma needs k >= 1, got k={k}")
    e = k - 1
    total = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            total += d**e
            other = n // d
            if other != d:
                total += other**e
        d += 1
    return total


@lru_cache(maxsize=None)
def _bernoulli_table(m: int) -> tuple[Fraction, ...]:
    # sum_{j=0}^{m} C(m+1, j) B_j = 0  (gives B_1 = -1/2; even indices unaffected)
    b = [Fraction(1)]
    for n in range(1, m + 1):
        acc = sum((math.comb(n + 1, j) * b[j] for j in range(n)), Fraction(0))
        b.append(-acc / (n + 1))
    return tuple(b)


def bernoulli(k: int) -> Fraction:
    """Bernoulli number B_k, normalized so that B_2 = 1/6 and B_4 = -1/30.

    With this convention ``1 - (2k/B_k) * sum sigma_{k-1}(n) q^n`` is the usual
    Eisenstein series (E_4 = 1 + 240 q + ...).
    """
    if k < 0:
        raise ValueError(f"bernoulli index must be >= 0, got {k}")
    if k % 2 == 1 and k > 1:
        raise ValueError(f"bernoulli index must be even (or 0, 1), got {k}")
    return _bernoulli_table(k)[k]


@dataclass(frozen=True)
class EulerNumberTable:
    """Euler numbers E_0..E_max from ``sech(x) = sum E_n x^n / n!``."""

    values: tuple[int, ...]

    def __getitem__(self, n: int) -> int:
        if n < 0 or n >= len(self.values):
            raise IndexError(f"Euler number E_{n} outside table of length {len(self.values)}")
        return self.values[n]

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self) -> Iterator[int]:
        return iter(self.values)


@lru_cache(maxsize=None)
def _euler_values(max_index: int) -> tuple[int, ...]:
    vals = [0] * (max_index + 1)
    vals[0] = 1
    for n in range(2, max_index + 1, 2):
        # sum_{j even, j <= n} C(n, j) E_j = 0
        vals[n] = -sum(math.comb(n, j) * vals[j] for j in range(0, n, 2))
    return tuple(vals)


def euler_numbers(max_index: int) -> EulerNumberTable:
    if max_index < 0:
        raise ValueError(f"max_index must be >= 0, got {max_index}")
    return EulerNumberTable(_euler_values(max_index))


def kronecker12(x: int) -> int:
    """The character (12/x): +1 for x = +-1 mod 12, -1 for x = +-5 mod 12, else 0."""
    r = x % 12
    if r in (1, 11):
        return 1
    if r in (5, 7):
        return -1
    return 0


def inv_mod_bracket(a: int, k: int) -> int:
    """Inverse of ``a`` modulo ``k``, lifted to modulo ``2k`` when ``k`` is even.

    For even ``k`` an inverse modulo ``2k`` is in particular an inverse modulo
    ``k``; the multiplier formulas rely on the stronger congruence. Returns the
    least nonnegative representative. ``inv_mod_bracket(a, 1) == 0``.
    """
    if k < 1:
        raise ValueError(f"modulus must be >= 1, got {k}")
    m = 2 * k if k % 2 == 0 else k
    if m == 1:
        return 0
    if math.gcd(a, m) != 1:
        raise ValueError(f"{a} is not invertible modulo {m}")
    return pow(a, -1, m)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def primes_upto(n: int) -> list[int]:
    return [p for p in range(2, n + 1) if is_prime(p)]


# Kronecker substitution: a list of signed ints <-> one big int with w-bit digits.
# Digits must satisfy |c| < 2**(w-1); w must be a multiple of 8.


def _bias(length: int, w: int) -> int:
    digit = (1 << (w - 1)).to_bytes(w // 8, "little")
    return int.from_bytes(digit * length, "little")


def pack_signed(coeffs: Iterable[int], w: int) -> int:
    half = 1 << (w - 1)
    nbytes = w // 8
    coeffs = list(coeffs)
    raw = b"".join((c + half).to_bytes(nbytes, "little") for c in coeffs)
    return int.from_bytes(raw, "little") - _bias(len(coeffs), w)


def unpack_signed(value: int, length: int, w: int) -> list[int]:
    half = 1 << (w - 1)
    nbytes = w // 8
    raw = (value + _bias(length, w)).to_bytes(length * nbytes, "little")
    return [
        int.from_bytes(raw[i * nbytes : (i + 1) * nbytes], "little") - half
        for i in range(length)
    ]
