"""Floating-point side: circle-method main term for twisted crank moments and
numeric checks of the eta/theta transformation machinery.

Kloosterman normalization
-------------------------
:func:`kloosterman_A` evaluates

    A_k(n) = sqrt(k/24) * sum_{x mod 24k, x^2 = 1-24n mod 24k} (12/x) e(x/(12k))

exactly as defined, so ``A_1(n) = sqrt(2)``. The multiplier-sum identity and
the Bessel main term both hold for ``A_k(n) / sqrt(2)`` (the classical
Rademacher normalization ``sqrt(k/48)``, with ``A_1 = 1``); with the
``sqrt(k/24)`` normalization the main term overshoots the exact moments by a
factor tending to sqrt(2) and disagrees with the leading-order asymptotic.
:func:`main_term` and :func:`check_multiplier_identity` therefore rescale by
:data:`RADEMACHER_SCALE` by default.

Inner sum
---------
Expanding ``cos(pi u) e^{pi k u^2 / z} / cosh(pi u / z)`` in powers of
``2 pi i u`` gives ``alpha(a,b,c) (k/pi)^c z^{-2b-c}``: the Gaussian factor
contributes ``(-k / (4 pi z))^c``. The default ``form="corrected"`` keeps the
``pi^{-c}``; ``form="rescaled"`` drops it (relative error then decays only like
``n^{-1/2}``), and ``form="printed"`` also drops the Kloosterman rescaling.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Literal, Sequence

from .arith import bernoulli, euler_numbers, inv_mod_bracket, kronecker12

__all__ = [
    "RADEMACHER_SCALE",
    "MultiplierData",
    "AsymptoticTerm",
    "dedekind_sum",
    "multiplier",
    "kloosterman_A",
    "alpha_coeff",
    "bessel_I_half",
    "asymptotic_terms",
    "main_term",
    "leading_order",
    "untwisted_leading",
    "eta_numeric",
    "theta_numeric",
    "check_transformations",
    "check_shift_lemma",
    "check_multiplier_identity",
    "comparison_rows",
    "comparison_csv",
]

RADEMACHER_SCALE = 1 / math.sqrt(2)

Form = Literal["corrected", "rescaled", "printed"]

# terms below exp(-_CUTOFF) relative to the largest are dropped (about 1e-18)
_CUTOFF = 41.5


def _e(x: float) -> complex:
    return cmath.exp(2j * math.pi * x)


def _finite(z: complex, what: str) -> complex:
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ArithmeticError(f"{what} is not finite: {z}")
    return z


def _sawtooth(x: Fraction) -> Fraction:
    if x.denominator == 1:
        return Fraction(0)
    return x - math.floor(x) - Fraction(1, 2)


def dedekind_sum(h: int, k: int) -> Fraction:
    """``s(h,k) = sum_{r=1}^{k-1} ((r/k)) ((hr/k))``."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if math.gcd(h, k) != 1:
        raise ValueError(f"dedekind_sum needs gcd(h, k) = 1, got ({h}, {k})")
    return sum(
        (_sawtooth(Fraction(r, k)) * _sawtooth(Fraction(h * r, k)) for r in range(1, k)),
        Fraction(0),
    )


@dataclass(frozen=True)
class MultiplierData:
    h: int
    k: int
    h_inv: int
    s_hk: Fraction
    omega: complex
    chi: complex


def multiplier(h: int, k: int) -> MultiplierData:
    """Eta multiplier data; ``h_inv`` is the inverse of -h (mod 2k for even k)."""
    if k < 1 or math.gcd(h, k) != 1:
        raise ValueError(f"invalid (h, k) = ({h}, {k})")
    h_inv = inv_mod_bracket(-h, k)
    s = dedekind_sum(h, k)
    omega = cmath.exp(1j * math.pi * float(s))
    chi = cmath.exp(-1j * math.pi / 4) / omega * cmath.exp(-1j * math.pi * (h_inv - h) / (12 * k))
    return MultiplierData(h, k, h_inv, s, omega, chi)


def kloosterman_A(k: int, n: int) -> float:
    """The Kloosterman sum A_k(n) with the ``sqrt(k/24)`` prefactor.

    Solutions x and -x carry the same character value, so only the cosine part
    survives; the sine part is still accumulated and must vanish.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    mod = 24 * k
    target = (1 - 24 * n) % mod
    re = im = 0.0
    for x in range(mod):
        if (x * x - target) % mod == 0:
            chi = kronecker12(x)
            if chi:
                angle = 2 * math.pi * x / (12 * k)
                re += chi * math.cos(angle)
                im += chi * math.sin(angle)
    scale = math.sqrt(k / 24)
    if abs(im) * scale >= 1e-9:
        raise ArithmeticError(f"A_{k}({n}) has imaginary part {im * scale}")
    return scale * re


def alpha_coeff(a: int, b: int, c: int) -> Fraction:
    s = a + b + c
    num = math.factorial(2 * s) * (-1) ** (b + c) * euler_numbers(2 * b)[2 * b]
    den = math.factorial(2 * a) * math.factorial(2 * b) * math.factorial(c) * 4**s
    return Fraction(num, den)


def bessel_I_half(order: float | Fraction, y: float) -> float:
    """Modified Bessel I_nu(y) for nu in {1/2, -1/2, -3/2, ...}.

    Starts from the sinh/cosh closed forms and steps down with
    ``I_{nu-1} = I_{nu+1} + (2 nu / y) I_nu``.
    """
    if y <= 0:
        raise ValueError(f"bessel_I_half needs y > 0, got {y}")
    steps = Fraction(1, 2) - Fraction(order).limit_denominator(2)
    if steps.denominator != 1 or steps < 0 or abs(float(order) - (0.5 - int(steps))) > 1e-12:
        raise ValueError(f"order must be 1/2 - j for integer j >= 0, got {order}")
    j = int(steps)
    pref = math.sqrt(2 / (math.pi * y))
    upper, cur = pref * math.sinh(y), pref * math.cosh(y)  # I_{1/2}, I_{-1/2}
    if j == 0:
        return upper
    nu = -0.5
    for _ in range(j - 1):
        upper, cur = cur, upper + (2 * nu / y) * cur
        nu -= 1
    return cur


@dataclass(frozen=True)
class AsymptoticTerm:
    k: int
    kloosterman: float
    inner_sum: float
    sign: int

    @property
    def value(self) -> float:
        return math.pi * self.sign * self.kloosterman * self.inner_sum / self.k


def _default_terms(n: int) -> int:
    return math.isqrt(n) // 2


def asymptotic_terms(ell: int, n: int, K: int | None = None, *, form: Form = "corrected") -> list[AsymptoticTerm]:
    if n < 1:
        raise ValueError(f"the main term needs n >= 1, got {n}")
    if form not in ("corrected", "rescaled", "printed"):
        raise ValueError(f"unknown form {form!r}")
    if K is None:
        K = _default_terms(n)
    scale = 1.0 if form == "printed" else RADEMACHER_SCALE
    gauss = math.pi if form == "corrected" else 1.0
    big = 24 * n - 1
    root = math.sqrt(big)
    triples = [(a, b, ell - a - b) for a in range(ell + 1) for b in range(ell + 1 - a)]
    alphas = {t: float(alpha_coeff(*t)) for t in triples}
    terms = []
    for k in range(1, K + 1):
        sign = -1 if (k + (k + 1) // 2) % 2 else 1
        shift = 0 if k % 2 else k // 2
        kl = scale * kloosterman_A(2 * k, n - shift)
        y = math.pi * root / (12 * k)
        inner = 0.0
        for a, b, c in triples:
            inner += (
                (2 * k / gauss) ** c
                * alphas[(a, b, c)]
                * big ** (b + c / 2 - 0.25)
                * bessel_I_half(Fraction(1, 2) - 2 * b - c, y)
            )
        terms.append(AsymptoticTerm(k, kl, inner, sign))
    return terms


def main_term(ell: int, n: int, K: int | None = None, *, form: Form = "corrected") -> float:
    """Bessel main term for ``M_{2ell}(-1, n)``, summing ``1 <= k <= K`` in order.

    ``K`` defaults to ``floor(sqrt(n)/2)``. See the module docstring for ``form``.
    """
    total = 0.0
    for t in asymptotic_terms(ell, n, K, form=form):
        total += t.value
    return total


def leading_order(ell: int, n: int) -> float:
    """``(-1)^n |E_{2ell}| 2^{ell-1} 3^ell n^{ell-1/2} exp(pi sqrt(n/6))``."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    e = abs(euler_numbers(2 * ell)[2 * ell])
    sign = -1 if n % 2 else 1
    return sign * e * 2.0 ** (ell - 1) * 3.0**ell * n ** (ell - 0.5) * math.exp(math.pi * math.sqrt(n / 6))


def untwisted_leading(ell: int, n: int) -> float:
    """``2^{3ell-2} 3^{ell-1/2} (1-2^{1-2ell}) |B_{2ell}| n^{ell-1} exp(pi sqrt(2n/3))``."""
    if ell < 1:
        raise ValueError(f"ell must be >= 1, got {ell}")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    b = abs(float(bernoulli(2 * ell)))
    return (
        2.0 ** (3 * ell - 2)
        * 3.0 ** (ell - 0.5)
        * (1 - 2.0 ** (1 - 2 * ell))
        * b
        * n ** (ell - 1)
        * math.exp(math.pi * math.sqrt(2 * n / 3))
    )


def eta_numeric(tau: complex) -> complex:
    """Dedekind eta by its product, truncated once ``|q|^T < 1e-18``."""
    if tau.imag <= 0:
        raise ValueError(f"eta needs Im(tau) > 0, got {tau}")
    q = cmath.exp(2j * math.pi * tau)
    T = math.ceil(_CUTOFF / (2 * math.pi * tau.imag))
    p = cmath.exp(2j * math.pi * tau / 24)
    qn = 1.0 + 0j
    for _ in range(T):
        qn *= q
        p *= 1 - qn
    return _finite(p, "eta")


def _theta_sum(u: complex, tau: complex) -> tuple[complex, float]:
    # the series and the sum of the absolute values of its terms
    u = complex(u)
    tau = complex(tau)
    if tau.imag <= 0:
        raise ValueError(f"theta needs Im(tau) > 0, got {tau}")
    w = u + 0.5
    # |term| = exp(-pi Im(tau) nu^2 - 2 pi nu Im(w)), peaked at nu = -Im(w)/Im(tau)
    centre = -w.imag / tau.imag
    radius = math.sqrt(_CUTOFF / (math.pi * tau.imag)) + 1
    lo = math.floor(centre - radius - 0.5)
    hi = math.ceil(centre + radius - 0.5)
    total = 0j
    size = 0.0
    for j in range(lo, hi + 1):
        nu = j + 0.5
        t = cmath.exp(1j * math.pi * nu * nu * tau + 2j * math.pi * nu * w)
        total += t
        size += abs(t)
    return _finite(total, "theta"), size


def theta_numeric(u: complex, tau: complex) -> complex:
    """Jacobi theta ``sum_{nu in Z+1/2} exp(pi i nu^2 tau + 2 pi i nu (u + 1/2))``.

    This series equals ``-2 sin(pi u) q^{1/8} prod (1-q^n)(1-xq^n)(1-q^n/x)``;
    without the 1/2 shift it would be even in u. Terms are summed over a window
    centred on the largest one and dropped below 1e-18 of it.
    """
    return _theta_sum(u, tau)[0]


def check_transformations(h: int, k: int, z: complex, u: complex) -> dict:
    """Absolute deviations of the eta and theta inversion laws at tau = (h+iz)/k."""
    z = complex(z)
    u = complex(u)
    if z.real <= 0:
        raise ValueError(f"need Re(z) > 0, got {z}")
    md = multiplier(h, k)
    tau = (h + 1j * z) / k
    tau_t = (md.h_inv + 1j / z) / k
    root = cmath.sqrt(1j / z)
    eta_l = eta_numeric(tau)
    eta_r = root * md.chi * eta_numeric(tau_t)
    th_l = theta_numeric(u, tau)
    th_r = root * md.chi**3 * cmath.exp(-math.pi * k * u * u / z) * theta_numeric(1j * u / z, tau_t)
    d_eta = abs(eta_l - eta_r)
    d_theta = abs(th_l - th_r)
    return {
        "h": h,
        "k": k,
        "z": [z.real, z.imag],
        "u": [u.real, u.imag],
        "eta_deviation": d_eta,
        "theta_deviation": d_theta,
        "max_deviation": max(d_eta, d_theta),
    }


def check_shift_lemma(a: complex, b: complex, ell: int) -> dict:
    """Deviation in ``theta(a + ell b; b) = (-1)^ell e^{-pi i ell^2 b - 2 pi i ell a} theta(a; b)``.

    Both sides grow like ``exp(pi ell^2 Im b)`` and may cancel to nearly zero
    (a is a zero of theta when a is in Z + bZ), so the deviation is measured
    relative to ``max(1, S)`` with S the sum of the absolute values of the
    terms of the left-hand series, which bounds its rounding error.
    """
    a = complex(a)
    b = complex(b)
    lhs, size = _theta_sum(a + ell * b, b)
    rhs = (-1) ** ell * cmath.exp(-1j * math.pi * ell * ell * b - 2j * math.pi * ell * a) * theta_numeric(a, b)
    absolute = abs(lhs - rhs)
    return {
        "ell": ell,
        "absolute_deviation": absolute,
        "deviation": absolute / max(1.0, size),
    }


def check_multiplier_identity(c: int, n: int, *, literal: bool = False) -> dict:
    """Compare the signed Kloosterman value with the sum of multipliers over h mod 2c."""
    if c < 1:
        raise ValueError(f"c must be >= 1, got {c}")
    k = 2 * c
    sign = -1 if (c + (c + 1) // 2) % 2 else 1
    shift = 0 if c % 2 else c // 2
    scale = 1.0 if literal else RADEMACHER_SCALE
    lhs = sign * scale * kloosterman_A(k, n - shift)
    rhs = 0j
    for h in range(k):
        if math.gcd(h, k) != 1:
            continue
        md = multiplier(h, k)
        ex = 2 * c + 1 - h * md.h_inv
        # h * h_inv = -1 (mod 4c), so ex is even
        sgn = -1 if (ex // 2) % 2 else 1
        rhs += md.omega * sgn * _e((-h - c * md.h_inv) / 4 - n * h / k)
    return {
        "c": c,
        "n": n,
        "normalization": "sqrt(k/24)" if literal else "sqrt(k/48)",
        "lhs": lhs,
        "rhs": [rhs.real, rhs.imag],
        "deviation": abs(lhs - rhs),
        "ratio": lhs / rhs.real if abs(rhs.real) > 1e-12 else None,
    }


def comparison_rows(
    ell: int,
    ns: Sequence[int],
    K: int | None = None,
    exact: Sequence[int] | None = None,
    form: Form = "corrected",
) -> list[dict]:
    """Exact twisted moments against the main term and the leading-order term."""
    if any(n < 1 for n in ns):
        raise ValueError("every n in the grid must be >= 1")
    if exact is None:
        from .formulas import moment_series

        series = moment_series(ell, -1, max(ns))
        exact = [int(c) for c in series.coeffs]
    rows = []
    for n in ns:
        ex = exact[n]
        mt = main_term(ell, n, K, form=form)
        lo = leading_order(ell, n)
        rows.append(
            {
                "n": n,
                "ell": ell,
                "exact": ex,
                "main_term": mt,
                "leading_order": lo,
                "rel_err_main": abs(mt - ex) / abs(ex),
                "rel_err_leading": abs(lo - ex) / abs(ex),
            }
        )
    return rows


def comparison_csv(rows: Iterable[dict]) -> str:
    cols = ["n", "ell", "exact", "main_term", "leading_order", "rel_err_main", "rel_err_leading"]
    lines = [",".join(cols)]
    for r in rows:
        lines.append(
            ",".join(
                str(r[c]) if isinstance(r[c], int) else format(r[c], ".17g") for c in cols
            )
        )
    return "\n".join(lines) + "\n"
