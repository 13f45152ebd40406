"""Closed formulas for crank moment generating functions.

Writing x = e^Z, the crank product becomes

    C(e^Z; q)  = exp(2 sum_{l even} Phi_{l-1} Z^l / l!) / (q)_inf
    C(-e^Z; q) = exp(2 sum_{l even} F_l Z^l / l!) * (q)_inf / (-q)_inf^2

so the moment generating functions are Taylor coefficients of an exponential,
which :func:`exp_compose` expands over ordered compositions.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Literal, Mapping

from .crank import CrankTable, crank_table_product, moment, twisted_moment
from .qseries import QSeries, eta_products, f_series, phi_series, series_inv, series_mul

__all__ = [
    "compositions",
    "exp_compose",
    "theorem1_series",
    "theorem2_series",
    "moment_series",
    "ThetaExpansion",
    "theta_taylor",
    "verify_theta_product",
    "verify_theorem",
    "SCHEMA_VERSION",
]

SCHEMA_VERSION = 1

Variant = Literal["at_zero", "at_half"]


def compositions(total: int, parts: frozenset[int] | None = None) -> Iterator[tuple[int, ...]]:
    """Ordered compositions of ``total`` into positive parts (optionally from ``parts``)."""
    if total == 0:
        yield ()
        return
    for first in range(1, total + 1):
        if parts is not None and first not in parts:
            continue
        for rest in compositions(total - first, parts):
            yield (first,) + rest


def _product(factors: tuple[int, ...], a: Mapping[int, QSeries], order: int, cache: dict) -> QSeries:
    key = tuple(sorted(factors))
    if key not in cache:
        p = QSeries.one(order)
        for i in key:
            p = series_mul(p, a[i])
        cache[key] = p
    return cache[key]


def exp_compose(
    a: Mapping[int, QSeries], r_max: int, order: int | None = None
) -> dict[int, QSeries]:
    """Coefficients ``c_r`` of ``exp(sum_l a_l Z^l / l!) = sum_r c_r Z^r / r!``.

    ``c_r = sum_s r!/s! sum_{i_1+..+i_s=r} prod a_{i_j} / i_j!`` over ordered
    compositions. Missing keys are treated as zero series.
    """
    if any(l < 1 for l in a):
        raise ValueError("exponent coefficients are indexed from 1")
    orders = {s.order for s in a.values()}
    if order is None:
        if not orders:
            raise ValueError("order is required when no coefficients are given")
        order = min(orders)
    elif orders and min(orders) < order:
        raise ValueError(f"coefficients are only known to order {min(orders)}")
    keys = frozenset(l for l, s in a.items() if any(s.coeffs[: order + 1]))
    cache: dict[tuple[int, ...], QSeries] = {}
    out: dict[int, QSeries] = {0: QSeries.one(order)}
    for r in range(1, r_max + 1):
        weights: dict[tuple[int, ...], Fraction] = defaultdict(Fraction)
        for comp in compositions(r, keys):
            s = len(comp)
            w = Fraction(math.factorial(r), math.factorial(s))
            for i in comp:
                w /= math.factorial(i)
            weights[tuple(sorted(comp))] += w
        total = QSeries.zero(order)
        for key, w in sorted(weights.items()):
            total = total + w * _product(key, a, order, cache)
        out[r] = total
    return out


def _composition_sum(ell: int, building_block, order: int) -> QSeries:
    """``sum_k sum_{i_1+..+i_k=ell} 2^k (2ell)! / (k! prod (2i_j)!) prod G_{i_j}``."""
    blocks = {i: building_block(i, order) for i in range(1, ell + 1)}
    cache: dict[tuple[int, ...], QSeries] = {}
    total = QSeries.zero(order)
    for comp in compositions(ell):
        k = len(comp)
        const = Fraction(2**k * math.factorial(2 * ell), math.factorial(k))
        for i in comp:
            const /= math.factorial(2 * i)
        total = total + const * _product(comp, blocks, order, cache)
    return total


def theorem1_series(ell: int, N: int) -> QSeries:
    """``sum_n M_{2ell}(n) q^n`` from the Phi-composition formula."""
    if ell < 1:
        raise ValueError(f"ell must be >= 1, got {ell}")
    poch_q, _ = eta_products(N)
    inner = _composition_sum(ell, lambda i, n: phi_series(2 * i, n), N)
    return series_mul(inner, series_inv(poch_q))


def theorem2_series(
    ell: int, N: int, prefactor: Literal["corrected", "literal"] = "corrected"
) -> QSeries:
    """``sum_n M_{2ell}(-1, n) q^n`` from the F-composition formula.

    ``prefactor="corrected"`` multiplies by ``(q)_inf / (-q)_inf^2``, which is
    the value of the crank product at x = -1. ``"literal"`` multiplies by
    ``(q)_inf (-q)_inf^2`` instead; it disagrees with the moments already at q^2
    and exists only to demonstrate that.
    """
    if ell < 1:
        raise ValueError(f"ell must be >= 1, got {ell}")
    poch_q, poch_mq = eta_products(N)
    sq = series_mul(poch_mq, poch_mq)
    if prefactor == "corrected":
        pre = series_mul(poch_q, series_inv(sq))
    elif prefactor == "literal":
        pre = series_mul(poch_q, sq)
    else:
        raise ValueError(f"unknown prefactor {prefactor!r}")
    inner = _composition_sum(ell, f_series, N)
    return series_mul(inner, pre)


def moment_series(ell: int, twist: int, N: int) -> QSeries:
    """Generating function of ``M_{2ell}(n)`` (twist=+1) or ``M_{2ell}(-1,n)`` (twist=-1).

    Goes through :func:`exp_compose`, so ``ell = 0`` is allowed.
    """
    if ell < 0:
        raise ValueError(f"ell must be >= 0, got {ell}")
    poch_q, poch_mq = eta_products(N)
    if twist == 1:
        a = {2 * i: 2 * phi_series(2 * i, N) for i in range(1, ell + 1)}
        pre = series_inv(poch_q)
    elif twist == -1:
        a = {2 * i: 2 * f_series(i, N) for i in range(1, ell + 1)}
        pre = series_mul(poch_q, series_inv(series_mul(poch_mq, poch_mq)))
    else:
        raise ValueError(f"twist must be +1 or -1, got {twist}")
    c = exp_compose(a, 2 * ell, order=N)
    return series_mul(c[2 * ell], pre)


@dataclass(frozen=True)
class ThetaExpansion:
    """``Z^l/l!`` coefficients of the exponential factor of theta (l even)."""

    variant: Variant
    coeffs: dict[int, QSeries]
    prefactor_desc: Literal["eta_cubed", "eta2sq_over_eta"]


def theta_taylor(variant: Variant, ell_max: int, N: int) -> ThetaExpansion:
    if ell_max % 2:
        raise ValueError(f"ell_max must be even, got {ell_max}")
    if variant == "at_zero":
        a = {l: -2 * phi_series(l, N) for l in range(2, ell_max + 1, 2)}
        desc = "eta_cubed"
    elif variant == "at_half":
        a = {l: -2 * f_series(l // 2, N) for l in range(2, ell_max + 1, 2)}
        desc = "eta2sq_over_eta"
    else:
        raise ValueError(f"unknown variant {variant!r}")
    c = exp_compose(a, ell_max, order=N)
    return ThetaExpansion(variant, {l: c[l] for l in range(0, ell_max + 1, 2)}, desc)


def _laurent_theta_product(N: int, sign: int) -> list[dict[int, int]]:
    # prod_{n<=N} (1 - sign x q^n)(1 - sign x^{-1} q^n), rows indexed by q-power
    rows: list[dict[int, int]] = [dict() for _ in range(N + 1)]
    rows[0][0] = 1
    for n in range(1, N + 1):
        for shift in (1, -1):
            for qd in range(N, n - 1, -1):
                src = rows[qd - n]
                dst = rows[qd]
                for m, c in src.items():
                    dst[m + shift] = dst.get(m + shift, 0) - sign * c
    return rows


def verify_theta_product(variant: Variant, ell_max: int, N: int) -> dict:
    """Compare :func:`theta_taylor` with a direct expansion of the triple product.

    The product ``prod (1 - x q^n)(1 - x^{-1} q^n)`` (x -> -x for ``at_half``)
    is expanded as Laurent polynomials in x and divided by ``(q)_inf^2``
    (resp. ``(-q)_inf^2``); substituting x = e^Z turns the x^m coefficient
    into ``sum_m m^l [x^m]`` at ``Z^l / l!``.
    """
    sign = 1 if variant == "at_zero" else -1
    rows = _laurent_theta_product(N, sign)
    poch_q, poch_mq = eta_products(N)
    base = poch_q if variant == "at_zero" else poch_mq
    inv_sq = series_inv(series_mul(base, base))
    expansion = theta_taylor(variant, ell_max, N)
    report = {
        "schema_version": SCHEMA_VERSION,
        "check": "theta_product",
        "variant": variant,
        "ell_max": ell_max,
        "N": N,
        "status": "pass",
        "first_mismatch": None,
    }
    for l in range(0, ell_max + 1):
        raw = QSeries([sum(m**l * c for m, c in row.items()) for row in rows])
        direct = series_mul(raw, inv_sq)
        expected = expansion.coeffs.get(l, QSeries.zero(N))
        if direct != expected:
            n = next(i for i in range(N + 1) if direct[i] != expected[i])
            report["status"] = "fail"
            report["first_mismatch"] = {
                "ell": l,
                "n": n,
                "expected": str(expected[n]),
                "got": str(direct[n]),
            }
            break
    return report


def verify_theorem(
    theorem: Literal["theorem1", "theorem2"],
    ell: int,
    N: int,
    table: CrankTable | None = None,
    prefactor: Literal["corrected", "literal"] = "corrected",
) -> dict:
    """Compare a closed-form moment series with moments of the product table."""
    if table is None or table.N < N:
        table = crank_table_product(N)
    if theorem == "theorem1":
        series = theorem1_series(ell, N)
        oracle = [moment(table, 2 * ell, n) for n in range(N + 1)]
    elif theorem == "theorem2":
        series = theorem2_series(ell, N, prefactor=prefactor)
        oracle = [twisted_moment(table, 2 * ell, n) for n in range(N + 1)]
    else:
        raise ValueError(f"unknown theorem {theorem!r}")
    report = {
        "schema_version": SCHEMA_VERSION,
        "theorem": theorem,
        "ell": ell,
        "N": N,
        "status": "pass",
        "first_mismatch": None,
    }
    if theorem == "theorem2":
        if prefactor == "corrected":
            report["prefactor"] = "(q)_inf/(-q)_inf^2"
            report["note"] = (
                "divides by (-q)_inf^2; the printed statement multiplies by it, "
                "which fails at n=2 (8 expected, 0 obtained)"
            )
        else:
            report["prefactor"] = "(q)_inf*(-q)_inf^2"
    for n in range(1, N + 1):
        if series[n] != oracle[n]:
            report["status"] = "fail"
            report["first_mismatch"] = {"n": n, "expected": str(oracle[n]), "got": str(series[n])}
            break
    return report
