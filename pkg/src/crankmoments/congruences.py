"""Empirical search for congruences ``M_{2l}(+-1, An+B) = 0 (mod p)``.

Candidates are verified against exact moments up to a bound; nothing here is a
proof. Every reported candidate is re-checked against moments recomputed from
the crank product table, a code path independent of the closed formulas.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Sequence

from .arith import is_prime, primes_upto
from .crank import crank_table_product, moment, twisted_moment
from .formulas import SCHEMA_VERSION, moment_series

__all__ = ["MIN_POINTS", "Candidate", "ScanReport", "scan", "reverify", "progression_contains"]

MIN_POINTS = 20


@dataclass(frozen=True, order=True)
class Candidate:
    p: int
    A: int
    B: int
    verified_n_max: int  # last progression index n checked, i.e. A*n + B <= N


@dataclass(frozen=True)
class ScanReport:
    ell: int
    twist: int
    candidates: tuple[Candidate, ...]
    parameters: dict = field(default_factory=dict)

    def to_json(self) -> str:
        doc = {
            "schema_version": SCHEMA_VERSION,
            "ell": self.ell,
            "twist": self.twist,
            "parameters": self.parameters,
            "status": f"verified to n <= {self.parameters.get('N')}",
            "candidates": [asdict(c) for c in self.candidates],
        }
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"

    def to_csv(self) -> str:
        lines = ["ell,twist,p,A,B,verified_n_max"]
        for c in self.candidates:
            lines.append(f"{self.ell},{self.twist},{c.p},{c.A},{c.B},{c.verified_n_max}")
        return "\n".join(lines) + "\n"


def progression_contains(outer: tuple[int, int], inner: tuple[int, int]) -> bool:
    """Whether ``{A'n+B'}`` contains ``{An+B}`` (both with n >= 0, B < A)."""
    a_out, b_out = outer
    a_in, b_in = inner
    return a_in % a_out == 0 and b_in % a_out == b_out and b_in >= b_out


def _moments(ell: int, twist: int, N: int) -> list[int]:
    series = moment_series(ell, twist, N)
    return series.to_ints()


def scan(ell: int, twist: int, p_max: int, A_max: int, N: int, values: Sequence[int] | None = None) -> ScanReport:
    """Exhaustive search over primes ``p <= p_max``, ``1 <= A <= A_max``, ``0 <= B < A``.

    A progression must have at least ``MIN_POINTS`` terms ``A*n + B <= N`` for
    every ``B < A <= A_max``; otherwise the scan is refused.
    """
    if twist not in (1, -1):
        raise ValueError(f"twist must be +1 or -1, got {twist}")
    if A_max < 1 or p_max < 2:
        raise ValueError("need A_max >= 1 and p_max >= 2")
    worst = (N - (A_max - 1)) // A_max + 1 if N >= A_max - 1 else 0
    if worst < MIN_POINTS:
        need = (MIN_POINTS - 1) * A_max + A_max - 1
        raise ValueError(
            f"N={N} gives only {worst} points for A={A_max}, B={A_max - 1}; "
            f"at least {MIN_POINTS} are required (N >= {need})"
        )
    vals = list(values) if values is not None else _moments(ell, twist, N)
    found: list[Candidate] = []
    for p in primes_upto(p_max):
        kept: list[tuple[int, int]] = []
        for A in range(1, A_max + 1):
            for B in range(A):
                if any(progression_contains(o, (A, B)) for o in kept):
                    continue
                if all(vals[i] % p == 0 for i in range(B, N + 1, A)):
                    kept.append((A, B))
                    found.append(Candidate(p, A, B, (N - B) // A))
    return ScanReport(
        ell=ell,
        twist=twist,
        candidates=tuple(sorted(found)),
        parameters={"p_max": p_max, "A_max": A_max, "N": N, "min_points": MIN_POINTS},
    )


def reverify(report: ScanReport) -> list[Candidate]:
    """Candidates that fail when moments are rebuilt from the crank product table."""
    N = report.parameters["N"]
    table = crank_table_product(N)
    fn = moment if report.twist == 1 else twisted_moment
    vals = [fn(table, 2 * report.ell, n) for n in range(N + 1)]
    bad = []
    for c in report.candidates:
        if not is_prime(c.p) or any(vals[c.A * i + c.B] % c.p for i in range(c.verified_n_max + 1)):
            bad.append(c)
    return bad
