"""The crank statistic and its counting tables.

``M(m, n)`` is read off the two-variable product

    C(x; q) = prod_{n>=1} (1 - q^n) / ((1 - x q^n)(1 - x^{-1} q^n)),

which is the canonical source. The combinatorial table counts partitions by
crank directly; the two agree for every n except n = 1, where the product gives
``x^{-1} - 1 + x`` while the single partition (1) has crank -1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Literal

from .arith import pack_signed, unpack_signed

__all__ = [
    "Partition",
    "CrankTable",
    "enumerate_partitions",
    "crank",
    "crank_table_combinatorial",
    "crank_table_product",
    "moment",
    "twisted_moment",
]

Partition = tuple[int, ...]
Source = Literal["combinatorial", "product"]


def enumerate_partitions(n: int) -> Iterator[Partition]:
    """Yield every partition of ``n`` once, parts in weakly decreasing order."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if n == 0:
        yield ()
        return
    # descending-order successor algorithm on a multiplicity-free part list
    parts = [n]
    while True:
        yield tuple(parts)
        rem = 0
        while parts and parts[-1] == 1:
            parts.pop()
            rem += 1
        if not parts:
            return
        k = parts.pop() - 1
        parts.append(k)
        rem += 1
        while rem > k:
            parts.append(k)
            rem -= k
        parts.append(rem)


def crank(parts: Partition) -> int:
    """Largest part if there are no ones, else (#parts > #ones) - #ones."""
    if not parts:
        raise ValueError("crank of the empty partition is undefined")
    ones = parts.count(1)
    if ones == 0:
        return max(parts)
    return sum(1 for p in parts if p > ones) - ones


@dataclass(frozen=True)
class CrankTable:
    """Rows ``rows[n] = {m: M(m, n)}`` for ``0 <= n <= N``; zero entries omitted."""

    N: int
    rows: tuple[dict[int, int], ...]
    source: Source

    def row(self, n: int) -> dict[int, int]:
        if n < 0 or n > self.N:
            raise IndexError(f"row {n} outside table with N={self.N}")
        return self.rows[n]

    def __getitem__(self, key: tuple[int, int]) -> int:
        m, n = key
        return self.row(n).get(m, 0)

    def to_csv(self) -> str:
        lines = ["n,m,M,source"]
        for n, row in enumerate(self.rows):
            for m in sorted(row):
                lines.append(f"{n},{m},{row[m]},{self.source}")
        return "\n".join(lines) + "\n"


def crank_table_combinatorial(N: int) -> CrankTable:
    rows: list[dict[int, int]] = [{0: 1}]
    for n in range(1, N + 1):
        row: dict[int, int] = {}
        for lam in enumerate_partitions(n):
            c = crank(lam)
            row[c] = row.get(c, 0) + 1
        rows.append(row)
    return CrankTable(N, tuple(rows), "combinatorial")


def _digit_width(N: int) -> int:
    # Every intermediate row is majorized (sum of |coefficients|) by the q^N
    # coefficient of prod (1 + q^n) / (1 - q^n)^2, which is nondecreasing in n.
    u = [0] * (N + 1)
    u[0] = 1
    for n in range(1, N + 1):
        for _ in range(2):
            for i in range(n, N + 1):
                u[i] += u[i - n]
        for i in range(N, n - 1, -1):
            u[i] += u[i - n]
    bits = u[N].bit_length() + 2
    return -(-bits // 8) * 8


def crank_table_product(N: int) -> CrankTable:
    """Expand the crank product to order q^N.

    Each q-row is a Laurent polynomial in x with support ``|m| <= n``, packed
    into one integer (x^m stored at digit ``m + N``) so that multiplying a row
    by x or 1/x is a shift.
    """
    if N < 0:
        raise ValueError(f"N must be >= 0, got {N}")
    w = _digit_width(N)
    width = 2 * N + 1
    rows = [0] * (N + 1)
    rows[0] = 1 << (w * N)
    for n in range(1, N + 1):
        # 1/(1 - x q^n): ascending, so each row sees already-updated lower rows
        for q in range(n, N + 1):
            rows[q] += rows[q - n] << w
        # 1/(1 - x^{-1} q^n); the m = -N digit of rows[q-n] is zero, so >> is exact
        for q in range(n, N + 1):
            rows[q] += rows[q - n] >> w
        # (1 - q^n): descending, reading unmodified lower rows
        for q in range(N, n - 1, -1):
            rows[q] -= rows[q - n]
    out = []
    for v in rows:
        digits = unpack_signed(v, width, w)
        out.append({i - N: c for i, c in enumerate(digits) if c})
    return CrankTable(N, tuple(out), "product")


def _check_n(table: CrankTable, n: int) -> None:
    if n < 0 or n > table.N:
        raise IndexError(f"n={n} outside table with N={table.N}")


def moment(table: CrankTable, k: int, n: int) -> int:
    """``sum_m m^k M(m, n)``."""
    _check_n(table, n)
    return sum(m**k * c for m, c in table.rows[n].items())


def twisted_moment(table: CrankTable, k: int, n: int) -> int:
    """``sum_m (-1)^m m^k M(m, n)``, from the product table only."""
    if table.source != "product":
        raise ValueError("twisted moments are defined on the product table")
    _check_n(table, n)
    return sum((-1 if m % 2 else 1) * m**k * c for m, c in table.rows[n].items())
