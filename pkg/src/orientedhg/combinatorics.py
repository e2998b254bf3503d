"""Exact counts for the complete oriented hypergraph.

All integer results are Python ints and therefore exact at any ``n``.  The
``log_*`` variants return natural logarithms as floats and accept real ``n``
so that curves can be evaluated far beyond floating-point range.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field

LN2 = math.log(2.0)
LN3 = math.log(3.0)

#: Largest n for which :func:`full_report` will emit the per-block table.
MAX_BLOCK_REPORT = 64


def binomial(n: int, k: int) -> int:
    """``C(n, k)``, zero outside ``0 <= k <= n``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def _check_n(n: int) -> None:
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")


def block_count(n: int, i: int, j: int) -> int:
    """Hyperedges in adjacency block ``(i, j)`` of the complete hypergraph."""
    _check_n(n)
    if not (1 <= i <= n - 1 and 1 <= j <= n - 1):
        raise ValueError(f"block indices must lie in [1, {n - 1}]")
    if i + j > n:
        return 0
    count = binomial(n, i) * binomial(n - i, j)
    if i == j:
        return count // 2
    return count


def size_count(n: int, s: int) -> int:
    """Hyperedges of size ``s`` in the complete hypergraph: ``(2^(s-1) - 1) C(n, s)``."""
    _check_n(n)
    if not 2 <= s <= n:
        raise ValueError(f"size must lie in [2, {n}], got {s}")
    return ((1 << (s - 1)) - 1) * binomial(n, s)


def per_vertex_block_count(n: int, i: int, j: int) -> int:
    """Hyperedges of block ``(i, j)`` containing one fixed vertex."""
    _check_n(n)
    if not (1 <= i <= n - 1 and 1 <= j <= n - 1):
        raise ValueError(f"block indices must lie in [1, {n - 1}]")
    if i + j > n:
        return 0
    if i == j:
        num = i * binomial(n, 2 * i) * binomial(2 * i, i)
    else:
        num = (i + j) * binomial(n, i + j) * binomial(i + j, j)
    q, r = divmod(num, n)
    assert r == 0, f"non-integral per-vertex block count at n={n}, ({i}, {j})"
    return q


def per_vertex_total(n: int) -> int:
    """Maximum vertex degree: hyperedges through one vertex, ``3^(n-1) - 2^(n-1)``."""
    _check_n(n)
    return 3 ** (n - 1) - 2 ** (n - 1)


def pair_total(n: int) -> int:
    """Hyperedges containing two fixed vertices, ``2 * 3^(n-2) - 2^(n-2)``.

    As ordered pairs ``(X, Y)``: the two vertices on opposite sides give
    ``2 * 3^(n-2)``, on a common side ``2 * (3^(n-2) - 2^(n-2))``; halve for
    orientation.  Under ``G(n, p)`` the covariance of two vertex degrees is
    ``p (1 - p)`` times this count.
    """
    _check_n(n)
    return 2 * 3 ** (n - 2) - 2 ** (n - 2)


def total_edges(n: int) -> int:
    """Hyperedges of the complete oriented hypergraph, ``(3^n - 2^(n+1) + 1) / 2``."""
    _check_n(n)
    return (3**n - 2 ** (n + 1) + 1) // 2


def impossible_pairs(n: int) -> int:
    """Impossible reactions ``z(n) = (2 * 4^n - 3^n - 6 * 2^n + 7) / 2``.

    Equals ``(2^n - 2)^2 - total_edges(n)``: all cells of the adjacency
    matrix minus one entry per admissible hyperedge.
    """
    _check_n(n)
    num = 2 * 4**n - 3**n - 6 * 2**n + 7
    q, r = divmod(num, 2)
    assert r == 0
    return q


def max_size_degree(n: int) -> int:
    """Upper bound on hypergraph size and degree, ``n (3^(n-1) - 2^(n-1))``."""
    return n * per_vertex_total(n)


# -- real-valued extensions -------------------------------------------------


#: Above this ``n`` :func:`log_binomial` avoids differencing two huge lgammas.
_STIRLING_MIN_N = 1e5


def log_binomial(n: float, k: float) -> float:
    """``ln C(n, k)`` for real ``n``; stable even when ``n`` is astronomically large."""
    if k < 0 or k > n:
        return -math.inf
    if n < _STIRLING_MIN_N:
        return math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)
    n = float(n)
    k = min(float(k), n - float(k))
    m = n - k
    # lgamma(n+1) - lgamma(m+1) by Stirling; both arguments are >= n/2
    head = k * math.log(n) - (m + 0.5) * math.log1p(-k / n) - k
    head += (1.0 / n - 1.0 / m) / 12.0
    return head - math.lgamma(k + 1)


def log_total_edges(n: float) -> float:
    """``ln u_r(n)`` without forming ``3^n``."""
    # u_r = 3^n / 2 * (1 - 2 (2/3)^n + 3^-n)
    return n * LN3 - LN2 + math.log1p(-2.0 * (2.0 / 3.0) ** n + 3.0**-n)


def log_size_count(n: float, s: int) -> float:
    """``ln u_s(n)``; ``n`` may be real (binomial via log-gamma)."""
    if s < 2 or s > n:
        return -math.inf
    # ln(2^(s-1) - 1) = (s-1) ln 2 + ln(1 - 2^(1-s))
    return (s - 1) * LN2 + math.log1p(-(2.0 ** (1 - s))) + log_binomial(n, s)


def log_per_vertex_total(n: float) -> float:
    return (n - 1) * LN3 + math.log1p(-((2.0 / 3.0) ** (n - 1)))


def log_impossible_pairs(n: float) -> float:
    # z = 4^n * (1 - 3^n / (2 4^n) - 3 (2/4)^n + 7 / (2 4^n))
    return n * math.log(4.0) + math.log1p(
        -0.5 * 0.75**n - 3.0 * 0.5**n + 3.5 * 0.25**n
    )


def growth_rate_edges(n: float, log: bool = False) -> float:
    """Derivative ``d u_r / d n = (3^n ln 3 - 2^(n+1) ln 2) / 2``.

    With ``log=True`` the natural log of the derivative is returned, which
    stays finite for any ``n``; the plain value raises ``OverflowError`` once
    it leaves floating-point range.
    """
    _check_n(n)
    log_value = n * LN3 + math.log(0.5 * LN3) + math.log1p(
        -2.0 * (2.0 / 3.0) ** n * LN2 / LN3
    )
    if log:
        return log_value
    return math.exp(log_value)


def growth_rate_impossible(n: float, log: bool = False) -> float:
    """Derivative ``d z / d n = (4^n ln 16 - 3^n ln 3 - 2^n ln 64) / 2``."""
    _check_n(n)
    ln16, ln64 = 4 * LN2, 6 * LN2
    log_value = n * math.log(4.0) + math.log(0.5 * ln16) + math.log1p(
        -(0.75**n) * LN3 / ln16 - 0.5**n * ln64 / ln16
    )
    if log:
        return log_value
    return math.exp(log_value)


# -- report ------------------------------------------------------------------


@dataclass
class CountReport:
    n: int
    total_edges: int
    per_size: dict[int, int]
    per_vertex_total: int
    impossible_pairs: int
    max_size_degree: int
    per_block: dict[tuple[int, int], int] | None = field(default=None)

    def to_dict(self) -> dict:
        doc = {
            "n": self.n,
            "total_edges": str(self.total_edges),
            "per_size": {str(s): str(c) for s, c in self.per_size.items()},
            "per_vertex_total": str(self.per_vertex_total),
            "impossible_pairs": str(self.impossible_pairs),
            "max_size_degree": str(self.max_size_degree),
        }
        if self.per_block is not None:
            doc["per_block"] = {f"{i},{j}": str(c) for (i, j), c in self.per_block.items()}
        return doc

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    def to_csv(self) -> str:
        """Rows of ``kind,index,count`` with counts as decimal strings."""
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["kind", "index", "count"])
        w.writerow(["total_edges", "", str(self.total_edges)])
        for s, c in self.per_size.items():
            w.writerow(["size", s, str(c)])
        if self.per_block is not None:
            for (i, j), c in self.per_block.items():
                w.writerow(["block", f"{i},{j}", str(c)])
        w.writerow(["per_vertex_total", "", str(self.per_vertex_total)])
        w.writerow(["impossible_pairs", "", str(self.impossible_pairs)])
        w.writerow(["max_size_degree", "", str(self.max_size_degree)])
        return buf.getvalue()


def full_report(n: int, blocks: bool = False) -> CountReport:
    """Every count for the complete oriented hypergraph on ``n`` vertices.

    The per-block table (``i <= j``, non-null blocks only) is produced when
    ``blocks`` is set and is refused above ``n = 64``.
    """
    _check_n(n)
    if blocks and n > MAX_BLOCK_REPORT:
        raise ValueError(f"per-block report limited to n <= {MAX_BLOCK_REPORT}")
    per_size = {s: size_count(n, s) for s in range(2, n + 1)}
    per_block = None
    if blocks:
        per_block = {
            (i, j): block_count(n, i, j)
            for i in range(1, n)
            for j in range(i, n - i + 1)
        }
    report = CountReport(
        n=n,
        total_edges=total_edges(n),
        per_size=per_size,
        per_vertex_total=per_vertex_total(n),
        impossible_pairs=impossible_pairs(n),
        max_size_degree=max_size_degree(n),
        per_block=per_block,
    )
    assert sum(per_size.values()) == report.total_edges
    return report
