"""Locations of the maxima of ``E[R_s]``.

``solve_n_max`` finds the vertex count maximising ``E[R_s]`` for a fixed
size under ``p = n^alpha / 3^n``; ``solve_s_max`` finds the most populated
size for a fixed ``n``.  Both solve the large-``n`` stationarity conditions
by bisection and then settle the integer optimum by direct evaluation of the
exact expectation at the two neighbouring integers.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from . import combinatorics as cb

TOLERANCE = 1e-9
MAX_ITERATIONS = 500

#: Above this ``n`` the integer choice for ``n_max`` compares log values.
EXACT_MAX_N = 20_000


class NoRootError(ValueError):
    """The stationarity equation has no sign change in the search bracket."""


@dataclass
class ExtremumResult:
    variable: str
    value: float
    integer_value: int
    residual: float
    iterations: int
    metadata: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)


def _bisect(f, lo: float, hi: float, tol: float = TOLERANCE) -> tuple[float, float, int]:
    """Root of ``f`` on ``[lo, hi]``; returns ``(root, residual, iterations)``.

    Stops once ``|f| <= tol`` or the bracket can no longer shrink.
    """
    f_lo, f_hi = f(lo), f(hi)
    if f_lo == 0:
        return lo, 0.0, 0
    if f_hi == 0:
        return hi, 0.0, 0
    if (f_lo > 0) == (f_hi > 0):
        raise NoRootError(f"no sign change on [{lo}, {hi}]")
    mid, f_mid = lo, f_lo
    for it in range(1, MAX_ITERATIONS + 1):
        mid = 0.5 * (lo + hi)
        f_mid = f(mid)
        if abs(f_mid) <= tol or mid in (lo, hi):
            return mid, f_mid, it
        if (f_mid > 0) == (f_lo > 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return mid, f_mid, MAX_ITERATIONS


def n_max_equation(n: float, s: int, alpha: float) -> float:
    """``alpha / n + ln(n / (3 (n - s)))``."""
    return alpha / n + math.log(n / (3.0 * (n - s)))


def s_max_equation(s: float, n: float) -> float:
    """``2^(s-1) ln 2 / (2^(s-1) - 1) + ln((n - s) / s)``."""
    # 2^(s-1) / (2^(s-1) - 1) == 1 / (1 - 2^(1-s))
    return cb.LN2 / -math.expm1(-(s - 1) * cb.LN2) + math.log((n - s) / s)


def _log_expected_of_size(n: int, s: int, alpha: float, beta: float) -> float:
    if n < s:
        return -math.inf
    return alpha * math.log(n) - n * math.log(beta) + cb.log_size_count(n, s)


def _expected_of_size_exact(n: int, s: int, alpha: float, beta: float) -> Fraction:
    """``n^alpha u_s(n) / beta^n`` as a fraction; integral ``alpha`` and ``beta`` only."""
    return Fraction(n) ** int(alpha) * cb.size_count(n, s) / Fraction(int(beta)) ** n


def _pick(lo: int, hi: int, key) -> tuple[int, bool]:
    """The better of two neighbouring integers; ties go to the smaller one."""
    a, b = key(lo), key(hi)
    if a == b:
        return lo, lo != hi
    return (lo if a > b else hi), False


def solve_n_max(s: int, alpha: float, beta: float = 3.0) -> ExtremumResult:
    """Vertex count at which ``E[R_s]`` peaks for ``p = n^alpha / 3^n``.

    The bracket starts at ``[s + 1, 100 s + 1000]`` and doubles its upper end
    until the equation changes sign.  ``beta`` only enters the integer
    comparison; the equation itself assumes ``beta = 3``.
    """
    if s < 2:
        raise ValueError("s must be at least 2")
    f = lambda x: n_max_equation(x, s, alpha)
    lo, hi = float(s + 1), float(100 * s + 1000)
    if f(lo) <= 0:
        raise NoRootError(f"no n_max > s for s={s}, alpha={alpha}")
    for _ in range(60):
        if f(hi) < 0:
            break
        hi *= 2
    root, residual, iterations = _bisect(f, lo, hi)
    lo_n, hi_n = max(math.floor(root), s), max(math.ceil(root), s)
    if float(alpha).is_integer() and float(beta).is_integer() and hi_n <= EXACT_MAX_N:
        best, tie = _pick(lo_n, hi_n, lambda m: _expected_of_size_exact(m, s, alpha, beta))
    else:
        best, tie = _pick(lo_n, hi_n, lambda m: _log_expected_of_size(m, s, alpha, beta))
    meta = {"s": s, "alpha": alpha, "beta": beta}
    if tie:
        meta["tied_with"] = hi_n
    return ExtremumResult("n_max", root, best, residual, iterations, meta)


def solve_s_max(n: int) -> ExtremumResult:
    """Most populated hyperedge size for ``n`` vertices.

    Independent of ``p`` as long as ``p`` does not depend on the size.
    """
    if n < 4:
        raise ValueError("s_max is defined for n >= 4")
    root, residual, iterations = _bisect(lambda x: s_max_equation(x, n), 2.0, n - 1.0)
    f = min(max(math.floor(root), 2), n - 1)
    # u_(f+1) / u_f = (2^(f+1) - 1)(n - f) / ((2^f - 1)(f + 1)), compared exactly
    up = ((1 << (f + 1)) - 1) * (n - f)
    down = ((1 << f) - 1) * (f + 1)
    best = f + 1 if up > down else f
    meta = {"n": n, "assumes": "p independent of size"}
    if up == down:
        meta["tied_with"] = f + 1
    return ExtremumResult("s_max", root, best, residual, iterations, meta)
