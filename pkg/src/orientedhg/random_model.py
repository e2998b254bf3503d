"""Erdős–Rényi model ``G(n, p)`` for oriented hypergraphs.

Every admissible hyperedge of the complete oriented hypergraph is realised
independently with probability ``p``.  This module provides the sampler, the
probability families ``p = n^alpha / beta^n``, expectations, pmfs and
expectation curves.  Expectations are computed in log space so that ``n`` may
run to ``10^6`` and beyond.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, NamedTuple, Union

import numpy as np

from . import combinatorics as cb
from .core import MAX_DENSE_VERTICES, OrientedHypergraph
from .ranking import INT64_MAX, unrank_edges_array

#: Vertex count up to which ``strategy="auto"`` uses one Bernoulli draw per edge.
BERNOULLI_MAX_N = 14

#: Poisson replaces the binomial for ``R_s`` when ``u_s`` exceeds this ...
POISSON_MIN_POPULATION = 10**12
#: ... and the expected count ``p * u_s`` stays below this.
POISSON_MAX_MEAN = 10**6

#: Size classes up to this population are drawn by partial permutation and
#: unranked once into a cached table.
SMALL_POPULATION = 1024

#: Refuse to materialise samples whose expected edge count exceeds this.
MAX_EXPECTED_EDGES = 5 * 10**7


@dataclass(frozen=True)
class ProbabilityFamily:
    """Wiring probability ``p(n) = n^alpha / beta^n``."""

    alpha: float
    beta: float

    def __post_init__(self):
        if not self.beta > 0:
            raise ValueError("beta must be positive")

    def log_p(self, n: float) -> float:
        return self.alpha * math.log(n) - n * math.log(self.beta)

    def __call__(self, n: float) -> float:
        lp = self.log_p(n)
        if lp > 1e-12:
            raise ValueError(
                f"p(n) = n^{self.alpha} / {self.beta}^n exceeds 1 at n={n}"
            )
        return math.exp(min(lp, 0.0))


Probability = Union[float, ProbabilityFamily]


def _log_p(p: Probability, n: float) -> float:
    if isinstance(p, ProbabilityFamily):
        lp = p.log_p(n)
        if lp > 1e-12:
            raise ValueError(f"p(n) exceeds 1 at n={n} for {p}")
        return min(lp, 0.0)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    return math.log(p) if p > 0 else -math.inf


@dataclass(frozen=True)
class RandomModelParams:
    n: int
    p: float
    seed: int = 0

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("n must be at least 2")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"p must lie in [0, 1], got {self.p}")

    @classmethod
    def from_family(cls, n: int, family: ProbabilityFamily, seed: int = 0) -> RandomModelParams:
        return cls(n, family(n), seed)


# -- expectations ------------------------------------------------------------


def log_expected_edges(n: float, p: Probability) -> float:
    """``ln E[R] = ln(p u_r(n))``; ``-inf`` when ``p = 0``."""
    return _log_p(p, n) + cb.log_total_edges(n)


#: Below this ``n`` with a plain probability, expectations use exact counts.
_EXACT_MAX_N = 600


def _exact(n, p) -> bool:
    return isinstance(n, int) and not isinstance(p, ProbabilityFamily) and n <= _EXACT_MAX_N


def expected_edges(n: float, p: Probability) -> float:
    if _exact(n, p):
        _log_p(p, n)
        return p * cb.total_edges(n)
    return math.exp(log_expected_edges(n, p))


def log_expected_edges_of_size(n: float, s: int, p: Probability) -> float:
    if not 2 <= s <= n:
        raise ValueError(f"size must lie in [2, {n}], got {s}")
    return _log_p(p, n) + cb.log_size_count(n, s)


def expected_edges_of_size(n: float, s: int, p: Probability) -> float:
    if _exact(n, p):
        _log_p(p, n)
        return p * cb.size_count(n, s)
    return math.exp(log_expected_edges_of_size(n, s, p))


def log_expected_degree(n: float, p: Probability) -> float:
    return _log_p(p, n) + cb.log_per_vertex_total(n)


def expected_degree(n: float, p: Probability) -> float:
    """``E[D] = p (3^(n-1) - 2^(n-1))``."""
    if _exact(n, p):
        _log_p(p, n)
        return p * cb.per_vertex_total(n)
    return math.exp(log_expected_degree(n, p))


def size_probability(n: int, s: int) -> float:
    """Probability that a realised hyperedge has size ``s``: ``u_s / u_r``."""
    if not 2 <= s <= n:
        raise ValueError(f"size must lie in [2, {n}], got {s}")
    return math.exp(cb.log_size_count(n, s) - cb.log_total_edges(n))


def ratio_R_over_D(n: float) -> float:
    """``E[R] / E[D]``, independent of ``p``; tends to 3/2."""
    if n < 2:
        raise ValueError("n must be at least 2")
    t = (2.0 / 3.0) ** n
    return 0.5 * (1.0 - 2.0 * t + 3.0**-n) / (1.0 / 3.0 - 0.5 * t)


def simple_graph_ratio(n: float) -> float:
    """The same ratio for Erdős–Rényi simple graphs, ``n / 2``."""
    return n / 2.0


def log_expected_edges_asymptote(
    n: float, family: ProbabilityFamily, with_constant: bool = False
) -> float:
    """Large-``n`` form ``alpha ln n + n ln(3 / beta)`` of ``ln E[R]``.

    The leading form drops the additive ``-ln 2``; ``with_constant`` keeps it,
    which makes the approximation accurate to ``O((2/3)^n)``.
    """
    value = family.alpha * math.log(n) + n * math.log(3.0 / family.beta)
    if with_constant:
        value -= cb.LN2
    return value


# -- pmfs ----------------------------------------------------------------------


def _binomial_log_pmf(k: int, trials: int, p: float) -> float:
    if not 0 <= k <= trials:
        return -math.inf
    if p == 0.0:
        return 0.0 if k == 0 else -math.inf
    if p == 1.0:
        return 0.0 if k == trials else -math.inf
    return (
        cb.log_binomial(trials, k)
        + k * math.log(p)
        + (trials - k) * math.log1p(-p)
    )


def pmf_edges(n: int, p: float, r: int) -> float:
    """``Pr(R = r)`` with ``R ~ Binomial(u_r(n), p)``."""
    return math.exp(_binomial_log_pmf(r, cb.total_edges(n), p))


def pmf_edges_of_size(n: int, s: int, p: float, r_s: int) -> float:
    """``Pr(R_s = r_s)`` with ``R_s ~ Binomial(u_s(n), p)``."""
    return math.exp(_binomial_log_pmf(r_s, cb.size_count(n, s), p))


def pmf_degree(n: int, p: float, d: int) -> float:
    """``Pr(D = d)`` with ``D ~ Binomial(3^(n-1) - 2^(n-1), p)``."""
    return math.exp(_binomial_log_pmf(d, cb.per_vertex_total(n), p))


# -- sampling --------------------------------------------------------------------


@lru_cache(maxsize=4)
def _edge_table(n: int) -> tuple[np.ndarray, np.ndarray]:
    """All hyperedges as mask arrays, generated from ternary vertex assignments."""
    codes = np.arange(3**n, dtype=np.int64)
    left = np.zeros_like(codes)
    right = np.zeros_like(codes)
    rest = codes
    for v in range(n):
        rest, digit = np.divmod(rest, 3)
        left |= (digit == 1).astype(np.int64) << v
        right |= (digit == 2).astype(np.int64) << v
    union = left | right
    lowest = union & -union
    keep = (left != 0) & (right != 0) & ((left & lowest) != 0)
    left, right = left[keep], right[keep]
    left.setflags(write=False)
    right.setflags(write=False)
    return left, right


@lru_cache(maxsize=256)
def _size_table(n: int, s: int) -> tuple[np.ndarray, np.ndarray]:
    """All hyperedges of size ``s`` in unranking order (small classes only)."""
    left, right = unrank_edges_array(n, s, np.arange(cb.size_count(n, s)))
    left.setflags(write=False)
    right.setflags(write=False)
    return left, right


def _random_below(rng: np.random.Generator, bound: int) -> int:
    if bound <= INT64_MAX:
        return int(rng.integers(bound))
    bits = bound.bit_length()
    words = (bits + 63) // 64
    while True:
        x = 0
        for w in rng.integers(0, 2**64, size=words, dtype=np.uint64):
            x = (x << 64) | int(w)
        x >>= words * 64 - bits
        if x < bound:
            return x


def _distinct_indices(rng: np.random.Generator, population: int, k: int):
    """``k`` distinct uniform indices from ``range(population)``.

    Duplicate-rejecting draws; for ``k`` above half the population the
    complement is drawn instead.
    """
    if k == 0:
        return np.empty(0, dtype=np.int64)
    if population <= SMALL_POPULATION:
        return rng.permutation(population)[:k]
    if population <= INT64_MAX:
        if 2 * k > population:
            drop = _distinct_indices(rng, population, population - k)
            keep = np.ones(population, dtype=bool)
            keep[drop] = False
            return np.flatnonzero(keep)
        chosen = np.unique(rng.integers(population, size=k))
        while chosen.size < k:
            extra = rng.integers(population, size=k - chosen.size)
            chosen = np.union1d(chosen, extra)
        return rng.permutation(chosen)
    chosen: set[int] = set()
    while len(chosen) < k:
        chosen.add(_random_below(rng, population))
    return np.array(sorted(chosen), dtype=object)


def _draw_bernoulli(n: int, p: float, rng: np.random.Generator):
    left, right = _edge_table(n)
    hit = rng.random(left.size) < p
    return left[hit], right[hit], {}


def _draw_by_size(n: int, p: float, rng: np.random.Generator):
    streams = rng.spawn(n - 1)
    lefts, rights = [], []
    poisson_sizes = []
    for s, stream in zip(range(2, n + 1), streams):
        population = cb.size_count(n, s)
        mean = p * population
        if population > POISSON_MIN_POPULATION and mean < POISSON_MAX_MEAN:
            k = min(int(stream.poisson(mean)), population)
            poisson_sizes.append(s)
        elif population <= INT64_MAX:
            k = int(stream.binomial(population, p))
        else:
            raise ValueError(
                f"cannot draw Binomial({population}, {p}) for size {s}: "
                "population exceeds int64 and the Poisson regime does not apply"
            )
        idx = _distinct_indices(stream, population, k)
        if population <= SMALL_POPULATION:
            table_left, table_right = _size_table(n, s)
            a, b = table_left[idx], table_right[idx]
        else:
            a, b = unrank_edges_array(n, s, idx)
        lefts.append(a)
        rights.append(b)
    meta = {}
    if poisson_sizes:
        meta = {"poisson_sizes": poisson_sizes, "total_variation_bound": p}
    return np.concatenate(lefts), np.concatenate(rights), meta


def draw_edges(n: int, p: float, rng: np.random.Generator, strategy: str = "auto"):
    """Draw one ``G(n, p)`` as ``(left_masks, right_masks, meta)``.

    ``strategy`` is ``"bernoulli"`` (one trial per admissible hyperedge),
    ``"by_size"`` (``R_s ~ Binomial(u_s, p)`` per size, then ``R_s`` distinct
    uniform hyperedges by unranking, each size on its own spawned stream) or
    ``"auto"`` (Bernoulli up to ``n = 14``).
    """
    if not 2 <= n <= MAX_DENSE_VERTICES:
        raise ValueError(f"sampling requires 2 <= n <= {MAX_DENSE_VERTICES}, got {n}")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    if strategy == "auto":
        strategy = "bernoulli" if n <= BERNOULLI_MAX_N else "by_size"
    if p > 0 and math.log(p) + cb.log_total_edges(n) > math.log(MAX_EXPECTED_EDGES):
        raise ValueError(
            f"expected {expected_edges(n, p):.3g} hyperedges; too many to materialise"
        )
    if strategy == "bernoulli":
        if n > BERNOULLI_MAX_N:
            raise ValueError(f"Bernoulli strategy limited to n <= {BERNOULLI_MAX_N}")
        return _draw_bernoulli(n, p, rng)
    if strategy == "by_size":
        return _draw_by_size(n, p, rng)
    raise ValueError(f"unknown strategy {strategy!r}")


def sample(params: RandomModelParams, strategy: str = "auto") -> OrientedHypergraph:
    """One random oriented hypergraph; reproducible for a fixed seed."""
    rng = np.random.default_rng(params.seed)
    left, right, meta = draw_edges(params.n, params.p, rng, strategy)
    g = OrientedHypergraph.from_masks(params.n, zip(left.tolist(), right.tolist()))
    g.meta.update(meta, seed=params.seed, p=params.p)
    return g


def replicate_generator(seed: int, index: int) -> np.random.Generator:
    """Generator for replicate ``index`` of a seeded run.

    This is child ``index`` of ``SeedSequence(seed).spawn(...)``, so a
    replicate's stream does not depend on how replicates are scheduled.
    """
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))


# -- curves ------------------------------------------------------------------------


class LogValue(NamedTuple):
    """A real number as ``(ln |x|, sign)``; zero is ``(-inf, 0)``."""

    log: float
    sign: int

    @property
    def value(self) -> float:
        return self.sign * math.exp(self.log) if self.sign else 0.0

    @classmethod
    def from_log(cls, log: float) -> LogValue:
        return cls(log, 0 if log == -math.inf else 1)


@dataclass
class ExpectationCurve:
    kind: str
    points: list[tuple[float, LogValue]]
    size: int | None = None
    family: ProbabilityFamily | None = None

    @property
    def n(self) -> np.ndarray:
        return np.array([x for x, _ in self.points], dtype=float)

    @property
    def log_values(self) -> np.ndarray:
        return np.array([v.log for _, v in self.points], dtype=float)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "log_value", "sign"])
        for x, v in self.points:
            w.writerow([_fmt_n(x), repr(v.log), v.sign])
        return buf.getvalue()

    def to_dict(self) -> dict:
        doc = {
            "kind": self.kind,
            "points": [
                {"n": _fmt_n(x), "log_value": v.log if math.isfinite(v.log) else None, "sign": v.sign}
                for x, v in self.points
            ],
        }
        if self.size is not None:
            doc["size"] = self.size
        if self.family is not None:
            doc["alpha"], doc["beta"] = self.family.alpha, self.family.beta
        return doc

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)


def _fmt_n(x: float):
    return int(x) if float(x).is_integer() else x


CURVE_KINDS = ("total_edges", "edges_of_size", "vertex_degree", "ratio_rd")


def expectation_curve(
    kind: str,
    n_values: Iterable[float],
    family: ProbabilityFamily | None = None,
    size: int | None = None,
) -> ExpectationCurve:
    """Tabulate ``E[R]``, ``E[R_s]``, ``E[D]`` or ``E[R]/E[D]`` over ``n_values``."""
    if kind not in CURVE_KINDS:
        raise ValueError(f"kind must be one of {CURVE_KINDS}")
    if kind != "ratio_rd" and family is None:
        raise ValueError(f"curve {kind!r} needs a probability family")
    if kind == "edges_of_size" and size is None:
        raise ValueError("curve 'edges_of_size' needs a size")
    points = []
    for n in n_values:
        if kind == "total_edges":
            lv = log_expected_edges(n, family)
        elif kind == "edges_of_size":
            lv = log_expected_edges_of_size(n, size, family) if n >= size else -math.inf
        elif kind == "vertex_degree":
            lv = log_expected_degree(n, family)
        else:
            lv = math.log(ratio_R_over_D(n))
        points.append((n, LogValue.from_log(lv)))
    return ExpectationCurve(kind, points, size=size, family=family)
