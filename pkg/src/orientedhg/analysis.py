"""Statistics on hypergraph instances and tests against the random model."""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np
from scipy import stats

from . import combinatorics as cb
from .core import OrientedHyperedge, OrientedHypergraph, VertexSet
from .random_model import ratio_R_over_D, size_probability

ORACLE_MAX_N = 12

CONSISTENT = "ConsistentWithRandom"
REJECTED = "Rejected"


def brute_force_enumerate(n: int) -> list[OrientedHyperedge]:
    """Every unordered pair of disjoint non-empty vertex sets, by exhaustion.

    Loops over all ordered pairs of non-empty masks and keeps those that are
    disjoint with the first set holding the smaller minimum vertex.
    """
    if not 2 <= n <= ORACLE_MAX_N:
        raise ValueError(f"brute-force enumeration limited to 2 <= n <= {ORACLE_MAX_N}")
    out = []
    top = 1 << n
    for x in range(1, top):
        x_min = (x & -x).bit_length()
        for y in range(1, top):
            if x & y or (y & -y).bit_length() <= x_min:
                continue
            out.append(OrientedHyperedge(VertexSet(n, x), VertexSet(n, y)))
    return out


def degree_sequence(g: OrientedHypergraph) -> list[int]:
    return g.degree_sequence()


def size_histogram(g: OrientedHypergraph) -> dict[int, int]:
    return g.size_histogram()


def ratio_diagnostic(g: OrientedHypergraph) -> float:
    """Number of hyperedges over the mean vertex degree."""
    if len(g) == 0:
        raise ValueError("ratio undefined for a hypergraph without hyperedges")
    return float(Fraction(len(g) * g.n, sum(g.degree_sequence())))


@dataclass
class DistributionSummary:
    """Pearson chi-square fit of observed counts against a model.

    ``support`` holds the lowest value of each (possibly pooled) bin, with
    ``bins`` giving the inclusive ``(low, high)`` range.
    """

    support: list[int]
    empirical_counts: list[int]
    theoretical_pmf: list[float]
    statistic: float
    p_value: float
    verdict: str
    dof: int = 0
    bins: list[tuple[int, int]] = field(default_factory=list)
    active: bool = True


@dataclass
class RandomnessReport:
    n: int
    observed_edges: int
    observed_degree_sum: int
    observed_ratio: float
    theoretical_ratio: float
    size_fit: DistributionSummary
    degree_fit: DistributionSummary
    p_hat: float
    p_used: float
    p_estimated: bool
    significance: float
    verdict: str
    flags: list[str] = field(default_factory=list)

    asymptotic_ratio = 1.5

    def to_dict(self) -> dict:
        doc = asdict(self)
        doc["asymptotic_ratio"] = self.asymptotic_ratio
        return doc

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), default=_json_default, **kwargs)

    def summary(self) -> str:
        lines = [
            f"n = {self.n}, hyperedges = {self.observed_edges}, degree sum = {self.observed_degree_sum}",
            f"p = {self.p_used:.6g}" + (" (estimated)" if self.p_estimated else ""),
            f"E[R]/E[D]: observed {self.observed_ratio:.6g}, model {self.theoretical_ratio:.6g}, "
            f"limit {self.asymptotic_ratio}",
        ]
        for name, fit in (("size", self.size_fit), ("degree", self.degree_fit)):
            if fit.active:
                lines.append(
                    f"{name} fit: chi2 = {fit.statistic:.4g}, dof = {fit.dof}, "
                    f"p-value = {fit.p_value:.4g} -> {fit.verdict}"
                )
            else:
                lines.append(f"{name} fit: not enough data for a test")
        if self.flags:
            lines.append("flags: " + ", ".join(self.flags))
        lines.append(f"verdict at significance {self.significance}: {self.verdict}")
        return "\n".join(lines)


def _json_default(obj):
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    raise TypeError(type(obj))


def _pool(observed, expected, lows, highs, min_expected):
    """Merge adjacent bins until each expected count reaches ``min_expected``."""
    out = []
    acc = None
    for o, e, lo, hi in zip(observed, expected, lows, highs):
        if acc is None:
            acc = [o, e, lo, hi]
        else:
            acc[0] += o
            acc[1] += e
            acc[3] = hi
        if acc[1] >= min_expected:
            out.append(acc)
            acc = None
    if acc is not None:
        if out:
            last = out[-1]
            last[0] += acc[0]
            last[1] += acc[1]
            last[3] = acc[3]
        else:
            out.append(acc)
    return out


def _chi_square(pooled, total, ddof, significance) -> DistributionSummary:
    observed = np.array([b[0] for b in pooled], dtype=float)
    expected = np.array([b[1] for b in pooled], dtype=float)
    dof = len(pooled) - 1 - ddof
    summary = DistributionSummary(
        support=[int(b[2]) for b in pooled],
        empirical_counts=[int(b[0]) for b in pooled],
        theoretical_pmf=(expected / total).tolist(),
        statistic=0.0,
        p_value=1.0,
        verdict=CONSISTENT,
        dof=max(dof, 0),
        bins=[(int(b[2]), int(b[3])) for b in pooled],
    )
    if dof < 1:
        summary.active = False
        return summary
    stat = float(np.sum((observed - expected) ** 2 / expected))
    summary.statistic = stat
    summary.p_value = float(stats.chi2.sf(stat, dof))
    summary.verdict = REJECTED if summary.p_value < significance else CONSISTENT
    return summary


def size_fit(g: OrientedHypergraph, significance: float = 0.01, min_expected: float = 5.0):
    """Chi-square fit of the size histogram to the multinomial ``P(s) = u_s / u_r``."""
    hist = g.size_histogram()
    total = len(g)
    sizes = list(hist)
    observed = [hist[s] for s in sizes]
    expected = [total * size_probability(g.n, s) for s in sizes]
    pooled = _pool(observed, expected, sizes, sizes, min_expected)
    return _chi_square(pooled, total, 0, significance)


def _binned_degrees(degrees: np.ndarray, trials: int, p: float, min_expected: float):
    """Observed and expected vertex counts in Binomial(trials, p) quantile bins."""
    n_vertices = degrees.size
    model = stats.binom(trials, p)
    k = int(n_vertices // min_expected)
    cuts = np.unique(model.ppf(np.linspace(0, 1, k + 1)[1:-1])) if k >= 2 else np.array([])
    highs = [int(c) for c in cuts] + [trials]
    lows = [0] + [h + 1 for h in highs[:-1]]
    cdf = model.cdf(np.array(highs[:-1], dtype=float))
    probs = np.diff(np.concatenate([[0.0], cdf, [1.0]]))
    observed = [int(np.count_nonzero((degrees >= lo) & (degrees <= hi))) for lo, hi in zip(lows, highs)]
    return _pool(observed, (n_vertices * probs).tolist(), lows, highs, min_expected)


def degree_fit(
    g: OrientedHypergraph,
    p: float,
    significance: float = 0.01,
    min_expected: float = 5.0,
    estimated: bool = False,
):
    """Fit of the degree sequence to ``G(n, p)``.

    Each degree is marginally ``Binomial(u, p)`` with ``u = 3^(n-1) - 2^(n-1)``,
    but two degrees share ``c = 2 * 3^(n-2) - 2^(n-2)`` potential hyperedges,
    so their correlation ``c / u`` tends to 2/3.  The statistic is therefore
    the Mahalanobis distance of the degree vector under the exact covariance
    ``p (1 - p) ((u - c) I + c J)``:

        n (mean - p u)^2 / (p (1 - p) (u - c + n c))  +  sum (d_v - mean)^2 / (p (1 - p) (u - c))

    which is approximately chi-square with ``n`` degrees of freedom.  With an
    estimated ``p`` the mean term is dropped (``n - 1`` dof).  The fit is
    inactive when ``p u`` or ``(1 - p) u`` is below ``min_expected``.  The
    binned Binomial table is reported for inspection only.
    """
    degrees = np.array(g.degree_sequence(), dtype=float)
    n = g.n
    u = cb.per_vertex_total(n)
    if p in (0.0, 1.0):
        target = 0 if p == 0.0 else u
        ok = bool(np.all(degrees == target))
        return DistributionSummary(
            support=[target], empirical_counts=[n], theoretical_pmf=[1.0],
            statistic=0.0 if ok else math.inf, p_value=1.0 if ok else 0.0,
            verdict=CONSISTENT if ok else REJECTED, bins=[(target, target)],
        )
    pooled = _binned_degrees(degrees, u, p, min_expected)
    summary = DistributionSummary(
        support=[int(b[2]) for b in pooled],
        empirical_counts=[int(b[0]) for b in pooled],
        theoretical_pmf=[b[1] / n for b in pooled],
        statistic=0.0,
        p_value=1.0,
        verdict=CONSISTENT,
        dof=n - 1 if estimated else n,
        bins=[(int(b[2]), int(b[3])) for b in pooled],
    )
    if min(p, 1.0 - p) * u < min_expected:
        summary.active = False
        return summary
    c = cb.pair_total(n)
    scale = p * (1.0 - p)
    mean = degrees.mean()
    stat = float(np.sum((degrees - mean) ** 2)) / (scale * (u - c))
    if not estimated:
        stat += n * (mean - p * u) ** 2 / (scale * (u - c + n * c))
    summary.statistic = stat
    summary.p_value = float(stats.chi2.sf(stat, summary.dof))
    summary.verdict = REJECTED if summary.p_value < significance else CONSISTENT
    return summary


def fit_randomness(
    g: OrientedHypergraph,
    p: float | None = None,
    significance: float = 0.01,
    min_expected: float = 5.0,
) -> RandomnessReport:
    """Test whether ``g`` looks like a draw from ``G(n, p)``.

    Without ``p`` the maximum-likelihood estimate ``|E| / u_r`` is used.  The
    size and degree fits are combined with a Bonferroni split of
    ``significance`` over the tests that have enough data.
    """
    u_r = cb.total_edges(g.n)
    r = len(g)
    degree_sum = sum(g.degree_sequence())
    p_hat = r / u_r
    estimated = p is None
    p_used = p_hat if estimated else p
    flags = []
    if r == 0:
        empty = DistributionSummary([], [], [], math.nan, 0.0, REJECTED, active=False)
        return RandomnessReport(
            n=g.n, observed_edges=0, observed_degree_sum=0, observed_ratio=math.nan,
            theoretical_ratio=ratio_R_over_D(g.n), size_fit=empty, degree_fit=empty,
            p_hat=0.0, p_used=p_used, p_estimated=estimated, significance=significance,
            verdict=REJECTED, flags=["no_edges"],
        )
    sf = size_fit(g, significance, min_expected)
    df = degree_fit(g, p_used, significance, min_expected, estimated)
    active = [f for f in (sf, df) if f.active]
    for name, f in (("size_fit_inactive", sf), ("degree_fit_inactive", df)):
        if not f.active:
            flags.append(name)
    verdict = CONSISTENT
    if active and min(f.p_value for f in active) < significance / len(active):
        verdict = REJECTED
    return RandomnessReport(
        n=g.n,
        observed_edges=r,
        observed_degree_sum=degree_sum,
        observed_ratio=ratio_diagnostic(g),
        theoretical_ratio=ratio_R_over_D(g.n),
        size_fit=sf,
        degree_fit=df,
        p_hat=p_hat,
        p_used=p_used,
        p_estimated=estimated,
        significance=significance,
        verdict=verdict,
        flags=flags,
    )
