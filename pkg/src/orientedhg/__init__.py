"""Oriented hypergraphs and their Erdős–Rényi random model."""
from __future__ import annotations

from .combinatorics import (
    CountReport,
    binomial,
    block_count,
    full_report,
    growth_rate_edges,
    growth_rate_impossible,
    impossible_pairs,
    per_vertex_block_count,
    per_vertex_total,
    size_count,
    total_edges,
)
from .core import (
    BlockIndex,
    OrientedHyperedge,
    OrientedHypergraph,
    PairClass,
    VertexSet,
    block_of,
    classify_pair,
    edge_size,
    hypergraph_degree,
    hypergraph_size,
    vertex_degree,
)
from .extrema import ExtremumResult, NoRootError, solve_n_max, solve_s_max
from .random_model import (
    ExpectationCurve,
    ProbabilityFamily,
    RandomModelParams,
    expectation_curve,
    expected_degree,
    expected_edges,
    expected_edges_of_size,
    ratio_R_over_D,
    sample,
    size_probability,
)
from .ranking import rank_edge, unrank_edge

__version__ = "0.1.0"

__all__ = [
    "BlockIndex",
    "CountReport",
    "ExpectationCurve",
    "ExtremumResult",
    "NoRootError",
    "OrientedHyperedge",
    "OrientedHypergraph",
    "PairClass",
    "ProbabilityFamily",
    "RandomModelParams",
    "VertexSet",
    "binomial",
    "block_count",
    "block_of",
    "classify_pair",
    "edge_size",
    "expectation_curve",
    "expected_degree",
    "expected_edges",
    "expected_edges_of_size",
    "full_report",
    "growth_rate_edges",
    "growth_rate_impossible",
    "hypergraph_degree",
    "hypergraph_size",
    "impossible_pairs",
    "per_vertex_block_count",
    "per_vertex_total",
    "rank_edge",
    "ratio_R_over_D",
    "sample",
    "size_count",
    "size_probability",
    "solve_n_max",
    "solve_s_max",
    "total_edges",
    "unrank_edge",
    "vertex_degree",
]
