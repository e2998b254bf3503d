from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from orientedhg import combinatorics as cb
from orientedhg.core import OrientedHyperedge
from orientedhg.ranking import (
    rank_edge,
    rank_subset,
    unrank_edge,
    unrank_edges_array,
    unrank_subset,
)
from oracles import ternary_edges


def test_subset_colex_order():
    expected = sorted(itertools.combinations(range(5), 3), key=lambda c: c[::-1])
    assert [tuple(unrank_subset(5, 3, q)) for q in range(10)] == expected
    assert [rank_subset(c) for c in expected] == list(range(10))


def test_n4_singletons():
    edges = [unrank_edge(4, 2, i) for i in range(6)]
    assert len(set(edges)) == 6
    assert all(len(e.left) == len(e.right) == 1 for e in edges)


def test_n4_bipartitions():
    edges = [unrank_edge(4, 4, i) for i in range(7)]
    assert len(set(edges)) == 7
    assert all(0 in e.left and e.size == 4 for e in edges)


def test_first_index():
    assert rank_edge(unrank_edge(4, 2, 0)) == (2, 0)


@pytest.mark.parametrize("n", range(2, 9))
def test_exhaustive_bijection(n):
    seen = set()
    for s in range(2, n + 1):
        for idx in range(cb.size_count(n, s)):
            e = unrank_edge(n, s, idx)
            assert e.size == s
            assert rank_edge(e) == (s, idx)
            seen.add(e.masks)
    oracle = {(sum(1 << v for v in x), sum(1 << v for v in y)) for x, y in ternary_edges(n)}
    assert seen == oracle


@pytest.mark.parametrize("n, count", [(6, 301), (8, 3025)])
def test_rank_every_edge(n, count):
    edges = [OrientedHyperedge.of(n, x, y) for x, y in ternary_edges(n)]
    assert len(edges) == count
    for e in edges:
        s, idx = rank_edge(e)
        assert unrank_edge(n, s, idx) == e


def test_out_of_range():
    with pytest.raises(IndexError):
        unrank_edge(4, 3, 12)
    with pytest.raises(IndexError):
        unrank_edge(4, 3, -1)


@pytest.mark.parametrize("n, s", [(8, 2), (8, 5), (8, 8), (20, 7), (40, 13)])
def test_vectorised_matches_scalar(n, s):
    total = cb.size_count(n, s)
    idx = np.unique(np.random.default_rng(n * 100 + s).integers(total, size=300))
    if total <= 300:
        idx = np.arange(total)
    left, right = unrank_edges_array(n, s, idx)
    for i, a, b in zip(idx.tolist(), left.tolist(), right.tolist()):
        assert unrank_edge(n, s, i).masks == (a, b)


def test_vectorised_object_fallback():
    n, s = 100, 60
    idx = [0, 12345678901234567890123, cb.size_count(n, s) - 1]
    left, right = unrank_edges_array(n, s, np.array(idx, dtype=object))
    for i, a, b in zip(idx, left, right):
        assert unrank_edge(n, s, i).masks == (a, b)


def test_vectorised_out_of_range():
    with pytest.raises(IndexError):
        unrank_edges_array(6, 3, np.array([0, cb.size_count(6, 3)]))


@settings(max_examples=300, deadline=None)
@given(st.integers(2, 128).flatmap(lambda n: st.tuples(st.just(n), st.integers(2, n))), st.data())
def test_round_trip_large(ns, data):
    n, s = ns
    idx = data.draw(st.integers(0, cb.size_count(n, s) - 1))
    e = unrank_edge(n, s, idx)
    assert e.left.isdisjoint(e.right)
    assert rank_edge(e) == (s, idx)
