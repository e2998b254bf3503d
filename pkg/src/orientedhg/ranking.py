"""Bijection between ``[0, u_s(n))`` and the hyperedges of size ``s``.

An index decomposes as ``q * (2^(s-1) - 1) + b``.  ``q`` selects the
``s``-subset of vertices in combinadic (colex) order, i.e. the subset
``c_1 < ... < c_s`` has rank ``sum_k C(c_k, k)``.  The smallest member always
sits on the left side; bit ``t`` of ``b + 1`` puts the ``t``-th remaining
member (ascending) on the right.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np

from .combinatorics import binomial, size_count
from .core import OrientedHyperedge, VertexSet

INT64_MAX = np.iinfo(np.int64).max


def unrank_subset(n: int, s: int, q: int) -> list[int]:
    """The ``q``-th ``s``-subset of ``range(n)`` in colex order, ascending."""
    if not 0 <= q < binomial(n, s):
        raise IndexError(f"subset index {q} out of range for C({n}, {s})")
    out = []
    c = n
    for k in range(s, 0, -1):
        # largest c with C(c, k) <= q; C(c, k) is non-decreasing in c
        c -= 1
        while binomial(c, k) > q:
            c -= 1
        out.append(c)
        q -= binomial(c, k)
    out.reverse()
    return out


def rank_subset(members) -> int:
    return sum(binomial(c, k) for k, c in enumerate(sorted(members), start=1))


def unrank_edge(n: int, s: int, index: int) -> OrientedHyperedge:
    """Hyperedge of size ``s`` with the given index; inverse of :func:`rank_edge`."""
    total = size_count(n, s)
    if not 0 <= index < total:
        raise IndexError(f"index {index} out of range [0, {total})")
    q, b = divmod(index, (1 << (s - 1)) - 1)
    members = unrank_subset(n, s, q)
    left, right = 1 << members[0], 0
    sel = b + 1
    for t, v in enumerate(members[1:]):
        if sel >> t & 1:
            right |= 1 << v
        else:
            left |= 1 << v
    return OrientedHyperedge(VertexSet(n, left), VertexSet(n, right))


def rank_edge(e: OrientedHyperedge) -> tuple[int, int]:
    """``(size, index)`` of a hyperedge."""
    members = sorted(e.left.members + e.right.members)
    s = len(members)
    q = rank_subset(members)
    sel = 0
    for t, v in enumerate(members[1:]):
        if v in e.right:
            sel |= 1 << t
    return s, q * ((1 << (s - 1)) - 1) + sel - 1


@lru_cache(maxsize=None)
def _binomial_columns(n: int, s: int) -> np.ndarray:
    # table[c, k] = C(c, k) for c < n, k <= s
    table = np.zeros((n, s + 1), dtype=np.int64)
    for c in range(n):
        for k in range(s + 1):
            table[c, k] = binomial(c, k)
    table.setflags(write=False)
    return table


def unrank_edges_array(n: int, s: int, indices) -> tuple[np.ndarray, np.ndarray]:
    """Vectorised :func:`unrank_edge` returning ``(left_masks, right_masks)``.

    Uses int64 arithmetic when ``n <= 62`` and ``u_s(n)`` fits; otherwise
    falls back to the scalar path with object arrays.
    """
    indices = np.asarray(indices)
    total = size_count(n, s)
    if n > 62 or total > INT64_MAX:
        pairs = [unrank_edge(n, s, int(i)).masks for i in indices.ravel()]
        left = np.array([p[0] for p in pairs], dtype=object)
        right = np.array([p[1] for p in pairs], dtype=object)
        return left, right
    idx = indices.astype(np.int64)
    if idx.size and (idx.min() < 0 or idx.max() >= total):
        raise IndexError(f"indices out of range [0, {total})")
    q, b = np.divmod(idx, (1 << (s - 1)) - 1)
    table = _binomial_columns(n, s)
    members = np.empty((s, idx.size), dtype=np.int64)
    for k in range(s, 0, -1):
        c = np.searchsorted(table[:, k], q, side="right") - 1
        members[k - 1] = c
        q = q - table[c, k]
    sel = b + 1
    left = np.left_shift(np.int64(1), members[0])
    right = np.zeros_like(left)
    for t in range(1, s):
        bit = np.left_shift(np.int64(1), members[t])
        on_right = ((sel >> (t - 1)) & 1).astype(bool)
        right = np.where(on_right, right | bit, right)
        left = np.where(on_right, left, left | bit)
    return left, right
