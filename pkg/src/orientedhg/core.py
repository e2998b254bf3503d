"""Oriented hypergraphs: hypervertices, oriented hyperedges and their metrics.

Vertices are the integers ``0 .. n-1``.  A hypervertex is a non-empty proper
subset of them, stored as a bit mask.  An oriented hyperedge is an unordered
pair ``{X, Y}`` of disjoint hypervertices; it is stored with the side holding
the smallest vertex index on the left, so ``{X, Y}`` and ``{Y, X}`` compare
and hash equal.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Iterator, NamedTuple, Sequence

import numpy as np

#: Largest vertex count for which sets are materialised as bit masks.
MAX_DENSE_VERTICES = 128


def _lowest_bit(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _check_universe(n: int) -> None:
    if not 1 <= n <= MAX_DENSE_VERTICES:
        raise ValueError(f"universe size must be in [1, {MAX_DENSE_VERTICES}], got {n}")


@dataclass(frozen=True, order=True)
class VertexSet:
    """A subset of ``{0, ..., universe_size - 1}`` held as a bit mask."""

    universe_size: int
    mask: int

    def __post_init__(self):
        _check_universe(self.universe_size)
        if self.mask < 0 or self.mask >> self.universe_size:
            raise ValueError(
                f"mask {self.mask:#x} has members outside a universe of {self.universe_size}"
            )

    @classmethod
    def of(cls, universe_size: int, members: Iterable[int]) -> VertexSet:
        mask = 0
        for v in members:
            if not 0 <= v < universe_size:
                raise ValueError(f"vertex {v} outside universe of size {universe_size}")
            mask |= 1 << v
        return cls(universe_size, mask)

    @property
    def members(self) -> tuple[int, ...]:
        return tuple(_bits(self.mask))

    @property
    def min_member(self) -> int:
        if not self.mask:
            raise ValueError("empty vertex set has no minimum")
        return _lowest_bit(self.mask)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __contains__(self, v: int) -> bool:
        return v >= 0 and bool(self.mask >> v & 1)

    def __iter__(self) -> Iterator[int]:
        return _bits(self.mask)

    def isdisjoint(self, other: VertexSet) -> bool:
        return not self.mask & other.mask

    def is_hypervertex(self) -> bool:
        """True for a non-empty proper subset of the universe."""
        return 0 < len(self) < self.universe_size


class BlockIndex(NamedTuple):
    """Block ``(i, j)`` of the adjacency matrix, normalised to ``i <= j``."""

    i: int
    j: int


@dataclass(frozen=True)
class OrientedHyperedge:
    """Unordered pair of disjoint, non-empty vertex sets.

    ``label`` carries catalyst/condition text and takes no part in equality.
    """

    left: VertexSet
    right: VertexSet
    label: str | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.left.universe_size != self.right.universe_size:
            raise ValueError("both sides must share one universe")
        if not self.left.mask or not self.right.mask:
            raise ValueError("hyperedge sides must be non-empty")
        if self.left.mask & self.right.mask:
            raise ValueError("hyperedge sides must be disjoint")
        if _lowest_bit(self.right.mask) < _lowest_bit(self.left.mask):
            left, right = self.right, self.left
            object.__setattr__(self, "left", left)
            object.__setattr__(self, "right", right)

    @classmethod
    def of(
        cls,
        n: int,
        left: Iterable[int],
        right: Iterable[int],
        label: str | None = None,
    ) -> OrientedHyperedge:
        return cls(VertexSet.of(n, left), VertexSet.of(n, right), label)

    @classmethod
    def from_masks(
        cls, n: int, left: int, right: int, label: str | None = None
    ) -> OrientedHyperedge:
        return cls(VertexSet(n, left), VertexSet(n, right), label)

    @property
    def n(self) -> int:
        return self.left.universe_size

    @property
    def masks(self) -> tuple[int, int]:
        return self.left.mask, self.right.mask

    @property
    def size(self) -> int:
        return len(self.left) + len(self.right)

    @property
    def block(self) -> BlockIndex:
        a, b = len(self.left), len(self.right)
        return BlockIndex(min(a, b), max(a, b))

    def __contains__(self, v: int) -> bool:
        return v in self.left or v in self.right


class PairClass(enum.Enum):
    """Classification of a cell of the generalised adjacency matrix."""

    REALIZED = "1"
    POSSIBLE_UNREALIZED = "0-possible"
    IMPOSSIBLE = "0-impossible"


class OrientedHypergraph:
    """Vertex count plus a set of oriented hyperedges.

    Edges are kept as a mapping ``(left_mask, right_mask) -> label`` in
    canonical orientation; :class:`OrientedHyperedge` objects are built on
    demand.  Inserting an edge that is already present is a no-op (the first
    label wins).
    """

    def __init__(
        self,
        n: int,
        edges: Iterable[OrientedHyperedge] = (),
        names: Sequence[str] | None = None,
    ):
        _check_universe(n)
        if names is not None and len(names) != n:
            raise ValueError(f"expected {n} vertex names, got {len(names)}")
        self.n = n
        self.names = list(names) if names is not None else None
        self.meta: dict = {}
        self._edges: dict[tuple[int, int], str | None] = {}
        for e in edges:
            self.add(e)

    @classmethod
    def from_masks(
        cls,
        n: int,
        pairs: Iterable[tuple[int, int]],
        names: Sequence[str] | None = None,
    ) -> OrientedHypergraph:
        """Build from ``(left_mask, right_mask)`` pairs already in canonical form.

        This is the fast path used by the samplers; pairs are trusted.
        """
        g = cls(n, names=names)
        g._edges = dict.fromkeys((int(a), int(b)) for a, b in pairs)
        return g

    @classmethod
    def complete(cls, n: int) -> OrientedHypergraph:
        """The oriented hypergraph holding every admissible hyperedge."""
        _check_universe(n)
        full = (1 << n) - 1
        pairs = []
        for left in range(1, full + 1):
            low = left & -left
            rest = full & ~left & ~(low - 1)
            # submasks of the vertices above min(left) and outside left
            right = rest
            while right:
                pairs.append((left, right))
                right = (right - 1) & rest
        return cls.from_masks(n, pairs)

    def add(self, edge: OrientedHyperedge) -> None:
        if edge.n != self.n:
            raise ValueError(f"edge universe {edge.n} does not match hypergraph n={self.n}")
        self._edges.setdefault(edge.masks, edge.label)

    def add_edge(self, left: Iterable[int], right: Iterable[int], label: str | None = None) -> None:
        self.add(OrientedHyperedge.of(self.n, left, right, label))

    def __len__(self) -> int:
        return len(self._edges)

    def __iter__(self) -> Iterator[OrientedHyperedge]:
        n = self.n
        for (a, b), label in self._edges.items():
            yield OrientedHyperedge(VertexSet(n, a), VertexSet(n, b), label)

    def __contains__(self, edge: OrientedHyperedge) -> bool:
        return edge.n == self.n and edge.masks in self._edges

    def __eq__(self, other) -> bool:
        if not isinstance(other, OrientedHypergraph):
            return NotImplemented
        return self.n == other.n and self._edges.keys() == other._edges.keys()

    def __repr__(self) -> str:
        return f"OrientedHypergraph(n={self.n}, edges={len(self)})"

    @property
    def edges(self) -> list[OrientedHyperedge]:
        return list(self)

    def edge_masks(self) -> list[tuple[int, int]]:
        return list(self._edges)

    def label_of(self, edge: OrientedHyperedge) -> str | None:
        return self._edges[edge.masks]

    def sorted_edges(self) -> list[OrientedHyperedge]:
        """Edges in a reproducible order: by block, then by members."""
        return sorted(self, key=lambda e: (e.size, e.block, e.left.members, e.right.members))

    def _union_masks(self) -> np.ndarray | list[int]:
        unions = [a | b for a, b in self._edges]
        if self.n <= 62:
            return np.fromiter(unions, dtype=np.int64, count=len(unions))
        return unions

    def degree_sequence(self) -> list[int]:
        unions = self._union_masks()
        if isinstance(unions, np.ndarray):
            return [int(np.count_nonzero((unions >> v) & 1)) for v in range(self.n)]
        return [sum(u >> v & 1 for u in unions) for v in range(self.n)]

    def size_histogram(self) -> dict[int, int]:
        hist = dict.fromkeys(range(2, self.n + 1), 0)
        for a, b in self._edges:
            hist[(a | b).bit_count()] += 1
        return hist


def edge_size(e: OrientedHyperedge) -> int:
    """Number of vertices involved in the hyperedge, ``|left| + |right|``."""
    return e.size


def hypergraph_size(g: OrientedHypergraph) -> int:
    """Sum of edge sizes over all hyperedges."""
    return sum((a | b).bit_count() for a, b in g._edges)


def vertex_degree(g: OrientedHypergraph, v: int) -> int:
    """Number of hyperedges in which vertex ``v`` appears."""
    if not 0 <= v < g.n:
        raise IndexError(f"vertex {v} out of range for n={g.n}")
    return sum(1 for a, b in g._edges if (a | b) >> v & 1)


def hypergraph_degree(g: OrientedHypergraph) -> int:
    """Sum of vertex degrees; always equal to :func:`hypergraph_size`."""
    return sum(g.degree_sequence())


def block_of(e: OrientedHyperedge) -> BlockIndex:
    return e.block


def classify_pair(x: VertexSet, y: VertexSet, g: OrientedHypergraph) -> PairClass:
    """Classify the adjacency-matrix cell for hypervertices ``x`` and ``y``."""
    if not x.mask or not y.mask:
        raise ValueError("hypervertices must be non-empty")
    if x.universe_size != g.n or y.universe_size != g.n:
        raise ValueError("vertex sets must share the hypergraph's universe")
    if x.mask & y.mask:
        return PairClass.IMPOSSIBLE
    key = (x.mask, y.mask) if _lowest_bit(x.mask) < _lowest_bit(y.mask) else (y.mask, x.mask)
    if key in g._edges:
        return PairClass.REALIZED
    return PairClass.POSSIBLE_UNREALIZED
