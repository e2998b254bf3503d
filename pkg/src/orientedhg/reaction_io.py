"""Reaction text files, hypergraph JSON documents and adjacency-matrix export.

Reaction grammar, one reaction per line::

    line  := [name ':'] side arrow side
    arrow := '->' | '<->' | '-[' name ']->'
    side  := term ('+' term)*
    term  := [integer] name

Names consist of letters, digits and ``_ ( ) , -`` but may not contain the
operators ``->`` or ``-[``.  ``#`` starts a comment; blank lines are skipped.
A leading integer followed by a name is a stoichiometric coefficient; it is
discarded with a :class:`ReactionWarning`.
"""
from __future__ import annotations

import csv
import enum
import io
import json
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from . import combinatorics as cb
from .core import OrientedHyperedge, OrientedHypergraph, PairClass, VertexSet, _bits

NAME_CHARS = frozenset(
    "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_(),-"
)

#: Largest n accepted by :func:`export_matrix`.
MATRIX_MAX_N = 14


class ReactionSyntaxError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class ReactionWarning(UserWarning):
    pass


class BuildError(ValueError):
    pass


class AutocatalyticPolicy(enum.Enum):
    REJECT = "reject"
    SPLIT = "split"


@dataclass
class ReactionRecord:
    educts: list[str]
    products: list[str]
    id: str | None = None
    catalyst: str | None = None
    arrow: str = "->"
    source_line: int = 0


# -- tokenizer / parser ------------------------------------------------------------


def _tokenize(text: str, line_no: int) -> list[tuple[str, str, int]]:
    """Split one line into ``(kind, text, column)`` tokens (columns 1-based)."""
    tokens = []
    i, end = 0, len(text)
    while i < end:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif text.startswith("<->", i):
            tokens.append(("ARROW", "<->", i + 1))
            i += 3
        elif text.startswith("->", i):
            tokens.append(("ARROW", "->", i + 1))
            i += 2
        elif text.startswith("-[", i):
            tokens.append(("CAT_OPEN", "-[", i + 1))
            i += 2
        elif text.startswith("]->", i):
            tokens.append(("CAT_CLOSE", "]->", i + 1))
            i += 3
        elif ch == "+":
            tokens.append(("PLUS", ch, i + 1))
            i += 1
        elif ch == ":":
            tokens.append(("COLON", ch, i + 1))
            i += 1
        elif ch in NAME_CHARS:
            start = i
            while i < end and text[i] in NAME_CHARS and not (
                text.startswith("->", i) or text.startswith("-[", i)
            ):
                i += 1
            tokens.append(("NAME", text[start:i], start + 1))
        else:
            raise ReactionSyntaxError(f"unexpected character {ch!r}", line_no, i + 1)
    return tokens


class _LineParser:
    def __init__(self, tokens, line_no: int, line_len: int):
        self.tokens = tokens
        self.pos = 0
        self.line_no = line_no
        self.eol = line_len + 1

    def peek(self, offset: int = 0):
        j = self.pos + offset
        return self.tokens[j] if j < len(self.tokens) else ("EOL", "", self.eol)

    def error(self, message: str, tok=None):
        tok = tok or self.peek()
        raise ReactionSyntaxError(message, self.line_no, tok[2])

    def expect(self, kind: str, what: str):
        tok = self.peek()
        if tok[0] != kind:
            found = "end of line" if tok[0] == "EOL" else repr(tok[1])
            self.error(f"expected {what}, found {found}", tok)
        self.pos += 1
        return tok

    def side(self, which: str) -> list[str]:
        if self.peek()[0] != "NAME":
            self.error(f"empty or malformed {which} side")
        names = [self.term()]
        while self.peek()[0] == "PLUS":
            self.pos += 1
            names.append(self.term())
        seen = []
        for name in names:
            if name in seen:
                warnings.warn(
                    f"line {self.line_no}: duplicate {name!r} in {which} collapsed",
                    ReactionWarning,
                    stacklevel=4,
                )
            else:
                seen.append(name)
        return seen

    def term(self) -> str:
        tok = self.expect("NAME", "a substance name")
        nxt = self.peek()
        if tok[1].isdigit() and nxt[0] == "NAME":
            warnings.warn(
                f"line {self.line_no}: stoichiometric coefficient {tok[1]} "
                f"before {nxt[1]!r} discarded",
                ReactionWarning,
                stacklevel=5,
            )
            self.pos += 1
            tok = nxt
        return tok[1]

    def parse(self) -> ReactionRecord:
        rid = None
        if self.peek()[0] == "NAME" and self.peek(1)[0] == "COLON":
            rid = self.peek()[1]
            self.pos += 2
        educts = self.side("educt")
        tok = self.peek()
        catalyst = None
        if tok[0] == "ARROW":
            arrow = tok[1]
            self.pos += 1
        elif tok[0] == "CAT_OPEN":
            self.pos += 1
            catalyst = self.expect("NAME", "a catalyst name")[1]
            self.expect("CAT_CLOSE", "']->'")
            arrow = "->"
        else:
            self.error("expected a reaction arrow")
        products = self.side("product")
        if self.peek()[0] != "EOL":
            self.error(f"unexpected {self.peek()[1]!r}")
        return ReactionRecord(educts, products, rid, catalyst, arrow, self.line_no)


def parse_reactions(text: str | Iterable[str]) -> list[ReactionRecord]:
    """Parse reaction lines into records.

    ``text`` is a string or an iterable of lines (e.g. an open file).
    Raises :class:`ReactionSyntaxError` with line and column on bad input.
    """
    lines = text.splitlines() if isinstance(text, str) else text
    records = []
    for line_no, raw in enumerate(lines, start=1):
        line = raw.rstrip("\r\n").split("#", 1)[0]
        if not line.strip():
            continue
        tokens = _tokenize(line, line_no)
        records.append(_LineParser(tokens, line_no, len(line)).parse())
    return records


def format_reaction(record: ReactionRecord) -> str:
    """Inverse of the parser for a single record."""
    head = f"{record.id}: " if record.id is not None else ""
    if record.catalyst is not None:
        arrow = f"-[{record.catalyst}]->"
    else:
        arrow = record.arrow
    return f"{head}{' + '.join(record.educts)} {arrow} {' + '.join(record.products)}"


def format_reactions(records: Iterable[ReactionRecord]) -> str:
    return "".join(format_reaction(r) + "\n" for r in records)


# -- building hypergraphs --------------------------------------------------------------


@dataclass
class NameTable:
    """Vertex names by index plus the indices of introduced intermediates."""

    names: list[str] = field(default_factory=list)
    intermediates: set[int] = field(default_factory=set)

    def __post_init__(self):
        self._index = {name: i for i, name in enumerate(self.names)}

    def intern(self, name: str) -> int:
        if name not in self._index:
            self._index[name] = len(self.names)
            self.names.append(name)
        return self._index[name]

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def index(self, name: str) -> int:
        return self._index[name]

    def fresh_intermediate(self) -> int:
        k = len(self.intermediates)
        while f"Z_{k}" in self._index:
            k += 1
        i = self.intern(f"Z_{k}")
        self.intermediates.add(i)
        return i


def build_hypergraph(
    records: Sequence[ReactionRecord],
    autocatalytic: AutocatalyticPolicy | str = AutocatalyticPolicy.REJECT,
) -> tuple[OrientedHypergraph, NameTable]:
    """Map reaction records to an oriented hypergraph.

    Substances are interned in order of first appearance.  A catalyst becomes
    the edge label and is not a vertex.  A reaction whose educts and products
    overlap is rejected, or, under ``"split"``, replaced by the two reactions
    ``educts -> Z_k`` and ``Z_k -> products`` through a fresh intermediate.
    """
    policy = AutocatalyticPolicy(autocatalytic)
    if not records:
        raise BuildError("no reactions: cannot form a vertex universe")
    table = NameTable()
    pending = []
    for rec in records:
        educts = [table.intern(x) for x in rec.educts]
        products = [table.intern(x) for x in rec.products]
        if not educts or not products:
            raise BuildError(f"line {rec.source_line}: reaction needs educts and products")
        if set(educts) & set(products):
            if policy is AutocatalyticPolicy.REJECT:
                shared = sorted(set(rec.educts) & set(rec.products))
                raise BuildError(
                    f"line {rec.source_line}: {', '.join(shared)} on both sides; "
                    "use the split policy to route through an intermediate"
                )
            z = table.fresh_intermediate()
            pending.append((educts, [z], rec.catalyst))
            pending.append(([z], products, rec.catalyst))
        else:
            pending.append((educts, products, rec.catalyst))
    n = len(table.names)
    if n < 2:
        raise BuildError("a hypergraph needs at least two substances")
    g = OrientedHypergraph(n, names=table.names)
    for left, right, label in pending:
        e = OrientedHyperedge.of(n, left, right, label)
        if not (e.left.is_hypervertex() and e.right.is_hypervertex()):
            raise BuildError("a side may not hold every substance")
        g.add(e)
    return g, table


def read_reaction_file(
    path: str | Path, autocatalytic: AutocatalyticPolicy | str = AutocatalyticPolicy.REJECT
) -> tuple[OrientedHypergraph, NameTable]:
    with open(path, encoding="utf-8") as fh:
        return build_hypergraph(parse_reactions(fh), autocatalytic)


# -- JSON documents ---------------------------------------------------------------------


class DocumentError(ValueError):
    pass


def hypergraph_to_dict(g: OrientedHypergraph) -> dict:
    return {
        "n": g.n,
        "names": g.names,
        "edges": [
            {"left": list(e.left.members), "right": list(e.right.members), "label": e.label}
            for e in g.sorted_edges()
        ],
    }


def hypergraph_from_dict(doc: dict) -> OrientedHypergraph:
    try:
        n = doc["n"]
        edges = doc["edges"]
    except (KeyError, TypeError) as exc:
        raise DocumentError(f"malformed hypergraph document: missing {exc}") from None
    if not isinstance(n, int) or isinstance(n, bool):
        raise DocumentError("'n' must be an integer")
    try:
        g = OrientedHypergraph(n, names=doc.get("names"))
        for k, item in enumerate(edges):
            g.add(OrientedHyperedge.of(n, item["left"], item["right"], item.get("label")))
    except (KeyError, TypeError) as exc:
        raise DocumentError(f"malformed edge: {exc}") from None
    except ValueError as exc:
        raise DocumentError(str(exc)) from None
    return g


def write_hypergraph(g: OrientedHypergraph, path: str | Path) -> None:
    Path(path).write_text(json.dumps(hypergraph_to_dict(g), indent=1) + "\n", encoding="utf-8")


def read_hypergraph(path: str | Path) -> OrientedHypergraph:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise DocumentError(f"not valid JSON: {exc}") from None
    return hypergraph_from_dict(doc)


# -- adjacency matrix -------------------------------------------------------------------


def hypervertex_order(n: int) -> list[int]:
    """All hypervertex masks sorted by size, then lexicographically by members."""
    masks = range(1, (1 << n) - 1)
    return sorted(masks, key=lambda m: (m.bit_count(), tuple(_bits(m))))


@dataclass
class MatrixExport:
    """Classification of the ``(2^n - 2)^2`` cells of the adjacency matrix.

    ``entries`` lists only the realised cells (both orientations).  Every
    other cell is possible-unrealised when its hypervertices are disjoint and
    impossible otherwise; ``blocks`` tallies the three classes per block.
    ``convention_impossible_count`` follows the convention of the impossible-pairs
    formula: impossible cells plus one cell per admissible hyperedge, i.e.
    ``(2^n - 2)^2 - u_r(n)``.
    """

    n: int
    labels: list[str]
    order: list[int]
    entries: list[tuple[str, str, str]]
    realized_cells: int
    possible_cells: int
    impossible_cells: int
    blocks: dict[tuple[int, int], dict[str, int]]
    realized: set[tuple[int, int]] = field(default_factory=set, repr=False)

    @property
    def total_cells(self) -> int:
        return len(self.order) ** 2

    @property
    def convention_impossible_count(self) -> int:
        return self.total_cells - (self.realized_cells + self.possible_cells) // 2

    def classify(self, row: int, col: int) -> PairClass:
        a, b = self.order[row], self.order[col]
        if a & b:
            return PairClass.IMPOSSIBLE
        return PairClass.REALIZED if (a, b) in self.realized else PairClass.POSSIBLE_UNREALIZED

    def iter_cells(self):
        for r, a in enumerate(self.order):
            for c in range(len(self.order)):
                yield self.labels[r], self.labels[c], self.classify(r, c).value

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "hypervertices": self.labels,
            "entries": [list(e) for e in self.entries],
            "counts": {
                "total": self.total_cells,
                "realized": self.realized_cells,
                "possible_unrealized": self.possible_cells,
                "impossible": self.impossible_cells,
                "impossible_pairs_convention": self.convention_impossible_count,
            },
            "blocks": {f"{i},{j}": v for (i, j), v in self.blocks.items()},
            "rule": "cells not listed are 0-impossible if the hypervertices intersect, else 0-possible",
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    def to_csv(self, dense: bool = False) -> str:
        """``row_label,col_label,class`` rows; realised cells only unless ``dense``."""
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["row_label", "col_label", "class"])
        w.writerows(self.iter_cells() if dense else self.entries)
        return buf.getvalue()


def _label(mask: int, names: Sequence[str]) -> str:
    parts = [names[v] for v in _bits(mask)]
    sep = "" if all(len(p) == 1 for p in names) else "+"
    return sep.join(parts)


def export_matrix(g: OrientedHypergraph) -> MatrixExport:
    """Export the generalised adjacency matrix of ``g`` (``n <= 14``)."""
    n = g.n
    if n > MATRIX_MAX_N:
        raise ValueError(f"matrix export limited to n <= {MATRIX_MAX_N}")
    names = g.names or [str(v) for v in range(n)]
    order = hypervertex_order(n)
    position = {m: k for k, m in enumerate(order)}
    labels = [_label(m, names) for m in order]
    realized = set()
    for a, b in g.edge_masks():
        realized.add((a, b))
        realized.add((b, a))
    entries = [
        (labels[position[a]], labels[position[b]], PairClass.REALIZED.value)
        for a, b in sorted(realized, key=lambda ab: (position[ab[0]], position[ab[1]]))
    ]
    # per-block tallies from closed forms: block (i, j) has C(n,i) C(n,j) cells,
    # of which C(n,i) C(n-i,j) are disjoint
    blocks = {}
    realized_by_block: dict[tuple[int, int], int] = {}
    for a, b in realized:
        key = (a.bit_count(), b.bit_count())
        realized_by_block[key] = realized_by_block.get(key, 0) + 1
    possible_total = impossible_total = 0
    for i in range(1, n):
        for j in range(1, n):
            cells = cb.binomial(n, i) * cb.binomial(n, j)
            disjoint = cb.binomial(n, i) * cb.binomial(n - i, j)
            ones = realized_by_block.get((i, j), 0)
            blocks[(i, j)] = {
                "realized": ones,
                "possible_unrealized": disjoint - ones,
                "impossible": cells - disjoint,
            }
            possible_total += disjoint - ones
            impossible_total += cells - disjoint
    return MatrixExport(
        n=n,
        labels=labels,
        order=order,
        entries=entries,
        realized_cells=len(realized),
        possible_cells=possible_total,
        impossible_cells=impossible_total,
        blocks=blocks,
        realized=realized,
    )
