from __future__ import annotations

import json
import warnings

import pytest
from hypothesis import given, settings, strategies as st

from orientedhg import combinatorics as cb
from orientedhg import reaction_io as rio
from orientedhg.core import OrientedHyperedge, OrientedHypergraph, PairClass, hypergraph_size
from oracles import TOY_REACTIONS, toy_hypergraph
from strategies import reaction_records as records, strip_lines


class TestParse:
    def test_plain(self):
        (rec,) = rio.parse_reactions("r1: A + B -> C + D")
        assert (rec.id, rec.educts, rec.products, rec.catalyst) == ("r1", ["A", "B"], ["C", "D"], None)

    def test_catalyst(self):
        (rec,) = rio.parse_reactions("A + B -[E]-> C + D")
        assert rec.catalyst == "E"
        assert (rec.educts, rec.products) == (["A", "B"], ["C", "D"])

    def test_reversible_arrow(self):
        (rec,) = rio.parse_reactions("A <-> B")
        assert rec.arrow == "<->"

    def test_comments_and_blank_lines(self):
        recs = rio.parse_reactions("# header\n\nA -> B  # trailing\n   \nC -> D\n")
        assert [r.source_line for r in recs] == [3, 5]

    def test_names_with_punctuation(self):
        (rec,) = rio.parse_reactions("Fe(OH)_3 + H-2 -> x,y")
        assert rec.educts == ["Fe(OH)_3", "H-2"]
        assert rec.products == ["x,y"]

    def test_tight_spacing(self):
        (rec,) = rio.parse_reactions("A+B->C")
        assert (rec.educts, rec.products) == (["A", "B"], ["C"])
        (rec,) = rio.parse_reactions("A-[K]->B")
        assert (rec.educts, rec.catalyst, rec.products) == (["A"], "K", ["B"])

    def test_coefficient_discarded(self):
        with pytest.warns(rio.ReactionWarning, match="coefficient"):
            (rec,) = rio.parse_reactions("2 H2 + O2 -> 2 H2O")
        assert (rec.educts, rec.products) == (["H2", "O2"], ["H2O"])

    def test_numeric_name_kept(self):
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            (rec,) = rio.parse_reactions("2 + A -> 3")
        assert (rec.educts, rec.products) == (["2", "A"], ["3"])

    def test_duplicate_collapsed(self):
        with pytest.warns(rio.ReactionWarning, match="duplicate"):
            (rec,) = rio.parse_reactions("A + A -> B")
        assert rec.educts == ["A"]

    @pytest.mark.parametrize(
        "text, column",
        [
            ("A + -> B", 5),
            ("-> B", 1),
            ("A ->", 5),
            ("A B -> C", 3),
            ("A -> B C", 8),
            ("A => B", 3),
            ("A -[ ]-> B", 6),
            ("A -[E-> B", 6),
        ],
    )
    def test_syntax_errors(self, text, column):
        with pytest.raises(rio.ReactionSyntaxError) as info:
            rio.parse_reactions("# ok\n" + text)
        assert info.value.line == 2
        assert info.value.column == column


@settings(max_examples=500, deadline=None)
@given(st.lists(records(), min_size=1, max_size=5))
def test_round_trip(recs):
    text = rio.format_reactions(recs)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        parsed = rio.parse_reactions(text)
    assert strip_lines(parsed) == strip_lines(recs)
    assert [r.source_line for r in parsed] == list(range(1, len(recs) + 1))


@settings(max_examples=300, deadline=None)
@given(st.lists(records(), min_size=1, max_size=6))
def test_build_never_violates_disjointness(recs):
    try:
        g, table = rio.build_hypergraph(recs, "split")
    except rio.BuildError:
        return
    for e in g:
        assert e.left.isdisjoint(e.right)
        assert e.left.is_hypervertex() and e.right.is_hypervertex()
    assert g.names == table.names


class TestBuild:
    def test_toy(self):
        g, table = rio.build_hypergraph(rio.parse_reactions(TOY_REACTIONS))
        assert g == toy_hypergraph()
        assert table.names == ["A", "B", "C", "D"]
        assert hypergraph_size(g) == 12
        assert g.degree_sequence() == [3, 3, 3, 3]

    def test_catalyst_is_label(self):
        g, _ = rio.build_hypergraph(rio.parse_reactions("A + B -[E]-> C + D"))
        assert g.n == 4
        (e,) = g.edges
        assert e.label == "E"

    def test_autocatalytic_rejected(self):
        with pytest.raises(rio.BuildError, match="B"):
            rio.build_hypergraph(rio.parse_reactions("A + B -> B + C"))

    def test_autocatalytic_split(self):
        g, table = rio.build_hypergraph(rio.parse_reactions("A + B -> B + C"), "split")
        assert table.names == ["A", "B", "C", "Z_0"]
        assert table.intermediates == {3}
        assert g.n == 4
        assert set(g) == {
            OrientedHyperedge.of(4, [0, 1], [3]),
            OrientedHyperedge.of(4, [3], [1, 2]),
        }

    def test_intermediate_name_clash(self):
        text = "Z_0 + A -> A + B\nC + D -> D + E"
        g, table = rio.build_hypergraph(rio.parse_reactions(text), rio.AutocatalyticPolicy.SPLIT)
        intermediates = sorted(table.names[i] for i in table.intermediates)
        assert intermediates == ["Z_1", "Z_2"]

    def test_duplicates_collapse(self):
        g, _ = rio.build_hypergraph(rio.parse_reactions("A -> B\nB -> A\nA <-> B"))
        assert len(g) == 1

    def test_empty(self):
        with pytest.raises(rio.BuildError):
            rio.build_hypergraph([])

    def test_file(self, tmp_path):
        path = tmp_path / "toy.txt"
        path.write_text(TOY_REACTIONS, encoding="utf-8")
        g, _ = rio.read_reaction_file(path)
        assert g == toy_hypergraph()


class TestJson:
    def test_toy_round_trip(self, tmp_path):
        g = toy_hypergraph()
        rio.write_hypergraph(g, tmp_path / "g.json")
        back = rio.read_hypergraph(tmp_path / "g.json")
        assert back == g and back.names == g.names

    def test_complete_round_trip(self, tmp_path):
        g = OrientedHypergraph.complete(5)
        rio.write_hypergraph(g, tmp_path / "g.json")
        back = rio.read_hypergraph(tmp_path / "g.json")
        assert len(back) == 90 and back == g

    def test_labels_survive(self):
        g, _ = rio.build_hypergraph(rio.parse_reactions("A + B -[E]-> C"))
        back = rio.hypergraph_from_dict(json.loads(json.dumps(rio.hypergraph_to_dict(g))))
        assert [e.label for e in back] == ["E"]

    @pytest.mark.parametrize(
        "doc",
        [
            {"n": 3, "edges": [{"left": [0, 1], "right": [1]}]},
            {"n": 3, "edges": [{"left": [0], "right": [5]}]},
            {"n": 3, "edges": [{"left": [], "right": [1]}]},
            {"n": 3, "edges": [{"left": [0]}]},
            {"edges": []},
            {"n": "3", "edges": []},
            {"n": 3, "names": ["a"], "edges": []},
            [],
        ],
    )
    def test_rejects_bad_documents(self, doc):
        with pytest.raises(rio.DocumentError):
            rio.hypergraph_from_dict(doc)

    def test_rejects_bad_json(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{", encoding="utf-8")
        with pytest.raises(rio.DocumentError):
            rio.read_hypergraph(path)


class TestMatrix:
    def test_toy_cells(self):
        m = rio.export_matrix(toy_hypergraph())
        assert m.realized_cells == 8
        assert sorted(m.entries) == sorted(
            [
                ("A", "B", "1"), ("B", "A", "1"),
                ("AC", "D", "1"), ("D", "AC", "1"),
                ("BC", "D", "1"), ("D", "BC", "1"),
                ("AD", "BC", "1"), ("BC", "AD", "1"),
            ]
        )

    @pytest.mark.parametrize("n", range(2, 8))
    def test_complete_counts(self, n):
        m = rio.export_matrix(OrientedHypergraph.complete(n))
        assert m.realized_cells == 2 * cb.total_edges(n)
        assert m.possible_cells == 0
        assert m.total_cells == (2**n - 2) ** 2
        assert m.realized_cells + m.possible_cells + m.impossible_cells == m.total_cells
        assert m.convention_impossible_count == cb.impossible_pairs(n)

    def test_n4_convention(self):
        m = rio.export_matrix(toy_hypergraph())
        assert m.impossible_cells == 146
        assert m.convention_impossible_count == 171
        assert json.loads(m.to_json())["counts"]["impossible_pairs_convention"] == 171

    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_dense_symmetric_and_exhaustive(self, n):
        g = OrientedHypergraph.complete(n)
        g = OrientedHypergraph.from_masks(n, g.edge_masks()[::3])
        m = rio.export_matrix(g)
        size = len(m.order)
        grid = {}
        for r in range(size):
            for c in range(size):
                grid[r, c] = m.classify(r, c)
        assert all(grid[r, c] is grid[c, r] for r, c in grid)
        assert all(grid[r, r] is PairClass.IMPOSSIBLE for r in range(size))
        counts = {cls: sum(1 for v in grid.values() if v is cls) for cls in PairClass}
        assert counts[PairClass.REALIZED] == m.realized_cells
        assert counts[PairClass.POSSIBLE_UNREALIZED] == m.possible_cells
        assert counts[PairClass.IMPOSSIBLE] == m.impossible_cells
        for (i, j), tally in m.blocks.items():
            if i + j > n:
                assert tally["realized"] == tally["possible_unrealized"] == 0

    def test_ordering(self):
        order = rio.hypervertex_order(4)
        assert len(order) == 14
        sizes = [m.bit_count() for m in order]
        assert sizes == sorted(sizes)
        assert order[:4] == [1, 2, 4, 8]

    def test_csv(self):
        m = rio.export_matrix(toy_hypergraph())
        sparse = m.to_csv().splitlines()
        assert sparse[0] == "row_label,col_label,class" and len(sparse) == 9
        dense = m.to_csv(dense=True).splitlines()
        assert len(dense) == 1 + 14 * 14

    def test_cap(self):
        with pytest.raises(ValueError):
            rio.export_matrix(OrientedHypergraph(15))
