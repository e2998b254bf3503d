"""
Reaction networks as oriented hypergraphs
=========================================

Reaction text is parsed into records and built into a hypergraph whose
vertices are substances. Catalysts become edge labels.
"""

# %%
from orientedhg import analysis
from orientedhg import reaction_io as rio

text = """
r1: A -> B
r2: A + C -> D
r3: B + C -> D
r4: A + D -> B + C
"""
g, table = rio.build_hypergraph(rio.parse_reactions(text))
print(table.names, g.degree_sequence(), g.size_histogram())
print(analysis.ratio_diagnostic(g))

# %%
# Stoichiometric coefficients are dropped with a warning.
import warnings

with warnings.catch_warnings(record=True) as caught:
    warnings.simplefilter("always")
    (rec,) = rio.parse_reactions("2 H2 + O2 -[Pt]-> 2 H2O")
print(rec, [str(w.message) for w in caught])

# %%
# A substance on both sides is rejected by default, or split through an intermediate.
try:
    rio.build_hypergraph(rio.parse_reactions("A + B -> B + C"))
except rio.BuildError as exc:
    print(exc)
g, table = rio.build_hypergraph(rio.parse_reactions("A + B -> B + C"), "split")
print([([table.names[v] for v in e.left], [table.names[v] for v in e.right]) for e in g.sorted_edges()])

# %%
# The hypervertex adjacency matrix classifies every pair of non-empty subsets.
g, _ = rio.build_hypergraph(rio.parse_reactions(text))
m = rio.export_matrix(g)
print(m.realized_cells, m.possible_cells, m.impossible_cells, m.convention_impossible_count)
print(m.to_csv().splitlines()[:5])

# %%
# Formatting and parsing round-trip.
records = rio.parse_reactions(text)
print(rio.format_reactions(records))
