"""Hypothesis strategies shared by the reaction-format tests."""
from __future__ import annotations

from hypothesis import strategies as st

from orientedhg import reaction_io as rio

NAME = st.text(alphabet=sorted(rio.NAME_CHARS), min_size=1, max_size=6).filter(
    lambda s: "->" not in s and "-[" not in s
)


@st.composite
def reaction_records(draw):
    educts = draw(st.lists(NAME, min_size=1, max_size=4, unique=True))
    products = draw(st.lists(NAME, min_size=1, max_size=4, unique=True))
    rid = draw(st.none() | NAME)
    catalyst = draw(st.none() | NAME)
    arrow = "->" if catalyst is not None else draw(st.sampled_from(["->", "<->"]))
    return rio.ReactionRecord(educts, products, rid, catalyst, arrow)


def strip_lines(recs):
    return [(r.id, r.educts, r.products, r.catalyst, r.arrow) for r in recs]


_ALPHABETS = (
    "".join(sorted(rio.NAME_CHARS)),
    "0123456789",
    "-_(),",
    "ABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789-",
)


def random_name(rng) -> str:
    """A name from the reaction grammar, biased towards digits and punctuation."""
    alphabet = _ALPHABETS[rng.integers(len(_ALPHABETS))]
    while True:
        size = int(rng.integers(1, 7))
        name = "".join(alphabet[i] for i in rng.integers(len(alphabet), size=size))
        if "->" not in name and "-[" not in name:
            return name


def random_record(rng) -> rio.ReactionRecord:
    """Seeded sampler over the same grammar as ``reaction_records``."""

    def side():
        names: list[str] = []
        target = int(rng.integers(1, 5))
        while len(names) < target:
            name = random_name(rng)
            if name not in names:
                names.append(name)
        return names

    educts, products = side(), side()
    rid = random_name(rng) if rng.random() < 0.5 else None
    catalyst = random_name(rng) if rng.random() < 0.3 else None
    arrow = "->" if catalyst is not None or rng.random() < 0.5 else "<->"
    return rio.ReactionRecord(educts, products, rid, catalyst, arrow)
