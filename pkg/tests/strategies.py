from __future__ import annotations

from itertools import combinations

from hypothesis import strategies as st

from hyperzf.hypergraph import Hypergraph


@st.composite
def hypergraphs(draw, d=None, max_n: int = 8, min_n: int = 1, max_edges: int | None = None) -> Hypergraph:
    d = draw(st.integers(2, 4)) if d is None else d
    n = draw(st.integers(max(min_n, 1), max_n))
    candidates = list(combinations(range(1, n + 1), d)) if n >= d else []
    chosen = draw(st.lists(st.sampled_from(candidates), unique=True, max_size=max_edges)) if candidates else []
    return Hypergraph(n, d, chosen)


@st.composite
def hypergraph_and_subset(draw, **kwargs) -> tuple[Hypergraph, frozenset[int]]:
    H = draw(hypergraphs(**kwargs))
    B = draw(st.sets(st.integers(1, H.n), max_size=H.n))
    return H, frozenset(B)
