"""Immutable uniform hypergraphs and the structural operations on them.

Vertices are the integers ``1..n``.  Every edge is stored as a sorted tuple and
the edge list is kept in lexicographic order, so two hypergraphs with the same
edge set compare equal regardless of how they were built.
"""

from __future__ import annotations

import json
import math
from bisect import bisect_left
from collections import defaultdict
from pathlib import Path
from typing import Iterable, Mapping, Sequence

Edge = tuple[int, ...]


class HypergraphError(ValueError):
    """Raised for malformed hypergraph input."""


class Hypergraph:
    """A d-uniform hypergraph on the vertices ``1..n``.

    Besides the edge list two indexes are built once at construction:

    * ``incidence[v]`` -- indexes of the edges containing ``v``;
    * ``boundary_index[T]`` -- for every (d-1)-subset ``T`` lying in some
      edge, the sorted vertices ``w`` with ``T | {w}`` an edge.

    Instances are treated as immutable; all operations return new objects.
    """

    __slots__ = ("n", "d", "edges", "incidence", "boundary_index", "_edge_set", "_hash")

    def __init__(self, n: int, d: int, edges: Iterable[Iterable[int]] = ()):
        if n < 0:
            raise HypergraphError(f"vertex count must be non-negative, got {n}")
        if d < 2:
            raise HypergraphError(f"uniformity must be at least 2, got {d}")
        normalized: list[Edge] = []
        seen: set[Edge] = set()
        for raw in edges:
            raw = list(raw)
            e = tuple(sorted(raw))
            if len(e) != d:
                raise HypergraphError(f"edge {raw} has {len(e)} vertices, expected {d}")
            if len(set(e)) != d:
                raise HypergraphError(f"edge {raw} repeats a vertex")
            for v in e:
                if not isinstance(v, int) or not 1 <= v <= n:
                    raise HypergraphError(f"edge {raw} has vertex {v!r} outside 1..{n}")
            if e in seen:
                raise HypergraphError(f"duplicate edge {raw}")
            seen.add(e)
            normalized.append(e)
        normalized.sort()

        incidence: dict[int, list[int]] = {v: [] for v in range(1, n + 1)}
        boundary: dict[Edge, list[int]] = defaultdict(list)
        for idx, e in enumerate(normalized):
            for pos, w in enumerate(e):
                incidence[w].append(idx)
                boundary[e[:pos] + e[pos + 1:]].append(w)

        self.n = n
        self.d = d
        self.edges: tuple[Edge, ...] = tuple(normalized)
        self.incidence = {v: tuple(ix) for v, ix in incidence.items()}
        self.boundary_index: dict[Edge, tuple[int, ...]] = {
            t: tuple(sorted(ws)) for t, ws in sorted(boundary.items())
        }
        self._edge_set = frozenset(normalized)
        self._hash = hash((n, d, self.edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def has_edge(self, vertices: Iterable[int]) -> bool:
        return tuple(sorted(vertices)) in self._edge_set

    def edge_index(self, vertices: Iterable[int]) -> int:
        e = tuple(sorted(vertices))
        if e not in self._edge_set:
            raise HypergraphError(f"{list(e)} is not an edge")
        return bisect_left(self.edges, e)

    def boundary_sets(self) -> list[BoundarySet]:
        return [BoundarySet(t, ws) for t, ws in self.boundary_index.items()]

    def neighbors(self, v: int) -> set[int]:
        self._check_vertex(v)
        out: set[int] = set()
        for idx in self.incidence[v]:
            out.update(self.edges[idx])
        out.discard(v)
        return out

    def _check_vertex(self, v: int) -> None:
        if not isinstance(v, int) or not 1 <= v <= self.n:
            raise HypergraphError(f"vertex {v!r} outside 1..{self.n}")

    def check_vertices(self, vertices: Iterable[int]) -> frozenset[int]:
        out = frozenset(vertices)
        for v in out:
            self._check_vertex(v)
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return (self.n, self.d, self.edges) == (other.n, other.d, other.edges)

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Hypergraph(n={self.n}, d={self.d}, edges={[list(e) for e in self.edges]})"


class BoundarySet:
    """A (d-1)-subset contained in at least one edge, with its completions."""

    __slots__ = ("vertices", "completions")

    def __init__(self, vertices: Sequence[int], completions: Sequence[int]):
        self.vertices = tuple(vertices)
        self.completions = tuple(completions)

    def __repr__(self) -> str:
        return f"BoundarySet({set(self.vertices)} -> {list(self.completions)})"


def new_hypergraph(n: int, d: int, edges: Iterable[Iterable[int]] = ()) -> Hypergraph:
    return Hypergraph(n, d, edges)


def degree(H: Hypergraph, v: int) -> int:
    H._check_vertex(v)
    return len(H.incidence[v])


def connected_components(H: Hypergraph) -> list[frozenset[int]]:
    """Vertex classes of the path-connectivity relation, ordered by least vertex."""
    parent = list(range(H.n + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in H.edges:
        root = find(e[0])
        for v in e[1:]:
            r = find(v)
            if r != root:
                parent[r] = root
    groups: dict[int, list[int]] = defaultdict(list)
    for v in H.vertices:
        groups[find(v)].append(v)
    return sorted((frozenset(g) for g in groups.values()), key=min)


def relabel(H: Hypergraph, keep: Iterable[int]) -> tuple[Hypergraph, dict[int, int]]:
    """Induced subhypergraph on ``keep`` with vertices renumbered in order.

    Returns the new hypergraph and the map old identifier -> new identifier.
    """
    kept = sorted(H.check_vertices(keep))
    mapping = {old: new for new, old in enumerate(kept, start=1)}
    edges = [tuple(mapping[v] for v in e) for e in H.edges if all(v in mapping for v in e)]
    return Hypergraph(len(kept), H.d, edges), mapping


def induced_subhypergraph(H: Hypergraph, U: Iterable[int]) -> Hypergraph:
    return relabel(H, U)[0]


def delete_vertex(H: Hypergraph, v: int) -> tuple[Hypergraph, dict[int, int]]:
    """``H - v``: drop ``v`` and every edge through it, renumbering the rest."""
    H._check_vertex(v)
    return relabel(H, (u for u in H.vertices if u != v))


def delete_edge(H: Hypergraph, e: Iterable[int]) -> Hypergraph:
    target = tuple(sorted(e))
    if not H.has_edge(target):
        raise HypergraphError(f"{list(target)} is not an edge")
    return Hypergraph(H.n, H.d, (f for f in H.edges if f != target))


def disjoint_union(*parts: Hypergraph) -> Hypergraph:
    """Place the parts side by side, shifting identifiers of later parts."""
    if not parts:
        raise HypergraphError("disjoint_union needs at least one hypergraph")
    d = parts[0].d
    edges: list[Edge] = []
    offset = 0
    for P in parts:
        if P.d != d:
            raise HypergraphError(f"uniformity mismatch: {d} vs {P.d}")
        edges.extend(tuple(v + offset for v in e) for e in P.edges)
        offset += P.n
    return Hypergraph(offset, d, edges)


def product_vertex(u: int, u2: int, n2: int) -> int:
    """Identifier of the pair ``(u, u2)`` in a Cartesian product (row-major)."""
    return (u - 1) * n2 + u2


def product_pairs(n: int, n2: int) -> dict[int, tuple[int, int]]:
    return {product_vertex(u, u2, n2): (u, u2) for u in range(1, n + 1) for u2 in range(1, n2 + 1)}


def cartesian_product(H: Hypergraph, Hp: Hypergraph) -> Hypergraph:
    """``H □ Hp`` with the pair ``(u, u')`` stored as ``(u-1)*n' + u'``."""
    if H.d != Hp.d:
        raise HypergraphError(f"uniformity mismatch: {H.d} vs {Hp.d}")
    n2 = Hp.n
    edges = [tuple(product_vertex(u, v2, n2) for u in e) for e in H.edges for v2 in Hp.vertices]
    edges += [tuple(product_vertex(v, u2, n2) for u2 in e2) for v in H.vertices for e2 in Hp.edges]
    return Hypergraph(H.n * n2, H.d, edges)


def zero_forcing_superhypergraph(H: Hypergraph) -> Hypergraph:
    """A superhypergraph ``H'`` with ``H'[1..n] = H`` whose empty set forces everything.

    The vertices are cut into consecutive cells of size d-1; a short last cell
    is topped up with the lowest-numbered vertices not already in it.  Cell
    ``i`` gets a fresh vertex ``n + i`` and the edge ``cell | {n + i}``.
    """
    n, d = H.n, H.d
    size = d - 1
    if 0 < n < size:
        raise HypergraphError(f"need at least {size} vertices to build cells of size {size}")
    k = math.ceil(n / size)
    edges = list(H.edges)
    for i in range(k):
        cell = list(range(i * size + 1, min((i + 1) * size, n) + 1))
        filler = (v for v in range(1, n + 1) if v not in cell)
        while len(cell) < size:
            cell.append(next(filler))
        edges.append(tuple(cell) + (n + i + 1,))
    return Hypergraph(n + k, d, edges)


# ---------------------------------------------------------------- text / JSON I/O


def to_uhg(H: Hypergraph, comments: Sequence[str] = ()) -> str:
    lines = [f"# {c}" for c in comments]
    lines.append(f"{H.d} {H.n} {H.m}")
    lines.extend(" ".join(map(str, e)) for e in H.edges)
    return "\n".join(lines) + "\n"


def parse_uhg(text: str) -> Hypergraph:
    rows: list[tuple[int, list[int]]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        try:
            rows.append((lineno, [int(tok) for tok in s.split()]))
        except ValueError:
            raise HypergraphError(f"line {lineno}: non-integer token in {s!r}") from None
    if not rows:
        raise HypergraphError("empty input: expected header 'd n m'")
    lineno, header = rows[0]
    if len(header) != 3:
        raise HypergraphError(f"line {lineno}: header must be 'd n m', got {header}")
    d, n, m = header
    body = rows[1:]
    if len(body) != m:
        raise HypergraphError(f"header declares {m} edges but {len(body)} edge lines follow")
    for lineno, e in body:
        if len(e) != d:
            raise HypergraphError(f"line {lineno}: edge {e} has {len(e)} vertices, expected {d}")
    return Hypergraph(n, d, (e for _, e in body))


def to_json(H: Hypergraph) -> dict:
    return {"d": H.d, "n": H.n, "edges": [list(e) for e in H.edges]}


def from_json(obj: Mapping) -> Hypergraph:
    try:
        d, n, edges = obj["d"], obj["n"], obj["edges"]
    except (KeyError, TypeError):
        raise HypergraphError("JSON hypergraph needs integer fields 'd', 'n' and array 'edges'") from None
    if not isinstance(d, int) or not isinstance(n, int) or not isinstance(edges, list):
        raise HypergraphError("JSON hypergraph needs integer fields 'd', 'n' and array 'edges'")
    return Hypergraph(n, d, edges)


def read_hypergraph(path: str | Path) -> Hypergraph:
    path = Path(path)
    text = path.read_text()
    if path.suffix == ".json":
        try:
            return from_json(json.loads(text))
        except json.JSONDecodeError as exc:
            raise HypergraphError(f"{path}: invalid JSON ({exc})") from None
    return parse_uhg(text)


def write_hypergraph(H: Hypergraph, path: str | Path) -> None:
    path = Path(path)
    if path.suffix == ".json":
        path.write_text(json.dumps(to_json(H)) + "\n")
    else:
        path.write_text(to_uhg(H))
