"""Generators for the named hypergraph families.

Interval and circular-arc hypergraphs are described by the vertex count ``n``
and the sorted list ``L`` of first vertices of their edges; the edge starting
at ``l`` is ``{l, l+1, ..., l+d-1}`` (taken mod ``n`` for circular arcs).
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from itertools import combinations
from typing import Iterator, Sequence

from .hypergraph import Hypergraph, HypergraphError

FAMILIES = (
    "complete",
    "star",
    "interval",
    "special_interval",
    "circular_arc",
    "special_circular_arc",
    "tight_circular_arc",
    "random",
)


def complete(n: int, d: int) -> Hypergraph:
    if n < d:
        raise HypergraphError(f"complete hypergraph needs n >= d, got n={n}, d={d}")
    return Hypergraph(n, d, combinations(range(1, n + 1), d))


def star_center(p: int, d: int) -> int:
    """Identifier given to the star's center (vertex 0 in the usual labeling)."""
    return p * (d - 1) + 1


def star(p: int, d: int) -> Hypergraph:
    """S_p^(d): ``p`` edges sharing one center, otherwise disjoint.

    Edge ``i`` is ``{(i-1)(d-1)+1, ..., i(d-1)}`` plus the center, which is
    stored as ``star_center(p, d)`` so identifiers stay in ``1..n``.
    """
    if p < 2 or d < 3:
        raise HypergraphError(f"star needs p >= 2 and d >= 3, got p={p}, d={d}")
    c = star_center(p, d)
    edges = [list(range((i - 1) * (d - 1) + 1, i * (d - 1) + 1)) + [c] for i in range(1, p + 1)]
    return Hypergraph(c, d, edges)


def _check_endpoints(L: Sequence[int]) -> list[int]:
    L = list(L)
    if any(b <= a for a, b in zip(L, L[1:])):
        raise HypergraphError(f"endpoint list {L} must be strictly increasing")
    return L


def interval(n: int, d: int, L: Sequence[int], connected: bool = True) -> Hypergraph:
    """Interval d-hypergraph with left endpoints ``L``.

    With ``connected`` (the default) the endpoints must describe a connected
    hypergraph without isolated vertices: ``L[0] == 1``, ``L[-1] == n-d+1`` and
    consecutive endpoints at most ``d-1`` apart.  Without it any endpoints in
    ``1..n-d+1`` are accepted, isolated vertices included.
    """
    L = _check_endpoints(L)
    for l in L:
        if not 1 <= l <= n - d + 1:
            raise HypergraphError(f"left endpoint {l} outside 1..{n - d + 1}")
    if connected:
        if not L:
            raise HypergraphError("connected interval hypergraph needs at least one edge")
        if L[0] != 1:
            raise HypergraphError(f"first left endpoint must be 1, got {L[0]}")
        if L[-1] != n - d + 1:
            raise HypergraphError(f"last left endpoint must be n-d+1 = {n - d + 1}, got {L[-1]}")
        for a, b in zip(L, L[1:]):
            if b > a + d - 1:
                raise HypergraphError(f"gap between endpoints {a} and {b} exceeds d-1 = {d - 1}")
    return Hypergraph(n, d, (range(l, l + d) for l in L))


def special_interval_endpoints(d: int, s: int) -> list[int]:
    return [x for i in range(1, s + 1) for x in ((i - 1) * d + 1, (i - 1) * d + 2)]


def special_interval(d: int, s: int) -> Hypergraph:
    """SI^d_s on ``sd+1`` vertices with ``2s`` edges."""
    if d < 2 or s < 1:
        raise HypergraphError(f"special interval needs d >= 2 and s >= 1, got d={d}, s={s}")
    return interval(s * d + 1, d, special_interval_endpoints(d, s))


def arc(l: int, n: int, d: int) -> tuple[int, ...]:
    return tuple((l - 1 + k) % n + 1 for k in range(d))


def circular_arc(n: int, d: int, L: Sequence[int]) -> Hypergraph:
    """Circular-arc d-hypergraph with first endpoints ``L`` (``L[0] == 1``)."""
    L = _check_endpoints(L)
    if n < d + 1:
        raise HypergraphError(f"circular-arc hypergraph needs n >= d+1, got n={n}, d={d}")
    if not L or L[0] != 1:
        raise HypergraphError("first endpoint must be 1")
    if L[-1] > n:
        raise HypergraphError(f"endpoint {L[-1]} exceeds n = {n}")
    for a, b in zip(L, L[1:]):
        if b > a + d - 1:
            raise HypergraphError(f"gap between endpoints {a} and {b} exceeds d-1 = {d - 1}")
    if L[-1] < n - d + 2:
        raise HypergraphError(f"last endpoint must be at least n-d+2 = {n - d + 2}, got {L[-1]}")
    return Hypergraph(n, d, (arc(l, n, d) for l in L))


def special_circular_arc(d: int, s: int) -> Hypergraph:
    """SCA^d_s on ``sd`` vertices with ``2s`` edges."""
    if d < 2 or s < 2:
        raise HypergraphError(f"special circular arc needs d >= 2 and s >= 2, got d={d}, s={s}")
    return circular_arc(s * d, d, special_interval_endpoints(d, s))


def special_circular_arc_edges_in_order(d: int, s: int) -> list[tuple[int, ...]]:
    """Edges of SCA^d_s in order of their first endpoints (e_1, e_2, ...)."""
    return [arc(l, s * d, d) for l in special_interval_endpoints(d, s)]


def tight_circular_arc(d: int, t: int, s: int) -> Hypergraph:
    """C_n^(d)(t) with ``n = s(d-t)``: ``s`` arcs, consecutive ones sharing ``t`` vertices."""
    if d < 3:
        raise HypergraphError(f"tight circular arc needs d >= 3, got {d}")
    if not 1 <= t <= d - 1:
        raise HypergraphError(f"tightness must satisfy 1 <= t <= d-1, got t={t}")
    if s < math.ceil((d + 1) / (d - t)):
        raise HypergraphError(f"need s >= (d+1)/(d-t) = {Fraction(d + 1, d - t)}, got s={s}")
    n = s * (d - t)
    return circular_arc(n, d, [(i - 1) * (d - t) + 1 for i in range(1, s + 1)])


def random_hypergraph(n: int, d: int, edge_probability: float | Fraction, seed: int) -> Hypergraph:
    """Independent-edge random d-hypergraph.

    Uses Python's ``random.Random(seed)`` (MT19937).  The candidate edges are
    visited in lexicographic order and each is kept when the next
    ``random()`` draw is below ``edge_probability``; exactly one draw is
    consumed per candidate, so the output depends only on ``(n, d, p, seed)``.
    """
    prob = float(edge_probability)
    if not 0.0 <= prob <= 1.0:
        raise HypergraphError(f"edge probability must lie in [0, 1], got {edge_probability}")
    rng = random.Random(seed)
    edges = [e for e in combinations(range(1, n + 1), d) if rng.random() < prob]
    return Hypergraph(n, d, edges)


def enumerate_connected_interval(n: int, d: int) -> Iterator[list[int]]:
    """Every left endpoint list of a connected interval d-hypergraph on ``n`` vertices."""
    last = n - d + 1
    if last < 1:
        return

    def extend(prefix: list[int]) -> Iterator[list[int]]:
        tail = prefix[-1]
        if tail == last:
            yield list(prefix)
            return
        for nxt in range(tail + 1, min(tail + d - 1, last) + 1):
            prefix.append(nxt)
            yield from extend(prefix)
            prefix.pop()

    yield from extend([1])


def enumerate_connected_circular_arc(n: int, d: int) -> Iterator[list[int]]:
    """Every valid first-endpoint list of a circular-arc d-hypergraph on ``n`` vertices."""
    if n < d + 1:
        return

    def extend(prefix: list[int]) -> Iterator[list[int]]:
        tail = prefix[-1]
        if tail >= n - d + 2:
            yield list(prefix)
        for nxt in range(tail + 1, min(tail + d - 1, n) + 1):
            prefix.append(nxt)
            yield from extend(prefix)
            prefix.pop()

    yield from extend([1])


def rotate(H: Hypergraph, shift: int) -> Hypergraph:
    """Relabel ``v -> v + shift`` cyclically on ``1..n``."""
    n = H.n
    return Hypergraph(n, H.d, (((v - 1 + shift) % n + 1 for v in e) for e in H.edges))


def is_rotation_of(H: Hypergraph, target: Hypergraph) -> bool:
    if (H.n, H.d, H.m) != (target.n, target.d, target.m):
        return False
    return any(rotate(target, k) == H for k in range(H.n))
