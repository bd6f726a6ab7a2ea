from __future__ import annotations

import random
from itertools import combinations, permutations

import pytest

from hyperzf.families import (
    circular_arc,
    complete,
    enumerate_connected_circular_arc,
    enumerate_connected_interval,
    interval,
    is_rotation_of,
    random_hypergraph,
    rotate,
    special_circular_arc,
    special_interval,
    star,
    star_center,
    tight_circular_arc,
)
from hyperzf.hypergraph import Hypergraph, HypergraphError, degree

H1 = Hypergraph(5, 3, [[1, 2, 3], [3, 4, 5]])
H2 = Hypergraph(4, 3, [[1, 2, 3], [2, 3, 4]])


def isomorphic(A: Hypergraph, B: Hypergraph) -> bool:
    if (A.n, A.d, A.m) != (B.n, B.d, B.m):
        return False
    target = set(B.edges)
    for perm in permutations(range(1, A.n + 1)):
        if {tuple(sorted(perm[v - 1] for v in e)) for e in A.edges} == target:
            return True
    return False


def test_complete_sizes():
    assert complete(4, 3).m == 4
    assert complete(5, 3).m == 10
    with pytest.raises(HypergraphError):
        complete(2, 3)


@pytest.mark.parametrize("d", [3, 4, 5])
def test_complete_is_tightest_circular_arc(d):
    assert complete(d + 1, d) == tight_circular_arc(d, d - 1, d + 1)


def test_star():
    assert isomorphic(star(2, 3), H1)
    S = star(3, 3)
    c = star_center(3, 3)
    assert (S.n, S.m, c, degree(S, c)) == (7, 3, 7, 3)
    for p, d in [(2, 3), (4, 3), (3, 4), (5, 4)]:
        S = star(p, d)
        assert all(degree(S, v) == 1 for v in S.vertices if v != star_center(p, d))
    with pytest.raises(HypergraphError):
        star(1, 3)
    with pytest.raises(HypergraphError):
        star(3, 2)


def test_interval_examples():
    assert interval(5, 3, [1, 3]) == H1
    assert interval(4, 3, [1, 2]) == H2
    P = interval(6, 2, range(1, 6))
    assert P.edges == ((1, 2), (2, 3), (3, 4), (4, 5), (5, 6))


@pytest.mark.parametrize(
    "n,d,L,fragment",
    [(5, 3, [2, 3], "first"), (5, 3, [1, 2], "last"), (8, 3, [1, 4, 6], "gap"), (5, 3, [1, 4], "outside"),
     (5, 3, [3, 1], "increasing")],
)
def test_interval_invalid(n, d, L, fragment):
    with pytest.raises(HypergraphError, match=fragment):
        interval(n, d, L)


def test_interval_without_connectivity():
    H = interval(7, 3, [2], connected=False)
    assert H.edges == ((2, 3, 4),)


def test_special_interval():
    assert special_interval(3, 1) == H2
    SI = special_interval(3, 2)
    assert (SI.n, SI.m) == (7, 4)
    assert SI == interval(7, 3, [1, 2, 4, 5])
    for s in range(1, 5):
        assert special_interval(2, s) == interval(2 * s + 1, 2, range(1, 2 * s + 1))


def test_circular_arc_examples():
    C = circular_arc(7, 2, range(1, 8))
    assert C.m == 7 and (1, 7) in C.edges
    assert circular_arc(6, 3, [1, 2, 4, 5]) == special_circular_arc(3, 2)
    assert (1, 4, 5) in circular_arc(5, 3, [1, 3, 4]).edges
    with pytest.raises(HypergraphError):
        circular_arc(4, 3, [1, 2])
    with pytest.raises(HypergraphError, match="last endpoint"):
        circular_arc(9, 3, [1, 3, 5])


@pytest.mark.parametrize("d,s", [(2, 2), (3, 2), (3, 3), (4, 3)])
def test_special_circular_arc_is_contracted_special_interval(d, s):
    SI = special_interval(d, s)
    last = s * d + 1
    contracted = Hypergraph(s * d, d, ([1 if v == last else v for v in e] for e in SI.edges))
    assert contracted == special_circular_arc(d, s)


def test_special_circular_arc_sizes():
    assert (special_circular_arc(3, 3).n, special_circular_arc(3, 3).m) == (9, 6)
    assert (special_circular_arc(3, 2).n, special_circular_arc(3, 2).m) == (6, 4)
    with pytest.raises(HypergraphError):
        special_circular_arc(3, 1)


def test_tight_circular_arc():
    C = tight_circular_arc(5, 2, 4)
    assert (C.n, C.m) == (12, 4)
    assert isomorphic(tight_circular_arc(3, 1, 2), H2)
    assert tight_circular_arc(3, 2, 4) == complete(4, 3)
    with pytest.raises(HypergraphError):
        tight_circular_arc(5, 2, 1)
    with pytest.raises(HypergraphError):
        tight_circular_arc(5, 5, 6)


def test_random_hypergraph():
    assert random_hypergraph(6, 3, 1, 7) == complete(6, 3)
    assert random_hypergraph(6, 3, 0, 7).m == 0
    assert random_hypergraph(6, 3, 0.5, 1) == random_hypergraph(6, 3, 0.5, 1)
    with pytest.raises(HypergraphError):
        random_hypergraph(6, 3, 1.5, 1)


@pytest.mark.parametrize("n,d,prob,seed", [(6, 3, 0.5, 1), (8, 3, 0.2, 99), (7, 4, 0.35, 2024)])
def test_random_hypergraph_generator_contract(n, d, prob, seed):
    # one MT19937 draw per lexicographic candidate, kept when below the probability
    rng = random.Random(seed)
    expected = tuple(e for e in combinations(range(1, n + 1), d) if rng.random() < prob)
    assert random_hypergraph(n, d, prob, seed).edges == expected


def _connected_interval_by_filter(n, d):
    last = n - d + 1
    out = []
    for k in range(1, last + 1):
        for L in combinations(range(1, last + 1), k):
            if L[0] == 1 and L[-1] == last and all(b - a <= d - 1 for a, b in zip(L, L[1:])):
                out.append(list(L))
    return out


@pytest.mark.parametrize("d", [2, 3, 4])
def test_enumerate_connected_interval_matches_filter(d):
    for n in range(d, 13):
        assert sorted(enumerate_connected_interval(n, d)) == sorted(_connected_interval_by_filter(n, d))


def test_enumerate_connected_circular_arc_all_valid():
    for n in range(4, 11):
        for L in enumerate_connected_circular_arc(n, 3):
            circular_arc(n, 3, L)


def test_generators_injective_in_endpoints():
    for n in range(3, 11):
        seen = {}
        for L in enumerate_connected_interval(n, 3):
            H = interval(n, 3, L)
            assert H not in seen
            seen[H] = L
    for n in range(4, 11):
        seen = {}
        for L in enumerate_connected_circular_arc(n, 3):
            H = circular_arc(n, 3, L)
            assert H not in seen
            seen[H] = L


def test_rotation():
    S = special_circular_arc(3, 2)
    assert is_rotation_of(rotate(S, 2), S)
    assert is_rotation_of(circular_arc(6, 3, [1, 3, 4, 6]), S)
    assert not is_rotation_of(circular_arc(6, 3, [1, 2, 3, 4, 5, 6]), S)
