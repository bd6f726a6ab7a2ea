from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from strategies import hypergraphs
from hyperzf.families import complete, random_hypergraph, special_interval, star, tight_circular_arc
from hyperzf.hypergraph import Hypergraph, disjoint_union
from hyperzf.propagation import derived_set
from hyperzf.search import PARAMETERS, minimum_set, probe_cartesian_equality

H1 = Hypergraph(5, 3, [[1, 2, 3], [3, 4, 5]])
H2 = Hypergraph(4, 3, [[1, 2, 3], [2, 3, 4]])
TREE10 = Hypergraph(10, 3, [[1, 2, 3], [2, 3, 4], [2, 5, 6], [3, 7, 8], [4, 9, 10]])


@pytest.mark.parametrize(
    "H,parameter,value",
    [
        (H1, "Z0", 0), (H2, "Z0", 1), (complete(5, 3), "Z0", 2), (star(4, 3), "Z0", 0),
        (H2, "I", 1), (complete(5, 3), "I", 3),
        (H2, "Zpd", 1), (TREE10, "Zpd", 2), (complete(5, 3), "Zpd", 3),
        (complete(5, 3), "pd", 1), (Hypergraph(4, 3), "pd", 4),
    ],
)
def test_examples(H, parameter, value):
    result = minimum_set(H, parameter)
    assert result.value == value
    assert derived_set(H, PARAMETERS[parameter], result.witness) == frozenset(H.vertices)


def test_h2_witness():
    for parameter in ("Z0", "I"):
        assert minimum_set(H2, parameter).witness == (1,)


@pytest.mark.parametrize("p", [2, 3, 4, 5])
def test_star_infection(p):
    assert minimum_set(star(p, 3), "I").value == p - 1


def test_tree10_pd_bounded_by_zpd():
    assert minimum_set(TREE10, "pd").value <= 2


def test_tight_arc_infection_at_d7():
    # {1,2} infects everything: S = {1} infects the edge that leaves out only vertex 2
    C = tight_circular_arc(7, 5, 4)
    result = minimum_set(C, "I")
    assert result.value == 2 == oracles.minimum(C, "I")[0]


def test_json_fields():
    assert set(minimum_set(H2, "Z0").to_json()) == {"parameter", "value", "witness", "subsets_examined"}


def test_unknown_parameter():
    with pytest.raises(ValueError):
        minimum_set(H2, "Z")


@pytest.mark.parametrize("parameter", list(PARAMETERS))
def test_agrees_with_unpruned_oracle(parameter):
    rng = random.Random(11)
    for _ in range(500):
        H = random_hypergraph(rng.randint(1, 8), 3, rng.uniform(0.05, 0.5), rng.randrange(2**32))
        result = minimum_set(H, parameter)
        assert (result.value, result.witness) == oracles.minimum(H, parameter)


@settings(max_examples=60)
@given(hypergraphs(max_n=5), hypergraphs(max_n=5), st.sampled_from(["Z0", "I", "Zpd"]))
def test_component_additivity(A, C, parameter):
    if A.d != C.d:
        C = Hypergraph(C.n, A.d)
    U = disjoint_union(A, C)
    assert minimum_set(U, parameter).value == minimum_set(A, parameter).value + minimum_set(C, parameter).value


def test_parallel_search_is_deterministic():
    P = special_interval(3, 2)
    for H in (complete(6, 3), P, disjoint_union(P, H2), random_hypergraph(9, 3, 0.15, 3)):
        for parameter in PARAMETERS:
            serial = minimum_set(H, parameter)
            parallel = minimum_set(H, parameter, workers=3)
            assert (serial.value, serial.witness) == (parallel.value, parallel.witness)


class TestProbe:
    def test_reports_and_checks(self):
        report = probe_cartesian_equality(3, 6, 40, seed=5, edge_probability=(0.05, 0.3))
        assert report.ok
        c = report.counts
        assert c["pairs"] == 40 == c["factor_zero"] + c["factor_one"] + c["other"]
        assert c["factor_one"] > 0

    def test_h2_squared(self):
        report = probe_cartesian_equality(3, 4, 1, seed=0, sampler=lambda rng: (H2, H2))
        assert report.ok and report.counts["equal"] == 1 and report.counts["factor_one"] == 1

    def test_rejects_graphs(self):
        with pytest.raises(ValueError):
            probe_cartesian_equality(2, 5, 1, seed=0)
