"""Zero forcing, infection, power domination and maximum nullity of uniform hypergraphs."""

from .hypergraph import (
    Hypergraph,
    HypergraphError,
    cartesian_product,
    connected_components,
    delete_edge,
    delete_vertex,
    disjoint_union,
    induced_subhypergraph,
    new_hypergraph,
    parse_uhg,
    read_hypergraph,
    to_uhg,
    write_hypergraph,
    zero_forcing_superhypergraph,
)
from .nullity import (
    BudgetExceeded,
    WeightAssignment,
    flatten,
    generic_nullity,
    is_null_vector,
    max_nullity_exhaustive,
    rank_nullity,
    verify_mz_bound,
)
from .propagation import infection_closure, pd_observe, pdzf_closure, replay, zf_closure
from .search import (
    min_infection_set,
    min_pd_set,
    min_pdzf_set,
    min_zf_set,
    minimum_set,
    probe_cartesian_equality,
)

__version__ = "0.1.0"
