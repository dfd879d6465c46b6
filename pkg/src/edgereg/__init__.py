"""Exact regularity computations for powers of edge ideals of small graphs."""

from __future__ import annotations

from .errors import DomainError, EdgeRegError, GraphParseError, GuardError
from .evenconn import EdgeMultiset, EvenConnection, classify_neighbors, colon_graph, find_even_connection
from .graph import Graph, enumerate_graphs, from_graph6, is_chordal, parse_graph, to_graph6
from .homology import SimplicialComplex, independence_complex, reduced_homology_ranks
from .invariants import (
    cochordal_cover_number,
    induced_matching_number,
    is_vertex_decomposable,
    min_max_matching,
    shedding_set,
    zeta,
)
from .monomial import MonomialIdeal, colon, edge_ideal, polarize, power
from .regularity import (
    RegularityReport,
    banerjee_bound,
    colon_regularity,
    power_regularity,
    regularity,
    regularity_squarefree,
)

__version__ = "0.1.0"
