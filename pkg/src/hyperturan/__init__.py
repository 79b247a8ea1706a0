"""Extremal 3-uniform hypergraphs above the Turán threshold: constructions and exact checks."""

__version__ = "0.1.0"

from .constructions import (
    PAPER_WEIGHTS,
    BlowupSpec,
    Digraph,
    blow_up,
    blowup_density,
    blowup_edge_count,
    build_g,
    build_g0,
    build_h_k,
    load_paper_digraph,
    paper_g,
)
from .detect import (
    contains_clique,
    contains_near_clique,
    contains_subgraph,
    count_cliques,
    find_subgraph,
    missing_in_subset,
    near_clique,
)
from .hypercore import (
    Hypergraph,
    Rational,
    VertexSubset,
    binomial,
    canonical_form,
    complement_edges,
    complete_hypergraph,
    induced,
)
from .search import (
    averaging_upper_bound,
    brute_force_turan,
    exact_turan,
    freeness_check,
    search_digraphs,
    weight_grid_refine,
)

