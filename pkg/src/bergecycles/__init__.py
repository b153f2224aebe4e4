"""Berge-cycle search, shadow matchings, and pancyclicity certificates
for uniform hypergraphs."""

from .berge import (
    BergeSearchResult,
    BergeVerification,
    LiftedBergeCycle,
    PancyclicityCertificate,
    berge_circumference,
    brute_force_berge_cycles,
    find_berge_cycle,
    pancyclicity_certificate,
    verify_berge_cycle,
)
from .families import (
    VossClassification,
    VossWitness,
    classify_voss,
    complete_bipartite_graph,
    complete_hypergraph,
    construction_1,
    construction_2,
    construction_3,
    generate_voss,
)
from .graphs import (
    DEFAULT_BUDGET,
    ConditionReport,
    CycleSearchResult,
    Graph,
    Outcome,
    check_bondy,
    check_brandt,
    check_dirac,
    check_hamconn_corollary,
    check_mantel,
    check_ore,
    circumference,
    find_cycle_of_length,
    girth,
    hamiltonian_closure,
    hamiltonian_cycle,
    hamiltonian_path_between,
    has_triangle,
    is_bipartite,
    pancyclicity_certificate_graph,
)
from .hypergraph import (
    DegreeProfile,
    Hypergraph,
    ParseError,
    degree,
    degree_profile,
    min_degree,
    parse_graph,
    parse_hypergraph,
    serialize_graph,
    serialize_hypergraph,
    two_shadow,
)
from .matching import (
    ShadowMatching,
    extend_to_maximal,
    lift_cycle,
    matching_respecting_cycle,
    maximal_matching,
    maximum_matching,
    unmatched_hyperedges_clique_check,
)
from .pipeline import (
    ImprovementReport,
    SwapPlan,
    VertexEdgeLedger,
    apply_swap,
    build_ledger,
    degree_threshold,
    extract_pancyclicity,
    find_shiftable_hyperedge,
    find_swappable_pair,
    improve_matching_r3,
)

__version__ = "0.1.0"
