"""sparsity: exact shallow-minor density functionals, queue/stack
layouts, non-repetitive colourings, and seeded random-graph audits on
small graphs, with machine-checkable witnesses for every bound."""

__version__ = "0.1.0"

from .drawings import (
    Drawing,
    audit_crossing_lemma,
    audit_crossings_per_edge,
    convex_drawing,
    convex_positions,
    count_crossings,
    parse_drawing,
    per_edge_crossings,
)
from .errors import (
    DegenerateGeometryError,
    GraphFormatError,
    MalformedLayoutError,
    SearchBudgetExceeded,
    SizeCapExceeded,
)
from .graphs import (
    Graph,
    RadiusCertificate,
    SubdividedGraph,
    complete_graph,
    contract_components,
    cycle_graph,
    empty_graph,
    find_isomorphism,
    format_edge_list,
    format_graph6,
    one_subdivision,
    parse_edge_list,
    parse_graph,
    parse_graph6,
    path_graph,
    petersen_graph,
    radius_certificate,
    star_graph,
    subdivide,
)
from .layouts import (
    Layout,
    Page,
    Poset,
    audit_queue_density,
    audit_subdivision_layout_bounds,
    contract_queue_layout,
    first_fit_layout,
    format_layout,
    hasse_diagram,
    jump_number,
    parse_layout,
    queue_contraction_page_bound,
    queue_number,
    stack_number,
    validate_layout,
)
from .minors import (
    DensityReport,
    ShallowMinorWitness,
    TopMinorWitness,
    audit_grad_inequalities,
    dvorak_upper_bound,
    grad,
    hadwiger,
    top_grad,
    verify_witness,
)
from .nonrep import (
    Colouring,
    RootedForest,
    acyclic_from_subdivision,
    audit_forest_colouring,
    audit_knd_lower_bound,
    check_star_acyclic,
    colour_kn_prime,
    colour_knd,
    colour_subdivision,
    find_nonrepetitive_colouring,
    find_repetition,
    find_square,
    forest_classes_from_arcs,
    is_nonrepetitive,
    kn_prime_bound,
    kn_prime_colour_count,
    nonrep_forest,
    nonrep_graph,
    pi_exact,
    pi_from_subdivision,
    some_nonrepetitive_colouring,
    thue_word,
)
from .randgraphs import (
    AuditReport,
    GnpSample,
    audit_degree_tail,
    audit_shallow_top_density,
    audit_short_cycles,
    audit_small_subgraph_density,
    count_short_cycles,
    degree_tail_bound,
    expected_cycle_bound,
    gnp_edges,
    sample_gnp,
)
