"""Graphs of groups with cyclic and surface vertex groups.

Model such graphs exactly, apply the deformation calculus (collapse,
expansion, folding), compute fundamental group presentations and their
first homology, build 4-sheeted surface covers, and certify the
sufficient conditions under which a graph is a cyclic JSJ decomposition
of its fundamental group.
"""

__version__ = "0.1.0"

from .analysis import (
    BudgetExceeded,
    GbsComponent,
    NotReduced,
    OneEndedVerdict,
    TreeBall,
    TreeShape,
    ball,
    classify_tree,
    gbs_components,
    is_one_ended,
    is_trivial_Z,
)
from .canonical import canonical_form, canonical_graph, fingerprint, isomorphic
from .certifier import Certificate, certify_jsj, universality_preconditions
from .covers import (
    CoverDescriptor,
    CoveredGraph,
    DegenerateSurface,
    GluedSurface,
    NotEligible,
    Orientability,
    delta_subgraph,
    four_cover,
    glued_surface,
    hat_delta,
)
from .gogfile import ParseError, graph_to_dot, parse, print_graph
from .graphs import (
    Attachment,
    Edge,
    End,
    GraphOfGroups,
    QbsError,
    SurfaceData,
    Vertex,
    Violation,
    build_graph,
    cyclic_end,
    euler_characteristic,
    label,
    surface_end,
    validate,
)
from .moves import (
    CollapseSite,
    LoopEdge,
    MoveError,
    NotCyclic,
    NotDivisible,
    NotDivisor,
    OneEdgeSplitting,
    ReduceResult,
    SurfaceEndFold,
    UnsupportedCollapse,
    certify_unfolded,
    collapse,
    expand,
    find_collapses,
    fold,
    is_reduced,
    one_edge_splitting,
    reduce,
)
from .presentation import (
    HomologyDescriptor,
    Presentation,
    abelianization,
    exponent_matrix,
    homology,
    presentation,
    spanning_tree,
)
from .snf import smith_normal_form
