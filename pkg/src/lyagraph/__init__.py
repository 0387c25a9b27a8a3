"""Realizability of abstract Lyapunov graphs as Smale flows on S2xS1 and S3."""

from .checker import (
    CheckReport,
    ConditionVerdict,
    SftClass,
    SftVertexClass,
    Target,
    Witness,
    check,
    check_condition1,
    check_condition2,
    check_condition3_s2xs1,
    check_poincare_hopf,
    classify_sft_vertex,
)
from .enumeration import (
    BudgetExceededError,
    EnumerationBounds,
    count_realizable,
    default_label_pool,
    enumerate_graphs,
    expected_yield,
    random_graph,
)
from .graph import (
    AttractingOrbit,
    DegreeProfile,
    Edge,
    LyapunovGraph,
    RepellingOrbit,
    Singularity,
    StructureReport,
    SuspensionSFT,
    Vertex,
    VertexLabel,
    cycle_rank,
    degree_profile,
    reverse,
    validate_structure,
)
from .invariants import (
    MatrixInvariantReport,
    invariant_report,
    is_irreducible,
    is_permutation,
    k_invariant,
)
from .io import (
    GraphDocument,
    ParseError,
    parse_auto,
    parse_dsl,
    parse_json,
    render_dsl,
    render_json,
    render_report,
)
from .linalg import (
    F2Matrix,
    IntMatrix,
    SmithForm,
    det_abs,
    f2_kernel_dim,
    f2_rank,
    mod2_reduce,
    smith_normal_form,
)

__all__ = [name for name in dir() if not name.startswith("_")]
