"""Polytope-enclosure perceptron classifiers and their one-gate-per-layer form.

The library builds a three-layer cut/AND/OR perceptron network that encloses
labeled point clusters in convex polytopes, lowers it into an equivalent deep
network with a single gate per layer and skip connections, and differentially
verifies that the two forms agree everywhere off the cut hyperplanes.
"""

from .chain_net import (
    ChainNetwork,
    ChainStats,
    ChainTrace,
    CombinerGate,
    CutGate,
    chain_or_module,
    chain_stats,
    choose_S,
    eval_chain,
    eval_chain_many,
    lower_to_chain,
)
from .dnf_net import (
    DnfNetwork,
    DnfTrace,
    LogicGate,
    build_dnf,
    eval_dnf,
    eval_dnf_many,
    make_and_gate,
    make_not_gate,
    make_or_gate,
)
from .errors import (
    CutnetsError,
    DatasetFormatError,
    DegenerateCut,
    DimensionMismatch,
    EmptyDataset,
    InputBoundExceeded,
    MarginTooSmall,
    NoPositiveClass,
    SchemaError,
    SeparationFailure,
    StraddlingCluster,
    UnsupportedVersion,
)
from .formats import (
    NetworkSpecDocument,
    document_from_synthesis,
    parse_dataset_csv,
    parse_networks,
    serialize_networks,
    serialize_report,
)
from .geometry import (
    Box,
    Cut,
    PolytopeSpec,
    bounding_box_cuts,
    box_cuts,
    convex_hull,
    convex_hull_cuts,
    cut_side,
    homogenize,
    input_bound,
    normalize_cut,
    orient_cut,
    point_in_polytope,
    points_in_polytope,
)
from .render import DecisionMap, rasterize, render_decision_map
from .synth import (
    LabeledDataset,
    SynthesisResult,
    build_polytopes,
    default_margin,
    group_positive,
    synthesize,
)
from .verify import (
    Disagreement,
    EquivalenceReport,
    GateCheckResult,
    accuracy,
    boundary_distance,
    boundary_distances,
    brute_force_gate_check,
    check_equivalence,
    default_epsilon,
    sample_points,
)

__version__ = "0.1.0"
