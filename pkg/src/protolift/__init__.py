"""LDPC code construction by iterated 2-lifts of protograph Tanner graphs.

The toolkit builds codes as chains of signed 2-lifts, analyzes their
stopping-set spectra and vertex expansion, and verifies error-floor
behaviour with an exact BEC peeling decoder, an exhaustive small-graph
FER oracle, and reproducible Monte Carlo simulation.
"""

from .alist import (
    graph_from_json_dict,
    graph_to_json_dict,
    read_alist,
    read_graph_json,
    write_alist,
    write_graph_json,
)
from .channel import (
    FloorEstimate,
    PeelResult,
    SimResult,
    batch_peel,
    curve_csv_text,
    curve_to_json_dict,
    exact_fer,
    exact_stuck_counts,
    fer_from_stuck_counts,
    floor_estimate,
    peel_decode,
    simulate_bec,
    write_curve_csv,
)
from .design import (
    CodeArtifact,
    StageMetrics,
    artifact_from_json_dict,
    artifact_hash,
    artifact_to_json_dict,
    construct_code,
    guided_2lift,
    read_artifact_json,
    write_artifact_json,
)
from .errors import (
    BudgetExceeded,
    FormatError,
    InvalidMatrix,
    InvalidNode,
    ProtoliftError,
    ProtographRejected,
    SignLengthMismatch,
)
from .expansion import (
    CriteriaConfig,
    CriterionResult,
    ExpansionProfile,
    Verdict,
    config_from_dict,
    config_hash,
    config_to_json_dict,
    expansion_profile,
    load_criteria,
    profile_to_json_dict,
    satisfies,
    verdict_from_json_dict,
    verdict_to_json_dict,
)
from .gf2 import gf2_matvec, gf2_nullspace, gf2_rank, gf2_rref
from .graph import (
    INFINITE_GIRTH,
    TannerGraph,
    from_multiplicity_matrix,
    girth,
    node_degrees,
    to_parity_matrix,
)
from .lift import (
    DescriptionCost,
    LiftSpec,
    NodeLabel,
    SignVector,
    apply_2lift,
    apply_lift_spec,
    derive_rng,
    description_bits,
    description_cost,
    lift_spec_from_json_dict,
    lift_spec_to_json_dict,
    lifted_node_id,
    node_label,
    pack_bits,
    project,
    project_edge,
    random_sign_vector,
    unpack_bits,
)
from .stopping import (
    StoppingReport,
    codeword_support_check,
    enumerate_stopping_sets,
    is_stopping_set,
    report_to_json_dict,
    stopping_distance,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded",
    "CodeArtifact",
    "CriteriaConfig",
    "CriterionResult",
    "DescriptionCost",
    "ExpansionProfile",
    "FloorEstimate",
    "FormatError",
    "INFINITE_GIRTH",
    "InvalidMatrix",
    "InvalidNode",
    "LiftSpec",
    "NodeLabel",
    "PeelResult",
    "ProtoliftError",
    "ProtographRejected",
    "SignLengthMismatch",
    "SignVector",
    "SimResult",
    "StageMetrics",
    "StoppingReport",
    "TannerGraph",
    "Verdict",
    "apply_2lift",
    "apply_lift_spec",
    "artifact_from_json_dict",
    "artifact_hash",
    "artifact_to_json_dict",
    "batch_peel",
    "codeword_support_check",
    "config_from_dict",
    "config_hash",
    "config_to_json_dict",
    "construct_code",
    "curve_csv_text",
    "curve_to_json_dict",
    "derive_rng",
    "description_bits",
    "description_cost",
    "enumerate_stopping_sets",
    "exact_fer",
    "exact_stuck_counts",
    "expansion_profile",
    "fer_from_stuck_counts",
    "floor_estimate",
    "from_multiplicity_matrix",
    "gf2_matvec",
    "gf2_nullspace",
    "gf2_rank",
    "gf2_rref",
    "girth",
    "graph_from_json_dict",
    "graph_to_json_dict",
    "guided_2lift",
    "is_stopping_set",
    "lift_spec_from_json_dict",
    "lift_spec_to_json_dict",
    "lifted_node_id",
    "load_criteria",
    "node_degrees",
    "node_label",
    "pack_bits",
    "peel_decode",
    "profile_to_json_dict",
    "project",
    "project_edge",
    "random_sign_vector",
    "read_alist",
    "read_artifact_json",
    "read_graph_json",
    "report_to_json_dict",
    "satisfies",
    "simulate_bec",
    "stopping_distance",
    "to_parity_matrix",
    "unpack_bits",
    "verdict_from_json_dict",
    "verdict_to_json_dict",
    "write_alist",
    "write_artifact_json",
    "write_curve_csv",
    "write_graph_json",
]
