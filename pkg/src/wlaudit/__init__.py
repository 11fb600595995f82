"""Color-refinement auditing of graph classification datasets.

Build graphs (or parse/fetch TU-format datasets), refine node colors with an
exact dataset-global interner, decide exact isomorphism, and compute the
dataset metrics: identifiable fractions, unique-graph fractions, majority-vote
accuracy upper bounds, and motif-histogram baselines.
"""

from . import errors
from .audit import (
    AuditReport,
    AuditRow,
    SignatureGrouping,
    fmt_pct,
    group_by_signature,
    identifiable_fraction,
    k0_baseline,
    run_audit,
    upper_bound_accuracy,
)
from .graph import Graph, build_graph, degree_sequence
from .iso import (
    IsoClassIndex,
    WlTestResult,
    exact_isomorphic,
    isomorphism_classes,
    isomorphism_witness,
    unique_fraction,
    wl_test,
)
from .kernels import BACKEND
from .motifs import MOTIF_FIELDS, MotifVector, motif_identifiability, motif_vector
from .refine import (
    ColorTable,
    Coloring,
    WlSignature,
    dataset_signatures,
    initial_coloring,
    refine_step,
    signature,
    stable_iteration,
    to_vector,
)
from .tudata import (
    Dataset,
    FetchConfig,
    canonical_dataset_name,
    fetch_dataset,
    parse_tu_dataset,
    strip_node_labels,
)

__version__ = "0.1.0"

__all__ = [
    "AuditReport", "AuditRow", "BACKEND", "ColorTable", "Coloring", "Dataset",
    "FetchConfig", "Graph", "IsoClassIndex", "MOTIF_FIELDS", "MotifVector",
    "SignatureGrouping", "WlSignature", "WlTestResult", "build_graph",
    "canonical_dataset_name", "dataset_signatures", "degree_sequence",
    "errors", "exact_isomorphic",
    "fetch_dataset", "fmt_pct", "group_by_signature", "identifiable_fraction",
    "initial_coloring", "isomorphism_classes", "isomorphism_witness",
    "k0_baseline", "motif_identifiability", "motif_vector", "parse_tu_dataset",
    "refine_step", "run_audit", "signature", "stable_iteration",
    "strip_node_labels", "to_vector", "unique_fraction", "upper_bound_accuracy",
    "wl_test",
]
