"""Deterministic trust-lattice decision-support engine.

The library turns a claim corpus into an evidence lattice for a target
claim, scores every node under an agent's moral-foundation-weighted trust
policy, revises beliefs non-destructively when trusted information
contradicts them, flags bias patterns in how the lattice and the session
were built, and recommends ideologically diverse authorities. A CLI
(`mevir`) and a JSON-over-HTTP service expose the same operations.
"""

__version__ = "0.1.0"

from .foundations import FOUNDATION_NAMES, FoundationVector
from .model import (
    AgentProfile,
    Claim,
    CycleError,
    EvidenceEdge,
    SourceRecord,
    TrustAnchor,
    TrustLattice,
    TrustPolicy,
    Violation,
    WeightRule,
    default_policy,
    validate_lattice,
)
from .moral import Footprint, MoralLexicon, compute_footprint, moral_congruence, tokenize
from .elaboration import Budget, ClaimCorpus, UnknownClaimError, classify_anchor, elaborate
from .evaluation import (
    EvaluationResult,
    InvalidLatticeError,
    admissible,
    anchor_score,
    effective_edge_weight,
    evaluate,
)
from .revision import (
    EpistemicState,
    MergeError,
    NewInformation,
    ReinstateError,
    RetractionError,
    RevisionEntry,
    find_contradictions,
    minimal_retraction,
    reinstate,
    revise,
)
from .diagnostics import (
    BiasFlag,
    SessionEvent,
    SessionLog,
    detect_availability,
    detect_bandwagon,
    detect_confirmation,
    detect_halo,
    detect_overconfidence,
    diagnose,
    insularity,
)
from .recommend import recommend_authorities
from .bundle import Bundle, BundleError, bundle_hash, emit_bundle, parse_bundle
from .dot import export_dot

__all__ = [
    "__version__",
    "FOUNDATION_NAMES",
    "FoundationVector",
    "AgentProfile",
    "Claim",
    "CycleError",
    "EvidenceEdge",
    "SourceRecord",
    "TrustAnchor",
    "TrustLattice",
    "TrustPolicy",
    "Violation",
    "WeightRule",
    "default_policy",
    "validate_lattice",
    "Footprint",
    "MoralLexicon",
    "compute_footprint",
    "moral_congruence",
    "tokenize",
    "Budget",
    "ClaimCorpus",
    "UnknownClaimError",
    "classify_anchor",
    "elaborate",
    "EvaluationResult",
    "InvalidLatticeError",
    "admissible",
    "anchor_score",
    "effective_edge_weight",
    "evaluate",
    "EpistemicState",
    "MergeError",
    "NewInformation",
    "ReinstateError",
    "RetractionError",
    "RevisionEntry",
    "find_contradictions",
    "minimal_retraction",
    "reinstate",
    "revise",
    "BiasFlag",
    "SessionEvent",
    "SessionLog",
    "detect_availability",
    "detect_bandwagon",
    "detect_confirmation",
    "detect_halo",
    "detect_overconfidence",
    "diagnose",
    "insularity",
    "recommend_authorities",
    "Bundle",
    "BundleError",
    "bundle_hash",
    "emit_bundle",
    "parse_bundle",
    "export_dot",
]
