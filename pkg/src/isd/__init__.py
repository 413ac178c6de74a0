"""Exact-arithmetic toolkit for state-to-reflection information models:
the sextuple data model, eleven measures, stage dynamics, documents, and
verification batteries.
"""

from ._version import __version__
from .errors import (
    ChainMismatchError,
    CombineConflictError,
    ConfigShapeError,
    DocumentError,
    DocumentInvariantError,
    DocumentParseError,
    EmptyInformationError,
    ISDError,
    IncompleteReflectionError,
    InvalidInformationError,
    NonInvertibleError,
    NotACopyError,
    NotEquivalenceError,
    UnknownScenarioError,
    UnresolvedReferenceError,
    ZeroTargetMeasureError,
)
from .timeset import TimeSet
from .values import EntityId, Realm, Value, objective, subjective
from .model import (
    Atom,
    Information,
    RawMapping,
    ReflectionElement,
    SerialChain,
    StateElement,
    Violation,
    atoms,
    check_chain,
    check_link,
    collapse_chain,
    combine,
    compose,
    invert,
    is_copy,
    is_reducible,
    is_sub_information,
    reduction_map,
    validate,
)
from .measures import (
    AtomWeighting,
    ExtendedRate,
    MeasureAssignment,
    Metric,
    Relation,
    aggregation,
    coverage,
    delay,
    distortion,
    duration,
    granularity,
    induce_relation,
    mismatch,
    sampling_rate,
    scope,
    transport_relation,
    variety,
    volume,
)
from .dynamics import (
    EFFICACY_MATRIX,
    MeasureKind,
    MeasureProfile,
    MeasureTransform,
    PropagationResult,
    Shape,
    StageKind,
    StageSpec,
    SystemConfig,
    classify_config,
    config_efficacies,
    propagate,
    stage_efficacies,
    validate_config,
)
from .document import (
    BoundRelation,
    ModelDocument,
    NamedChain,
    emit_document,
    load_document,
    loads_document,
    save_document,
)
from .scenario import build_news_pipeline, run_scenario
from .verify import run_verify

__all__ = [
    "__version__",
    "ISDError",
    "InvalidInformationError",
    "NonInvertibleError",
    "ChainMismatchError",
    "CombineConflictError",
    "EmptyInformationError",
    "NotEquivalenceError",
    "ZeroTargetMeasureError",
    "NotACopyError",
    "IncompleteReflectionError",
    "ConfigShapeError",
    "UnknownScenarioError",
    "DocumentError",
    "DocumentParseError",
    "DocumentInvariantError",
    "UnresolvedReferenceError",
    "TimeSet",
    "EntityId",
    "Realm",
    "Value",
    "objective",
    "subjective",
    "StateElement",
    "ReflectionElement",
    "Information",
    "RawMapping",
    "Violation",
    "Atom",
    "SerialChain",
    "validate",
    "is_reducible",
    "invert",
    "reduction_map",
    "check_link",
    "check_chain",
    "compose",
    "collapse_chain",
    "is_sub_information",
    "combine",
    "atoms",
    "is_copy",
    "ExtendedRate",
    "MeasureAssignment",
    "AtomWeighting",
    "Relation",
    "Metric",
    "volume",
    "delay",
    "scope",
    "granularity",
    "variety",
    "transport_relation",
    "induce_relation",
    "duration",
    "sampling_rate",
    "aggregation",
    "coverage",
    "distortion",
    "mismatch",
    "StageKind",
    "MeasureKind",
    "EFFICACY_MATRIX",
    "stage_efficacies",
    "Shape",
    "classify_config",
    "MeasureTransform",
    "StageSpec",
    "SystemConfig",
    "config_efficacies",
    "validate_config",
    "MeasureProfile",
    "PropagationResult",
    "propagate",
    "ModelDocument",
    "BoundRelation",
    "NamedChain",
    "load_document",
    "loads_document",
    "emit_document",
    "save_document",
    "build_news_pipeline",
    "run_scenario",
    "run_verify",
]
