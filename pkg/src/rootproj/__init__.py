"""Exact-arithmetic projections of root systems and subsystem detection."""

from .catalog import (RealizedRootSystem, Target, TypeLabel, build,
                      build_from_name, cartan_subtype, detection_targets,
                      parse_label, parse_target)
from .classify import (ClassicalPrediction, ClassificationRecord,
                       classical_predicate, classify_theta, enumerate_records,
                       oracle_equivalence, verify_paper)
from .detect import (ClosureCertificate, ClosureFailure, DetectionReport,
                     classify_max_rank, find_subsystem, match_type,
                     pairing_matrix, reflection_closure, revalidate)
from .linalg import dot, invert, mat_vec, matrix, vector
from .projection import (ProjectionResult, ThetaProjector,
                         expansion_over_delta_theta, project, project_all)

__all__ = [
    "RealizedRootSystem", "Target", "TypeLabel", "build", "build_from_name",
    "cartan_subtype", "detection_targets", "parse_label", "parse_target",
    "ClassicalPrediction", "ClassificationRecord", "classical_predicate",
    "classify_theta", "enumerate_records", "oracle_equivalence", "verify_paper",
    "ClosureCertificate", "ClosureFailure", "DetectionReport",
    "classify_max_rank", "find_subsystem", "match_type", "pairing_matrix",
    "reflection_closure", "revalidate",
    "dot", "invert", "mat_vec", "matrix", "vector",
    "ProjectionResult", "ThetaProjector", "expansion_over_delta_theta",
    "project", "project_all",
]

__version__ = "0.1.0"
