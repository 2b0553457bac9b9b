from ._core import (
    AuditError,
    Graph,
    GraphError,
    JsonFormatError,
    ModelError,
    PartitionError,
    approximate_distortion,
    build_partition,
    compute_constants,
    distance,
    find_dispersed_tuple,
    generate,
    has_minor,
    is_connected,
    quasi_isometry,
    set_distance,
    theta_from_dispersion,
    verify_fat_model,
    verify_partition,
)

__all__ = [
    "AuditError",
    "Graph",
    "GraphError",
    "JsonFormatError",
    "ModelError",
    "PartitionError",
    "approximate_distortion",
    "build_partition",
    "compute_constants",
    "distance",
    "find_dispersed_tuple",
    "generate",
    "has_minor",
    "is_connected",
    "quasi_isometry",
    "set_distance",
    "theta_from_dispersion",
    "verify_fat_model",
    "verify_partition",
]
