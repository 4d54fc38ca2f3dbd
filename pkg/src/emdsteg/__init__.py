"""EMD-family steganography workbench.

Embedding/extraction for the EMD family of pixel-group schemes, image
quality and embedding-efficiency metrics, and exact computation of the
efficiency upper bound with an enumeration oracle.
"""

from .bound import (
    BoundPoint,
    BoundQuery,
    BoundResult,
    CubicPoly,
    REFERENCE_BOUND_POLY,
    bound_counts,
    bound_point,
    count_states,
    cubic_eval,
    cubic_fit,
    distance_to_curve,
    enumerate_oracle,
    frontier,
    sum_changes_linear,
    sum_changes_squared,
)
from .image import (
    GrayImage,
    bits_to_symbols,
    clamp_for_scheme,
    load_pgm,
    partition_groups,
    save_pgm,
    symbols_to_bits,
)
from .metrics import (
    DistortionProfile,
    MetricsReport,
    analyze_pair,
    capacity,
    mse,
    mse_from_psnr,
    proposed_efficiency,
    psnr,
    relative_payload,
    standard_efficiency,
    theoretical_distortion,
)
from .rng import seeded_bits
from .schemes import (
    ChangeConstraint,
    SchemeSpec,
    SCHEME_NAMES,
    embed_group,
    embed_message,
    extract_message,
    extraction_value,
    make_scheme,
    solver_embed_group,
)

__version__ = "0.1.0"

__all__ = [
    "BoundPoint",
    "BoundQuery",
    "BoundResult",
    "ChangeConstraint",
    "CubicPoly",
    "DistortionProfile",
    "GrayImage",
    "MetricsReport",
    "REFERENCE_BOUND_POLY",
    "SCHEME_NAMES",
    "SchemeSpec",
    "analyze_pair",
    "bits_to_symbols",
    "bound_counts",
    "bound_point",
    "capacity",
    "clamp_for_scheme",
    "count_states",
    "cubic_eval",
    "cubic_fit",
    "distance_to_curve",
    "embed_group",
    "embed_message",
    "enumerate_oracle",
    "extract_message",
    "extraction_value",
    "frontier",
    "load_pgm",
    "make_scheme",
    "mse",
    "mse_from_psnr",
    "partition_groups",
    "proposed_efficiency",
    "psnr",
    "relative_payload",
    "save_pgm",
    "seeded_bits",
    "solver_embed_group",
    "standard_efficiency",
    "sum_changes_linear",
    "sum_changes_squared",
    "symbols_to_bits",
    "theoretical_distortion",
]
