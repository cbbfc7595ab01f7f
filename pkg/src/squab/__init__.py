"""squab: linear-time erasure benchmarking for generalized surface codes."""

from .cellulation import (
    BoundaryClass,
    DualSurface,
    Edge,
    Face,
    InvalidSurfaceError,
    Surface,
    ValidationReport,
    Vertex,
    Violation,
    derive_dual,
    euler_characteristic,
    filtered_components,
    validate,
)
from .fileio import CellulationDocument, ParseError, load, load_document, save
from .generators import HoleSpec, PlanarSpec, gen_bravyi_kitaev, gen_planar, gen_toric
from .homology import (
    BoundaryMaps,
    ErasurePattern,
    Verdict,
    boundary_maps,
    gf2_rank,
    induced_h1,
    is_correctable,
    logical_qubit_count,
    oracle_h1,
)

__version__ = "0.1.0"

__all__ = [
    "BoundaryClass",
    "BoundaryMaps",
    "CellulationDocument",
    "DualSurface",
    "Edge",
    "ErasurePattern",
    "Face",
    "HoleSpec",
    "InvalidSurfaceError",
    "ParseError",
    "PlanarSpec",
    "Surface",
    "ValidationReport",
    "Verdict",
    "Vertex",
    "Violation",
    "boundary_maps",
    "derive_dual",
    "euler_characteristic",
    "filtered_components",
    "gen_bravyi_kitaev",
    "gen_planar",
    "gen_toric",
    "gf2_rank",
    "induced_h1",
    "is_correctable",
    "load",
    "load_document",
    "logical_qubit_count",
    "oracle_h1",
    "save",
    "validate",
]
