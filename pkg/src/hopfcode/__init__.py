"""Spherical codes in dimensions 2^k built from Hopf foliations of the sphere."""
from .channel import SimConfig, SimReport, simulate, timing_probe
from .decoder import (
    REFINED,
    UNREFINED,
    DecodeConfig,
    DecodeResult,
    angles_from_point,
    decode,
    decode4,
    decode_batch,
    decode_index,
    decode_ml,
    decode_ml_batch,
)
from .density import (
    DensityReport,
    asymptotic_cardinality,
    asymptotic_center_density,
    ball_volume,
    binary_rate,
    cap_area,
    cgc_bound,
    code_density,
    density_report,
    doubled_density,
    sphere_surface,
)
from .errors import DomainError, ResourceError
from .foliation import LeafScheme, leaf_angles, leaf_count, leaf_distance, minimal_leaf_separation
from .schf import (
    CodeSpec,
    CodeTables,
    Codeword,
    build_tables,
    cardinality,
    cardinality_modified,
    codebook,
    encode,
    enumerate_codewords,
)
from .torus4 import TorusLayout, circles_per_torus, points_per_circle, torus_layout, torus_points

__version__ = "0.1.0"
