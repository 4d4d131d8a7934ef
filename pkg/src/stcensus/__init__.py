"""Square-tiled surface census and Siegel-Veech counting.

Exact closed formulas for strata volumes and c_area, an exact two-engine
census of square-tiled surfaces, volume extrapolation, and geodesic counting
on the census surfaces.
"""
from .exact import ExactReal
from .origami import Cylinder, Origami, component_of, is_hyperelliptic
from .spin import spin_parity
from .strata import (
    Component,
    EpsilonRecord,
    Stratum,
    carea_hyperelliptic_minimal,
    carea_hyperelliptic_pair,
    complete_with_ones,
    components_of,
    conjectural_volume,
    hyperelliptic_volume_asymptotic,
    hyperelliptic_volume_minimal,
    hyperelliptic_volume_pair,
    labeling_factor,
    lyapunov_sum,
    parse_stratum,
    partitions_of,
    strata_of_genus,
    sv_conjecture_value,
)

__version__ = "0.1.0"

__all__ = [
    "Component",
    "Cylinder",
    "EpsilonRecord",
    "ExactReal",
    "Origami",
    "Stratum",
    "carea_hyperelliptic_minimal",
    "carea_hyperelliptic_pair",
    "complete_with_ones",
    "component_of",
    "components_of",
    "conjectural_volume",
    "hyperelliptic_volume_asymptotic",
    "hyperelliptic_volume_minimal",
    "hyperelliptic_volume_pair",
    "is_hyperelliptic",
    "labeling_factor",
    "lyapunov_sum",
    "parse_stratum",
    "partitions_of",
    "spin_parity",
    "strata_of_genus",
    "sv_conjecture_value",
    "__version__",
]
