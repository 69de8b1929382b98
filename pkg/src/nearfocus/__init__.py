"""Near-field focusing analysis for finite linear arrays.

Models the exact spherical-wave channel between a centered uniform linear
array and a parallel observation strip, and builds on it: effective degrees
of freedom of the channel, sparse-spacing design, focusing-gain profiles
with a small-angle reference, focal-point scanning with lobe reporting, and
on-axis peak tracking.
"""

__version__ = "0.1.0"

from .model import (
    SPEED_OF_LIGHT,
    ArraySpec,
    ElementPattern,
    FocusScenario,
    Wave,
    centered_positions,
    element_positions,
    pattern_factor,
    wave_from_frequency,
)
from .field import (
    MIN_DISTANCE_FRACTION,
    ChannelMatrix,
    SingularDistanceError,
    channel_matrix,
    conjugate_excitation,
    field_at,
    greens,
)
from .dof import (
    DegenerateChannelError,
    DofResult,
    SpacingSweep,
    dof_sweep,
    effective_dof,
    optimal_spacing,
)
from .focusing import (
    LOBE_THRESHOLD_DB,
    AxialProfile,
    GainProfile,
    ScanReport,
    axial_profile,
    gain_exact,
    gain_paraxial,
    null_offsets_analytic,
    scan_focal_points,
)
from .config import (
    EXPERIMENTS,
    ConfigError,
    ExperimentConfig,
    parse_config,
    serialize_config,
)
from .runner import ResultTable, run_experiment, write_summary, write_table

__all__ = [
    "SPEED_OF_LIGHT",
    "MIN_DISTANCE_FRACTION",
    "LOBE_THRESHOLD_DB",
    "EXPERIMENTS",
    "Wave",
    "ArraySpec",
    "ElementPattern",
    "FocusScenario",
    "ChannelMatrix",
    "DofResult",
    "SpacingSweep",
    "GainProfile",
    "ScanReport",
    "AxialProfile",
    "ExperimentConfig",
    "ResultTable",
    "ConfigError",
    "SingularDistanceError",
    "DegenerateChannelError",
    "wave_from_frequency",
    "centered_positions",
    "element_positions",
    "pattern_factor",
    "greens",
    "conjugate_excitation",
    "field_at",
    "channel_matrix",
    "effective_dof",
    "dof_sweep",
    "optimal_spacing",
    "gain_exact",
    "gain_paraxial",
    "null_offsets_analytic",
    "scan_focal_points",
    "axial_profile",
    "parse_config",
    "serialize_config",
    "run_experiment",
    "write_table",
    "write_summary",
]
