"""Exact HE11 mode of a step-index fiber: solver, fields, profiles and exports."""

__version__ = "0.1.0"

from .errors import (
    ConfigError,
    DomainError,
    ExportError,
    FiberModeError,
    InvalidSpecError,
    NoRootError,
    SingularityError,
)
from .field_model import (
    FieldVector,
    PolarizationSample,
    Sense,
    boundary_fields,
    boundary_jump,
    ellipticity_rotating,
    field_quasilinear,
    field_rotating,
    intensity_lp01,
    intensity_quasilinear,
    intensity_rotating,
    orientation_angle,
)
from .mode_solver import (
    FiberSpec,
    ModeShape,
    ModeSolution,
    Normalization,
    Polarization,
    eigenvalue_residual,
    mode_shape,
    single_mode_max_radius_ratio,
    solve_fundamental,
    v_number,
)
