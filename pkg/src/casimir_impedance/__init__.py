"""Casimir pressure between planar walls described by surface impedances."""

__version__ = "0.1.0"

from .errors import CasimirError, ConvergenceError, ModelError, SchemaError  # noqa: E402
from .force import (  # noqa: E402
    ForceConfig,
    ForceResult,
    Route,
    SweepTable,
    casimir_ideal,
    compute_force,
    force_imaginary_axis,
    force_real_contour,
    percent_difference,
    sweep,
)
from .materials import (  # noqa: E402
    CONSTANTS,
    ComplexFrequency,
    Material,
    get_material,
    load_materials,
)
from .response import ModePoint, Polarization, WallSpec  # noqa: E402

__all__ = [
    "CONSTANTS",
    "CasimirError",
    "ComplexFrequency",
    "ConvergenceError",
    "ForceConfig",
    "ForceResult",
    "Material",
    "ModePoint",
    "ModelError",
    "Polarization",
    "Route",
    "SchemaError",
    "SweepTable",
    "WallSpec",
    "casimir_ideal",
    "compute_force",
    "force_imaginary_axis",
    "force_real_contour",
    "get_material",
    "load_materials",
    "percent_difference",
    "sweep",
]
