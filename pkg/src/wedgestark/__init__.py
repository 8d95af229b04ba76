"""Ground state and variational Stark shift of an electron in a wedge-shaped
("slice of cake") quantum box with hard walls."""

__version__ = "0.1.0"

from .energy import GroundState, TrialEvaluation, evaluate_trial, ground_state, mean_dipole, trial_factor
from .model import FieldSpec, UnitScales, WedgeGeometry, unit_scales, validate_geometry
from .oracle import PolarGrid, fd_stark_shift
from .sweep import SweepSpec, SweepTable, compare_apertures, run_sweep
from .variational import VariationalResult, stark_shift

__all__ = [
    "FieldSpec",
    "GroundState",
    "PolarGrid",
    "SweepSpec",
    "SweepTable",
    "TrialEvaluation",
    "UnitScales",
    "VariationalResult",
    "WedgeGeometry",
    "compare_apertures",
    "evaluate_trial",
    "fd_stark_shift",
    "ground_state",
    "mean_dipole",
    "run_sweep",
    "stark_shift",
    "trial_factor",
    "unit_scales",
    "validate_geometry",
]
