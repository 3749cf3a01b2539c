from .integrals import ControlledTable, SmoothFunction, controlled_of_function, rough_integrate
from .lifts import Lift, LiftKind, build_lift
from .sampling import GridPath, PathKind, ito_sum, sample_bm, sample_fbm

__all__ = [
    "ControlledTable",
    "GridPath",
    "Lift",
    "LiftKind",
    "PathKind",
    "SmoothFunction",
    "build_lift",
    "controlled_of_function",
    "ito_sum",
    "rough_integrate",
    "sample_bm",
    "sample_fbm",
]
