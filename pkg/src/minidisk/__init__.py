"""minidisk: an explicit family of embedded minimal disks, pinched-domain
construction, with a certification suite for its curvature concentration,
embeddedness, spiral and flattening behaviour, plus mesh export tooling.

Hot kernels run on a compiled Cython lane when available, with a NumPy
fallback selected at import (see :mod:`minidisk._kernels`).
"""

__version__ = "0.1.0"

from ._kernels import BACKEND as KERNEL_BACKEND
from .domain import DomainPoint, DomainRangeError, DomainSpec, contains, pole_positions, y_boundary
from .immersion import (
    ImmersionPoint,
    SliceCurve,
    boundary_separation,
    gauss_curvature,
    horizontal_slice,
    immerse,
    tangent_frame,
    unit_normal,
)
from .quadrature import IntegralResult, IntegrandEvaluationError, QuadratureConvergenceError, integrate
from .verification import VerificationReport, VerifyConfig, run_report
from .weierstrass import (
    HolomorphicSample,
    PoleSingularityError,
    angle_rate,
    axis_turn,
    axis_turn_rate,
    evaluate,
)

__all__ = [
    "KERNEL_BACKEND",
    "__version__",
    "DomainPoint",
    "DomainRangeError",
    "DomainSpec",
    "contains",
    "pole_positions",
    "y_boundary",
    "ImmersionPoint",
    "SliceCurve",
    "boundary_separation",
    "gauss_curvature",
    "horizontal_slice",
    "immerse",
    "tangent_frame",
    "unit_normal",
    "IntegralResult",
    "IntegrandEvaluationError",
    "QuadratureConvergenceError",
    "integrate",
    "VerificationReport",
    "VerifyConfig",
    "run_report",
    "HolomorphicSample",
    "PoleSingularityError",
    "angle_rate",
    "axis_turn",
    "axis_turn_rate",
    "evaluate",
]
