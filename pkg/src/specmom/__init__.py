"""Random-walk polynomial families and generalized-momentum power iterations.

The package builds polynomial families from mean-zero integer random
walks, characterizes the cusped regions of the complex plane where they
stay bounded, and turns their rapid growth outside those regions into
static and dynamic momentum accelerations of the power method for
non-symmetric matrices.
"""

__version__ = "0.1.0"

from .eigensolve import (  # noqa: F401
    DynamicMomentumPower,
    PowerIteration,
    StaticMomentumPower,
    dynamic_momentum,
    power_iterate,
    relative_error,
    static_momentum,
)
from .prob import ProbVector, hypocycloid, mix, parse_prob, validate  # noqa: F401
