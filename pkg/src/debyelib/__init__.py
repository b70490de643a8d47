"""Extended Debye functions, Debye-model thermodynamics and a small bracket-series engine."""

from .core import (
    DebyeEvaluation,
    DebyeParams,
    Method,
    debye_bernoulli_series,
    debye_dubinov_polylog,
    debye_large_x,
    debye_new_polylog,
    debye_oracle,
    debye_series_s1,
    debye_series_s2,
    evaluate,
)
from .errors import (
    BoundsError,
    ContinuationResidualError,
    ConvergenceError,
    DebyeError,
    DivergentTermError,
    DomainError,
    GammaPoleError,
    PoleError,
    SingularBandError,
    StructureError,
)
from .thermo import SolidModel, heat_capacity, internal_energy

__version__ = "0.1.0"
