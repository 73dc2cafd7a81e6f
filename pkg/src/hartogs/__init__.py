"""Weighted Bergman kernels and L^p projection probes on Hartogs-type domains."""

from .errors import ConvergenceError, DivergenceError, DomainError
from .moments import LAMBDA, LAMBDA_TILDE, UNWEIGHTED, RadialWeight, moment
from .numerics import LogReal

__version__ = "0.1.0"

__all__ = [
    "ConvergenceError",
    "DivergenceError",
    "DomainError",
    "LAMBDA",
    "LAMBDA_TILDE",
    "UNWEIGHTED",
    "LogReal",
    "RadialWeight",
    "moment",
    "__version__",
]
