"""Moments of the radial weights ``r^t exp(-c/r)`` on (0, 1).

``M(alpha) = int_0^1 r^alpha r^t exp(-c/r) dr``. With ``c = 1, t = 0`` this
is the classical ``I(alpha)``; the substitution ``x = c/r`` turns it into
``c^(alpha+t+1) Gamma(-alpha-t-1, c)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import DivergenceError, DomainError
from .numerics import (
    LogReal,
    log_gamma,
    lower_incomplete_gamma_log,
    upper_incomplete_gamma_log,
)

__all__ = [
    "RadialWeight",
    "MomentQuery",
    "LAMBDA",
    "LAMBDA_TILDE",
    "UNWEIGHTED",
    "moment",
    "exp_moment",
    "recurrence_defect",
    "asymptotic_pos_probe",
    "asymptotic_neg_probe",
    "monomial_p_norm",
]

TWO_PI = 2.0 * math.pi
INV_E = math.exp(-1.0)


@dataclass(frozen=True)
class RadialWeight:
    """The weight ``nu(r) = r^t exp(-c/r)`` on (0, 1), ``c >= 0``."""

    t: float = 0.0
    c: float = 1.0

    def __post_init__(self):
        if not self.c >= 0 or not math.isfinite(self.c):
            raise DomainError(f"weight scale c must be finite and >= 0, got {self.c!r}")
        if not math.isfinite(self.t):
            raise DomainError(f"weight exponent t must be finite, got {self.t!r}")

    @classmethod
    def polynomial(cls, t: float) -> RadialWeight:
        return cls(t=t, c=0.0)

    @classmethod
    def hinf_fiber(cls, m: int, p: float = 2.0) -> RadialWeight:
        """Weight left on the ``z1`` disc after integrating ``|z2|^(mp)`` over
        the fiber ``|z2| < exp(-1/|z1|)`` (up to the factor ``2 pi/(mp+2)``)."""
        return cls(t=0.0, c=m * p + 2.0)

    @property
    def is_exponential(self) -> bool:
        return self.c > 0

    def admits(self, alpha: float) -> bool:
        """Whether ``M(alpha)`` is finite."""
        return self.c > 0 or alpha + self.t > -1

    def log_density(self, r: float) -> float:
        return self.t * math.log(r) - (self.c / r if self.c else 0.0)

    def __call__(self, r: float) -> float:
        return math.exp(self.log_density(r))


LAMBDA = RadialWeight(0.0, 1.0)
LAMBDA_TILDE = RadialWeight(2.0, 1.0)
UNWEIGHTED = RadialWeight(0.0, 0.0)


@dataclass(frozen=True)
class MomentQuery:
    weight: RadialWeight
    alpha: float

    def evaluate(self) -> LogReal:
        return moment(self.weight, self.alpha)


@lru_cache(maxsize=65536)
def _moment_cached(t: float, c: float, alpha: float) -> LogReal:
    order = alpha + t
    if c == 0:
        if order <= -1:
            raise DivergenceError(
                f"moment of r^{order:g} diverges at 0 (needs alpha + t > -1)"
            )
        return LogReal.exp(-math.log1p(order))
    gamma = upper_incomplete_gamma_log(-order - 1.0, c)
    return LogReal.exp((order + 1.0) * math.log(c) + gamma.logmag)


def moment(weight: RadialWeight, alpha: float) -> LogReal:
    """``M(alpha) = int_0^1 r^alpha nu(r) dr`` as a LogReal.

    Depends on ``alpha`` and ``t`` only through ``alpha + t``, so shifting
    the exponent of the weight is the same computation as shifting ``alpha``.
    Raises DivergenceError when ``c = 0`` and ``alpha + t <= -1``.
    """
    return _moment_cached(float(weight.t), float(weight.c), float(alpha))


def exp_moment(alpha: float) -> LogReal:
    """``I(alpha) = int_0^1 r^alpha exp(-1/r) dr``."""
    return moment(LAMBDA, alpha)


def recurrence_defect(alpha: float) -> float:
    """``(alpha+1) I(alpha) + I(alpha-1) - e^-1``, which vanishes identically.

    For ``alpha < -1`` both moments are upper incomplete gammas of positive
    order, ``Gamma(s, 1) = Gamma(s) - gamma(s, 1)``, and the complete parts
    cancel exactly (``Gamma(s+1) = s Gamma(s)``). The defect is then formed
    from the lower parts so that moments of size ``Gamma(100)`` do not swamp
    an absolute residual of order ``e^-1``.
    """
    if alpha == -1:
        raise DomainError("recurrence defect is undefined at alpha = -1")
    alpha = float(alpha)
    if alpha < -1:
        s = -alpha - 1.0
        low_s = lower_incomplete_gamma_log(s, 1.0)
        low_s1 = lower_incomplete_gamma_log(s + 1.0, 1.0)
        # (alpha+1) I(alpha) + I(alpha-1) = s*gamma(s,1) - gamma(s+1,1)
        return math.fsum([s * low_s.to_real(), -low_s1.to_real(), -INV_E])
    lhs = exp_moment(alpha).to_real() * (alpha + 1.0)
    return math.fsum([lhs, exp_moment(alpha - 1.0).to_real(), -INV_E])


def asymptotic_pos_probe(alpha: float) -> float:
    """``(alpha + 1) I(alpha)``, which tends to ``e^-1`` as ``alpha -> inf``."""
    if not alpha > 0:
        raise DomainError("asymptotic_pos_probe needs alpha > 0")
    return exp_moment(alpha).to_real() * (alpha + 1.0)


def asymptotic_neg_probe(alpha: float) -> float:
    """``I(-alpha) / Gamma(alpha - 1)``, which tends to 1 as ``alpha -> inf``."""
    if not alpha > 2:
        raise DomainError("asymptotic_neg_probe needs alpha > 2")
    return math.exp(exp_moment(-alpha).logmag - log_gamma(alpha - 1.0))


def monomial_p_norm(weight: RadialWeight, n: int, p: float) -> LogReal:
    """``int_{D*} |z^n|^p nu(|z|) dA(z) = 2 pi M(np + 1)``."""
    if not p > 0:
        raise DomainError("p must be positive")
    return moment(weight, n * p + 1.0) * TWO_PI
