"""L^p test-family probes for weighted projections on the punctured disc.

The family ``f_k = z^(-jk) conj(z)^k`` has a one-mode projection
``B f_k = coeff * z^(-(j+1)k)``, so the ratio ``||B f_k||_p^p / ||f_k||_p^p``
reduces to four moments:

    M(-2jk+1)^p M(-(j+1)pk+1) / (M(-2(j+1)k+1)^p M(-(j-1)pk+1)).

Its logarithm grows linearly in ``k`` with slope ``rate_formula(j, p)`` for
exponential weights, which is the signature of unboundedness when the
slope is positive.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DivergenceError, DomainError
from .kernels import split_exponent
from .moments import LAMBDA, RadialWeight, moment
from .numerics import LogReal

__all__ = [
    "ProbeParams",
    "RatioExperimentRow",
    "Verdict",
    "ChenInterval",
    "projection_of_monomial",
    "test_family_indices",
    "test_ratio",
    "rate_formula",
    "rate_lower_bound",
    "divergence_verdict",
    "chen_interval",
    "chen_decompositions",
    "edholm_mcneal_interval",
]


@dataclass(frozen=True)
class ProbeParams:
    j: int
    k: int
    p: float
    weight: RadialWeight = LAMBDA

    def __post_init__(self):
        if self.j < 2:
            raise DomainError("j must be at least 2")
        if self.k < 1:
            raise DomainError("k must be at least 1")
        if not self.p > 1:
            raise DomainError("p must exceed 1")


@dataclass(frozen=True)
class RatioExperimentRow:
    params: ProbeParams
    log_ratio: float
    per_k_rate: float
    predicted_rate: float


def projection_of_monomial(weight: RadialWeight, j: int, k: int) -> tuple[int, LogReal]:
    """Project ``z^(-jk) conj(z)^k``: returns the surviving mode and its coefficient.

    Raises DivergenceError when the test function or its image is not in the
    weighted space (e.g. the unweighted disc).
    """
    mode = -(j + 1) * k
    # the test function itself must be square integrable
    moment(weight, -2.0 * (j - 1) * k + 1.0)
    coeff = moment(weight, -2.0 * j * k + 1.0) / moment(weight, 2.0 * mode + 1.0)
    return mode, coeff


def test_family_indices(j: int, k: int, p: float) -> tuple[float, float, float, float]:
    """Moment orders ``(a, b, c, d)`` of the ratio ``M(a)^p M(b) / (M(c)^p M(d))``."""
    return (
        -2.0 * j * k + 1.0,
        -(j + 1.0) * p * k + 1.0,
        -2.0 * (j + 1.0) * k + 1.0,
        -(j - 1.0) * p * k + 1.0,
    )


def test_ratio(params: ProbeParams, shift: float = 0.0) -> RatioExperimentRow:
    """Log of the test-family norm ratio; ``shift`` adds to every moment order."""
    j, k, p, weight = params.j, params.k, params.p, params.weight
    a, b, c, d = (x + shift for x in test_family_indices(j, k, p))
    log_ratio = math.fsum([
        p * moment(weight, a).logmag,
        moment(weight, b).logmag,
        -p * moment(weight, c).logmag,
        -moment(weight, d).logmag,
    ])
    return RatioExperimentRow(params, log_ratio, log_ratio / k, rate_formula(j, p))


# Mark as not-a-test for pytest collection when imported into test modules.
test_ratio.__test__ = False
test_family_indices.__test__ = False


def rate_formula(j: int, p: float) -> float:
    """Leading growth rate of ``ln(ratio)/k`` for exponential weights.

    ``2jp ln(j/(j+1)) + (j-1)p ln((j+1)/(j-1)) + 2p ln(p/2)``, from Stirling's
    formula applied to the four moments.
    """
    if j < 2:
        raise DomainError("j must be at least 2")
    if not p > 1:
        raise DomainError("p must exceed 1")
    return (
        2.0 * j * p * math.log(j / (j + 1.0))
        + (j - 1.0) * p * math.log((j + 1.0) / (j - 1.0))
        + 2.0 * p * math.log(p / 2.0)
    )


def rate_lower_bound(j: int, p: float) -> float:
    """``2p ln((p/2) / (1 + 1/j))``, positive once ``p > 2 + 2/j``."""
    return 2.0 * p * math.log((p / 2.0) / (1.0 + 1.0 / j))


@dataclass(frozen=True)
class Verdict:
    j: int
    p: float
    weight: RadialWeight
    k_max: int
    verdict: str  # diverges | contracts | inconclusive | structural-divergence | out-of-range
    slope: float | None = None
    intercept: float | None = None
    residual: float | None = None
    predicted_rate: float | None = None
    relative_rate_error: float | None = None
    note: str = ""


def divergence_verdict(j: int, p: float, weight: RadialWeight, k_max: int) -> Verdict:
    """Least-squares slope of ``ln(ratio)`` over ``k in [k_max/2, k_max]``.

    The slope counts as decisive when it exceeds three times the RMS fit
    residual. Exponents below 2 are reported as out of range: the test
    family only witnesses unboundedness above 2 (below 2 one argues by
    duality, which is not probed here).
    """
    if k_max < 50:
        raise DomainError("k_max must be at least 50")
    if p < 2:
        return Verdict(j, p, weight, k_max, "out-of-range",
                       note="p < 2 is out of probe range; see duality")
    ks = np.arange(k_max // 2, k_max + 1)
    try:
        logs = np.array([test_ratio(ProbeParams(j, int(k), p, weight)).log_ratio for k in ks])
    except DivergenceError as exc:
        return Verdict(j, p, weight, k_max, "structural-divergence",
                       note=f"test family leaves the weighted space: {exc}")
    slope, intercept = np.polyfit(ks.astype(float), logs, 1)
    residual = float(np.sqrt(np.mean((logs - (slope * ks + intercept)) ** 2)))
    if abs(slope) > 3.0 * residual:
        verdict = "diverges" if slope > 0 else "contracts"
    else:
        verdict = "inconclusive"
    predicted = rate_formula(j, p)
    note = "extrapolation: polynomial weight" if weight.c == 0 else ""
    return Verdict(
        j, p, weight, k_max, verdict,
        slope=float(slope), intercept=float(intercept), residual=residual,
        predicted_rate=predicted,
        relative_rate_error=float(abs(slope - predicted) / abs(predicted)),
        note=note,
    )


@dataclass(frozen=True)
class ChenInterval:
    t: float
    s: float
    k: int
    p_lo: float
    p_hi: float

    @property
    def contains_two(self) -> bool:
        return self.p_lo < 2.0 < self.p_hi


def chen_interval(t: float, k: int | None = None) -> ChenInterval:
    """Boundedness range ``((t+4)/(s+k+1), (t+4)/(k+1))`` for the weight ``|z1|^t``.

    ``t = s + 2k`` with ``s`` in (0, 2] unless ``k`` is forced, in which case
    ``s = t - 2k`` is used as given.
    """
    if not t > 0:
        raise DomainError("t must be positive")
    if k is None:
        s, k = split_exponent(t)
    else:
        s = t - 2.0 * k
    p_hi = math.inf if k + 1 <= 0 else (t + 4.0) / (k + 1.0)
    return ChenInterval(t, s, k, (t + 4.0) / (s + k + 1.0), p_hi)


def chen_decompositions(t: float) -> list[ChenInterval]:
    """The conventional split and its neighbour ``(s + 2, k - 1)``.

    With ``s`` in (0, 2] the lower endpoint ``(t+4)/(s+k+1)`` is never below
    2, so the conventional interval never has 2 in its interior; the
    neighbour is listed so the two readings can be compared side by side.
    """
    first = chen_interval(t)
    return [first, chen_interval(t, first.k - 1)]


def edholm_mcneal_interval(k: int) -> tuple[float, float]:
    """``((2k+2)/(k+2), (2k+2)/k)`` for the triangle ``|z2| < |z1|^k``."""
    if k < 1:
        raise DomainError("k must be at least 1")
    return (2.0 * k + 2.0) / (k + 2.0), (2.0 * k + 2.0) / k
