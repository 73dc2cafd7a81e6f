"""Weighted Bergman kernels on D*, the Hartogs triangle and H_inf.

All kernels use true Lebesgue normalisation: ``dA`` on a disc carries its
``2 pi`` angular factor, so the unweighted disc kernel is
``1 / (pi (1 - eta conj(xi))^2)``.

For a radial weight the monomials ``z^n`` are orthogonal and

    B(z, zeta) = sum_n c_n (z conj(zeta))^n,   c_n = 1 / (2 pi M(2n + 1)).

Truncation tails are certified by log-convexity of ``alpha -> M(alpha)``:
the ratio ``c_{n+1}/c_n`` decreases in ``n``, so the first omitted ratio on
each side bounds every later one and the omitted modes are dominated by a
geometric series.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConvergenceError, DomainError
from .geometry import Point2, in_hartogs, in_hartogs_inf
from .moments import LAMBDA, UNWEIGHTED, RadialWeight, moment
from .numerics import LogReal, log_sinh, log_sum_exp

__all__ = [
    "KernelCoeffTable",
    "DiagonalComparator",
    "disc_kernel",
    "lowest_mode",
    "build_coeff_table",
    "sized_table",
    "punctured_kernel_eval",
    "punctured_kernel_diag_log",
    "split_exponent",
    "poly_weight_kernel_closed",
    "even_gamma_series",
    "exp_diagonal_comparator",
    "hartogs_kernel",
    "hartogs_kernel_diag_log",
    "hartogs_monomial_norm",
    "hinf_monomial_norm",
    "hinf_kernel_diag",
]

LOG_2PI = math.log(2.0 * math.pi)
# products |z||zeta| closer to 1 than this are refused
EDGE_MARGIN = 1e-6
# relative slack for rounding in the computed coefficient ratios
_RATIO_SLACK = 1e-12


def disc_kernel(eta: complex, xi: complex) -> complex:
    """Unweighted Bergman kernel of the unit disc."""
    if not (abs(eta) < 1 and abs(xi) < 1):
        raise DomainError("disc kernel arguments must lie in the open unit disc")
    return 1.0 / (math.pi * (1.0 - eta * complex(xi).conjugate()) ** 2)


def lowest_mode(weight: RadialWeight) -> int | None:
    """Smallest ``n`` with ``z^n`` square integrable, ``None`` if unbounded below."""
    if weight.c > 0:
        return None
    # need 2n + t + 2 > 0
    n = math.floor(-(weight.t + 2.0) / 2.0) + 1
    while 2 * (n - 1) + weight.t + 2 > 0:
        n -= 1
    while not 2 * n + weight.t + 2 > 0:
        n += 1
    return n


def _log_coeff(weight: RadialWeight, n: int) -> float:
    return -LOG_2PI - moment(weight, 2.0 * n + 1.0).logmag


@dataclass(frozen=True, eq=False)
class KernelCoeffTable:
    """Coefficients ``c_n`` for ``n_min <= n <= n_max`` with tail ratios.

    ``log_ratio_up`` is ``ln(c_{n_max+1}/c_{n_max})``; ``log_ratio_down`` is
    ``ln(c_{n_min-1}/c_{n_min})`` or ``None`` when no mode below ``n_min``
    belongs to the space.
    """

    weight: RadialWeight
    n_min: int
    n_max: int
    log_coeffs: np.ndarray = field(repr=False)
    log_ratio_up: float
    log_ratio_down: float | None
    excluded: tuple[int, ...] = ()

    @property
    def modes(self) -> np.ndarray:
        return np.arange(self.n_min, self.n_max + 1)

    @property
    def coeffs(self) -> dict[int, LogReal]:
        return {int(n): LogReal.exp(lc) for n, lc in zip(self.modes, self.log_coeffs)}

    def coeff(self, n: int) -> LogReal:
        if not self.n_min <= n <= self.n_max:
            raise KeyError(n)
        return LogReal.exp(float(self.log_coeffs[n - self.n_min]))

    def log_partial_sum(self, w: float) -> float:
        """``ln sum_n c_n w^n`` for ``0 < w < 1`` (the diagonal partial sum)."""
        logs = self.log_coeffs + self.modes * math.log(w)
        top = float(np.max(logs))
        return top + math.log(math.fsum(np.exp(logs - top)))

    def log_tail_bounds(self, w: float) -> tuple[float, float]:
        """Log of the certified omitted mass above ``n_max`` and below ``n_min``."""
        if not 0 < w < 1:
            raise DomainError("tail bound needs 0 < |z||zeta| < 1")
        log_w = math.log(w)
        up = self.log_ratio_up + _RATIO_SLACK + log_w
        if up < 0:
            upper = float(self.log_coeffs[-1]) + self.n_max * log_w + up - math.log(-math.expm1(up))
        else:
            upper = math.inf
        if self.log_ratio_down is None:
            lower = -math.inf
        else:
            down = self.log_ratio_down + _RATIO_SLACK - log_w
            if down < 0:
                lower = float(self.log_coeffs[0]) + self.n_min * log_w + down - math.log(-math.expm1(down))
            else:
                lower = math.inf
        return upper, lower

    def tail_bound(self, r_z: float, r_zeta: float) -> float:
        """Upper bound on ``sum |c_n| (r_z r_zeta)^n`` over the omitted modes."""
        w = r_z * r_zeta
        if w >= 1.0 - EDGE_MARGIN:
            raise DomainError(f"|z||zeta| = {w} is too close to 1")
        upper, lower = self.log_tail_bounds(w)
        return math.exp(np.logaddexp(upper, lower)) if max(upper, lower) < 709 else math.inf


def build_coeff_table(weight: RadialWeight, n_min: int, n_max: int) -> KernelCoeffTable:
    """Kernel coefficients for modes ``n_min..n_max``.

    For polynomial weights (``c = 0``) requested modes below the lowest
    square-integrable one are dropped and listed in ``excluded``.
    """
    n_min, n_max = int(n_min), int(n_max)
    lowest = lowest_mode(weight)
    excluded: tuple[int, ...] = ()
    if lowest is not None and n_min < lowest:
        excluded = tuple(range(n_min, min(n_max + 1, lowest)))
        n_min = lowest
    if n_min > n_max:
        raise DomainError(f"no modes of the space lie in [{n_min}, {n_max}]")
    log_coeffs = np.array([_log_coeff(weight, n) for n in range(n_min, n_max + 1)])
    up = _log_coeff(weight, n_max + 1) - float(log_coeffs[-1])
    if lowest is not None and n_min == lowest:
        down = None
    else:
        down = _log_coeff(weight, n_min - 1) - float(log_coeffs[0])
    return KernelCoeffTable(weight, n_min, n_max, log_coeffs, up, down, excluded)


def sized_table(
    weight: RadialWeight,
    products: list[float] | tuple[float, ...],
    rel_tol: float = 1e-10,
    max_modes: int = 1 << 20,
) -> KernelCoeffTable:
    """Smallest doubling-grown table whose certified tail is below
    ``rel_tol`` times the diagonal partial sum at every ``w = |z||zeta|``."""
    products = [float(w) for w in products]
    for w in products:
        if not 0 < w < 1.0 - EDGE_MARGIN:
            raise DomainError(f"|z||zeta| = {w} must lie in (0, 1 - {EDGE_MARGIN})")
    lowest = lowest_mode(weight)
    n_max = 8
    n_min = -8 if lowest is None else lowest
    log_tol = math.log(rel_tol)
    while True:
        table = build_coeff_table(weight, n_min, n_max)
        grow_up = grow_down = False
        for w in products:
            upper, lower = table.log_tail_bounds(w)
            scale = table.log_partial_sum(w) + log_tol
            grow_up |= upper > scale
            grow_down |= lower > scale
        if not (grow_up or grow_down):
            return table
        if grow_up:
            n_max *= 2
        if grow_down:
            n_min *= 2
        if n_max - n_min > max_modes:
            raise ConvergenceError(f"kernel table exceeded {max_modes} modes")


def _check_punctured(z: complex, name: str):
    if not 0 < abs(z) < 1:
        raise DomainError(f"{name} must satisfy 0 < |{name}| < 1, got {z!r}")


def punctured_kernel_eval(table: KernelCoeffTable, z: complex, zeta: complex) -> tuple[complex, float]:
    """Truncated series ``sum c_n (z conj(zeta))^n`` and its certified tail.

    Hermitian symmetry is exact: swapping the arguments negates the phase
    and leaves the modulus sum unchanged bit for bit.
    """
    _check_punctured(z, "z")
    _check_punctured(zeta, "zeta")
    log_w = math.log(abs(z)) + math.log(abs(zeta))
    theta = cmath.phase(z) - cmath.phase(zeta)
    modes = table.modes
    logs = table.log_coeffs + modes * log_w
    top = float(np.max(logs))
    mags = np.exp(logs - top)
    angles = modes * theta
    re = math.fsum(mags * np.cos(angles))
    im = math.fsum(mags * np.sin(angles))
    scale = math.exp(top)
    return complex(scale * re, scale * im), table.tail_bound(abs(z), abs(zeta))


def punctured_kernel_diag_log(table: KernelCoeffTable, r: float) -> tuple[LogReal, LogReal]:
    """Diagonal value ``B(r, r)`` and its tail bound, both in log space."""
    if not 0 < r < 1:
        raise DomainError("radius must lie in (0, 1)")
    w = r * r
    upper, lower = table.log_tail_bounds(w)
    return LogReal.exp(table.log_partial_sum(w)), LogReal.exp(float(np.logaddexp(upper, lower)))


def split_exponent(t: float) -> tuple[float, int]:
    """Write ``t = s + 2k`` with integer ``k`` and ``s`` in (0, 2]."""
    k = math.ceil(t / 2.0 - 1.0)
    s = t - 2.0 * k
    return s, int(k)


def poly_weight_kernel_closed(t: float, w: complex) -> complex:
    """Kernel of D* for the weight ``|z|^t`` as a function of ``w = z conj(zeta)``.

    ``(s w^(-k-1) + (2-s) w^(-k)) / (2 pi (1-w)^2)`` with ``t = s + 2k``.
    """
    if not t > 0:
        raise DomainError("closed form needs t > 0")
    if not 0 < abs(w) < 1:
        raise DomainError("closed form needs 0 < |w| < 1")
    s, k = split_exponent(t)
    w = complex(w)
    return (s * w ** (-k - 1) + (2.0 - s) * w ** (-k)) / (2.0 * math.pi * (1.0 - w) ** 2)


def _poly_diag_log(t: float, r: float) -> LogReal:
    s, k = split_exponent(t)
    log_r2 = 2.0 * math.log(r)
    head = LogReal.exp(math.log(s) + (-k - 1) * log_r2)
    body = LogReal.exp(math.log(2.0 - s) + (-k) * log_r2) if s < 2 else LogReal.zero()
    return (head + body) / LogReal.exp(LOG_2PI + 2.0 * math.log1p(-r * r))


def even_gamma_series(r: float) -> LogReal:
    """``sum_{even n >= 2} r^(-n-2) / Gamma(n)``, which equals ``r^-3 sinh(1/r)``."""
    if not 0 < r < 1:
        raise DomainError("radius must lie in (0, 1)")
    log_inv = -math.log(r)
    logs = []
    n = 2
    peak = -math.inf
    while True:
        term = (n + 2) * log_inv - math.lgamma(n)
        logs.append(term)
        peak = max(peak, term)
        if term < peak - 60.0 and n > 1.0 / r:
            break
        n += 2
    return log_sum_exp(LogReal.exp(v) for v in logs)


@dataclass(frozen=True)
class DiagonalComparator:
    """``2 pi B_lambda(r, r)`` next to ``r^-3 sinh(1/r) + (1 - r^2)^-2``."""

    r: float
    series_value: LogReal
    closed_form_value: LogReal
    series_tail: LogReal

    @property
    def ratio(self) -> float:
        return math.exp(self.series_value.logmag - self.closed_form_value.logmag)


def exp_diagonal_comparator(r: float, weight: RadialWeight = LAMBDA) -> DiagonalComparator:
    if not 0 < r < 1:
        raise DomainError("radius must lie in (0, 1)")
    table = sized_table(weight, [r * r])
    value, tail = punctured_kernel_diag_log(table, r)
    scale = LogReal.exp(LOG_2PI)
    closed = LogReal.exp(-3.0 * math.log(r) + log_sinh(1.0 / r)) + LogReal.exp(-2.0 * math.log1p(-r * r))
    return DiagonalComparator(r, value * scale, closed, tail * scale)


def _punctured_factor(weight: RadialWeight, z1: complex, zeta1: complex) -> complex:
    if weight.c == 0 and weight.t > 0:
        return poly_weight_kernel_closed(weight.t, z1 * complex(zeta1).conjugate())
    table = sized_table(weight, [abs(z1) * abs(zeta1)])
    return punctured_kernel_eval(table, z1, zeta1)[0]


def hartogs_kernel(weight: RadialWeight, z: Point2, zeta: Point2) -> complex:
    """Weighted Bergman kernel of the Hartogs triangle, weight ``nu(|z1|)``.

    Pulled back from D* x D through ``phi(z) = (z1, z2/z1)``:
    ``B(z, zeta) = B_{D*}(z1, zeta1) B_D(z2/z1, zeta2/zeta1) / (z1 conj(zeta1))``.
    """
    if not (in_hartogs(z) and in_hartogs(zeta)):
        raise DomainError("hartogs_kernel arguments must lie in the Hartogs triangle")
    jac = 1.0 / (z.z1 * complex(zeta.z1).conjugate())
    fiber = disc_kernel(z.z2 / z.z1, zeta.z2 / zeta.z1)
    return jac * _punctured_factor(weight, z.z1, zeta.z1) * fiber


def hartogs_kernel_diag_log(weight: RadialWeight, z: Point2) -> LogReal:
    """``B(z, z)`` on the Hartogs triangle in log space."""
    if not in_hartogs(z):
        raise DomainError("point must lie in the Hartogs triangle")
    r = abs(z.z1)
    if weight.c == 0 and weight.t > 0:
        base = _poly_diag_log(weight.t, r)
    else:
        base, _ = punctured_kernel_diag_log(sized_table(weight, [r * r]), r)
    ratio2 = (abs(z.z2) / r) ** 2
    fiber = LogReal.exp(-math.log(math.pi) - 2.0 * math.log1p(-ratio2))
    return base * fiber * LogReal.exp(-2.0 * math.log(r))


def hartogs_monomial_norm(weight: RadialWeight, n: int, m: int, p: float) -> LogReal:
    """``int_H |z1^n z2^m|^p nu(|z1|) dV = (2pi)^2/(mp+2) M(np + mp + 3)``."""
    if not m * p + 2 > 0:
        raise DomainError("z2 exponent must satisfy mp + 2 > 0")
    return moment(weight, n * p + m * p + 3.0) * LogReal.exp(2 * LOG_2PI - math.log(m * p + 2.0))


def hinf_monomial_norm(n: int, m: int, p: float, weight: RadialWeight = UNWEIGHTED) -> LogReal:
    """``int_{H_inf} |z1^n z2^m|^p nu(|z1|) dV = (2pi)^2/(mp+2) M_{(t, c+mp+2)}(np + 1)``.

    Finite for every integer ``n``: the fiber radius ``exp(-1/|z1|)`` kills
    any pole in ``z1``.
    """
    if m < 0:
        raise DomainError("m must be non-negative")
    if not p > 0:
        raise DomainError("p must be positive")
    c = m * p + 2.0
    fiber = RadialWeight(weight.t, weight.c + c)
    return moment(fiber, n * p + 1.0) * LogReal.exp(2 * LOG_2PI - math.log(c))


def _fiber_tail_log(r: float, q0: float, m_last: int) -> float:
    """Log bound on ``sum_{m > m_last} |z2|^(2m) (2m+2)/(2pi) K_m(r)``.

    Uses ``K_m(r) <= exp(c/(r-d)) / (pi d^2)`` (mean value over the disc of
    radius ``d`` about ``r``, weight at least ``exp(-c/(r-d))`` there) and
    optimises over ``d``.
    """
    if q0 == 0:
        return -math.inf
    d_max = min(r - 1.0 / (-math.log(q0)), 1.0 - r)
    best = math.inf
    for i in range(1, 400):
        d = d_max * i / 400.0
        log_e = 2.0 / (r - d)
        log_q = 2.0 * math.log(q0) + log_e
        if log_q >= 0:
            continue
        q = math.exp(log_q)
        M = m_last
        val = (
            log_e
            + (M + 1) * log_q
            + math.log((M + 2) - (M + 1) * q)
            - 2.0 * math.log(math.pi * d)
            - 2.0 * math.log1p(-q)
        )
        best = min(best, val)
    return best


def hinf_kernel_diag(z: Point2, m_max: int | None = None, rel_tol: float = 1e-10) -> tuple[float, float]:
    """Bergman kernel of ``H_inf`` on the diagonal, with a certified tail.

    ``B(z, z) = sum_m |z2|^(2m) (2m+2)/(2 pi) K_m(|z1|)`` where ``K_m`` is the
    diagonal kernel of D* for the weight ``exp(-(2m+2)/r)``. With ``m_max``
    unset, terms are added until the certified tail is below ``rel_tol``
    of the sum.
    """
    if not in_hartogs_inf(z):
        raise DomainError("point must lie in H_inf")
    r = abs(z.z1)
    q0 = abs(z.z2)
    terms: list[LogReal] = []
    tails: list[LogReal] = []
    m = 0
    cap = 20000 if m_max is None else m_max
    while True:
        weight = RadialWeight(0.0, 2.0 * m + 2.0)
        k_val, k_tail = punctured_kernel_diag_log(sized_table(weight, [r * r], rel_tol), r)
        pref = LogReal.exp(math.log(2.0 * m + 2.0) - LOG_2PI + (2.0 * m * math.log(q0) if m else 0.0))
        terms.append(k_val * pref)
        tails.append(k_tail * pref)
        fiber_tail = _fiber_tail_log(r, q0, m)
        if m_max is None:
            total = log_sum_exp(terms)
            if fiber_tail <= total.logmag + math.log(rel_tol):
                break
            if m >= cap:
                raise ConvergenceError(f"H_inf fiber series not converged by m = {cap}")
        elif m >= m_max:
            break
        m += 1
    total = log_sum_exp(terms)
    tail = log_sum_exp(tails + [LogReal.exp(fiber_tail)])
    return total.to_real(), tail.to_real()
