"""Ray scans toward the singular point and a 2D quadrature oracle.

A scan follows ``z(r) = (r u1, r rho u2)`` as ``r`` decreases, staying in the
cone ``V_gamma`` when ``rho < 1/gamma``, and records
``delta(z)^tau B(z, z)`` (optionally times the weight itself) in log space.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DivergenceError, DomainError
from .geometry import ConeSpec, Point2, in_hartogs
from .kernels import hartogs_kernel_diag_log
from .moments import RadialWeight
from .numerics import LogReal, quad_adaptive

__all__ = [
    "RayScan",
    "ScanRow",
    "ScanSummary",
    "geometric_grid",
    "cone_ray_scan",
    "summarize_scan",
    "quad2d_norm_oracle",
]

DEFAULT_THRESHOLD = 100.0


def geometric_grid(r_max: float, r_min: float, count: int) -> tuple[float, ...]:
    """Decreasing radii spaced evenly in ``log r``."""
    return tuple(float(r) for r in np.geomspace(r_max, r_min, count))


@dataclass(frozen=True)
class RayScan:
    cone: ConeSpec
    r_grid: tuple[float, ...]
    tau: float
    mu_correction: bool = False
    u1: complex = 1.0
    u2: complex = 1.0
    rho: float | None = None  # |z2|/|z1| along the ray; default 1/(2 gamma)

    @property
    def ratio(self) -> float:
        return 1.0 / (2.0 * self.cone.gamma) if self.rho is None else self.rho

    def point(self, r: float) -> Point2:
        u1 = self.u1 / abs(self.u1)
        u2 = self.u2 / abs(self.u2)
        return Point2(r * u1, r * self.ratio * u2)

    def validate(self):
        if not self.r_grid:
            raise DomainError("scan grid is empty")
        if any(b >= a for a, b in zip(self.r_grid, self.r_grid[1:])):
            raise DomainError("scan grid must be strictly decreasing")
        for r in self.r_grid:
            z = self.point(r)
            if not (0 < r < 1 and self.cone.contains(z) and in_hartogs(z)):
                raise DomainError(f"scan leaves the cone or the domain at r = {r!r}")


@dataclass(frozen=True)
class ScanRow:
    r: float
    value: LogReal
    fiber_factor: float  # (1 - |z2|^2/|z1|^2)^-2, constant along a ray


def cone_ray_scan(scan: RayScan, weight: RadialWeight) -> list[ScanRow]:
    """``delta(z)^tau B_H(z, z)`` (times ``nu(delta(z))`` if corrected) along the ray."""
    scan.validate()
    rows = []
    fiber = (1.0 - scan.ratio**2) ** -2
    for r in scan.r_grid:
        z = scan.point(r)
        log_value = hartogs_kernel_diag_log(weight, z).logmag + scan.tau * math.log(r)
        if scan.mu_correction:
            log_value += weight.log_density(r)
        rows.append(ScanRow(r, LogReal.exp(log_value), fiber))
    return rows


@dataclass(frozen=True)
class ScanSummary:
    sup_log: float
    r_at_sup: float
    first_exceed_r: float | None  # largest grid r where the log-value passes the threshold
    monotone_tail: bool  # strictly increasing over the final 10 points (as r decreases)
    unbounded: bool
    last_decade_log_drift: float  # growth of the running max (in nats) over the smallest decade of r


def summarize_scan(rows: list[ScanRow], threshold: float = DEFAULT_THRESHOLD, tail: int = 10) -> ScanSummary:
    """Finite-sample reading of a scan.

    "Unbounded" means the log-value exceeds ``threshold`` and increases
    monotonically over the last ``tail`` grid points.
    """
    logs = [row.value.logmag for row in rows]
    rs = [row.r for row in rows]
    i_sup = int(np.argmax(logs))
    first = next((r for r, v in zip(rs, logs) if v > threshold), None)
    last = logs[-tail:]
    monotone = len(last) == tail and all(b > a for a, b in zip(last, last[1:]))
    running = np.maximum.accumulate(logs)
    r_min = rs[-1]
    start = next(i for i, r in enumerate(rs) if r <= 10.0 * r_min)
    drift = float(running[-1] - running[start])
    return ScanSummary(
        sup_log=float(logs[i_sup]),
        r_at_sup=rs[i_sup],
        first_exceed_r=first,
        monotone_tail=monotone,
        unbounded=first is not None and monotone,
        last_decade_log_drift=drift,
    )


def quad2d_norm_oracle(
    domain: str,
    weight: RadialWeight,
    n: int,
    m: int,
    p: float,
    tol: float = 1e-11,
    max_evals: int = 200_000,
) -> float:
    """``int |z1^n z2^m|^p nu(|z1|) dV`` over ``H`` or ``H_inf`` by iterated quadrature.

    Angular integrals contribute ``(2 pi)^2``; the inner radial integral over
    ``|z2| < R(|z1|)`` and the outer one over ``|z1|`` are both done
    numerically. A budget overrun is reported as divergence.
    """
    if domain not in ("H", "H_inf"):
        raise DomainError(f"unknown domain {domain!r}")
    b = m * p + 1.0
    if not b > -1:
        raise DivergenceError("z2 power is not integrable near z2 = 0")
    # inner integral over |z2| < R; rescaled by rho = R x it is R^(b+1) times this
    unit = quad_adaptive(lambda x: 2.0 * math.pi * x**b, 0.0, 1.0, tol=1e-14, decay_at_zero=False).value
    log_unit = math.log(unit)
    a = n * p + 1.0

    def outer(r: float) -> float:
        if r <= 0.0:
            return 0.0
        log_r = math.log(r)
        log_big_r = log_r if domain == "H" else -1.0 / r
        log_f = math.log(2.0 * math.pi) + a * log_r + weight.log_density(r) + (b + 1.0) * log_big_r + log_unit
        if log_f > 700.0:
            raise DivergenceError(f"integrand overflows at |z1| = {r!r}")
        return math.exp(log_f) if log_f > -745.0 else 0.0

    try:
        return quad_adaptive(outer, 0.0, 1.0, tol=tol, max_evals=max_evals).value
    except ConvergenceError as exc:
        raise DivergenceError(f"integral over {domain} does not converge: {exc}") from exc
