"""Points of C^2, the Hartogs-type domains, cones and the map Phi."""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.optimize import brentq

from .errors import DomainError

__all__ = [
    "Point2",
    "ConeSpec",
    "in_hartogs",
    "in_hartogs_k",
    "in_hartogs_inf",
    "in_punctured_bidisc",
    "phi",
    "phi_inverse",
    "phi_jacobian_det",
    "nesting_radius",
    "delta",
]


@dataclass(frozen=True)
class Point2:
    z1: complex
    z2: complex

    def __iter__(self):
        yield self.z1
        yield self.z2


@dataclass(frozen=True)
class ConeSpec:
    """The approach region ``V_gamma = {gamma |z2| < |z1|}``, ``gamma > 1``."""

    gamma: float

    def __post_init__(self):
        if not self.gamma > 1:
            raise DomainError(f"cone aperture gamma must exceed 1, got {self.gamma!r}")

    def contains(self, z: Point2) -> bool:
        return self.gamma * abs(z.z2) < abs(z.z1)


def delta(z: Point2) -> float:
    """Distance to the singular point, ``|z1|``."""
    return abs(z.z1)


def in_hartogs(z: Point2) -> bool:
    return abs(z.z2) < abs(z.z1) < 1


def in_hartogs_k(z: Point2, k: float) -> bool:
    if not k > 0:
        raise DomainError("k must be positive")
    return abs(z.z2) < abs(z.z1) ** k < 1


def in_hartogs_inf(z: Point2) -> bool:
    r = abs(z.z1)
    if not 0 < r < 1:
        return False
    return abs(z.z2) < math.exp(-1.0 / r)


def in_punctured_bidisc(w: Point2) -> bool:
    return 0 < abs(w.z1) < 1 and abs(w.z2) < 1


def phi(z: Point2) -> Point2:
    """``(z1, z2) -> (z1, z2/z1)``, mapping the Hartogs triangle onto D* x D."""
    if z.z1 == 0:
        raise DomainError("phi is undefined at z1 = 0")
    return Point2(z.z1, z.z2 / z.z1)


def phi_inverse(w: Point2) -> Point2:
    return Point2(w.z1, w.z1 * w.z2)


def phi_jacobian_det(z: Point2) -> complex:
    """Complex Jacobian determinant of phi at ``z``, equal to ``1/z1``."""
    if z.z1 == 0:
        raise DomainError("phi is undefined at z1 = 0")
    return 1.0 / complex(z.z1)


def nesting_radius(k: float) -> float:
    """Largest ``r* <= 1`` with ``exp(-1/r) < r^k`` on ``(0, r*)``.

    Below ``r*`` the exponential triangle sits inside ``H_k``. For ``k <= e``
    the inequality holds on all of (0, 1).
    """
    if not k > 0:
        raise DomainError("k must be positive")

    def gap(r):
        return -1.0 / r - k * math.log(r)

    # gap peaks at r = 1/k with value k (ln k - 1)
    if k <= math.e or gap(1.0 / k) <= 0:
        return 1.0
    return brentq(gap, 1e-300 if k > 1e6 else 1e-6 / k, 1.0 / k, xtol=1e-15, rtol=1e-15)
