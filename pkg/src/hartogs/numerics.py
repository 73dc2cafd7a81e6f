"""Log-space scalars, gamma functions and quadrature.

Every magnitude that can leave the binary64 range (moments such as
``Gamma(2jk - 2)`` for ``k`` in the hundreds, kernel sums like
``exp(1/r)`` for tiny ``r``) is carried as a :class:`LogReal`.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Callable, Iterable

import mpmath
import numpy as np
from scipy.special import zeta

from .errors import ConvergenceError, DomainError

__all__ = [
    "LogReal",
    "QuadResult",
    "log_gamma",
    "upper_incomplete_gamma_log",
    "lower_incomplete_gamma_log",
    "quad_adaptive",
    "quad_oracle",
    "log_sum_exp",
    "log_sinh",
]

EULER_GAMMA = 0.57721566490153286061


@dataclass(frozen=True)
class LogReal:
    """A signed real stored as ``(sign, log|value|)``.

    ``sign`` is one of -1, 0, +1 and ``logmag`` is ``-inf`` exactly when the
    value is zero.
    """

    sign: int
    logmag: float

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise ValueError(f"sign must be -1, 0 or +1, got {self.sign!r}")
        if math.isnan(self.logmag):
            raise ValueError("logmag is NaN")
        if (self.sign == 0) != (self.logmag == -math.inf):
            raise ValueError("sign is 0 exactly when logmag is -inf")

    @classmethod
    def zero(cls) -> LogReal:
        return cls(0, -math.inf)

    @classmethod
    def one(cls) -> LogReal:
        return cls(1, 0.0)

    @classmethod
    def from_real(cls, x: float) -> LogReal:
        if math.isnan(x):
            raise ValueError("cannot represent NaN")
        if x == 0:
            return cls.zero()
        return cls(1 if x > 0 else -1, math.log(abs(x)))

    @classmethod
    def exp(cls, logmag: float, sign: int = 1) -> LogReal:
        """The value ``sign * exp(logmag)``."""
        if logmag == -math.inf or sign == 0:
            return cls.zero()
        return cls(sign, float(logmag))

    def to_real(self) -> float:
        """Collapse to a float; raises OverflowError past the double range."""
        if self.sign == 0:
            return 0.0
        return self.sign * math.exp(self.logmag)

    __float__ = to_real

    def log(self) -> float:
        """Natural log of a positive value."""
        if self.sign <= 0:
            raise DomainError("log of a non-positive LogReal")
        return self.logmag

    def __neg__(self) -> LogReal:
        return LogReal(-self.sign, self.logmag)

    def __abs__(self) -> LogReal:
        return LogReal(abs(self.sign), self.logmag)

    def __mul__(self, other) -> LogReal:
        other = _coerce(other)
        if self.sign == 0 or other.sign == 0:
            return LogReal.zero()
        return LogReal(self.sign * other.sign, self.logmag + other.logmag)

    __rmul__ = __mul__

    def __truediv__(self, other) -> LogReal:
        other = _coerce(other)
        if other.sign == 0:
            raise ZeroDivisionError("LogReal division by zero")
        if self.sign == 0:
            return LogReal.zero()
        return LogReal(self.sign * other.sign, self.logmag - other.logmag)

    def __rtruediv__(self, other) -> LogReal:
        return _coerce(other) / self

    def __pow__(self, exponent: float) -> LogReal:
        if self.sign < 0:
            raise DomainError("real power of a negative LogReal")
        if self.sign == 0:
            if exponent > 0:
                return LogReal.zero()
            raise ZeroDivisionError("non-positive power of zero")
        return LogReal.exp(self.logmag * exponent)

    def __add__(self, other) -> LogReal:
        return log_sum_exp([self, _coerce(other)])

    __radd__ = __add__

    def __sub__(self, other) -> LogReal:
        return log_sum_exp([self, -_coerce(other)])

    def __rsub__(self, other) -> LogReal:
        return log_sum_exp([_coerce(other), -self])


def _coerce(x) -> LogReal:
    if isinstance(x, LogReal):
        return x
    return LogReal.from_real(float(x))


def log_sum_exp(terms: Iterable[LogReal]) -> LogReal:
    """Signed sum of LogReal terms without leaving log space.

    The shifted mantissas are added with :func:`math.fsum`, so exact
    cancellation (``x + (-x)``) returns the zero element.
    """
    terms = [t for t in terms if t.sign != 0]
    if not terms:
        return LogReal.zero()
    top = max(t.logmag for t in terms)
    if top == math.inf:
        raise OverflowError("infinite LogReal term")
    total = math.fsum(t.sign * math.exp(t.logmag - top) for t in terms)
    if total == 0.0:
        return LogReal.zero()
    return LogReal(1 if total > 0 else -1, top + math.log(abs(total)))


def log_sinh(y: float) -> float:
    """``log(sinh(y))`` for ``y > 0`` without overflow."""
    if y <= 0:
        raise DomainError("log_sinh needs y > 0")
    return y + math.log1p(-math.exp(-2.0 * y)) - math.log(2.0)


# ---------------------------------------------------------------------------
# Gamma functions


def log_gamma(x: float) -> float:
    """``ln Gamma(x)`` for real ``x > 0``."""
    if not x > 0:
        raise DomainError(f"log_gamma needs x > 0, got {x!r}")
    return math.lgamma(x)


# ln Gamma(1 + a) = -gamma*a + sum_{k>=2} (-1)^k zeta(k) a^k / k, |a| < 1
_LGAMMA1P_COEFFS = [(-1.0) ** k * float(zeta(k, 1)) / k for k in range(2, 80)]


def _lgamma1p(a: float) -> float:
    """``ln Gamma(1 + a)`` accurate in the relative sense for ``|a| <= 0.5``."""
    total = 0.0
    power = a * a
    for coeff in _LGAMMA1P_COEFFS:
        term = coeff * power
        total += term
        if abs(term) < 1e-18 * abs(total):
            break
        power *= a
    return -EULER_GAMMA * a + total


def _gamma_small_a(a: float, x: float) -> float:
    """``Gamma(a, x)`` for ``|a| <= 0.5`` and ``0 < x < 1.5``.

    Splits ``Gamma(a) - x^a/a`` into two terms that stay finite as ``a -> 0``.
    """
    if a == 0.0:
        g1 = -EULER_GAMMA
        xa_term = math.log(x)
    else:
        g1 = math.expm1(_lgamma1p(a)) / a
        xa_term = math.expm1(a * math.log(x)) / a
    # sum_{n>=1} (-1)^n x^(a+n) / (n! (a+n))
    xa = math.exp(a * math.log(x))
    series = []
    term = 1.0
    for n in range(1, 200):
        term *= -x / n
        series.append(term / (a + n))
        if abs(term) < 1e-18:
            break
    return g1 - xa_term - xa * math.fsum(series)


def _gamma_cf_log(s: float, x: float, max_iter: int = 100_000) -> float:
    """``log(Gamma(s, x) e^x x^-s)`` by the Legendre continued fraction."""
    tiny = 1e-300
    b = x + 1.0 - s
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, max_iter):
        an = -i * (i - s)
        b += 2.0
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            return math.log(h)
    raise ConvergenceError(f"incomplete gamma continued fraction stalled at s={s}, x={x}")


def _lower_series_log(s: float, x: float) -> float:
    """``log gamma(s, x)`` for ``s > 0`` by the positive power series."""
    term = 1.0 / s
    terms = [term]
    ap = s
    for _ in range(100_000):
        ap += 1.0
        term *= x / ap
        terms.append(term)
        if term < 1e-17 * terms[0]:
            break
    else:
        raise ConvergenceError(f"lower incomplete gamma series stalled at s={s}, x={x}")
    return s * math.log(x) - x + math.log(math.fsum(terms))


def lower_incomplete_gamma_log(s: float, x: float) -> LogReal:
    """``gamma(s, x) = int_0^x t^(s-1) e^-t dt`` for ``s > 0``, ``x > 0``."""
    if not x > 0:
        raise DomainError(f"lower incomplete gamma needs x > 0, got {x!r}")
    if not s > 0:
        raise DomainError(f"lower incomplete gamma needs s > 0, got {s!r}")
    return LogReal.exp(_lower_series_log(s, x))


def upper_incomplete_gamma_log(s: float, x: float) -> LogReal:
    """``Gamma(s, x) = int_x^inf t^(s-1) e^-t dt`` as a LogReal.

    Works for any real ``s`` (large negative included) and ``x > 0``.

    Regimes:

    * ``s <= 0.5`` and ``x < 1.5``: ``Gamma(a, x)`` for ``|a| <= 0.5`` from a
      cancellation-free small-``a`` expansion, then the recurrence
      ``Gamma(s+1, x) = s Gamma(s, x) + x^s e^-x`` run downward to ``s``.
      Downward steps damp relative error here because ``x < |s|`` after the
      first step.
    * ``s > 0.5`` and ``x < s + 1``: ``ln Gamma(s) + log1p(-gamma(s,x)/Gamma(s))``.
    * otherwise: continued fraction, which converges quickly once
      ``x - s`` is large.
    """
    if not x > 0:
        raise DomainError(f"incomplete gamma needs x > 0, got {x!r}")
    s = float(s)
    x = float(x)
    log_x = math.log(x)
    if s <= 0.5 and x < 1.5 and s > -50.0:
        steps = max(0, math.ceil(-0.5 - s))
        a = s + steps
        ratio = _gamma_small_a(a, x) * math.exp(x - a * log_x)  # Gamma(a,x) e^x x^-a
        for _ in range(steps):
            a -= 1.0
            ratio = (1.0 - x * ratio) / (-a)
        return LogReal.exp(math.log(ratio) + s * log_x - x)
    if s > 0.5 and x < s + 1.0:
        lg = math.lgamma(s)
        p = math.exp(_lower_series_log(s, x) - lg)
        return LogReal.exp(lg + math.log1p(-p))
    return LogReal.exp(_gamma_cf_log(s, x) + s * log_x - x)


# ---------------------------------------------------------------------------
# Quadrature


@dataclass(frozen=True)
class QuadResult:
    value: float
    abs_error_estimate: float
    evaluations: int


_XGK = np.array([
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0,
])
_WGK = np.array([
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
])
# 15 nodes on [-1, 1]; Gauss nodes sit at odd positions of the half-rule
_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
_KW = np.concatenate([_WGK[:-1], _WGK[::-1]])
_GW = np.zeros(15)
_GW[[1, 3, 5, 7, 9, 11, 13]] = np.concatenate([_WG[:-1], _WG[::-1]])


def _gk15(g: Callable[[float], float], lo: float, hi: float) -> tuple[float, float]:
    mid = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    fx = np.array([g(mid + half * t) for t in _NODES], dtype=float)
    if not np.all(np.isfinite(fx)):
        raise ConvergenceError(f"non-finite integrand on [{lo}, {hi}]")
    kron = half * float(_KW @ fx)
    gauss = half * float(_GW @ fx)
    return kron, abs(kron - gauss)


def _decays_at_zero(f, b: float) -> bool:
    """Heuristic: does ``f`` vanish faster than any modest power at 0+?"""
    try:
        vals = [abs(f(b * 10.0 ** -i)) for i in (2, 3, 4)]
    except (OverflowError, ZeroDivisionError, ValueError):
        return False
    if not all(math.isfinite(v) for v in vals):
        return False
    return vals[1] <= 1e-8 * vals[0] and vals[2] <= 1e-8 * max(vals[1], 1e-300)


def quad_adaptive(
    integrand: Callable[[float], float],
    a: float,
    b: float,
    tol: float = 1e-12,
    *,
    tol_abs: float = 0.0,
    max_evals: int = 1_000_000,
    decay_at_zero: bool | None = None,
) -> QuadResult:
    """Globally adaptive Gauss-Kronrod (7/15) integration of a scalar function.

    ``b`` may be ``math.inf``. When ``a == 0`` and the integrand carries an
    ``exp(-c/r)`` style decay (detected automatically unless ``decay_at_zero``
    is given) the integral is rewritten with ``u = 1/r`` first.

    Converges when the summed panel error estimate drops below
    ``max(tol * |value|, tol_abs)``; otherwise raises ConvergenceError with
    the best estimate attached.
    """
    if not a < b:
        raise DomainError(f"quad_adaptive needs a < b, got [{a}, {b}]")
    f = integrand
    lo, hi = float(a), float(b)
    if lo == 0.0 and math.isfinite(hi):
        if decay_at_zero is None:
            decay_at_zero = _decays_at_zero(f, hi)
        if decay_at_zero:
            f = (lambda inner: lambda u: inner(1.0 / u) / (u * u))(f)
            lo, hi = 1.0 / hi, math.inf
    if math.isinf(hi):
        base = lo

        def g(t, inner=f):
            if t >= 1.0:
                return 0.0
            one_minus = 1.0 - t
            return inner(base + t / one_minus) / (one_minus * one_minus)

        lo, hi = 0.0, 1.0
    else:
        g = f

    value, err = _gk15(g, lo, hi)
    evals = 15
    heap = [(-err, lo, hi, value)]
    total, total_err = value, err
    while True:
        if total_err <= max(tol * abs(total), tol_abs):
            return QuadResult(total, total_err, evals)
        if evals + 30 > max_evals:
            raise ConvergenceError(
                f"quad_adaptive exceeded {max_evals} evaluations",
                value=total, abs_error_estimate=total_err, evaluations=evals,
            )
        neg_err, p_lo, p_hi, p_val = heapq.heappop(heap)
        mid = 0.5 * (p_lo + p_hi)
        if not p_lo < mid < p_hi:
            raise ConvergenceError(
                "quad_adaptive panel width reached machine resolution",
                value=total, abs_error_estimate=total_err, evaluations=evals,
            )
        v1, e1 = _gk15(g, p_lo, mid)
        v2, e2 = _gk15(g, mid, p_hi)
        evals += 30
        heapq.heappush(heap, (-e1, p_lo, mid, v1))
        heapq.heappush(heap, (-e2, mid, p_hi, v2))
        # re-summing keeps drift out of the running totals
        total = math.fsum(item[3] for item in heap)
        total_err = math.fsum(-item[0] for item in heap)


def quad_oracle(
    integrand: Callable[[mpmath.mpf], mpmath.mpf],
    a: float,
    b: float,
    tol: float = 1e-20,
    *,
    dps: int = 40,
    max_level: int = 14,
) -> mpmath.mpf:
    """Slow verification quadrature for building test fixtures.

    Tanh-sinh rule evaluated in ``dps``-digit arithmetic; each level halves
    the step and reuses the previous nodes, stopping when two levels agree to
    ``tol`` relative. ``b`` may be infinite (mapped by ``x = a + v/(1-v)``).
    The integrand receives and returns mpmath numbers.
    """
    with mpmath.workdps(dps):
        lo = mpmath.mpf(a)
        lo_m = mpmath.mpf(0) if math.isinf(b) else lo
        hi_m = mpmath.mpf(1) if math.isinf(b) else mpmath.mpf(b)
        if math.isinf(b):
            # nodes are addressed by distance d to the nearer end of [0, 1]
            def left(d):
                return integrand(lo + d / (1 - d)) / (1 - d) ** 2

            def right(d):
                return integrand(lo + (1 - d) / d) / d**2
        else:
            def left(d):
                return integrand(lo_m + d)

            def right(d):
                return integrand(hi_m - d)

        width = hi_m - lo_m
        half_pi = mpmath.pi / 2
        eps = mpmath.mpf(10) ** (-dps)

        def pair(t):
            u = half_pi * mpmath.sinh(t)
            e = mpmath.exp(-2 * u)
            d = width * e / (1 + e)
            w = width / 2 * half_pi * mpmath.cosh(t) * 4 * e / (1 + e) ** 2
            return w, d

        def level_sum(h, odd_only):
            acc = []
            k = 1
            while True:
                if odd_only and k % 2 == 0:
                    k += 1
                    continue
                w, d = pair(k * h)
                if w < eps * eps or d == 0:
                    break
                acc.append(w * (left(d) + right(d)))
                k += 1
            return mpmath.fsum(acc)

        h = mpmath.mpf(1)
        centre = width / 2 * half_pi * left(width / 2)
        raw = centre + level_sum(h, False)
        prev = h * raw
        for _ in range(1, max_level + 1):
            h /= 2
            raw += level_sum(h, True)
            est = h * raw
            if abs(est - prev) <= mpmath.mpf(tol) * abs(est):
                return +est
            prev = est
        raise ConvergenceError("quad_oracle did not converge", value=prev)
