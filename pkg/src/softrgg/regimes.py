"""Regime classification, thresholds, transforms and limit-law CDFs.

The decay exponent alpha splits into five regimes (alpha > 2, = 2,
in (1, 2), = 1, < 1) with distinct longest-edge scaling.  For each
regime this module provides the threshold r_n at which
P(longest edge <= r_n) -> sqrt(r), the monotone transform f_n mapping
the longest edge to an asymptotically Uniform(0,1) variable, the scaled
statistics with their limit laws, and the auxiliary function
h(x) = (x/2) exp((2-x)/x) with its inverse.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InfeasibleThresholdError
from .points import WindowParams

_H_INV_TOL = 1e-13


class Regime(enum.Enum):
    SUPER_CRITICAL = "alpha>2"
    CRITICAL_2 = "alpha=2"
    INTERMEDIATE = "1<alpha<2"
    CRITICAL_1 = "alpha=1"
    SUB_CRITICAL = "alpha<1"


@dataclass(frozen=True)
class RegimeSpec:
    alpha: float
    regime: Regime


def classify(alpha: float) -> RegimeSpec:
    """Exact-comparison regime bucket; boundary laws are discontinuous."""
    if not (alpha > 0 and math.isfinite(alpha)):
        raise DomainError(f"alpha must be a positive finite real, got {alpha!r}")
    if alpha > 2:
        regime = Regime.SUPER_CRITICAL
    elif alpha == 2:
        regime = Regime.CRITICAL_2
    elif alpha > 1:
        regime = Regime.INTERMEDIATE
    elif alpha == 1:
        regime = Regime.CRITICAL_1
    else:
        regime = Regime.SUB_CRITICAL
    return RegimeSpec(float(alpha), regime)


class LawKind(enum.Enum):
    UNIFORM01 = "uniform01"
    FRECHET = "frechet"
    ZSTAR = "zstar"
    WEIBULL_TWO = "weibull2"
    ZSTARSTAR = "zstarstar"


@dataclass(frozen=True)
class LimitLaw:
    """A named limit CDF, evaluable on scalars or arrays."""

    kind: LawKind
    beta: float | None = None  # Frechet shape

    def cdf(self, z):
        arr = np.asarray(z, dtype=np.float64)
        out = self._cdf_array(arr)
        return float(out) if np.ndim(z) == 0 else out

    def _cdf_array(self, z: np.ndarray) -> np.ndarray:
        if self.kind is LawKind.UNIFORM01:
            return np.clip(z, 0.0, 1.0)
        if self.kind is LawKind.FRECHET:
            with np.errstate(divide="ignore", over="ignore"):
                return np.where(z > 0, np.exp(-np.where(z > 0, z, 1.0) ** -self.beta), 0.0)
        if self.kind is LawKind.ZSTAR:
            zin = np.clip(z, np.finfo(float).tiny, 1.0)
            inner = np.exp((zin - 1.0) / zin) / zin
            return np.where(z >= 1.0, 1.0, np.where(z <= 0.0, 0.0, inner))
        if self.kind is LawKind.WEIBULL_TWO:
            return np.where(z > 0.0, 1.0, np.exp(-np.square(np.minimum(z, 0.0))))
        # ZSTARSTAR: r^{-ln r} on (0,1)
        zin = np.clip(z, np.finfo(float).tiny, 1.0)
        inner = np.exp(-np.square(np.log(zin)))
        return np.where(z >= 1.0, 1.0, np.where(z <= 0.0, 0.0, inner))


UNIFORM01 = LimitLaw(LawKind.UNIFORM01)
ZSTAR = LimitLaw(LawKind.ZSTAR)
WEIBULL_TWO = LimitLaw(LawKind.WEIBULL_TWO)
ZSTARSTAR = LimitLaw(LawKind.ZSTARSTAR)


def frechet(beta: float) -> LimitLaw:
    if not beta > 0:
        raise DomainError(f"Frechet shape must be positive, got {beta!r}")
    return LimitLaw(LawKind.FRECHET, beta=beta)


def limit_cdf(law: LimitLaw, z) -> float:
    return law.cdf(z)


def regime_limit_law(spec: RegimeSpec) -> LimitLaw:
    """Limit law of the regime's primary scaled statistic."""
    if spec.regime is Regime.SUPER_CRITICAL:
        return frechet(spec.alpha - 1.0)
    if spec.regime is Regime.CRITICAL_2:
        return ZSTAR
    return WEIBULL_TWO


# ---------------------------------------------------------------------------
# h and its inverse
# ---------------------------------------------------------------------------


def _ln_h(x: float) -> float:
    return math.log(x / 2.0) + (2.0 - x) / x


def h_eval(x: float) -> float:
    """h(x) = (x/2) exp((2-x)/x), strictly decreasing from +inf to 1 on (0, 2]."""
    if not 0.0 < x <= 2.0:
        raise DomainError(f"h is defined on (0, 2], got {x!r}")
    ln = _ln_h(x)
    return math.inf if ln > 709.0 else math.exp(ln)


def h_inverse(y: float) -> float:
    """Unique x in (0, 2] with h(x) = y, for y >= 1, by bisection."""
    if not y >= 1.0:
        raise DomainError(f"h_inverse requires y >= 1, got {y!r}")
    if y == 1.0:
        return 2.0
    target = math.log(y)
    lo = 0.2
    while _ln_h(lo) < target:
        lo *= 0.5
    hi = 2.0
    if _ln_h(lo) == target:
        return lo
    while hi - lo > _H_INV_TOL:
        mid = 0.5 * (lo + hi)
        if _ln_h(mid) >= target:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def g_r(r: float) -> float:
    """exp(-sqrt(-8 ln r)), the alpha = 1 threshold constant."""
    if not 0.0 < r < 1.0:
        raise DomainError(f"r must lie in (0, 1), got {r!r}")
    return math.exp(-math.sqrt(-8.0 * math.log(r)))


def c_r(r: float) -> float:
    """h^{-1}(r^{-1/2}), the alpha = 2 threshold constant in (0, 2]."""
    if not 0.0 < r < 1.0:
        raise DomainError(f"r must lie in (0, 1), got {r!r}")
    return h_inverse(r**-0.5)


# ---------------------------------------------------------------------------
# thresholds and transforms
# ---------------------------------------------------------------------------


def threshold_r_n(spec: RegimeSpec, w: WindowParams, r: float) -> float:
    """Edge-length level r_n with P(longest edge <= r_n) -> sqrt(r)."""
    if not 0.0 < r < 1.0:
        raise DomainError(f"r must lie in (0, 1), got {r!r}")
    a = spec.alpha
    n = float(w.n)
    two_n = 2.0 * n
    neg_ln_r = -math.log(r)
    if spec.regime is Regime.SUPER_CRITICAL:
        rn = two_n ** (1.0 / (a - 1.0)) * ((a - 1.0) / 2.0 * neg_ln_r) ** (1.0 / (1.0 - a))
    elif spec.regime is Regime.CRITICAL_2:
        rn = c_r(r) * n
    elif spec.regime is Regime.INTERMEDIATE:
        # rn = ((2n)^eps - eps*c)^(1/eps) with eps = 2 - a; assembled as
        # 2n * (1 - eps*c*(2n)^-eps)^(1/eps) via log1p so the 1/eps
        # exponent does not amplify the subtraction's rounding error
        eps = 2.0 - a
        c = 2.0 ** (1.0 - a / 2.0) * math.sqrt(neg_ln_r) * n ** (1.0 - a / 2.0)
        u = eps * c * two_n**-eps
        if u >= 1.0:
            raise InfeasibleThresholdError(f"n={w.n} too small for (alpha={a}, r={r})")
        rn = two_n * math.exp(math.log1p(-u) / eps)
    elif spec.regime is Regime.CRITICAL_1:
        rn = two_n * g_r(r) ** (1.0 / (4.0 * math.sqrt(n)))
    else:  # SUB_CRITICAL
        # same log1p assembly with eps = 1 - a
        eps = 1.0 - a
        c = 2.0 ** (-a / 2.0) * math.sqrt(neg_ln_r) * n ** (-a / 2.0)
        u = eps * c * two_n**-eps
        if u >= 1.0:
            raise InfeasibleThresholdError(f"n={w.n} too small for (alpha={a}, r={r})")
        rn = two_n * math.exp(math.log1p(-u) / eps)
    if not 0.0 < rn < two_n:
        raise InfeasibleThresholdError(
            f"threshold r_n={rn} outside (0, 2n) for (alpha={a}, n={w.n}, r={r})"
        )
    return rn


def transform_f_n(spec: RegimeSpec, w: WindowParams, e_star: float) -> float:
    """Monotone map of the longest edge to (0, 1]; asymptotically uniform.

    All branches are assembled in log space so extreme inputs underflow
    to 0 (the correct limit) instead of overflowing.
    """
    two_n = 2.0 * w.n
    if not 0.0 < e_star <= two_n:
        raise DomainError(f"e_star must lie in (0, 2n], got {e_star!r}")
    a = spec.alpha
    if spec.regime is Regime.SUPER_CRITICAL:
        # exp(2n/(1-a) * e*^{1-a}); assemble the (positive) magnitude in logs
        ln_mag = math.log(two_n / (a - 1.0)) + (1.0 - a) * math.log(e_star)
        return math.exp(-math.exp(ln_mag)) if ln_mag <= 709.0 else 0.0
    if spec.regime is Regime.CRITICAL_2:
        x = e_star / w.n
        return math.exp(math.log(2.0 / x) - (2.0 - x) / x)
    if spec.regime is Regime.INTERMEDIATE:
        # q/eps = (2n)^eps * expm1(eps*ln(e*/2n)) / eps with eps = 2 - a,
        # stable as eps -> 0 where the direct difference cancels
        eps = 2.0 - a
        qe = two_n**eps * math.expm1(eps * math.log(e_star / two_n)) / eps
        return math.exp(-(two_n**-eps) * qe * qe / 2.0)
    if spec.regime is Regime.CRITICAL_1:
        t = math.log(e_star / two_n)
        return math.exp(-w.n * t * t)
    eps = 1.0 - a
    qe = two_n**eps * math.expm1(eps * math.log(e_star / two_n)) / eps
    return math.exp(-(two_n ** (a - 1.0)) * two_n * qe * qe / 2.0)


def scaled_statistic(
    spec: RegimeSpec, w: WindowParams, e_star: float
) -> tuple[float, LimitLaw]:
    """Regime's scaled longest-edge statistic and its limit law.

    alpha > 2: (2n/(alpha-1))^{1/(1-alpha)} e*          -> Frechet(alpha-1)
    alpha = 2: e*/(2n)                                   -> Z*
    1 < alpha < 2: power-centred Weibull statistic       -> Weibull(2)
    alpha <= 1: linearized 2^{-1/2} (2n)^{-alpha/2} (e* - 2n) -> Weibull(2)
    """
    two_n = 2.0 * w.n
    if not 0.0 < e_star <= two_n:
        raise DomainError(f"e_star must lie in (0, 2n], got {e_star!r}")
    a = spec.alpha
    if spec.regime is Regime.SUPER_CRITICAL:
        value = (two_n / (a - 1.0)) ** (1.0 / (1.0 - a)) * e_star
        return value, frechet(a - 1.0)
    if spec.regime is Regime.CRITICAL_2:
        return e_star / two_n, ZSTAR
    if spec.regime is Regime.INTERMEDIATE:
        value = (
            2.0**-0.5 / (2.0 - a) * two_n ** (a / 2.0 - 1.0)
            * (e_star ** (2.0 - a) - two_n ** (2.0 - a))
        )
        return value, WEIBULL_TWO
    value = 2.0**-0.5 * two_n ** (-a / 2.0) * (e_star - two_n)
    return value, WEIBULL_TWO


def alt_scaled_statistic(
    spec: RegimeSpec, w: WindowParams, e_star: float
) -> tuple[float, LimitLaw]:
    """Alternative statistics for alpha <= 1.

    alpha = 1: (e*/2n)^{sqrt n} with the Z** limit; alpha < 1: the
    exact-power Weibull statistic (before linearizing e*^{1-alpha} around
    2n).  Undefined in the other regimes.
    """
    two_n = 2.0 * w.n
    if not 0.0 < e_star <= two_n:
        raise DomainError(f"e_star must lie in (0, 2n], got {e_star!r}")
    a = spec.alpha
    if spec.regime is Regime.CRITICAL_1:
        value = math.exp(math.sqrt(w.n) * math.log(e_star / two_n))
        return value, ZSTARSTAR
    if spec.regime is Regime.SUB_CRITICAL:
        value = (
            2.0**-0.5 / (1.0 - a) * two_n ** (a / 2.0)
            * (e_star ** (1.0 - a) - two_n ** (1.0 - a))
        )
        return value, WEIBULL_TWO
    raise DomainError("alternative statistics exist only for alpha <= 1")
