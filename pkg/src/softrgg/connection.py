"""Symmetric connection functions g: distance -> edge probability."""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.integrate import quad

from . import _kernels
from .errors import DomainError

CAPPED_POWER = "capped-power"
EXP_FORM = "exp-form"
HARD_THRESHOLD = "hard-threshold"
ALWAYS_ONE = "always-one"
ALWAYS_ZERO = "always-zero"

_FORMS = (CAPPED_POWER, EXP_FORM, HARD_THRESHOLD, ALWAYS_ONE, ALWAYS_ZERO)
_FORM_CODES = {
    CAPPED_POWER: _kernels.CAPPED_POWER,
    EXP_FORM: _kernels.EXP_FORM,
    HARD_THRESHOLD: _kernels.HARD_THRESHOLD,
    ALWAYS_ONE: _kernels.ALWAYS_ONE,
    ALWAYS_ZERO: _kernels.ALWAYS_ZERO,
}


@dataclass(frozen=True)
class ConnectionFunction:
    """Connection probability as a function of displacement.

    ``capped-power`` is min(1, |x|^-alpha) and ``exp-form`` is
    1 - exp(-|x|^-alpha); both have the same |x|^-alpha tail.
    ``hard-threshold`` (the Gilbert graph indicator), ``always-one`` and
    ``always-zero`` are degenerate fixtures for the samplers.
    """

    form: str
    alpha: float = 0.0
    radius: float = 0.0

    def __post_init__(self) -> None:
        if self.form not in _FORMS:
            raise DomainError(f"unknown connection form {self.form!r}")
        if self.form in (CAPPED_POWER, EXP_FORM) and not self.alpha > 0:
            raise DomainError(f"{self.form} requires alpha > 0, got {self.alpha!r}")
        if self.form == HARD_THRESHOLD and not self.radius > 0:
            raise DomainError("hard-threshold requires radius > 0")

    @property
    def form_code(self) -> int:
        return _FORM_CODES[self.form]

    def evaluate(self, d: float) -> float:
        return evaluate(self, d)

    def tail_integral(self, a: float, b: float) -> float:
        return tail_integral(self, a, b)


def capped_power(alpha: float) -> ConnectionFunction:
    return ConnectionFunction(CAPPED_POWER, alpha=alpha)


def exp_form(alpha: float) -> ConnectionFunction:
    return ConnectionFunction(EXP_FORM, alpha=alpha)


def hard_threshold(radius: float) -> ConnectionFunction:
    return ConnectionFunction(HARD_THRESHOLD, radius=radius)


def always_one() -> ConnectionFunction:
    return ConnectionFunction(ALWAYS_ONE)


def always_zero() -> ConnectionFunction:
    return ConnectionFunction(ALWAYS_ZERO)


def evaluate(g: ConnectionFunction, d: float) -> float:
    """g(|d|); symmetric, with g(0) = 1 for the power forms."""
    if not math.isfinite(d):
        raise DomainError(f"distance must be finite, got {d!r}")
    x = abs(d)
    if g.form == CAPPED_POWER:
        if x <= 1.0:
            return 1.0
        return x**-g.alpha
    if g.form == EXP_FORM:
        if x == 0.0:
            return 1.0
        # x**-alpha can overflow for tiny x; the result saturates at 1.
        t = -g.alpha * math.log(x)
        if t >= 709.0:
            return 1.0
        return -math.expm1(-math.exp(t))
    if g.form == HARD_THRESHOLD:
        return 1.0 if x <= g.radius else 0.0
    if g.form == ALWAYS_ONE:
        return 1.0
    return 0.0


def _power_tail(alpha: float, a: float, b: float) -> float:
    # int_a^b s^-alpha ds, stable in alpha via expm1 (-> ln(b/a) at alpha = 1)
    t = (1.0 - alpha) * math.log(b / a)
    if alpha == 1.0 or t == 0.0:
        return a ** (1.0 - alpha) * math.log(b / a)
    return a ** (1.0 - alpha) * math.expm1(t) / (1.0 - alpha)


def tail_integral(g: ConnectionFunction, a: float, b: float) -> float:
    """Integral of g over [a, b] for 1 <= a <= b (pure-tail region)."""
    if not 1.0 <= a <= b:
        raise DomainError(f"tail_integral requires 1 <= a <= b, got a={a}, b={b}")
    if a == b:
        return 0.0
    if g.form == CAPPED_POWER:
        return _power_tail(g.alpha, a, b)
    if g.form == EXP_FORM:
        val, _ = quad(lambda s: -math.expm1(-(s**-g.alpha)), a, b,
                      epsabs=1e-12, epsrel=1e-10, limit=200)
        return val
    if g.form == HARD_THRESHOLD:
        return max(0.0, min(b, g.radius) - a)
    if g.form == ALWAYS_ONE:
        return b - a
    return 0.0
