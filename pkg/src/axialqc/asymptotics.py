"""Analytic limits of the thermal correlations.

* leading ``1/T**2`` coefficients of all four branches at high temperature;
* the closed form of ``F0(T)`` for the isotropic XXX model and its universal
  zero-temperature value 8/9.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .exceptions import NonpositiveTemperature
from .thermal import HamiltonianParams

__all__ = ["HighTCoefficients", "high_t_coefficients", "xxx_f0", "xxx_zero_t_limit"]


@dataclass(frozen=True)
class HighTCoefficients:
    """``T**2 * branch`` as ``T -> infinity``."""

    cU0: float
    cU1: float
    cF0: float
    cF1: float


def high_t_coefficients(p: HamiltonianParams) -> HighTCoefficients:
    transverse = p.J ** 2 + p.Dz ** 2 + p.Gamma ** 2 + p.Lambda ** 2
    cU0 = transverse / 6.0
    cU1 = (3 * p.B1 ** 2 + 4 * p.B1 * p.K2
           + 2 * (transverse + p.Jz ** 2 + p.K2 ** 2)) / 24.0
    return HighTCoefficients(cU0=cU0, cU1=cU1, cF0=2.0 * cU0, cF1=2.0 * cU1)


def xxx_f0(J: float, T: float) -> float:
    """``F0(T)`` of the XXX model ``J = Jz`` with every other coupling zero."""
    if not T > 0:
        raise NonpositiveTemperature(f"temperature must be positive, got {T!r}")
    x = 3.0 * J / (4.0 * T)
    # sinh(x) e^x / (2 + e^{2x}) == (e^{2x} - 1) / (2 (2 + e^{2x}))
    if x >= 0:
        t = math.exp(-2.0 * x)
        ratio = -math.expm1(-2.0 * x) / (2.0 * (2.0 * t + 1.0))
    else:
        ratio = math.expm1(2.0 * x) / (2.0 * (2.0 + math.exp(2.0 * x)))
    return 16.0 / 9.0 * math.tanh(x) * ratio


def xxx_zero_t_limit() -> float:
    return 8.0 / 9.0
