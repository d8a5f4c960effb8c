"""Exact zero-temperature observables of the damped oscillator.

Every ``arccos(gamma / 2 omega0) / omega1`` combination is routed through
:func:`damping_phase`, which is real on both sides of critical damping, so no
intermediate quantity becomes complex in the overdamped regime.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NearDegenerateDenominator
from .model import CRITICAL, OVERDAMPED, UNDERDAMPED, PoleDecomposition

#: |gamma/(2 omega0) - 1| below which the Taylor series of the phase is used
_CRITICAL_WINDOW = 5e-5
#: relative size of Omega^2 - gamma Omega + omega0^2 below which closed forms are refused
DENOMINATOR_RTOL = 1e-9

# theta / sin(theta) with u = cos(theta), expanded in d = u - 1
_PHASE_SERIES = (1.0, -1.0 / 3.0, 2.0 / 15.0, -2.0 / 35.0, 8.0 / 315.0, -8.0 / 693.0)


@dataclass(frozen=True)
class DampingPhase:
    """``arccos(gamma/2w0)/omega1`` continued to a real function of gamma."""

    value: float
    regime: str


def damping_phase(gamma: float, omega0: float) -> DampingPhase:
    """Return ``arccos(u)/sqrt(w0^2 - g^2/4)`` (``arccosh`` form when overdamped).

    ``u = gamma / (2 omega0)``.  Close to ``u = 1`` the removable singularity is
    bridged with a Taylor series; the limit there is ``1 / omega0``.
    """
    u = 0.5 * gamma / omega0
    d = u - 1.0
    if abs(d) < _CRITICAL_WINDOW:
        acc = 0.0
        for coef in reversed(_PHASE_SERIES):
            acc = acc * d + coef
        regime = CRITICAL if d == 0 else (UNDERDAMPED if d < 0 else OVERDAMPED)
        return DampingPhase(acc / omega0, regime)
    if d < 0:
        root = math.sqrt((1.0 - u) * (1.0 + u))
        return DampingPhase(math.atan2(root, u) / (omega0 * root), UNDERDAMPED)
    root = math.sqrt(d * (1.0 + u))
    return DampingPhase(math.log1p(d + root) / (omega0 * root), OVERDAMPED)


def _collision_denominator(poles: PoleDecomposition) -> float:
    W, w0, g = poles.Omega, poles.omega0, poles.gamma
    q = W * W - g * W + w0 * w0
    if abs(q) < DENOMINATOR_RTOL * (W * W + w0 * w0):
        raise NearDegenerateDenominator(
            f"Omega^2 - gamma Omega + omega0^2 = {q!r} for {poles}; use quadrature"
        )
    return q


def mean_sq_position(poles: PoleDecomposition, hbar: float = 1.0) -> float:
    """Zero-temperature ``<x^2>``."""
    W, w0, g, m = poles.Omega, poles.omega0, poles.gamma, poles.m
    q = _collision_denominator(poles)
    phi = damping_phase(g, w0).value
    num = (W * W + w0 * w0 - 0.5 * g * g) * phi - g * math.log(W / w0)
    return hbar * num / (math.pi * m * q)


def mean_sq_velocity(poles: PoleDecomposition, hbar: float = 1.0) -> float:
    """Zero-temperature ``<xdot^2>``."""
    W, w0, g, m = poles.Omega, poles.omega0, poles.gamma, poles.m
    q = _collision_denominator(poles)
    phi = damping_phase(g, w0).value
    W2, w02 = W * W, w0 * w0
    num = (W2 * (w02 - 0.5 * g * g) + w02 * w02) * phi + g * W2 * math.log(W / w0)
    return hbar * num / (math.pi * m * q)


def mean_energy(poles: PoleDecomposition, hbar: float = 1.0) -> float:
    """Zero-temperature mean oscillator energy ``<H_O>``, evaluated directly."""
    W, w0, g = poles.Omega, poles.omega0, poles.gamma
    q = _collision_denominator(poles)
    phi = damping_phase(g, w0).value
    W2, w02 = W * W, w0 * w0
    s = W + g
    a = ((W2 + w02) * (2.0 * W * poles.omega1_sq + g * w02) - 0.5 * g ** 3 * W2) / (s * q)
    b = g * W * (W2 + g * W - w02) / (s * q)
    return hbar / (2.0 * math.pi) * (a * phi + b * math.log(W / w0))


def ground_energy(poles: PoleDecomposition, hbar: float = 1.0) -> float:
    """Ground-state energy ``hbar/2 sqrt(K/m)`` of the isolated oscillator."""
    return 0.5 * hbar * poles.omega0 * math.sqrt(poles.Omega / (poles.Omega + poles.gamma))


def free_energy_T0(poles: PoleDecomposition, hbar: float = 1.0) -> float:
    """Zero-temperature coupling free energy (minimum work to couple)."""
    W, w0, g = poles.Omega, poles.omega0, poles.gamma
    phi = damping_phase(g, w0).value
    terms = (
        2.0 * poles.omega1_sq * phi
        + g * math.log(W / w0)
        + (W + g) * math.log1p(g / W)
    )
    return hbar / (2.0 * math.pi) * terms


def asymptotic_gap(poles: PoleDecomposition, hbar: float = 1.0) -> float:
    """Large-``Omega`` limit of ``F_O(0) - <H_O>``: ``gamma E0 / (pi omega0)``."""
    return poles.gamma / (math.pi * poles.omega0) * ground_energy(poles, hbar)
