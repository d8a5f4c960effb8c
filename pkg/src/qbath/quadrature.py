"""Quadrature oracles for the correlation function and the coupling free energy.

These integrate the spectral formulas directly, at zero or finite
temperature, and share no algebra with :mod:`qbath.closed_form`.  Semi-infinite
integrals are mapped to ``[0, 1)`` with ``w = s t / (1 - t)`` and handed to
an adaptive 15-point Gauss-Kronrod driver (no extrapolation, so sharp
resonances are not mistaken for endpoint singularities), with breakpoints placed at the
spectral features (``omega0``, ``Omega`` and any real oscillator pole).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, Union

import numpy as np
from scipy import integrate

from .errors import InvalidParameters, ToleranceNotMet
from .model import OVERDAMPED, PoleDecomposition, dlog_alpha, im_alpha, to_physical_parameters

#: oscillatory integrals (nonzero lag) are only asked for this relative accuracy
OSCILLATORY_RTOL = 1e-6
#: beyond ``_THERMAL_CUTOFF * kT / hbar`` thermal corrections are below e^-60
_THERMAL_CUTOFF = 60.0

TAIL_STRATEGIES = ("substitution", "cutoff")


@dataclass(frozen=True)
class QuadratureConfig:
    rtol: float = 1e-10
    atol: float = 1e-14
    max_subdivisions: int = 2000
    tail: str = "substitution"
    oscillatory: bool = False

    def __post_init__(self):
        if not (self.rtol > 0 and self.atol > 0):
            raise InvalidParameters("quadrature tolerances must be positive")
        if self.max_subdivisions < 50:
            raise InvalidParameters("max_subdivisions must be >= 50")
        if self.tail not in TAIL_STRATEGIES:
            raise InvalidParameters(f"tail must be one of {TAIL_STRATEGIES}, got {self.tail!r}")


@dataclass(frozen=True)
class BathTemperature:
    """Bath temperature as ``kT`` in energy units; ``kT == 0`` is exact zero temperature."""

    kT: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.kT) and self.kT >= 0):
            raise InvalidParameters(f"kT must be finite and >= 0, got {self.kT!r}")

    @property
    def is_zero(self) -> bool:
        return self.kT == 0.0


Temperature = Union[float, BathTemperature]


def _kT(T: Temperature) -> float:
    if isinstance(T, BathTemperature):
        return T.kT
    return BathTemperature(float(T)).kT


def _features(poles: PoleDecomposition) -> list:
    pts = {poles.omega0, poles.Omega}
    if poles.regime == OVERDAMPED:
        pts.update((poles.z1.real, poles.z2.real))
    return sorted(pts)


def _quad(fn, a, b, points, cfg, rtol, what):
    pts = [p for p in points if a < p < b] or None
    value, abserr, info = integrate.quad_vec(
        fn, a, b, epsabs=cfg.atol, epsrel=rtol, limit=cfg.max_subdivisions,
        points=pts, quadrature="gk15", full_output=True,
    )
    tol = max(cfg.atol, rtol * abs(value))
    if info.status == 1 or (info.status != 0 and abserr > tol):
        raise ToleranceNotMet(
            f"{what}: estimated error {abserr:.3e} exceeds {tol:.3e} "
            f"after {info.intervals.shape[0]} subintervals",
            value=value,
            abserr=abserr,
        )
    return float(value), float(abserr)


def integrate_half_line(
    fn: Callable[[float], float],
    features,
    cfg: QuadratureConfig,
    decay: float = 3.0,
    what: str = "integral",
) -> tuple:
    """Integrate ``fn`` over ``[0, inf)``; returns ``(value, abserr)``.

    ``decay`` is the power ``p`` in ``fn(w) ~ w^-p``, used only by the
    ``cutoff`` tail strategy to add the analytic remainder.
    """
    scale = max(features)
    rtol = max(cfg.rtol, OSCILLATORY_RTOL) if cfg.oscillatory else cfg.rtol
    if cfg.tail == "substitution" and not cfg.oscillatory:
        def mapped(t):
            if t >= 1.0:
                return 0.0
            u = 1.0 - t
            return fn(scale * t / u) * scale / (u * u)

        pts = [w / (w + scale) for w in features]
        return _quad(mapped, 0.0, 1.0, pts, cfg, rtol, what)

    cutoff = 50.0 * scale
    value, abserr = _quad(fn, 0.0, cutoff, features, cfg, rtol, what)
    # remainder of a w^-p tail; for oscillatory integrands it is only a bound
    tail = fn(cutoff) * cutoff / (decay - 1.0)
    if cfg.oscillatory:
        return value, abserr + abs(tail)
    return value + tail, abserr + 0.1 * abs(tail)


def _coth(x):
    return 1.0 / math.tanh(x)


def _correlation(poles, T, lag, cfg, hbar, power, what):
    kT = _kT(T)
    cfg = cfg or QuadratureConfig()
    spec = to_physical_parameters(poles)
    features = _features(poles)
    if lag != 0:
        features = sorted(set(features) | {2.0 * math.pi / abs(lag)})
        cfg = replace(cfg, oscillatory=True)

    def integrand(w):
        if w == 0.0:
            if kT == 0.0 or power > 0:
                return 0.0
            # coth(hw/2kT) ~ 2kT/hw and Im alpha ~ w zeta/K^2
            return hbar / math.pi * (2.0 * kT / hbar) * spec.zeta / spec.K ** 2
        val = float(im_alpha(poles, w, spec))
        if kT > 0:
            val *= _coth(hbar * w / (2.0 * kT))
        if power:
            val *= w ** power
        if lag != 0:
            val *= math.cos(w * lag)
        return hbar / math.pi * val

    return integrate_half_line(integrand, features, cfg, decay=5.0 - power, what=what)[0]


def correlation(
    poles: PoleDecomposition,
    T: Temperature = 0.0,
    lag: float = 0.0,
    cfg: QuadratureConfig | None = None,
    hbar: float = 1.0,
) -> float:
    """Symmetrized position correlation ``1/2 <x(t)x(t+lag) + x(t+lag)x(t)>``.

    At ``lag = 0`` this is ``<x^2>``.
    """
    return _correlation(poles, T, lag, cfg, hbar, 0, "position correlation")


def velocity_correlation(
    poles: PoleDecomposition,
    T: Temperature = 0.0,
    lag: float = 0.0,
    cfg: QuadratureConfig | None = None,
    hbar: float = 1.0,
) -> float:
    """Symmetrized velocity correlation; ``<xdot^2>`` at ``lag = 0``."""
    return _correlation(poles, T, lag, cfg, hbar, 2, "velocity correlation")


def mean_energy(
    poles: PoleDecomposition,
    T: Temperature = 0.0,
    cfg: QuadratureConfig | None = None,
    hbar: float = 1.0,
) -> float:
    """``m/2 <xdot^2> + K/2 <x^2>`` from the two correlation integrals."""
    K = to_physical_parameters(poles).K
    x2 = correlation(poles, T, 0.0, cfg, hbar)
    v2 = velocity_correlation(poles, T, 0.0, cfg, hbar)
    return 0.5 * poles.m * v2 + 0.5 * K * x2


def _im_dlog(poles, w):
    return float(dlog_alpha(poles, w).imag)


def _thermal_part(w, kT, hbar):
    """``f(w, T) - hbar w / 2 = kT log(1 - exp(-hbar w / kT))``."""
    return kT * math.log(-math.expm1(-hbar * w / kT))


def free_oscillator_free_energy(w: float, T: Temperature, hbar: float = 1.0) -> float:
    """Free energy ``kT log(2 sinh(hbar w / 2kT))`` of an isolated oscillator, zero point included."""
    kT = _kT(T)
    if kT == 0.0:
        return 0.5 * hbar * w
    return 0.5 * hbar * w + _thermal_part(w, kT, hbar)


def _thermal_integral(poles, weight, upper, cfg, what):
    cfg = cfg or QuadratureConfig()
    features = _features(poles)

    def integrand(w):
        if w == 0.0:
            return 0.0
        return weight(w) * _im_dlog(poles, w) / math.pi

    pts = [p for p in features if p < upper]
    return _quad(integrand, 0.0, upper, pts, cfg, cfg.rtol, what)[0]


def free_energy(
    poles: PoleDecomposition,
    T: Temperature = 0.0,
    cfg: QuadratureConfig | None = None,
    hbar: float = 1.0,
) -> float:
    """Free energy of oscillator plus bath minus that of the bath alone.

    Integrates ``(1/pi) f(w, T) Im dlog alpha(w)`` over ``w >= 0``.  The
    zero-point part ``hbar w / 2`` and the thermal part are integrated
    separately; the thermal part is exponentially confined to ``w < 60 kT``.
    """
    kT = _kT(T)
    cfg = cfg or QuadratureConfig()

    def zero_point(w):
        return 0.5 * hbar * w * _im_dlog(poles, w) / math.pi

    value = integrate_half_line(zero_point, _features(poles), cfg, decay=3.0,
                                what="free energy")[0]
    if kT > 0:
        value += _thermal_integral(
            poles, lambda w: _thermal_part(w, kT, hbar),
            _THERMAL_CUTOFF * kT / hbar, cfg, "thermal free energy",
        )
    return value


def entropy(
    poles: PoleDecomposition,
    T: Temperature,
    cfg: QuadratureConfig | None = None,
    hbar: float = 1.0,
) -> float:
    """Entropy ``-dF/dT`` in units of Boltzmann's constant.

    Central difference in ``kT`` with step ``1e-4 kT``, Richardson-extrapolated
    once.  The difference is taken inside the integrand so that both
    temperatures share quadrature nodes; the zero-point part cancels exactly.
    """
    kT = _kT(T)
    if kT <= 0:
        raise InvalidParameters("entropy requires kT > 0")
    h = 1e-4 * kT

    def slope(w, step):
        return (_thermal_part(w, kT + step, hbar) - _thermal_part(w, kT - step, hbar)) / (2 * step)

    def weight(w):
        return (4.0 * slope(w, 0.5 * h) - slope(w, h)) / 3.0

    dF = _thermal_integral(poles, weight, _THERMAL_CUTOFF * (kT + h) / hbar, cfg, "entropy")
    return -dF
