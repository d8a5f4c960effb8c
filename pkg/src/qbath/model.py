"""Oscillator plus single-relaxation-time bath: parameter maps and susceptibility.

Two equivalent parameterizations are used throughout:

* physical:  mass ``m``, force constant ``K``, friction ``zeta`` and bath
  relaxation time ``tau``, with memory function ``zeta / (1 - i w tau)``;
* pole:      mass ``m``, bath pole ``Omega``, shifted frequency ``omega0`` and
  shifted rate ``gamma``.  The susceptibility has poles at ``w = -i Omega``,
  ``-i z1``, ``-i z2`` with ``z1,2 = gamma/2 +- i omega1`` and
  ``omega1 = sqrt(omega0**2 - gamma**2/4)``.

The forward map pole -> physical is explicit.  The inverse needs the roots of
the real cubic ``m tau s^3 - m s^2 + (K tau + zeta) s - K = 0`` whose roots are
``Omega, z1, z2``.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .errors import DegeneratePoles, InvalidParameters, NoPhysicalRoot

ArrayLike = Union[float, np.ndarray]

#: relative distance below which two poles are treated as coincident
DEGENERACY_RTOL = 1e-9

UNDERDAMPED = "underdamped"
CRITICAL = "critical"
OVERDAMPED = "overdamped"


@dataclass(frozen=True)
class OscillatorSpec:
    """Physical parameters of the oscillator and its bath coupling.

    Args:
        m: mass (> 0)
        K: force constant (> 0)
        zeta: Ohmic friction constant (>= 0, zero decouples the bath)
        tau: bath relaxation time (> 0)
    """

    m: float
    K: float
    zeta: float
    tau: float

    def __post_init__(self):
        for name in ("m", "K", "tau"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise InvalidParameters(f"{name} must be finite and > 0, got {value!r}")
        if not (math.isfinite(self.zeta) and self.zeta >= 0):
            raise InvalidParameters(f"zeta must be finite and >= 0, got {self.zeta!r}")

    @property
    def in_physical_regime(self) -> bool:
        """True when ``tau < m / zeta`` (short bath memory)."""
        return self.zeta == 0 or self.tau * self.zeta < self.m


@dataclass(frozen=True)
class PoleDecomposition:
    """Pole-side parameters ``(m, Omega, omega0, gamma)``."""

    m: float
    Omega: float
    omega0: float
    gamma: float
    regime: str = field(init=False)

    def __post_init__(self):
        for name in ("m", "Omega", "omega0"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise InvalidParameters(f"{name} must be finite and > 0, got {value!r}")
        if not (math.isfinite(self.gamma) and self.gamma >= 0):
            raise InvalidParameters(f"gamma must be finite and >= 0, got {self.gamma!r}")
        half = 0.5 * self.gamma
        if half < self.omega0:
            regime = UNDERDAMPED
        elif half > self.omega0:
            regime = OVERDAMPED
        else:
            regime = CRITICAL
        object.__setattr__(self, "regime", regime)
        scale = max(self.Omega, self.omega0, self.gamma)
        for z in (self.z1, self.z2):
            if abs(self.Omega - z) < DEGENERACY_RTOL * scale:
                raise DegeneratePoles(
                    f"bath pole Omega={self.Omega!r} coincides with oscillator pole {z!r}"
                )

    @property
    def omega1(self) -> complex:
        """``sqrt(omega0^2 - gamma^2/4)``; purely imaginary when overdamped."""
        return cmath.sqrt(self.omega1_sq)

    @property
    def omega1_sq(self) -> float:
        return (self.omega0 - 0.5 * self.gamma) * (self.omega0 + 0.5 * self.gamma)

    @property
    def z1(self) -> complex:
        if self.regime == OVERDAMPED:
            # gamma/2 - sqrt(gamma^2/4 - omega0^2) cancels; use z1 z2 = omega0^2
            return complex(self.omega0 ** 2 / self.z2.real)
        return 0.5 * self.gamma + 1j * self.omega1

    @property
    def z2(self) -> complex:
        if self.regime == OVERDAMPED:
            return complex(0.5 * self.gamma + math.sqrt(-self.omega1_sq))
        return 0.5 * self.gamma - 1j * self.omega1

    @property
    def poles(self) -> tuple:
        """Pole positions in the complex frequency plane (all in Im w < 0)."""
        return (-1j * self.Omega, -1j * self.z1, -1j * self.z2)


def to_physical_parameters(poles: PoleDecomposition) -> OscillatorSpec:
    """Map pole parameters to ``(m, K, zeta, tau)``."""
    m, W, w0, g = poles.m, poles.Omega, poles.omega0, poles.gamma
    s = W + g
    K = m * w0 * w0 * W / s
    zeta = m * g * (W * s + w0 * w0) / (s * s)
    return OscillatorSpec(m=m, K=K, zeta=zeta, tau=1.0 / s)


def _cubic_bath_root(a: float, b: float) -> float:
    """Bath root of ``x^3 - x^2 + (a + b) x - a = 0`` with a > 0, b >= 0.

    This is the pole cubic written in ``x = s tau``.  Returns the unique real
    root when the other two are complex, otherwise the largest of the three.
    """
    e = a + b
    # depressed cubic y^3 + p y + q with x = y + 1/3
    p = e - 1.0 / 3.0
    q = (b - 2.0 * a) / 3.0 - 2.0 / 27.0
    disc = (0.5 * q) ** 2 + (p / 3.0) ** 3
    if disc > 0:
        # add magnitudes to avoid cancellation, then use u v = -p/3
        u3 = -0.5 * q - math.copysign(math.sqrt(disc), q)
        u = math.copysign(abs(u3) ** (1.0 / 3.0), u3)
        y = u - p / (3.0 * u) if u != 0 else 0.0
    else:
        r = math.sqrt(-p / 3.0)
        c = 1.5 * q / (p * r) if p != 0 else 0.0
        theta = math.acos(min(1.0, max(-1.0, c)))
        y = 2.0 * r * math.cos(theta / 3.0)
    x = y + 1.0 / 3.0

    for _ in range(4):
        f = ((x - 1.0) * x + e) * x - a
        df = (3.0 * x - 2.0) * x + e
        if df == 0:
            break
        step = f / df
        x -= step
        if abs(step) <= 4e-16 * abs(x):
            break
    return x


def to_pole_parameters(spec: OscillatorSpec) -> PoleDecomposition:
    """Invert the parameter map by solving the pole cubic.

    The bath pole ``Omega`` is the real root that tends to ``1/tau`` as
    ``tau -> 0``; ``gamma`` and ``omega0`` follow from Vieta's relations in a
    form free of cancellation.

    Raises:
        DegeneratePoles: the bath pole coincides with an oscillator pole.
        NoPhysicalRoot: the cubic has no positive real root (internal error).
    """
    m, K, zeta, tau = spec.m, spec.K, spec.zeta, spec.tau
    a = K * tau * tau / m
    b = zeta * tau / m
    x = _cubic_bath_root(a, b)
    if not (math.isfinite(x) and x > 0):
        raise NoPhysicalRoot(f"pole cubic returned x={x!r} for {spec}")
    Omega = _polish_bath_root(spec, x / tau)
    gamma = zeta * Omega / (tau * (m * Omega * Omega + K))
    omega0 = math.sqrt(K / (m * tau * Omega))
    return PoleDecomposition(m=m, Omega=Omega, omega0=omega0, gamma=gamma)


def _exact_cubic(spec: OscillatorSpec, s: complex) -> complex:
    """Pole cubic at ``s`` in exact rational arithmetic, rounded once at the end.

    Floating-point Horner evaluation carries rounding noise of order
    ``eps * m tau |s|^3``, which can dwarf ``K``; exact evaluation measures
    the root itself rather than the arithmetic.
    """
    m, K, zeta, tau = (Fraction(v) for v in (spec.m, spec.K, spec.zeta, spec.tau))
    a, b = Fraction(s.real), Fraction(s.imag)
    re, im = m * tau, Fraction(0)
    for c in (-m, K * tau + zeta, -K):
        re, im = re * a - im * b + c, re * b + im * a
    return complex(float(re), float(im))


def _polish_bath_root(spec: OscillatorSpec, Omega: float) -> float:
    """One Newton step on the unscaled cubic with an exactly evaluated residual."""
    m, K, zeta, tau = spec.m, spec.K, spec.zeta, spec.tau
    f = _exact_cubic(spec, complex(Omega)).real
    df = (3.0 * m * tau * Omega - 2.0 * m) * Omega + (K * tau + zeta)
    if f == 0 or df == 0:
        return Omega
    trial = Omega - f / df
    if abs(_exact_cubic(spec, complex(trial)).real) < abs(f):
        return trial
    return Omega


def cubic_residuals(spec: OscillatorSpec, poles: PoleDecomposition) -> tuple:
    """``|m tau s^3 - m s^2 + (K tau + zeta) s - K|`` at ``s = Omega, z1, z2``, evaluated exactly."""
    return tuple(abs(_exact_cubic(spec, s)) for s in (complex(poles.Omega), poles.z1, poles.z2))


def alpha(poles: PoleDecomposition, w: ArrayLike) -> ArrayLike:
    """Susceptibility from the factored (pole) form, for real ``w``."""
    w = np.asarray(w, dtype=float)
    W, g = poles.Omega, poles.gamma
    num = w + 1j * (W + g)
    den = -poles.m * (w + 1j * W) * (w + 1j * poles.z1) * (w + 1j * poles.z2)
    return num / den


def alpha_unfactored(spec: OscillatorSpec, w: ArrayLike) -> ArrayLike:
    """Susceptibility ``1 / (-m w^2 - i w mu(w) + K)`` with ``mu = zeta/(1 - i w tau)``."""
    w = np.asarray(w, dtype=float)
    mu = spec.zeta / (1.0 - 1j * w * spec.tau)
    return 1.0 / (-spec.m * w * w - 1j * w * mu + spec.K)


def im_alpha(poles: PoleDecomposition, w: ArrayLike, spec: OscillatorSpec | None = None) -> ArrayLike:
    """``Im alpha(w)`` evaluated without cancellation.

    ``Im alpha = w zeta / ((1 + w^2 tau^2) |D|^2)`` with ``D = 1/alpha``.  The
    numerator is the exact imaginary part of ``-D`` and ``|D|^2`` is a product
    of pole distances, so relative accuracy holds both at a sharp resonance
    and in the far tail where ``Im alpha ~ w^-5``.
    """
    if spec is None:
        spec = to_physical_parameters(poles)
    w = np.asarray(w, dtype=float)
    im_d = w * spec.zeta / (1.0 + (w * spec.tau) ** 2)
    d2 = (
        np.abs(w + 1j * poles.Omega) * np.abs(w + 1j * poles.z1) * np.abs(w + 1j * poles.z2)
        * poles.m / np.abs(w + 1j * (poles.Omega + poles.gamma))
    ) ** 2
    return im_d / d2


def dlog_alpha(poles: PoleDecomposition, w: ArrayLike) -> ArrayLike:
    """Exact ``d log alpha / dw`` on the real axis.

    ``1/(w + i(Omega+gamma)) - 1/(w + i Omega) - 1/(w + i z1) - 1/(w + i z2)``.
    For ``|w|`` above every pole magnitude the algebraically equivalent form
    ``-2/w - w^-2 sum_k c_k a_k^2 / (w + i a_k)`` is used; the ``a_k / w^2``
    pieces cancel exactly there, so the ``O(w^-4)`` imaginary part is kept.
    """
    w = np.asarray(w, dtype=float)
    a = np.array([poles.Omega + poles.gamma, poles.Omega, poles.z1, poles.z2], dtype=complex)
    c = np.array([1.0, -1.0, -1.0, -1.0])
    big = np.abs(w) > np.max(np.abs(a))
    wc = w[..., None]
    with np.errstate(divide="ignore", invalid="ignore"):
        near = np.sum(c / (wc + 1j * a), axis=-1)
        far = -2.0 / w - np.sum(c * a * a / (wc + 1j * a), axis=-1) / (w * w)
    out = np.where(big, far, near)
    return out[()] if out.ndim == 0 else out


class Susceptibility:
    """Evaluator bundling the factored and unfactored forms of ``alpha``."""

    def __init__(self, poles: PoleDecomposition):
        self.poles = poles
        self.spec = to_physical_parameters(poles)

    @classmethod
    def from_spec(cls, spec: OscillatorSpec) -> "Susceptibility":
        return cls(to_pole_parameters(spec))

    def __call__(self, w: ArrayLike) -> ArrayLike:
        return alpha(self.poles, w)

    def unfactored(self, w: ArrayLike) -> ArrayLike:
        return alpha_unfactored(self.spec, w)

    def imag(self, w: ArrayLike) -> ArrayLike:
        return im_alpha(self.poles, w, self.spec)

    def dlog(self, w: ArrayLike) -> ArrayLike:
        return dlog_alpha(self.poles, w)
