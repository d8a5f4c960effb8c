"""Bundled evaluation of all observables at one parameter point."""

from __future__ import annotations

from dataclasses import dataclass, field

from . import closed_form as cf
from . import quadrature as qd
from .model import PoleDecomposition, to_physical_parameters

CLOSED_FORM = "closed_form"
QUADRATURE = "quadrature"

OBSERVABLES = ("mean_sq_position", "mean_sq_velocity", "mean_energy", "ground_energy", "free_energy")


@dataclass(frozen=True)
class ThermoReport:
    mean_sq_position: float
    mean_sq_velocity: float
    mean_energy: float
    ground_energy: float
    free_energy: float
    methods: dict = field(default_factory=dict)
    kT: float = 0.0

    def as_dict(self) -> dict:
        return {name: getattr(self, name) for name in OBSERVABLES}

    def energy_identity_residual(self, poles: PoleDecomposition) -> float:
        """Relative mismatch of ``<H> = m/2 <xdot^2> + K/2 <x^2>``."""
        K = to_physical_parameters(poles).K
        combo = 0.5 * poles.m * self.mean_sq_velocity + 0.5 * K * self.mean_sq_position
        return abs(self.mean_energy - combo) / abs(combo)


def evaluate(
    poles: PoleDecomposition,
    kT: float = 0.0,
    method: str = CLOSED_FORM,
    cfg: qd.QuadratureConfig | None = None,
    hbar: float = 1.0,
) -> ThermoReport:
    """Evaluate every observable with the requested method.

    Closed forms exist only at ``kT == 0``; at finite temperature the
    quadrature routines are used whatever ``method`` says, and the per-field
    method tags record what was actually done.  The ground-state energy is
    always the exact expression.
    """
    if method not in (CLOSED_FORM, QUADRATURE):
        raise ValueError(f"unknown method {method!r}")
    if method == CLOSED_FORM and kT == 0:
        values = {
            "mean_sq_position": cf.mean_sq_position(poles, hbar),
            "mean_sq_velocity": cf.mean_sq_velocity(poles, hbar),
            "mean_energy": cf.mean_energy(poles, hbar),
            "free_energy": cf.free_energy_T0(poles, hbar),
        }
        tag = CLOSED_FORM
    else:
        K = to_physical_parameters(poles).K
        x2 = qd.correlation(poles, kT, 0.0, cfg, hbar)
        v2 = qd.velocity_correlation(poles, kT, 0.0, cfg, hbar)
        values = {
            "mean_sq_position": x2,
            "mean_sq_velocity": v2,
            "mean_energy": 0.5 * poles.m * v2 + 0.5 * K * x2,
            "free_energy": qd.free_energy(poles, kT, cfg, hbar),
        }
        tag = QUADRATURE
    methods = {name: tag for name in values}
    methods["ground_energy"] = CLOSED_FORM
    return ThermoReport(
        ground_energy=cf.ground_energy(poles, hbar), methods=methods, kT=kT, **values
    )
