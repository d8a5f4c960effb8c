"""Parameter sweeps, the second-law audit and the large-Omega gap audit.

All sweeps run in reduced units, hbar = m = omega0 = 1, so every reported
quantity is a ratio to ``E0`` (energies) or ``omega0`` (frequencies), and
temperatures are ``kT / (hbar omega0)``.
"""

from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from . import closed_form as cf
from . import quadrature as qd
from .errors import InvalidParameters, NearDegenerateDenominator, QBathError
from .model import PoleDecomposition
from .report import CLOSED_FORM, QUADRATURE, evaluate

MODES = (CLOSED_FORM, QUADRATURE, "both")

CSV_HEADER = (
    "gamma_over_w0",
    "omega_over_w0",
    "kT_over_hw0",
    "H_over_E0",
    "F_over_E0",
    "gap_over_E0",
    "asymptotic_gap_over_E0",
    "method",
    "second_law_pass",
)

STANDARD_GAMMAS = (0.1, 0.5, 1.0, 2.0, 3.0, 4.0)
STANDARD_OMEGAS = (1.5, 2.0, 5.0, 10.0, 50.0)


def _validated(values, name, strictly_positive=True):
    values = tuple(float(v) for v in values)
    if not values:
        raise InvalidParameters(f"{name} must be nonempty")
    for v in values:
        if not math.isfinite(v) or (v <= 0 if strictly_positive else v < 0):
            raise InvalidParameters(f"{name} has invalid entry {v!r}")
    if any(b <= a for a, b in zip(values, values[1:])):
        raise InvalidParameters(f"{name} must be sorted without duplicates")
    return values


@dataclass(frozen=True)
class SweepGrid:
    gamma_over_w0: Sequence[float]
    omega_over_w0: Sequence[float]
    temperatures: Sequence[float] = (0.0,)
    reduced: bool = True

    def __post_init__(self):
        object.__setattr__(self, "gamma_over_w0", _validated(self.gamma_over_w0, "gamma_over_w0"))
        object.__setattr__(self, "omega_over_w0", _validated(self.omega_over_w0, "omega_over_w0"))
        object.__setattr__(
            self, "temperatures", _validated(self.temperatures, "temperatures", strictly_positive=False)
        )
        if not self.reduced:
            raise InvalidParameters("sweeps are defined in reduced units only")

    def points(self):
        for kT in self.temperatures:
            for W in self.omega_over_w0:
                for g in self.gamma_over_w0:
                    yield g, W, kT

    def __len__(self):
        return len(self.gamma_over_w0) * len(self.omega_over_w0) * len(self.temperatures)


def standard_grid() -> SweepGrid:
    """The 30-point cross-validation grid."""
    return SweepGrid(STANDARD_GAMMAS, STANDARD_OMEGAS)


def fig2_grid(n: int = 80, omega: float = 5.0) -> SweepGrid:
    """Coupling-strength scan at fixed bath pole, ``gamma/omega0`` in [0.05, 4]."""
    return SweepGrid(np.linspace(0.05, 4.0, n), (omega,))


def fig1_grid(n_gamma: int = 40, n_omega: int = 40) -> SweepGrid:
    """Surface grid: ``gamma/omega0`` in [0.05, 4], log-spaced ``Omega/omega0`` in [1.5, 100]."""
    return SweepGrid(np.linspace(0.05, 4.0, n_gamma), np.geomspace(1.5, 100.0, n_omega))


@dataclass(frozen=True)
class SweepRow:
    gamma_over_w0: float
    omega_over_w0: float
    kT_over_hw0: float
    H_over_E0: float
    F_over_E0: float
    gap_over_E0: float
    asymptotic_gap_over_E0: float
    method: str
    second_law_pass: bool
    discrepancy: Optional[float] = None
    error: Optional[str] = None

    @property
    def failed(self) -> bool:
        return self.error is not None

    def csv_fields(self) -> list:
        out = []
        for name in CSV_HEADER:
            value = getattr(self, name)
            if isinstance(value, bool):
                out.append("true" if value else "false")
            elif isinstance(value, float):
                out.append(format(value, ".17g"))
            else:
                out.append(value)
        return out


def _max_rel(a: dict, b: dict) -> float:
    return max(abs(a[k] - b[k]) / abs(b[k]) for k in a)


def _evaluate_row(g, W, kT, cfg, mode):
    poles = PoleDecomposition(m=1.0, Omega=W, omega0=1.0, gamma=g)
    discrepancy = None
    if kT > 0 or mode == QUADRATURE:
        rep = evaluate(poles, kT, QUADRATURE, cfg)
        method = QUADRATURE
    else:
        try:
            rep = evaluate(poles, 0.0, CLOSED_FORM)
            method = CLOSED_FORM
        except NearDegenerateDenominator:
            rep = evaluate(poles, 0.0, QUADRATURE, cfg)
            method = "quadrature_fallback"
        if mode == "both" and method == CLOSED_FORM:
            quad = evaluate(poles, 0.0, QUADRATURE, cfg)
            skip = ("ground_energy",)
            discrepancy = _max_rel(
                {k: v for k, v in quad.as_dict().items() if k not in skip},
                {k: v for k, v in rep.as_dict().items() if k not in skip},
            )
            method = "both"
    E0 = rep.ground_energy
    H, F = rep.mean_energy / E0, rep.free_energy / E0
    return SweepRow(
        gamma_over_w0=g, omega_over_w0=W, kT_over_hw0=kT,
        H_over_E0=H, F_over_E0=F, gap_over_E0=F - H,
        asymptotic_gap_over_E0=g / math.pi,
        method=method, second_law_pass=bool(F - H > 0), discrepancy=discrepancy,
    )


def sweep_point(g: float, W: float, kT: float = 0.0, cfg=None, mode: str = CLOSED_FORM) -> SweepRow:
    """One grid point; any qbath error becomes a failed row rather than an exception."""
    try:
        return _evaluate_row(g, W, kT, cfg, mode)
    except QBathError as exc:
        nan = float("nan")
        return SweepRow(g, W, kT, nan, nan, nan, g / math.pi, "failed", False, error=str(exc))


def sweep(
    grid: SweepGrid,
    cfg: qd.QuadratureConfig | None = None,
    mode: str = CLOSED_FORM,
    workers: int = 1,
) -> list:
    """Evaluate every grid point; rows come back in grid order regardless of ``workers``."""
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    points = list(grid.points())
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(lambda p: sweep_point(*p, cfg=cfg, mode=mode), points))
    return [sweep_point(*p, cfg=cfg, mode=mode) for p in points]


def write_csv(rows: Iterable[SweepRow], stream) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow(row.csv_fields())


def to_csv(rows: Iterable[SweepRow]) -> str:
    buf = io.StringIO()
    write_csv(rows, buf)
    return buf.getvalue()


@dataclass
class AuditReport:
    rows: list
    passed: bool
    min_gap: float
    min_location: tuple
    violations: list = field(default_factory=list)
    failures: list = field(default_factory=list)
    informational: list = field(default_factory=list)

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        g, W = self.min_location
        lines = [
            f"second-law audit: {status}",
            f"  claimed region (Omega > omega0): {len(self.rows) - len(self.informational)} rows",
            f"  min (F - <H>)/E0 = {self.min_gap:.10g} at gamma/w0={g:g}, Omega/w0={W:g}",
            f"  violations: {len(self.violations)}, failed rows: {len(self.failures)}",
        ]
        if self.informational:
            info_min = min(r.gap_over_E0 for r in self.informational if not r.failed)
            lines.append(
                f"  Omega <= omega0 (informational): {len(self.informational)} rows, "
                f"min gap {info_min:.10g}"
            )
        return "\n".join(lines)


def second_law_audit(
    grid: SweepGrid,
    cfg: qd.QuadratureConfig | None = None,
    mode: str = CLOSED_FORM,
    workers: int = 1,
) -> AuditReport:
    """Check ``F_O > <H_O>`` on every point with ``Omega > omega0``.

    Points with ``Omega <= omega0`` are recorded but never fail the audit.
    A row that could not be evaluated in the claimed region also fails it,
    since the inequality is then unverified there.
    """
    rows = sweep(grid, cfg, mode, workers)
    claimed = [r for r in rows if r.omega_over_w0 > 1.0]
    informational = [r for r in rows if r.omega_over_w0 <= 1.0]
    failures = [r for r in claimed if r.failed]
    good = [r for r in claimed if not r.failed]
    violations = [r for r in good if not r.second_law_pass]
    if good:
        worst = min(good, key=lambda r: r.gap_over_E0)
        min_gap, loc = worst.gap_over_E0, (worst.gamma_over_w0, worst.omega_over_w0)
    else:
        min_gap, loc = float("nan"), (float("nan"), float("nan"))
    return AuditReport(
        rows=rows,
        passed=bool(good) and not violations and not failures,
        min_gap=min_gap,
        min_location=loc,
        violations=violations,
        failures=failures,
        informational=informational,
    )


def gap_ratio_correction(gamma_over_w0: float, omega_over_w0: float) -> float:
    """First-order large-Omega correction to ``r = (F - <H>) pi omega0 / (gamma E0)``.

    ``r - 1 = c1 / Omega + O(log(Omega)/Omega^2)`` with
    ``c1 = gamma (1 - log Omega) + (gamma^2/2 - 1) Phi`` in reduced units, where
    ``Phi`` is the damping phase.
    """
    g, W = gamma_over_w0, omega_over_w0
    phi = cf.damping_phase(g, 1.0).value
    return (g * (1.0 - math.log(W)) + (0.5 * g * g - 1.0) * phi) / W


@dataclass
class AsymptoticReport:
    gamma_over_w0: float
    omegas: list
    ratios: list
    predicted: list
    envelope: float
    within_envelope: bool
    monotone: bool

    @property
    def passed(self) -> bool:
        return self.within_envelope and self.monotone

    def summary(self) -> str:
        lines = [f"asymptotic gap audit, gamma/w0 = {self.gamma_over_w0:g}"]
        lines.append(f"  {'Omega/w0':>12} {'ratio r':>20} {'r - 1':>12} {'predicted':>12}")
        for W, r, p in zip(self.omegas, self.ratios, self.predicted):
            lines.append(f"  {W:12.6g} {r:20.15f} {r - 1:12.4e} {p:12.4e}")
        lines.append(
            f"  |r - 1| at largest Omega within envelope {self.envelope:.3e}: {self.within_envelope}; "
            f"monotone: {self.monotone}"
        )
        return "\n".join(lines)


def gap_ratio(poles: PoleDecomposition, mode: str = CLOSED_FORM, cfg=None) -> float:
    if mode == CLOSED_FORM:
        gap = cf.free_energy_T0(poles) - cf.mean_energy(poles)
    else:
        gap = qd.free_energy(poles, 0.0, cfg) - qd.mean_energy(poles, 0.0, cfg)
    return gap / cf.asymptotic_gap(poles)


def asymptotic_audit(
    gamma_over_w0: float,
    omega_list: Sequence[float],
    cfg: qd.QuadratureConfig | None = None,
    mode: str = CLOSED_FORM,
) -> AsymptoticReport:
    """Tabulate the gap ratio ``r(Omega)`` and test its approach to 1.

    The envelope at the largest ``Omega`` is ``(2 |c1| + 1) / Omega`` with
    ``c1`` from :func:`gap_ratio_correction`; ``|r - 1|`` must also shrink
    along the list.
    """
    omegas = _validated(omega_list, "omega_list")
    if omegas[-1] < 1e3:
        raise InvalidParameters("asymptotic audit needs max Omega/omega0 >= 1e3")
    if gamma_over_w0 <= 0:
        raise InvalidParameters("gamma_over_w0 must be > 0")
    ratios = [gap_ratio(PoleDecomposition(1.0, W, 1.0, gamma_over_w0), mode, cfg) for W in omegas]
    predicted = [gap_ratio_correction(gamma_over_w0, W) for W in omegas]
    W_max = omegas[-1]
    envelope = (2.0 * abs(predicted[-1]) * W_max + 1.0) / W_max
    errs = [abs(r - 1.0) for r in ratios]
    return AsymptoticReport(
        gamma_over_w0=gamma_over_w0,
        omegas=list(omegas),
        ratios=ratios,
        predicted=predicted,
        envelope=envelope,
        within_envelope=errs[-1] < envelope,
        monotone=all(b < a for a, b in zip(errs, errs[1:])),
    )
