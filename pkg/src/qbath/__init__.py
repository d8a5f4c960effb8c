"""Zero-temperature thermodynamics of an oscillator coupled to a single-relaxation-time bath."""

from .closed_form import (
    asymptotic_gap,
    damping_phase,
    free_energy_T0,
    ground_energy,
    mean_energy,
    mean_sq_position,
    mean_sq_velocity,
)
from .errors import (
    DegeneratePoles,
    InvalidParameters,
    NearDegenerateDenominator,
    NoPhysicalRoot,
    QBathError,
    ToleranceNotMet,
)
from .model import (
    OscillatorSpec,
    PoleDecomposition,
    Susceptibility,
    alpha,
    dlog_alpha,
    to_physical_parameters,
    to_pole_parameters,
)
from .quadrature import BathTemperature, QuadratureConfig
from .report import ThermoReport, evaluate

__version__ = "0.1.0"
