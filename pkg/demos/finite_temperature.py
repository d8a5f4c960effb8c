"""
Warming the bath
================

At finite temperature there are no closed forms, only the spectral integrals.
This script follows the free energy, entropy and mean energy of a moderately
damped oscillator from near zero temperature into the classical regime.
"""

import math

from qbath import PoleDecomposition
from qbath import quadrature as qd

poles = PoleDecomposition(m=1.0, Omega=5.0, omega0=1.0, gamma=1.0)

print(f"{'kT':>8} {'F':>12} {'F (free)':>12} {'S':>10} {'<H>':>10}")
for kT in (1e-3, 0.1, 0.3, 1.0, 3.0, 10.0):
    F = qd.free_energy(poles, kT)
    S = qd.entropy(poles, kT)
    H = qd.mean_energy(poles, kT)
    print(f"{kT:8g} {F:12.6f} {qd.free_oscillator_free_energy(1.0, kT):12.6f} {S:10.6f} {H:10.6f}")

###############################################################################
# At low temperature the entropy is linear in T with slope set by the
# low-frequency friction, (pi/3) (gamma/omega0^2 + 1/Omega - 1/(Omega+gamma)).
slope = math.pi / 3 * (1.0 + 1 / 5.0 - 1 / 6.0)
print(f"S(1e-3)/1e-3 = {qd.entropy(poles, 1e-3) / 1e-3:.5f}, predicted {slope:.5f}")
