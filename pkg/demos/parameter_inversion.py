"""
From friction and memory time to poles
======================================

The model is specified physically by mass m, spring constant K, friction
zeta and bath memory time tau.  All the closed forms are written in terms of
the three poles Omega, omega0 and gamma of the susceptibility.  Going from
physical to pole parameters means solving a cubic; this script walks through
one example and checks it against numpy's companion-matrix roots.
"""

import numpy as np

from qbath import OscillatorSpec, PoleDecomposition, to_physical_parameters, to_pole_parameters
from qbath.model import cubic_residuals

spec = OscillatorSpec(m=1.0, K=1.0, zeta=1.0, tau=0.1)
poles = to_pole_parameters(spec)
print(spec)
print(poles, poles.regime)

# companion-matrix roots of m tau s^3 - m s^2 + (K tau + zeta) s - K
roots = np.roots([spec.m * spec.tau, -spec.m, spec.K * spec.tau + spec.zeta, -spec.K])
print("numpy roots:   ", np.sort_complex(roots))
print("qbath poles:   ", np.sort_complex([poles.Omega, poles.z1, poles.z2]))
print("exact residual:", cubic_residuals(spec, poles))

###############################################################################
# Short memory: Omega ~ 1/tau and the oscillator sees plain Ohmic friction,
# gamma ~ zeta/m.
for tau in (1e-1, 1e-2, 1e-3):
    p = to_pole_parameters(OscillatorSpec(1.0, 1.0, 0.5, tau))
    print(f"tau={tau:g}: Omega*tau={p.Omega * tau:.6f} gamma={p.gamma:.6f}")

###############################################################################
# Overdamped poles can be relabelled: any of the three real roots may play the
# bath pole.  The inverse map always picks the largest one.
p = PoleDecomposition(1.0, 1.5, 1.0, 4.0)
q = to_pole_parameters(to_physical_parameters(p))
print("given:    ", p)
print("recovered:", q)
