"""
Excess energy over the coupling plane
=====================================

The ratio <H>/E0 over a 40 x 40 grid of coupling strength and bath pole
position.  It exceeds one everywhere once gamma > 0 and grows with gamma,
the zero-temperature signature of an oscillator that is entangled with its
environment.
"""

import matplotlib.pyplot as plt
import numpy as np

from qbath import verify

grid = verify.fig1_grid()
rows = verify.sweep(grid, workers=4)

# rows come back with gamma varying fastest
shape = (len(grid.omega_over_w0), len(grid.gamma_over_w0))
H = np.array([r.H_over_E0 for r in rows]).reshape(shape)
print(f"<H>/E0 ranges over [{H.min():.4f}, {H.max():.4f}]")

fig, ax = plt.subplots()
mesh = ax.pcolormesh(grid.gamma_over_w0, grid.omega_over_w0, H, shading="auto")
ax.set_yscale("log")
ax.set_xlabel(r"$\gamma/\omega_0$")
ax.set_ylabel(r"$\Omega/\omega_0$")
fig.colorbar(mesh, label=r"$\langle H_O\rangle/E_0$")
fig.savefig("energy_surface.png", dpi=120)
plt.show()
