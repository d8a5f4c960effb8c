"""
Plotting a sweep CSV
====================

Plain plotting companion to ``qbath figure --fig2 --out fig2.csv`` (or any
``qbath sweep`` output with a single Omega).  Usage::

    python plot_csv.py fig2.csv
"""

import sys

import matplotlib.pyplot as plt
import numpy as np

path = sys.argv[1] if len(sys.argv) > 1 else "fig2.csv"
data = np.genfromtxt(path, delimiter=",", names=True, dtype=None, encoding="utf-8", comments="#")

plt.plot(data["gamma_over_w0"], data["F_over_E0"], label="F/E0")
plt.plot(data["gamma_over_w0"], data["H_over_E0"], label="<H>/E0")
plt.xlabel("gamma/omega0")
plt.legend()
plt.savefig(path.rsplit(".", 1)[0] + ".png", dpi=120)
plt.show()
