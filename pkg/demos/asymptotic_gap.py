"""
The gap at large bath cutoff
============================

When the bath pole Omega runs away, F - <H> settles at gamma/(pi omega0) in
units of E0.  The leading correction is c1/Omega with an explicit c1, which
this script compares against the exact closed forms.
"""

from qbath import PoleDecomposition, verify

for g in (0.2, 1.0):
    rep = verify.asymptotic_audit(g, [1e2, 1e3, 1e4, 1e5, 1e6])
    print(rep.summary())
    print()

###############################################################################
# Even at Omega = 5 omega0 the linear law is a fair estimate.
r = verify.gap_ratio(PoleDecomposition(1.0, 5.0, 1.0, 1.0))
print(f"ratio at Omega = 5, gamma = 1: {r:.4f}")
