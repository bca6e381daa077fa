"""
Stretching and saturation
=========================

Dilating all three shapes by N gives a quasipolynomial in N of period 2.
Sometimes it vanishes at N = 1 without vanishing identically.
"""
from kron22 import IndexBox, find_sh_counterexamples, stretch_profile

profile = stretch_profile((10, 4, 3, 3, 1), 12)
print([v for _, v in profile.samples])
print(profile.fitted.describe())

###############################################################################
# Search a box for indices with g = 0 whose odd dilations are not all zero.
# Every hit is recomputed with characters before it is reported.
for cert in find_sh_counterexamples(IndexBox(12)):
    print(tuple(cert.index), cert.oracle_values, cert.systems)

bad = stretch_profile((12, 5, 6, 4, 2), 12)
print([v for _, v in bad.samples])
print(bad.fitted.describe())
