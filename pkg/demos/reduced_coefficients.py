"""
Reduced Kronecker coefficients three ways
=========================================

A reduced coefficient of (r), (s) and (g1, g2) counts lattice points of a
small polygon.  Here we count them directly, read them off the chamber
formulas, and compare both with a stabilized character computation.
"""
from kron22 import reduced_kron_count, reduced_kron_fast, reduced_oracle
from kron22.polygon import lattice_points, polygon_constraints

h = (13, 8, 10, 6)

# The seven inequalities a*X + b*Y + c >= 0
for i, row in enumerate(polygon_constraints(h)):
    print(i, row)

print("points:", lattice_points(h))
print("count  :", reduced_kron_count(h))
print("chamber:", reduced_kron_fast(h))

###############################################################################
# The oracle needs no polygon at all.  It grows the first rows until the
# Kronecker coefficients stop changing.
small = (3, 2, 2, 1)
print("oracle :", reduced_oracle((small[0],), (small[1],), small[2:]), "vs", reduced_kron_count(small))

###############################################################################
# A quick table for r = s = 2
for g1 in range(5):
    print(g1, [reduced_kron_count((2, 2, g1, g2)) for g2 in range(g1 + 1)])
