"""
The 26-chamber fan
==================

Every chamber carries a quasipolynomial.  Starting from the chamber 135 and
crossing walls adds one of three simple differences.
"""
import numpy as np

from kron22.chambers import default_catalog

catalog = default_catalog()
print(len(catalog), "chambers,", len(catalog.edges), "edges")

###############################################################################
# Which chamber holds a point, and the path taken to reach its formula
h = (8, 13, 10, 6)
for chamber in catalog.chambers_containing(h):
    print(chamber.name, "path", " -> ".join(catalog.path_from_root(chamber.name)), "value", catalog.eval_q(chamber, h))

print(catalog.quasipolynomial("035").describe())

###############################################################################
# Vectorized evaluation of a whole box
grid = np.array(np.meshgrid(*[np.arange(11)] * 4, indexing="ij")).reshape(4, -1).T
grid = grid[grid[:, 2] >= grid[:, 3]]
values = catalog.reduced_kron_fast_array(grid)
print(len(grid), "points, largest value", values.max(), "at", grid[values.argmax()])
