"""Kronecker coefficients indexed by two two-row shapes.

Three independent ways to compute the same numbers:

* :mod:`kron22.polygon` counts lattice points of a parametric polygon,
* :mod:`kron22.chambers` evaluates piecewise quasipolynomial formulas on a
  26-chamber fan,
* :mod:`kron22.oracle` uses symmetric group characters.

:mod:`kron22.kron` turns reduced coefficients into ordinary ones and
:mod:`kron22.stretch` studies dilations and saturation counterexamples.
"""
from .chambers import ChamberCatalog, chambers_containing, eval_q, f_form, in_delta_prime, reduced_kron_fast
from .core import (InvalidTripleError, KronIndex, Partition, ReducedIndex, ZeroSignal, partitions,
                   to_kron_index, validate_triple)
from .kron import (ReducedEngine, dagger, kron_from_reduced_general, kron_full, kron_two_row,
                   vanishing_by_conditions, vanishing_systems)
from .oracle import character, kron_oracle, reduced_oracle
from .polygon import count_lattice_points, polygon_constraints, reduced_kron_count
from .quasi import Quasipolynomial
from .stretch import IndexBox, find_sh_counterexamples, fit_quasipolynomial, stretch_profile, stretch_samples

__version__ = "0.1.0"
