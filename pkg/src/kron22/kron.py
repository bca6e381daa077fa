"""Kronecker coefficients of two two-row shapes from reduced coefficients.

``g[(n-r, r), (n-s, s)] ^ (l1, l2, l3)`` is an alternating sum of three
reduced coefficients of ``(r)`` and ``(s)``; a :class:`ReducedEngine` chooses
how those are computed.
"""
from __future__ import annotations

import enum
from typing import Callable, List, Optional, Sequence, Union

from . import oracle
from .chambers import ChamberCatalog, default_catalog
from .core import (InvalidTripleError, KronIndex, Partition, ReducedIndex, ZeroSignal,
                   to_kron_index, validate_triple)
from .polygon import reduced_kron_count


class ReducedEngine(str, enum.Enum):
    COUNT = "count"
    CHAMBER = "chamber"
    ORACLE = "oracle"

    def reduced(self, h: Sequence[int], catalog: Optional[ChamberCatalog] = None) -> int:
        h = ReducedIndex(*h)
        if not h.valid():
            raise ValueError(f"{h} is not a valid reduced index")
        if self is ReducedEngine.COUNT:
            return reduced_kron_count(h)
        if self is ReducedEngine.CHAMBER:
            return (catalog or default_catalog()).reduced_kron_fast(h)
        return oracle.reduced_oracle((h.r,), (h.s,), (h.g1, h.g2))


DEFAULT_ENGINE = ReducedEngine.CHAMBER


def dagger(lam: Sequence[int], i: int) -> tuple:
    """Increment the first ``i - 1`` parts of ``lam`` and drop the ``i``-th.

    ``lam`` is read with as many trailing zeros as needed.
    """
    if i < 1:
        raise ValueError("i must be positive")
    lam = tuple(lam) + (0,) * max(0, i - len(lam))
    out = tuple(p + 1 for p in lam[: i - 1]) + tuple(lam[i:])
    while out and out[-1] == 0:
        out = out[:-1]
    return out


ReducedProvider = Callable[[Partition, Partition, Partition], int]


def oracle_provider(alpha, beta, gamma) -> int:
    return oracle.reduced_oracle(alpha, beta, gamma)


def kron_from_reduced_general(lam, mu, nu, provider: ReducedProvider = oracle_provider,
                              l1: Optional[int] = None, l2: Optional[int] = None) -> int:
    """``g(lam, mu, nu)`` as the alternating sum over ``i = 1..l1*l2`` of reduced coefficients.

    ``l1`` and ``l2`` default to the lengths of ``mu`` and ``nu`` (at least 1).
    """
    lam, mu, nu = Partition(lam), Partition(mu), Partition(nu)
    if not (lam.weight == mu.weight == nu.weight):
        raise ValueError(f"weights differ: {lam}, {mu}, {nu}")
    l1 = l1 if l1 is not None else max(mu.length, 1)
    l2 = l2 if l2 is not None else max(nu.length, 1)
    if mu.length > l1 or nu.length > l2 or lam.length > l1 * l2:
        raise ValueError("lengths exceed (l1, l2, l1*l2)")
    mu_bar, nu_bar = Partition(mu[1:]), Partition(nu[1:])
    total = 0
    for i in range(1, l1 * l2 + 1):
        gamma = Partition(dagger(lam.padded(l1 * l2), i))
        term = provider(mu_bar, nu_bar, gamma)
        total += term if i % 2 else -term
    return total


def reduced_terms(idx: Sequence[int]) -> List[ReducedIndex]:
    """The three reduced indices entering the two-two-row formula, with signs ``+ - +``."""
    n, r, s, g1, g2 = idx
    l1, l2, l3 = n - g1 - g2, g1, g2
    return [ReducedIndex(r, s, l2, l3), ReducedIndex(r, s, l1 + 1, l3), ReducedIndex(r, s, l1 + 1, l2 + 1)]


def kron_two_row(idx: Sequence[int], engine: Union[ReducedEngine, str] = DEFAULT_ENGINE,
                 catalog: Optional[ChamberCatalog] = None) -> int:
    idx = KronIndex(*idx)
    if not idx.valid():
        raise ValueError(f"{idx} does not index three partitions of n")
    engine = ReducedEngine(engine)
    a, b, c = (engine.reduced(h, catalog) for h in reduced_terms(idx))
    return a - b + c


def kron_full(lam, mu, nu, engine: Union[ReducedEngine, str] = DEFAULT_ENGINE) -> int:
    """Any coefficient with ``mu``, ``nu`` of length at most two."""
    report = validate_triple(lam, mu, nu)
    if not report:
        raise InvalidTripleError(str(report))
    idx = to_kron_index(lam, mu, nu)
    if isinstance(idx, ZeroSignal):
        return 0
    return kron_two_row(idx, engine)


# ---------------------------------------------------------------------------
# Vanishing conditions

SYSTEMS = ("S1", "S2", "S3", "S4", "S5")


def vanishing_systems(idx: Sequence[int], printed_s5: bool = False) -> List[str]:
    """Names of the five vanishing systems satisfied by ``idx``.

    By default the parity clause of S5 is "g1 and g2 both even".  With
    ``printed_s5=True`` it is "g1 or g2 even", which the character oracle
    refutes (``(4, 2, 1, 1, 0)`` satisfies it but ``g = 1``).
    """
    idx = KronIndex(*idx)
    if not idx.valid():
        raise ValueError(f"{idx} does not index three partitions of n")
    n, r, s, g1, g2 = idx
    odd = (r + s + g1) % 2 == 1
    top = max(2 * r, 2 * s)
    out = []
    if n == 2 * s == 2 * r and (g1 % 2 or g2 % 2):
        out.append("S1")
    if n == top and g1 == g2 and odd:
        out.append("S2")
    if n == max(top, 2 * g1 + g2) and g2 == 0 and odd:
        out.append("S3")
    if n == 2 * g1 + g2 == top and odd:
        out.append("S4")
    even = (g1 % 2 == 0 or g2 % 2 == 0) if printed_s5 else (g1 % 2 == 0 and g2 % 2 == 0)
    if n == top and abs(r - s) == 1 and min(2 * r, 2 * s) >= 2 * g1 + g2 and even:
        out.append("S5")
    return out


def vanishing_by_conditions(idx: Sequence[int], printed_s5: bool = False) -> bool:
    return bool(vanishing_systems(idx, printed_s5))
