"""Reduced Kronecker coefficients of two one-row shapes by counting lattice points.

The reduced coefficient indexed by ``(r)``, ``(s)`` and ``(g1, g2)`` is the number
of integer points ``(X, Y)`` satisfying seven inequalities ``a X + b Y + c >= 0``
whose constants ``c`` are linear in ``h = (r, s, g1, g2)``.
"""
from __future__ import annotations

from typing import NamedTuple, Sequence

from .core import ReducedIndex

#: (a, b) coefficients of X and Y for rows 0..6.
DIRECTIONS = ((1, 0), (1, 0), (1, 1), (0, 1), (-1, 1), (-1, -1), (1, -1))

#: Constant term of each row as a linear form in (r, s, g1, g2).
CONSTANT_FORMS = (
    (0, -1, 0, 0),   # X - s
    (-1, 0, 0, 0),   # X - r
    (-1, -1, 1, 0),  # X + Y - r - s + g1
    (0, 0, 0, 0),    # Y
    (0, 0, 1, 1),    # Y - X + g1 + g2
    (1, 1, 0, -1),   # -X - Y + r + s - g2
    (0, 0, -1, 0),   # X - Y - g1
)


class ConstraintRow(NamedTuple):
    """The half-plane ``a*X + b*Y + c >= 0``."""

    a: int
    b: int
    c: int

    def holds(self, x: int, y: int) -> bool:
        return self.a * x + self.b * y + self.c >= 0


def _dot(u, v) -> int:
    return sum(a * b for a, b in zip(u, v))


def polygon_constraints(h: Sequence[int]) -> list[ConstraintRow]:
    """The seven rows of the system at parameter ``h``; no validity check."""
    h = tuple(h)
    return [ConstraintRow(a, b, _dot(form, h)) for (a, b), form in zip(DIRECTIONS, CONSTANT_FORMS)]


class UnboundedSystemError(ValueError):
    pass


def _ceil_div(p: int, q: int) -> int:
    return -((-p) // q)


def count_lattice_points(rows: Sequence[ConstraintRow]) -> int:
    """Number of integer points satisfying every row.

    Y is eliminated first (Fourier-Motzkin on pairs of rows with opposite
    signs of ``b``) to get the exact X-range; then each integer X contributes
    the length of its Y-interval.
    """
    rows = [ConstraintRow(*r) for r in rows]
    lower = [r for r in rows if r.b > 0]
    upper = [r for r in rows if r.b < 0]
    flat = [r for r in rows if r.b == 0]

    # X-projection as constraints alpha*X + beta >= 0
    x_cons = [(r.a, r.c) for r in flat]
    for p in lower:
        for q in upper:
            # p: Y >= -(a_p X + c_p)/b_p ; q: Y <= (a_q X + c_q)/(-b_q)
            x_cons.append((p.a * -q.b + q.a * p.b, p.c * -q.b + q.c * p.b))
    lo, hi = None, None
    for alpha, beta in x_cons:
        if alpha > 0:
            bound = _ceil_div(-beta, alpha)
            lo = bound if lo is None else max(lo, bound)
        elif alpha < 0:
            bound = beta // -alpha
            hi = bound if hi is None else min(hi, bound)
        elif beta < 0:
            return 0
    if lo is None or hi is None:
        raise UnboundedSystemError("X is unbounded")
    if lo > hi:
        return 0
    if not lower or not upper:
        raise UnboundedSystemError("Y is unbounded")

    total = 0
    for x in range(lo, hi + 1):
        y_lo = max(_ceil_div(-(p.a * x + p.c), p.b) for p in lower)
        y_hi = min((q.a * x + q.c) // -q.b for q in upper)
        if y_hi >= y_lo:
            total += y_hi - y_lo + 1
    return total


def reduced_kron_count(h: Sequence[int]) -> int:
    """Reduced Kronecker coefficient of ``(r)``, ``(s)``, ``(g1, g2)`` by enumeration."""
    h = ReducedIndex(*h)
    if not h.valid():
        raise ValueError(f"{h} violates r, s >= 0 and g1 >= g2 >= 0")
    return count_lattice_points(polygon_constraints(h))


def lattice_points(h: Sequence[int]) -> list[tuple]:
    """The integer points themselves, by brute force over a bounding box (for tests and demos)."""
    rows = polygon_constraints(h)
    r, s, g1, g2 = h
    span = abs(r) + abs(s) + abs(g1) + abs(g2) + 1
    return [
        (x, y)
        for x in range(-span, span + 1)
        for y in range(-span, span + 1)
        if all(row.holds(x, y) for row in rows)
    ]
