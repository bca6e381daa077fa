"""Index types for Kronecker coefficients indexed by two two-row shapes.

A Kronecker coefficient ``g(lambda, mu, nu)`` with ``mu`` and ``nu`` of length
at most two is zero unless ``lambda`` has at most four parts.  Subtracting
``(2, 2)`` from ``mu`` and ``nu`` and ``(1, 1, 1, 1)`` from ``lambda`` leaves the
coefficient unchanged, so every such coefficient is determined by a
:class:`KronIndex` ``(n, r, s, g1, g2)`` standing for::

    g[(n - r, r), (n - s, s)] ^ (n - g1 - g2, g1, g2)
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, NamedTuple, Sequence, Union


class InvalidTripleError(ValueError):
    """Raised when a triple of partitions cannot index a two-two-row coefficient."""


class Partition(tuple):
    """A weakly decreasing tuple of positive integers.

    Trailing zeros are accepted on input and stripped, so ``Partition((2, 1, 0))
    == Partition((2, 1))``.  Indexing past the last part is an error as for any
    tuple; use :meth:`part` for zero-padded access.
    """

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()):
        parts = [int(p) for p in parts]
        while parts and parts[-1] == 0:
            parts.pop()
        if any(p < 0 for p in parts):
            raise ValueError(f"negative part in {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"parts not weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse ``"3,2,1"``; the empty string and ``"0"`` give the empty partition."""
        text = text.strip()
        if not text:
            return cls()
        return cls(int(tok) for tok in text.split(","))

    @staticmethod
    def is_partition(seq: Sequence[int]) -> bool:
        return all(p >= 0 for p in seq) and all(seq[i] >= seq[i + 1] for i in range(len(seq) - 1))

    @property
    def weight(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def part(self, i: int) -> int:
        """The ``i``-th part (0-based), zero beyond the length."""
        return self[i] if i < len(self) else 0

    def padded(self, length: int) -> tuple:
        if length < len(self):
            raise ValueError(f"{self} has more than {length} parts")
        return tuple(self) + (0,) * (length - len(self))

    def __repr__(self) -> str:
        return f"Partition({tuple(self)!r})"

    def __str__(self) -> str:
        return ",".join(map(str, self)) if self else "()"


def partitions(n: int, max_part: int | None = None, max_length: int | None = None) -> Iterator[Partition]:
    """All partitions of ``n`` in reverse lexicographic order."""
    if max_part is None:
        max_part = n
    if max_length is None:
        max_length = n

    def rec(rest, bound, room):
        if rest == 0:
            yield ()
            return
        if room == 0:
            return
        for first in range(min(rest, bound), 0, -1):
            for tail in rec(rest - first, first, room - 1):
                yield (first,) + tail

    for parts in rec(n, max_part, max_length):
        yield Partition(parts)


class KronIndex(NamedTuple):
    """``(n, r, s, g1, g2)`` naming ``g[(n-r, r), (n-s, s)] ^ (n-g1-g2, g1, g2)``."""

    n: int
    r: int
    s: int
    g1: int
    g2: int

    def valid(self) -> bool:
        n, r, s, g1, g2 = self
        return n - r >= r >= 0 and n - s >= s >= 0 and n - g1 - g2 >= g1 >= g2 >= 0

    def lam(self) -> Partition:
        return Partition((self.n - self.g1 - self.g2, self.g1, self.g2))

    def mu(self) -> Partition:
        return Partition((self.n - self.r, self.r))

    def nu(self) -> Partition:
        return Partition((self.n - self.s, self.s))

    def scaled(self, factor: int) -> "KronIndex":
        return KronIndex(*(factor * x for x in self))

    def reduced(self) -> "ReducedIndex":
        return ReducedIndex(self.r, self.s, self.g1, self.g2)


class ReducedIndex(NamedTuple):
    """``(r, s, g1, g2)`` naming the reduced coefficient of ``(r)``, ``(s)`` and ``(g1, g2)``."""

    r: int
    s: int
    g1: int
    g2: int

    def valid(self) -> bool:
        return self.r >= 0 and self.s >= 0 and self.g1 >= self.g2 >= 0

    def scaled(self, factor: int) -> "ReducedIndex":
        return ReducedIndex(*(factor * x for x in self))


def kron_indices(n_max: int, n_min: int = 0) -> Iterator[KronIndex]:
    """Every valid :class:`KronIndex` with ``n_min <= n <= n_max``, in lexicographic order."""
    for n in range(n_min, n_max + 1):
        for r in range(n // 2 + 1):
            for s in range(n // 2 + 1):
                for g1 in range(n // 2 + 1):
                    for g2 in range(min(g1, n - 2 * g1) + 1):
                        yield KronIndex(n, r, s, g1, g2)


@dataclass(frozen=True)
class ValidityReport:
    problems: tuple = ()

    @property
    def ok(self) -> bool:
        return not self.problems

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        return "valid" if self.ok else "; ".join(self.problems)


def _as_partition(seq, name, problems):
    try:
        return Partition(seq)
    except ValueError as exc:
        problems.append(f"{name} is not a partition ({exc})")
        return None


def validate_triple(lam, mu, nu) -> ValidityReport:
    """Check that ``(lam, mu, nu)`` indexes a coefficient of the two-two-row family.

    Never raises; every failed condition is listed in the report.
    """
    problems: list[str] = []
    parts = [_as_partition(p, name, problems) for p, name in ((lam, "lambda"), (mu, "mu"), (nu, "nu"))]
    lam, mu, nu = parts
    if lam is not None and mu is not None and lam.weight != mu.weight:
        problems.append(f"|mu|={mu.weight} != |lambda|={lam.weight}")
    if lam is not None and nu is not None and lam.weight != nu.weight:
        problems.append(f"|nu|={nu.weight} != |lambda|={lam.weight}")
    if mu is not None and mu.length > 2:
        problems.append(f"length(mu)={mu.length} > 2")
    if nu is not None and nu.length > 2:
        problems.append(f"length(nu)={nu.length} > 2")
    if lam is not None and lam.length > 4:
        problems.append(f"length(lambda)={lam.length} > 4")
    return ValidityReport(tuple(problems))


@dataclass(frozen=True)
class ZeroSignal:
    """Returned instead of an index when the coefficient is known to vanish."""

    reason: str = field(default="")

    def __bool__(self) -> bool:
        return False


def to_kron_index(lam, mu, nu) -> Union[KronIndex, ZeroSignal]:
    """Normalize a two-two-row triple to a :class:`KronIndex`.

    The fourth part of ``lam`` is peeled off one column at a time, removing
    ``(2, 2)`` from ``mu`` and ``nu`` at each step.  If a step leaves a sequence
    that is not a partition the coefficient is zero and a :class:`ZeroSignal`
    is returned.
    """
    report = validate_triple(lam, mu, nu)
    if not report:
        raise InvalidTripleError(str(report))
    lam = list(Partition(lam).padded(4))
    mu = list(Partition(mu).padded(2))
    nu = list(Partition(nu).padded(2))
    for _ in range(lam[3]):
        lam = [p - 1 for p in lam]
        mu = [p - 2 for p in mu]
        nu = [p - 2 for p in nu]
        for seq, name in ((mu, "mu"), (nu, "nu")):
            if not Partition.is_partition(seq):
                return ZeroSignal(f"{name} reduced to {tuple(seq)}, not a partition")
    idx = KronIndex(sum(lam), mu[1], nu[1], lam[1], lam[2])
    assert idx.valid(), idx
    return idx
