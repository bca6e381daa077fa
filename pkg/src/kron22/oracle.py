"""Ground-truth Kronecker coefficients, independent of the chamber formulas.

Two routes are provided:

* ``"characters"``: irreducible characters of S_n by the Murnaghan-Nakayama
  rule and the inner product ``sum(chi_l chi_m chi_n / z)`` over cycle types.
  Works for any three partitions, limited by the size of the character table.
* ``"young"``: when two of the three partitions have at most two rows, write
  ``chi(n-r, r) = pi_r - pi_(r-1)`` with ``pi_k`` the permutation character on
  k-subsets.  The product of two such characters is a sum of permutation
  characters induced from four-block Young subgroups, whose multiplicities
  are Kostka numbers.  No character table is needed, so large ``n`` is cheap.

Reduced coefficients come from Murnaghan stabilization: the sequence
``g[(n-|a|, a), (n-|b|, b)] ^ (n-|c|, c)`` is evaluated for increasing ``n``
until it is constant over a confirmation window.  The window is a heuristic
since no effective stabilization bound is used.
"""
from __future__ import annotations

import hashlib
import json
import logging
import math
import os
import threading
from collections import Counter
from functools import lru_cache
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from .core import Partition, partitions

log = logging.getLogger(__name__)

DEFAULT_CAP = 20
#: full tables are built (and persisted) up to this n; above it rows are computed on demand
FULL_TABLE_MAX = 20
STABILIZATION_LIMIT = 400
CACHE_FORMAT_VERSION = 1
CACHE_ENV = "KRON22_CACHE_DIR"


class OracleCapError(RuntimeError):
    """The requested computation exceeds the configured oracle cap."""


class StabilizationError(RuntimeError):
    """No stabilization witness was found before the limit."""


# ---------------------------------------------------------------------------
# Murnaghan-Nakayama

def _beta_set(lam: tuple, length: int) -> tuple:
    return tuple(lam[i] + length - 1 - i if i < len(lam) else length - 1 - i for i in range(length))


def _from_beta(beta: Sequence[int]) -> tuple:
    b = sorted(beta, reverse=True)
    length = len(b)
    parts = [b[i] - (length - 1 - i) for i in range(length)]
    while parts and parts[-1] == 0:
        parts.pop()
    return tuple(parts)


@lru_cache(maxsize=None)
def _mn(lam: tuple, rho: tuple) -> int:
    if not rho:
        return 1 if not lam else 0
    k, rest = rho[0], rho[1:]
    length = len(lam)
    beta = _beta_set(lam, length)
    members = set(beta)
    total = 0
    for b in beta:
        target = b - k
        if target < 0 or target in members:
            continue
        height = sum(1 for x in beta if target < x < b)
        new = _from_beta([target if x == b else x for x in beta])
        value = _mn(new, rest)
        if value:
            total += -value if height % 2 else value
    return total


def character(lam: Sequence[int], rho: Sequence[int]) -> int:
    """Irreducible character value ``chi_lam`` at cycle type ``rho``."""
    lam, rho = Partition(lam), Partition(rho)
    if lam.weight != rho.weight:
        raise ValueError(f"|{lam}| != |{rho}|")
    return _mn(tuple(lam), tuple(rho))


def centralizer_order(rho: Sequence[int]) -> int:
    """``z_rho = prod i^m_i * m_i!``."""
    z = 1
    for part, mult in Counter(Partition(rho)).items():
        z *= part ** mult * math.factorial(mult)
    return z


# ---------------------------------------------------------------------------
# Character tables with an on-disk cache

@lru_cache(maxsize=None)
def _partition_list(n: int) -> List[Partition]:
    return list(partitions(n))


@lru_cache(maxsize=None)
def class_sizes(n: int) -> List[int]:
    fact = math.factorial(n)
    return [fact // centralizer_order(rho) for rho in _partition_list(n)]


def default_cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "kron22"


class CharacterTable:
    """Full character table of S_n: ``values[i][j] = chi_{parts[i]}(parts[j])``."""

    def __init__(self, n: int, parts: List[Partition], values: List[List[int]], z: List[int]):
        self.n = n
        self.partitions = parts
        self.values = values
        self.z = z
        self._index = {p: i for i, p in enumerate(parts)}
        fact = math.factorial(n)
        self.class_sizes = [fact // zz for zz in z]

    @classmethod
    def build(cls, n: int) -> "CharacterTable":
        parts = _partition_list(n)
        values = [[_mn(tuple(lam), tuple(rho)) for rho in parts] for lam in parts]
        z = [centralizer_order(rho) for rho in parts]
        return cls(n, parts, values, z)

    def row(self, lam: Sequence[int]) -> List[int]:
        return self.values[self._index[Partition(lam)]]

    def __call__(self, lam, rho) -> int:
        return self.values[self._index[Partition(lam)]][self._index[Partition(rho)]]

    def _digest(self) -> str:
        payload = json.dumps([self.n, [list(p) for p in self.partitions], self.z, self.values], separators=(",", ":"))
        return hashlib.sha256(payload.encode()).hexdigest()

    def to_json(self) -> dict:
        return {
            "format_version": CACHE_FORMAT_VERSION,
            "n": self.n,
            "partitions": [list(p) for p in self.partitions],
            "z": self.z,
            "values": self.values,
            "sha256": self._digest(),
        }

    @classmethod
    def from_json(cls, doc: dict) -> "CharacterTable":
        if doc.get("format_version") != CACHE_FORMAT_VERSION:
            raise ValueError(f"cache format {doc.get('format_version')!r} != {CACHE_FORMAT_VERSION}")
        n = int(doc["n"])
        parts = [Partition(p) for p in doc["partitions"]]
        if parts != list(partitions(n)):
            raise ValueError("partition list does not match")
        values = [[int(v) for v in row] for row in doc["values"]]
        z = [int(v) for v in doc["z"]]
        if len(values) != len(parts) or any(len(row) != len(parts) for row in values):
            raise ValueError("table shape mismatch")
        if z != [centralizer_order(p) for p in parts]:
            raise ValueError("centralizer orders do not match")
        table = cls(n, parts, values, z)
        if doc.get("sha256") != table._digest():
            raise ValueError("checksum mismatch")
        return table


class TableStore:
    """Builds character tables once per ``n`` and persists them as JSON files.

    Unreadable, corrupt or version-mismatched cache files are rebuilt.
    """

    def __init__(self, cache_dir: Optional[os.PathLike] = None, persist: bool = True):
        self.cache_dir = Path(cache_dir) if cache_dir is not None else default_cache_dir()
        self.persist = persist
        self._tables: Dict[int, CharacterTable] = {}
        self._rows: Dict[tuple, List[int]] = {}
        self._locks: Dict[int, threading.Lock] = {}
        self._guard = threading.Lock()

    def path(self, n: int) -> Path:
        return self.cache_dir / f"chartable-v{CACHE_FORMAT_VERSION}-n{n}.json"

    def get(self, n: int) -> CharacterTable:
        table = self._tables.get(n)
        if table is not None:
            return table
        with self._guard:
            lock = self._locks.setdefault(n, threading.Lock())
        with lock:
            table = self._tables.get(n)
            if table is None:
                table = self._load(n) or self._build(n)
                self._tables[n] = table
        return table

    def row(self, n: int, lam: Partition) -> List[int]:
        """Character values of ``lam`` on all cycle types of ``n`` in table order."""
        if n <= FULL_TABLE_MAX or n in self._tables:
            return self.get(n).row(lam)
        key = (n, tuple(lam))
        row = self._rows.get(key)
        if row is None:
            row = [_mn(tuple(lam), tuple(rho)) for rho in _partition_list(n)]
            self._rows[key] = row
        return row

    def _load(self, n: int) -> Optional[CharacterTable]:
        if not self.persist:
            return None
        path = self.path(n)
        if not path.exists():
            return None
        try:
            table = CharacterTable.from_json(json.loads(path.read_text()))
            if table.n != n:
                raise ValueError("n mismatch")
            return table
        except (ValueError, KeyError, TypeError) as exc:
            log.warning("ignoring cache file %s: %s", path, exc)
            return None

    def _build(self, n: int) -> CharacterTable:
        log.info("building character table for n=%d", n)
        table = CharacterTable.build(n)
        if self.persist:
            try:
                self.cache_dir.mkdir(parents=True, exist_ok=True)
                tmp = self.path(n).with_suffix(f".tmp{os.getpid()}")
                tmp.write_text(json.dumps(table.to_json(), separators=(",", ":")))
                os.replace(tmp, self.path(n))
            except OSError as exc:
                log.warning("could not write cache for n=%d: %s", n, exc)
        return table


_default_store: Optional[TableStore] = None


def default_store() -> TableStore:
    global _default_store
    if _default_store is None:
        _default_store = TableStore()
    return _default_store


def set_default_store(store: TableStore) -> None:
    global _default_store
    _default_store = store


# ---------------------------------------------------------------------------
# Young's rule route

@lru_cache(maxsize=None)
def _kostka(shape: tuple, content: tuple) -> int:
    # content sorted decreasingly, zeros removed; peel the last letter as a horizontal strip
    if not content:
        return 1 if not shape else 0
    if len(shape) > len(content):
        return 0
    k, rest = content[-1], content[:-1]
    length = len(shape)
    total = 0

    def strips(i, removed, inner):
        nonlocal total
        if i == length:
            if removed == k:
                total += _kostka(tuple(p for p in inner if p), rest)
            return
        below = shape[i + 1] if i + 1 < length else 0
        for keep in range(shape[i], below - 1, -1):
            took = removed + shape[i] - keep
            if took > k:
                break
            strips(i + 1, took, inner + (keep,))

    strips(0, 0, ())
    return total


def kostka(shape: Sequence[int], content: Sequence[int]) -> int:
    """Number of semistandard tableaux of ``shape`` with ``content`` (any order)."""
    shape = Partition(shape)
    content = tuple(sorted((c for c in content if c), reverse=True))
    if any(c < 0 for c in content):
        raise ValueError("negative content")
    if shape.weight != sum(content):
        return 0
    return _kostka(tuple(shape), content)


def _kron_young(theta: Partition, r: int, s: int, n: int) -> int:
    total = 0
    for er in (0, 1):
        for es in (0, 1):
            a, b = r - er, s - es
            if a < 0 or b < 0:
                continue
            sub = 0
            for t in range(max(0, a + b - n), min(a, b) + 1):
                sub += kostka(theta, (t, a - t, b - t, n - a - b + t))
            total += sub if (er + es) % 2 == 0 else -sub
    return total


def _young_applicable(parts) -> bool:
    return sum(1 for p in parts if p.length <= 2) >= 2


# ---------------------------------------------------------------------------
# Public oracle

def kron_oracle(lam, mu, nu, cap: int = DEFAULT_CAP, method: str = "auto",
                store: Optional[TableStore] = None) -> int:
    """Kronecker coefficient ``g(lam, mu, nu)``: multiplicity of ``chi_lam`` in ``chi_mu * chi_nu``.

    ``method`` is ``"characters"``, ``"young"`` or ``"auto"`` (characters up to
    ``cap``, Young's rule beyond it when two arguments have at most two rows).
    """
    lam, mu, nu = Partition(lam), Partition(mu), Partition(nu)
    n = lam.weight
    if mu.weight != n or nu.weight != n:
        raise ValueError(f"weights differ: {lam}, {mu}, {nu}")
    if method == "auto":
        if n <= cap:
            method = "characters"
        elif _young_applicable((lam, mu, nu)):
            method = "young"
        else:
            raise OracleCapError(f"n={n} exceeds the character-table cap {cap}; raise cap")
    if method == "characters":
        if n > cap:
            raise OracleCapError(f"n={n} exceeds the character-table cap {cap}; raise cap")
        store = store or default_store()
        a, b, c = (store.row(n, p) for p in (lam, mu, nu))
        total = sum(x * y * w * size for x, y, w, size in zip(a, b, c, class_sizes(n)))
        value, rem = divmod(total, math.factorial(n))
        assert rem == 0, (lam, mu, nu)
        return value
    if method == "young":
        two_row = [p for p in (lam, mu, nu) if p.length <= 2]
        if len(two_row) < 2:
            raise ValueError("young route needs two arguments with at most two rows")
        first, second = two_row[0], two_row[1]
        rest = [lam, mu, nu]
        rest.remove(first)
        rest.remove(second)
        return _kron_young(rest[0], first.part(1), second.part(1), n)
    raise ValueError(f"unknown method {method!r}")


def _padded(n: int, part: Partition):
    first = n - part.weight
    if first < part.part(0):
        return None
    return Partition((first,) + tuple(part))


def stabilization_sequence(alpha, beta, gamma, n_values, cap: int = DEFAULT_CAP, method: str = "auto") -> list:
    alpha, beta, gamma = Partition(alpha), Partition(beta), Partition(gamma)
    out = []
    for n in n_values:
        shapes = [_padded(n, p) for p in (gamma, alpha, beta)]
        if any(s is None for s in shapes):
            out.append(None)
        else:
            out.append(kron_oracle(*shapes, cap=cap, method=method))
    return out


def stabilization_start(alpha, beta, gamma) -> int:
    alpha, beta, gamma = Partition(alpha), Partition(beta), Partition(gamma)
    return alpha.weight + beta.weight + gamma.weight + max(alpha.part(0), beta.part(0), gamma.part(0))


def reduced_oracle(alpha, beta, gamma, cap: int = DEFAULT_CAP, confirm: int = 3,
                   limit: int = STABILIZATION_LIMIT, method: str = "auto") -> int:
    """Reduced Kronecker coefficient by Murnaghan stabilization.

    Starting at ``|alpha|+|beta|+|gamma|+max first part``, stops once two
    consecutive values agree and the next ``confirm`` values repeat them.
    """
    n = stabilization_start(alpha, beta, gamma)
    previous = None
    run = 0
    while n <= limit:
        try:
            (value,) = stabilization_sequence(alpha, beta, gamma, [n], cap=cap, method=method)
        except OracleCapError as exc:
            raise OracleCapError(f"stabilization of {alpha}, {beta}, {gamma} not witnessed: {exc}") from exc
        run = run + 1 if value == previous else 0
        previous = value
        if run >= 1 + confirm:
            return value
        n += 1
    raise StabilizationError(f"no stabilization witness for {alpha}, {beta}, {gamma} up to n={limit}")
