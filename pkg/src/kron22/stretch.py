"""Stretching functions ``N -> g(N * idx)`` and saturation counterexamples.

Along a ray the coefficients follow a quasipolynomial of period 2 and degree at
most 2.  :func:`fit_quasipolynomial` recovers it by exact interpolation in each
parity class and refuses to gloss over samples that do not fit.

A saturation counterexample is an index where ``g(idx) = 0`` although the
polynomial governing odd dilations is not identically zero.  Such a
polynomial has degree at most 2 and vanishes at ``N = 1``, so it is nonzero
exactly when ``g(3 idx)`` or ``g(5 idx)`` is positive.
"""
from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from . import oracle
from .core import KronIndex, kron_indices
from .kron import ReducedEngine, kron_two_row, vanishing_systems
from .quasi import Quasipolynomial

CERTIFICATE_SCHEMA_VERSION = 1


class InconsistentSamples(ValueError):
    """Samples of one parity class are not interpolated by a polynomial of the given degree."""

    def __init__(self, residue: int, detail: str):
        super().__init__(f"parity class N = {residue} mod 2: {detail}")
        self.residue = residue
        self.detail = detail


def stretch_samples(idx: Sequence[int], n_max: int, engine=ReducedEngine.CHAMBER) -> List[Tuple[int, int]]:
    idx = KronIndex(*idx)
    return [(N, kron_two_row(idx.scaled(N), engine)) for N in range(1, n_max + 1)]


def _interpolate(points: Sequence[Tuple[int, int]]) -> List[Fraction]:
    """Coefficients (constant first) of the polynomial through ``points`` (Lagrange)."""
    m = len(points)
    coeffs = [Fraction(0)] * m
    for i, (xi, yi) in enumerate(points):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for d in range(len(basis) - 1):
                basis[d] -= xj * basis[d + 1]
            denom *= xi - xj
        for d in range(m):
            coeffs[d] += yi * basis[d] / denom
    return coeffs


def fit_quasipolynomial(samples: Iterable[Tuple[int, int]], period: int = 2, degree: int = 2) -> Quasipolynomial:
    """Exact period-2 interpolation of ``(N, value)`` samples.

    Each parity class needs ``degree + 1`` samples; any further samples must
    agree with the interpolant or :class:`InconsistentSamples` is raised.
    """
    if period != 2:
        raise ValueError("only period 2 is supported")
    samples = sorted(dict(samples).items())
    pieces = {}
    for residue in (0, 1):
        cls = [(N, v) for N, v in samples if N % 2 == residue]
        if len(cls) < degree + 1:
            raise InconsistentSamples(residue, f"{len(cls)} samples, need {degree + 1}")
        coeffs = _interpolate(cls[: degree + 1])
        for N, v in cls[degree + 1:]:
            fitted = sum(c * N ** d for d, c in enumerate(coeffs))
            if fitted != v:
                raise InconsistentSamples(residue, f"interpolant gives {fitted} at N={N}, sample is {v}")
        pieces[(residue,)] = {(d,): c for d, c in enumerate(coeffs)}
    return Quasipolynomial(("N",), pieces)


@dataclass
class StretchProfile:
    index: KronIndex
    samples: List[Tuple[int, int]]
    fitted: Optional[Quasipolynomial] = None
    failure: Optional[str] = None

    @property
    def identically_zero(self) -> bool:
        return all(v == 0 for _, v in self.samples)

    def predict(self, N: int) -> int:
        if self.fitted is None:
            raise ValueError(f"no fit: {self.failure}")
        return self.fitted.evaluate_int((N,))


def stretch_profile(idx: Sequence[int], n_max: int = 12, engine=ReducedEngine.CHAMBER) -> StretchProfile:
    samples = stretch_samples(idx, n_max, engine)
    profile = StretchProfile(KronIndex(*idx), samples)
    try:
        profile.fitted = fit_quasipolynomial(samples)
    except InconsistentSamples as exc:
        profile.failure = str(exc)
    return profile


# ---------------------------------------------------------------------------
# Saturation counterexamples

@dataclass(frozen=True)
class IndexBox:
    """Valid indices with ``n_min <= n <= n_max``."""

    n_max: int
    n_min: int = 0

    def __post_init__(self):
        if self.n_min < 0 or self.n_max < self.n_min - 1:
            raise ValueError(f"bad box bounds {self.n_min}..{self.n_max}")

    def __iter__(self):
        return kron_indices(self.n_max, self.n_min)

    @property
    def empty(self) -> bool:
        return self.n_max < self.n_min


@dataclass
class Certificate:
    index: KronIndex
    engine_values: Dict[int, int]
    oracle_values: Dict[int, int]
    systems: List[str]

    def to_json(self) -> dict:
        return {
            "index": dict(zip(KronIndex._fields, self.index)),
            "engine": {str(k): v for k, v in sorted(self.engine_values.items())},
            "oracle": {str(k): v for k, v in sorted(self.oracle_values.items())},
            "systems": self.systems,
        }


class CounterexampleVerificationError(RuntimeError):
    pass


PROBE_SCALES = (1, 2, 3, 5)


def _is_candidate(idx: KronIndex, engine) -> Optional[Dict[int, int]]:
    if kron_two_row(idx, engine) != 0:
        return None
    values = {1: 0}
    for N in PROBE_SCALES[1:]:
        values[N] = kron_two_row(idx.scaled(N), engine)
    if values[3] == 0 and values[5] == 0:
        return None
    return values


def _oracle_values(idx: KronIndex, cap: int) -> Dict[int, int]:
    out = {}
    for N in PROBE_SCALES:
        big = idx.scaled(N)
        out[N] = oracle.kron_oracle(big.lam(), big.mu(), big.nu(), cap=cap)
    return out


def _scan(args):
    n, engine = args
    return [(idx, vals) for idx in kron_indices(n, n) if (vals := _is_candidate(idx, engine)) is not None]


def find_sh_counterexamples(box: IndexBox, where: Optional[Callable[[KronIndex], bool]] = None,
                            engine=ReducedEngine.CHAMBER, cap: int = oracle.DEFAULT_CAP,
                            workers: int = 1) -> List[Certificate]:
    """Certified saturation counterexamples in ``box``, sorted by index.

    Each hit found by ``engine`` is recomputed by the oracle at every probed
    scale; a disagreement raises :class:`CounterexampleVerificationError`.
    """
    if box.empty:
        return []
    jobs = [(n, ReducedEngine(engine)) for n in range(box.n_min, box.n_max + 1)]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            found = [hit for chunk in pool.map(_scan, jobs) for hit in chunk]
    else:
        found = [hit for job in jobs for hit in _scan(job)]
    certificates = []
    for idx, values in sorted(found):
        if where is not None and not where(idx):
            continue
        checked = _oracle_values(idx, cap)
        if checked != values:
            raise CounterexampleVerificationError(f"{idx}: engine {values} but oracle {checked}")
        certificates.append(Certificate(idx, values, checked, vanishing_systems(idx)))
    return certificates


def certificates_document(certificates: Sequence[Certificate], box: Optional[IndexBox] = None) -> dict:
    doc = {"schema_version": CERTIFICATE_SCHEMA_VERSION, "kind": "sh-counterexamples"}
    if box is not None:
        doc["box"] = {"n_min": box.n_min, "n_max": box.n_max}
    doc["certificates"] = [c.to_json() for c in certificates]
    return doc
