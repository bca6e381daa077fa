"""Exact quasipolynomials of period 2 in each coordinate.

A :class:`Quasipolynomial` stores one polynomial with rational coefficients per
residue class of ``Z^d`` modulo ``2 Z^d``.  Polynomials are plain dicts mapping
exponent tuples to :class:`fractions.Fraction`, which is all the arithmetic the
chamber formulas need.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Sequence, Tuple

Monomial = Tuple[int, ...]
Poly = Dict[Monomial, Fraction]


def _clean(poly: Mapping[Monomial, Fraction]) -> Poly:
    return {m: Fraction(c) for m, c in poly.items() if c != 0}


def poly_add(p: Poly, q: Poly, scale=1) -> Poly:
    out = dict(p)
    for m, c in q.items():
        out[m] = out.get(m, 0) + scale * c
    return _clean(out)


def poly_mul(p: Poly, q: Poly) -> Poly:
    out: Poly = {}
    for (m1, c1), (m2, c2) in itertools.product(p.items(), q.items()):
        m = tuple(a + b for a, b in zip(m1, m2))
        out[m] = out.get(m, 0) + c1 * c2
    return _clean(out)


def linear_poly(coeffs: Sequence[int], constant=0) -> Poly:
    """The polynomial ``sum(coeffs[i] * x_i) + constant``."""
    d = len(coeffs)
    poly = {tuple(int(i == j) for j in range(d)): Fraction(c) for i, c in enumerate(coeffs)}
    poly[(0,) * d] = Fraction(constant)
    return _clean(poly)


def poly_eval(p: Poly, point: Sequence[int]) -> Fraction:
    total = Fraction(0)
    for m, c in p.items():
        term = c
        for x, e in zip(point, m):
            if e:
                term *= x ** e
        total += term
    return total


def poly_degree(p: Poly) -> int:
    return max((sum(m) for m in p), default=0)


def residues(dim: int) -> list:
    return list(itertools.product((0, 1), repeat=dim))


class Quasipolynomial:
    """Piecewise polynomial on the cosets of ``2 Z^dim``.

    ``pieces`` maps each residue tuple (coordinates reduced mod 2) to a
    polynomial.  Missing residues are taken as the zero polynomial.
    """

    def __init__(self, variables: Sequence[str], pieces: Mapping[tuple, Poly]):
        self.variables = tuple(variables)
        dim = len(self.variables)
        self.pieces: Dict[tuple, Poly] = {}
        for res in residues(dim):
            self.pieces[res] = _clean(pieces.get(res, {}))
        extra = set(pieces) - set(self.pieces)
        if extra:
            raise ValueError(f"bad residues {sorted(extra)} for dimension {dim}")

    @property
    def dim(self) -> int:
        return len(self.variables)

    @classmethod
    def from_polynomial(cls, variables, poly: Poly) -> "Quasipolynomial":
        return cls(variables, {res: dict(poly) for res in residues(len(variables))})

    @classmethod
    def from_function(cls, variables, fn) -> "Quasipolynomial":
        """Build from ``fn(residue) -> Poly``."""
        return cls(variables, {res: fn(res) for res in residues(len(variables))})

    def __call__(self, *point: int) -> Fraction:
        if len(point) == 1 and isinstance(point[0], (tuple, list)):
            point = tuple(point[0])
        res = tuple(int(x) % 2 for x in point)
        return poly_eval(self.pieces[res], point)

    def evaluate_int(self, point: Sequence[int]) -> int:
        value = self(tuple(point))
        if value.denominator != 1:
            raise ArithmeticError(f"non-integral value {value} at {tuple(point)}")
        return int(value)

    def __add__(self, other: "Quasipolynomial") -> "Quasipolynomial":
        self._check(other)
        return Quasipolynomial(self.variables, {r: poly_add(p, other.pieces[r]) for r, p in self.pieces.items()})

    def __sub__(self, other: "Quasipolynomial") -> "Quasipolynomial":
        self._check(other)
        return Quasipolynomial(self.variables, {r: poly_add(p, other.pieces[r], -1) for r, p in self.pieces.items()})

    def __neg__(self) -> "Quasipolynomial":
        return Quasipolynomial(self.variables, {r: {m: -c for m, c in p.items()} for r, p in self.pieces.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, Quasipolynomial):
            return NotImplemented
        return self.variables == other.variables and self.pieces == other.pieces

    def __hash__(self):
        return hash((self.variables, tuple(sorted((r, tuple(sorted(p.items()))) for r, p in self.pieces.items()))))

    def _check(self, other):
        if self.variables != other.variables:
            raise ValueError(f"variable mismatch {self.variables} vs {other.variables}")

    def is_zero(self) -> bool:
        return all(not p for p in self.pieces.values())

    def is_polynomial(self) -> bool:
        """True when every coset carries the same polynomial."""
        first = next(iter(self.pieces.values()))
        return all(p == first for p in self.pieces.values())

    def degree(self) -> int:
        return max(poly_degree(p) for p in self.pieces.values())

    def normal_form(self) -> dict:
        """Split into ``Q/4 + L/2 + M/4``.

        ``Q`` is homogeneous quadratic and ``L`` homogeneous linear, both with
        integer coefficients and shared by all cosets; ``M`` is an integer per
        coset.  Raises ``ValueError`` if the quasipolynomial has another shape.
        """
        if self.degree() > 2:
            raise ValueError("degree exceeds 2")
        quad, lin, const = None, None, {}
        for res, poly in self.pieces.items():
            q = {m: c for m, c in poly.items() if sum(m) == 2}
            l = {m: c for m, c in poly.items() if sum(m) == 1}
            if quad is None:
                quad, lin = q, l
            elif q != quad or l != lin:
                raise ValueError("non-constant part varies between cosets")
            const[res] = poly.get((0,) * self.dim, Fraction(0))
        scaled_q = {m: 4 * c for m, c in quad.items()}
        scaled_l = {m: 2 * c for m, c in lin.items()}
        scaled_m = {res: 4 * c for res, c in const.items()}
        for part in (scaled_q, scaled_l, scaled_m):
            bad = [c for c in part.values() if Fraction(c).denominator != 1]
            if bad:
                raise ValueError(f"non-integral coefficients {bad}")
        return {
            "variables": list(self.variables),
            "Q": {_monomial_name(m, self.variables): int(c) for m, c in sorted(scaled_q.items(), reverse=True)},
            "L": {_monomial_name(m, self.variables): int(c) for m, c in sorted(scaled_l.items(), reverse=True)},
            "M": {"".join(map(str, res)): int(c) for res, c in sorted(scaled_m.items())},
        }

    @classmethod
    def from_normal_form(cls, doc: Mapping) -> "Quasipolynomial":
        variables = tuple(doc["variables"])
        base: Poly = {}
        for name, c in doc["Q"].items():
            base[_parse_monomial(name, variables)] = Fraction(c, 4)
        for name, c in doc["L"].items():
            base[_parse_monomial(name, variables)] = Fraction(c, 2)
        pieces = {}
        for key, c in doc["M"].items():
            res = tuple(int(ch) for ch in key)
            piece = dict(base)
            piece[(0,) * len(variables)] = Fraction(c, 4)
            pieces[res] = piece
        return cls(variables, pieces)

    def __repr__(self) -> str:
        if self.is_polynomial():
            return f"Quasipolynomial({self.variables}, {_format_poly(next(iter(self.pieces.values())), self.variables)})"
        return f"Quasipolynomial({self.variables}, {len(self.pieces)} cosets)"

    def describe(self) -> str:
        if self.is_polynomial():
            return _format_poly(next(iter(self.pieces.values())), self.variables)
        lines = []
        for res, poly in self.pieces.items():
            lines.append(f"{res}: {_format_poly(poly, self.variables)}")
        return "\n".join(lines)


def _monomial_name(m: Monomial, variables) -> str:
    factors = []
    for v, e in zip(variables, m):
        factors.extend([v] * e)
    return "*".join(factors) if factors else "1"


def _parse_monomial(name: str, variables) -> Monomial:
    exps = [0] * len(variables)
    if name != "1":
        for factor in name.split("*"):
            exps[variables.index(factor)] += 1
    return tuple(exps)


def _format_poly(poly: Poly, variables) -> str:
    if not poly:
        return "0"
    terms = []
    for m, c in sorted(poly.items(), key=lambda item: (-sum(item[0]), item[0]), reverse=False):
        name = _monomial_name(m, variables)
        terms.append(f"{c}" if name == "1" else f"{c}*{name}")
    return " + ".join(terms)


def integral_on(qp: Quasipolynomial, points: Iterable[Sequence[int]]) -> bool:
    return all(qp(tuple(p)).denominator == 1 for p in points)
