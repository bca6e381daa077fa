"""Chamber decomposition of the reduced coefficients ``R(r, s, g1, g2)``.

Inside the cone ``Delta'`` the reduced coefficient is given by one
quasipolynomial per chamber of a 26-chamber fan.  A chamber is named by the set
of constraint lines supporting a side of the lattice polygon (its "sides").
Adjacent chambers differ either by exchanging 0 and 1 (wall ``r = s``) or by
inserting one index ``j`` (wall ``f_ijk = 0``, with ``i`` and ``k`` the cyclic
neighbours of ``j``).  Only the formula on chamber ``{1, 3, 5}`` is stored
explicitly; every other one is reached by walking the adjacency graph and
adding the tabulated differences across walls.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from .polygon import CONSTANT_FORMS, DIRECTIONS
from .quasi import Quasipolynomial, linear_poly, poly_add, poly_mul

VARIABLES = ("r", "s", "g1", "g2")
ROOT = "135"
SCHEMA_VERSION = 1


def _det3(m) -> object:
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def f_vector(i: int, j: int, k: int) -> Tuple[int, ...]:
    """Coefficients over ``(r, s, g1, g2)`` of ``f_ijk = -det[[a], [b], [c]]``."""
    idx = (i, j, k)
    if len(set(idx)) != 3 or not all(0 <= x <= 6 for x in idx):
        raise ValueError(f"need three distinct indices in 0..6, got {idx}")
    a = [DIRECTIONS[x][0] for x in idx]
    b = [DIRECTIONS[x][1] for x in idx]
    # the determinant is linear in the c-row, so evaluate it on unit vectors
    out = []
    for var in range(4):
        c = [CONSTANT_FORMS[x][var] for x in idx]
        out.append(-_det3([a, b, c]))
    return tuple(out)


def f_form(i: int, j: int, k: int, h: Sequence[int]) -> int:
    """Value of ``f_ijk`` at ``h``."""
    return sum(c * x for c, x in zip(f_vector(i, j, k), h))


F25 = (0, 0, 1, -1)
F46 = (0, 0, 0, 1)
R_MINUS_S = (1, -1, 0, 0)

# (name, form, sign): the cone is sign * form(h) >= 0 for every entry
DELTA_PRIME_FACETS = (
    ("f145", f_vector(1, 4, 5), -1),
    ("f045", f_vector(0, 4, 5), -1),
    ("f356", f_vector(3, 5, 6), -1),
    ("f035", f_vector(0, 3, 5), -1),
    ("f135", f_vector(1, 3, 5), -1),
    ("f25", F25, 1),
    ("f46", F46, 1),
)


def _dot(u, v) -> int:
    return sum(a * b for a, b in zip(u, v))


def in_delta_prime(h: Sequence[int]) -> bool:
    return all(sign * _dot(form, h) >= 0 for _, form, sign in DELTA_PRIME_FACETS)


# ---------------------------------------------------------------------------
# Wall differences q_I - q_J (J = I + {j})

HALF = "half"            # f (f - 1) / 2
QUARTER_MINUS = "quarter-minus"  # f^2 / 4 - [f odd] / 4
QUARTER_PLUS = "quarter-plus"    # f (f - 2) / 4 + [f odd] / 4

RULE_CLASSES = (HALF, QUARTER_MINUS, QUARTER_PLUS)

WALL_RULES = {
    "613": HALF, "123": HALF, "134": HALF, "603": HALF, "023": HALF, "034": HALF,
    "234": QUARTER_MINUS,
    "345": QUARTER_PLUS, "124": QUARTER_PLUS, "561": QUARTER_PLUS, "024": QUARTER_PLUS, "560": QUARTER_PLUS,
}

#: values of f on which the two neighbouring formulas coincide
COINCIDENCE_OFFSETS = {HALF: (0, 1), QUARTER_MINUS: (-1, 0, 1), QUARTER_PLUS: (0, 1, 2)}


def rule_value(rule: str, f: int) -> int:
    if rule == HALF:
        return f * (f - 1) // 2
    if rule == QUARTER_MINUS:
        return (f * f - (f & 1)) // 4
    if rule == QUARTER_PLUS:
        return (f * (f - 2) + (f & 1)) // 4
    raise ValueError(f"unknown rule class {rule!r}")


def rule_quasipolynomial(rule: str, form: Sequence[int]) -> Quasipolynomial:
    f = linear_poly(form)
    square = poly_mul(f, f)

    def piece(res):
        odd = _dot(form, res) % 2
        if rule == HALF:
            return {m: c / 2 for m, c in poly_add(square, f, -1).items()}
        if rule == QUARTER_MINUS:
            return poly_add({m: c / 4 for m, c in square.items()}, {(0, 0, 0, 0): Fraction(-odd, 4)})
        if rule == QUARTER_PLUS:
            base = {m: c / 4 for m, c in poly_add(square, f, -2).items()}
            return poly_add(base, {(0, 0, 0, 0): Fraction(odd, 4)})
        raise ValueError(f"unknown rule class {rule!r}")

    return Quasipolynomial.from_function(VARIABLES, piece)


def wall_difference(i: int, j: int, k: int, h: Sequence[int], table: Mapping[str, str] = WALL_RULES) -> int:
    """``q_I(h) - q_J(h)`` across the wall of triple ``ijk``."""
    key = f"{i}{j}{k}"
    if key not in table:
        raise KeyError(f"triple {key} is not a wall of the fan")
    return rule_value(table[key], f_form(i, j, k, h))


def q135(h: Sequence[int]) -> int:
    r, s, g1, g2 = h
    return (s - g2 + 1) * (s - g2 + 2) // 2


def q135_quasipolynomial() -> Quasipolynomial:
    x = linear_poly((0, 1, 0, -1))
    poly = poly_mul(poly_add(x, {(0, 0, 0, 0): Fraction(1)}), poly_add(x, {(0, 0, 0, 0): Fraction(2)}))
    return Quasipolynomial.from_polynomial(VARIABLES, {m: c / 2 for m, c in poly.items()})


# ---------------------------------------------------------------------------
# The adjacency graph

CHAMBER_NAMES = (
    "1245", "12456", "02456", "0245",
    "145", "1456", "0456", "045",
    "12345", "123456", "023456", "02345",
    "1345", "13456", "3456", "03456", "0345",
    "1235", "12356", "02356", "0235",
    "135", "1356", "356", "0356", "035",
)

EDGES = (
    ("1245", "12456"), ("12456", "02456"), ("02456", "0245"),
    ("145", "1456"), ("145", "1245"), ("145", "1345"),
    ("1456", "12456"), ("1456", "13456"),
    ("0456", "02456"), ("0456", "03456"),
    ("045", "0456"), ("045", "0245"), ("045", "0345"),
    ("12345", "1245"), ("12345", "123456"),
    ("123456", "12456"), ("123456", "023456"),
    ("023456", "02456"),
    ("02345", "0245"), ("02345", "023456"),
    ("1345", "13456"), ("1345", "12345"),
    ("13456", "123456"),
    ("3456", "13456"), ("3456", "03456"),
    ("03456", "023456"),
    ("0345", "03456"), ("0345", "02345"),
    ("1235", "12345"), ("1235", "12356"),
    ("12356", "123456"), ("12356", "02356"),
    ("02356", "023456"),
    ("0235", "02345"), ("0235", "02356"),
    ("135", "1235"), ("135", "1345"), ("135", "1356"),
    ("1356", "12356"), ("1356", "13456"),
    ("356", "1356"), ("356", "3456"), ("356", "0356"),
    ("0356", "02356"), ("0356", "03456"),
    ("035", "0235"), ("035", "0345"), ("035", "0356"),
)

#: (name, form, sign on Delta', chambers with a facet on form = 0, vanishing offsets)
FACET_TABLE = (
    ("f46", F46, 1, ("3456", "1456", "0456"), (-1,)),
    ("f25", F25, 1, ("1245", "0245", "1235", "0235"), (-1,)),
    ("f145", f_vector(1, 4, 5), -1, ("145",), (1, 2, 3)),
    ("f045", f_vector(0, 4, 5), -1, ("045",), (1, 2, 3)),
    ("f356", f_vector(3, 5, 6), -1, ("356",), (1, 2, 3)),
    ("f035", f_vector(0, 3, 5), -1, ("035",), (1, 2)),
    ("f135", f_vector(1, 3, 5), -1, ("135",), (1, 2)),
)


@dataclass(frozen=True)
class Swap01:
    def describe(self) -> str:
        return "swap01"


@dataclass(frozen=True)
class Insert:
    """Wall between ``I`` and ``J = I + {j}``; ``i``, ``k`` are the cyclic neighbours of ``j`` in ``J``."""

    j: int
    i: int
    k: int

    @property
    def triple(self) -> str:
        return f"{self.i}{self.j}{self.k}"

    def describe(self) -> str:
        return f"insert {self.triple}"


def _cyclic_neighbours(j: int, big: frozenset) -> Tuple[int, int]:
    order = sorted(big)
    pos = order.index(j)
    return order[pos - 1], order[(pos + 1) % len(order)]


def wall_between(a: frozenset, b: frozenset):
    """Wall descriptor for the edge ``a -- b``."""
    if a ^ b == {0, 1} and len(a) == len(b):
        return Swap01()
    small, big = (a, b) if len(a) < len(b) else (b, a)
    extra = big - small
    if len(extra) != 1 or not small < big:
        raise ValueError(f"{sorted(a)} and {sorted(b)} are not related by a single wall")
    (j,) = extra
    i, k = _cyclic_neighbours(j, big)
    return Insert(j, i, k)


def _name(sides: Iterable[int]) -> str:
    return "".join(map(str, sorted(sides)))


@dataclass
class Chamber:
    name: str
    sides: frozenset
    neighbors: List[Tuple[str, object]] = field(default_factory=list)
    inequalities: List[Tuple[Tuple[int, ...], str]] = field(default_factory=list)

    def __hash__(self):
        return hash(self.name)

    def __repr__(self):
        return f"Chamber({self.name})"


class ChamberCatalog:
    """The 26 chambers, their closed-cell inequalities and quasipolynomials.

    ``edges`` and ``table`` default to the published data; tests pass altered
    copies to check that corruption is detected.
    """

    def __init__(self, names: Sequence[str] = CHAMBER_NAMES, edges: Sequence[Tuple[str, str]] = EDGES,
                 table: Mapping[str, str] = WALL_RULES, root: str = ROOT):
        self.table = dict(table)
        self.root = root
        self.chambers: Dict[str, Chamber] = {
            name: Chamber(name, frozenset(int(ch) for ch in name)) for name in names
        }
        self.edges = tuple(tuple(e) for e in edges)
        for a, b in self.edges:
            ca, cb = self.chambers[a], self.chambers[b]
            wall = wall_between(ca.sides, cb.sides)
            ca.neighbors.append((b, wall))
            cb.neighbors.append((a, wall))
        for chamber in self.chambers.values():
            chamber.inequalities = self._inequalities(chamber)
        self._tree = self._spanning_tree()
        self._steps = {name: self._path_steps(name) for name in self.chambers}
        self._symbolic: Dict[str, Quasipolynomial] = {}
        self._matrices = self._build_matrices()

    # -- structure ---------------------------------------------------------

    def __len__(self) -> int:
        return len(self.chambers)

    def __iter__(self):
        return iter(self.chambers.values())

    def __getitem__(self, name) -> Chamber:
        if isinstance(name, Chamber):
            return name
        if not isinstance(name, str):
            name = _name(name)
        return self.chambers[name]

    def _inequalities(self, chamber: Chamber) -> List[Tuple[Tuple[int, ...], str]]:
        """Forms ``v`` with ``v . h >= 0`` on the closed cell, each tagged with its origin."""
        out = [(tuple(sign * x for x in form), f"delta' {name}") for name, form, sign in DELTA_PRIME_FACETS]
        for other, wall in chamber.neighbors:
            if isinstance(wall, Swap01):
                sign = 1 if 1 in chamber.sides else -1
                out.append((tuple(sign * x for x in R_MINUS_S), f"swap01 with {other}"))
                continue
            form = f_vector(wall.i, wall.j, wall.k)
            # f_ijk > 0 on the smaller chamber
            sign = 1 if wall.j not in chamber.sides else -1
            out.append((tuple(sign * x for x in form), f"{wall.describe()} with {other}"))
        return out

    def chamber_inequalities(self, chamber) -> List[Tuple[Tuple[int, ...], int]]:
        """``(form, +1)`` meaning ``form . h >= 0``; the closed cell is their intersection."""
        return [(form, 1) for form, _ in self[chamber].inequalities]

    def contains(self, chamber, h: Sequence[int], strict: bool = False) -> bool:
        ineqs = self[chamber].inequalities
        if strict:
            return all(_dot(form, h) > 0 for form, _ in ineqs)
        return all(_dot(form, h) >= 0 for form, _ in ineqs)

    def chambers_containing(self, h: Sequence[int]) -> List[Chamber]:
        if not in_delta_prime(h):
            raise ValueError(f"{tuple(h)} lies outside Delta'")
        return [c for c in self if self.contains(c, h)]

    def _spanning_tree(self) -> Dict[str, Optional[Tuple[str, object]]]:
        parent: Dict[str, Optional[Tuple[str, object]]] = {self.root: None}
        queue = deque([self.root])
        while queue:
            name = queue.popleft()
            for other, wall in self.chambers[name].neighbors:
                if other not in parent:
                    parent[other] = (name, wall)
                    queue.append(other)
        missing = set(self.chambers) - set(parent)
        if missing:
            raise ValueError(f"graph is disconnected: {sorted(missing)} unreachable")
        return parent

    def _path_steps(self, name: str) -> List[Tuple[str, int]]:
        """Steps ``(triple, sign)`` from the root: ``q_name = q_root + sum(sign * diff(triple))``."""
        steps = []
        while self._tree[name] is not None:
            prev, wall = self._tree[name]
            if isinstance(wall, Insert):
                # moving prev -> name; q_small - q_big = diff
                growing = wall.j in self.chambers[name].sides
                steps.append((wall.triple, -1 if growing else 1))
            name = prev
        return steps[::-1]

    def path_from_root(self, name: str) -> List[str]:
        path = [name]
        while self._tree[path[-1]] is not None:
            path.append(self._tree[path[-1]][0])
        return path[::-1]

    # -- evaluation --------------------------------------------------------

    def step_value(self, triple: str, h: Sequence[int]) -> int:
        i, j, k = (int(ch) for ch in triple)
        return wall_difference(i, j, k, h, self.table)

    def eval_q(self, chamber, h: Sequence[int]) -> int:
        """Value at ``h`` of the quasipolynomial attached to ``chamber``."""
        h = tuple(h)
        value = q135(h)
        for triple, sign in self._steps[self[chamber].name]:
            value += sign * self.step_value(triple, h)
        return value

    def eval_q_along(self, path: Sequence[str], h: Sequence[int]) -> int:
        """Evaluate by chasing an explicit path that starts at the root."""
        if self[path[0]].name != self.root:
            raise ValueError("path must start at the root chamber")
        value = q135(h)
        for a, b in zip(path, path[1:]):
            ca, cb = self[a], self[b]
            wall = wall_between(ca.sides, cb.sides)
            if isinstance(wall, Insert):
                diff = self.step_value(wall.triple, h)
                value += -diff if wall.j in cb.sides else diff
        return value

    def quasipolynomial(self, chamber) -> Quasipolynomial:
        name = self[chamber].name
        if name not in self._symbolic:
            qp = q135_quasipolynomial()
            for triple, sign in self._steps[name]:
                i, j, k = (int(ch) for ch in triple)
                term = rule_quasipolynomial(self.table[triple], f_vector(i, j, k))
                qp = qp + term if sign > 0 else qp - term
            self._symbolic[name] = qp
        return self._symbolic[name]

    def reduced_kron_fast(self, h: Sequence[int]) -> int:
        """Reduced coefficient: zero outside ``Delta'``, else the formula of a chamber containing ``h``."""
        h = tuple(h)
        if not in_delta_prime(h):
            return 0
        for chamber in self:
            if self.contains(chamber, h):
                return self.eval_q(chamber, h)
        raise RuntimeError(f"no chamber contains {h}; the fan data is inconsistent")

    # -- vectorized evaluation --------------------------------------------

    def _build_matrices(self):
        mats = {}
        for chamber in self:
            mats[chamber.name] = np.array([form for form, _ in chamber.inequalities], dtype=np.int64)
        return mats

    def eval_q_array(self, chamber, H) -> np.ndarray:
        """Vectorized :meth:`eval_q` over the rows of an integer array ``H`` of shape ``(m, 4)``."""
        H = np.asarray(H, dtype=np.int64)
        s, g2 = H[:, 1], H[:, 3]
        value = (s - g2 + 1) * (s - g2 + 2) // 2
        for triple, sign in self._steps[self[chamber].name]:
            i, j, k = (int(ch) for ch in triple)
            f = H @ np.array(f_vector(i, j, k), dtype=np.int64)
            value = value + sign * _rule_array(self.table[triple], f)
        return value

    def contains_array(self, chamber, H, strict: bool = False) -> np.ndarray:
        vals = np.asarray(H, dtype=np.int64) @ self._matrices[self[chamber].name].T
        return (vals > 0).all(axis=1) if strict else (vals >= 0).all(axis=1)

    def reduced_kron_fast_array(self, H) -> np.ndarray:
        H = np.asarray(H, dtype=np.int64)
        out = np.zeros(len(H), dtype=np.int64)
        pending = in_delta_prime_array(H)
        for chamber in self:
            hit = pending & self.contains_array(chamber, H)
            if hit.any():
                out[hit] = self.eval_q_array(chamber, H[hit])
                pending &= ~hit
        if pending.any():
            raise RuntimeError(f"{int(pending.sum())} points of Delta' lie in no chamber")
        return out

    # -- export ------------------------------------------------------------

    def to_json(self) -> dict:
        chambers = []
        for chamber in self:
            chambers.append({
                "name": chamber.name,
                "sides": sorted(chamber.sides),
                "neighbors": [{"chamber": other, "wall": wall.describe()} for other, wall in chamber.neighbors],
                "inequalities": [{"form": list(form), "relation": ">=0", "origin": origin}
                                 for form, origin in chamber.inequalities],
                "quasipolynomial": self.quasipolynomial(chamber).normal_form(),
            })
        return {
            "schema_version": SCHEMA_VERSION,
            "variables": list(VARIABLES),
            "root": self.root,
            "delta_prime": [{"name": name, "form": list(form), "sign": sign} for name, form, sign in DELTA_PRIME_FACETS],
            "edges": [list(e) for e in self.edges],
            "wall_rules": dict(sorted(self.table.items())),
            "facets": [{"name": name, "form": list(form), "sign": sign, "chambers": list(owners), "offsets": list(deltas)}
                       for name, form, sign, owners, deltas in FACET_TABLE],
            "chambers": chambers,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1, sort_keys=False) + "\n"

    @classmethod
    def from_json(cls, doc: Mapping) -> "ChamberCatalog":
        """Rebuild from an exported document, checking the stored formulas against a recomputation."""
        if doc.get("schema_version") != SCHEMA_VERSION:
            raise ValueError(f"unsupported schema version {doc.get('schema_version')!r}")
        names = [c["name"] for c in doc["chambers"]]
        catalog = cls(names=names, edges=[tuple(e) for e in doc["edges"]], table=doc["wall_rules"], root=doc["root"])
        for entry in doc["chambers"]:
            stored = Quasipolynomial.from_normal_form(entry["quasipolynomial"])
            if stored != catalog.quasipolynomial(entry["name"]):
                raise ValueError(f"stored formula of {entry['name']} disagrees with the graph data")
        return catalog

    @classmethod
    def loads(cls, text: str) -> "ChamberCatalog":
        return cls.from_json(json.loads(text))


def _rule_array(rule: str, f: np.ndarray) -> np.ndarray:
    if rule == HALF:
        return f * (f - 1) // 2
    if rule == QUARTER_MINUS:
        return (f * f - (f & 1)) // 4
    if rule == QUARTER_PLUS:
        return (f * (f - 2) + (f & 1)) // 4
    raise ValueError(f"unknown rule class {rule!r}")


def in_delta_prime_array(H) -> np.ndarray:
    H = np.asarray(H, dtype=np.int64)
    mask = np.ones(len(H), dtype=bool)
    for _, form, sign in DELTA_PRIME_FACETS:
        mask &= sign * (H @ np.array(form, dtype=np.int64)) >= 0
    return mask


_default_catalog: Optional[ChamberCatalog] = None


def default_catalog() -> ChamberCatalog:
    global _default_catalog
    if _default_catalog is None:
        _default_catalog = ChamberCatalog()
    return _default_catalog


def eval_q(chamber, h: Sequence[int]) -> int:
    return default_catalog().eval_q(chamber, h)


def chambers_containing(h: Sequence[int]) -> List[Chamber]:
    return default_catalog().chambers_containing(h)


def chamber_inequalities(chamber):
    return default_catalog().chamber_inequalities(chamber)


def reduced_kron_fast(h: Sequence[int]) -> int:
    return default_catalog().reduced_kron_fast(h)
