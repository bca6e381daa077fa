import itertools
import json
import random

import numpy as np
import pytest

from kron22.chambers import (CHAMBER_NAMES, EDGES, RULE_CLASSES, WALL_RULES, ChamberCatalog, Insert, Swap01,
                             chambers_containing, default_catalog, eval_q, f_form, f_vector, in_delta_prime,
                             q135, reduced_kron_fast, rule_value, wall_difference, wall_between)
from kron22.polygon import reduced_kron_count

import fan_checks

EXPECTED_SIDES = [
    {1, 2, 4, 5}, {1, 2, 4, 5, 6}, {0, 2, 4, 5, 6}, {0, 2, 4, 5}, {1, 4, 5}, {1, 4, 5, 6}, {0, 4, 5, 6},
    {0, 4, 5}, {1, 2, 3, 4, 5}, {1, 2, 3, 4, 5, 6}, {0, 2, 3, 4, 5, 6}, {0, 2, 3, 4, 5}, {1, 3, 4, 5},
    {1, 3, 4, 5, 6}, {3, 4, 5, 6}, {0, 3, 4, 5, 6}, {0, 3, 4, 5}, {1, 2, 3, 5}, {1, 2, 3, 5, 6},
    {0, 2, 3, 5, 6}, {0, 2, 3, 5}, {1, 3, 5}, {1, 3, 5, 6}, {3, 5, 6}, {0, 3, 5, 6}, {0, 3, 5},
]


@pytest.fixture(scope="module")
def catalog():
    return default_catalog()


def test_f_forms():
    h = (13, 8, 10, 6)
    r, s, g1, g2 = h
    assert f_form(1, 3, 5, h) == g2 - s
    assert f_form(1, 4, 5, h) == r - s - g1
    assert f_form(0, 4, 5, h) == s - r - g1
    assert f_form(3, 5, 6, h) == g1 + g2 - r - s
    assert f_form(0, 3, 5, h) == g2 - r
    with pytest.raises(ValueError):
        f_form(1, 1, 5, h)
    with pytest.raises(ValueError):
        f_vector(0, 3, 7)


def test_f_is_alternating():
    for i, j, k in itertools.permutations(range(7), 3):
        assert f_vector(j, i, k) == tuple(-x for x in f_vector(i, j, k))
        assert f_vector(j, k, i) == f_vector(i, j, k)


def test_rule_classes():
    assert [rule_value("half", f) for f in range(-2, 4)] == [3, 1, 0, 0, 1, 3]
    assert [rule_value("quarter-minus", f) for f in range(-2, 4)] == [1, 0, 0, 0, 1, 2]
    assert [rule_value("quarter-plus", f) for f in range(-2, 4)] == [2, 1, 0, 0, 0, 1]
    assert wall_difference(6, 1, 3, (0, 0, 0, 0)) == 0
    with pytest.raises(KeyError):
        wall_difference(0, 1, 2, (0, 0, 0, 0))


def test_graph_shape(catalog):
    assert len(catalog) == 26
    assert sorted(map(sorted, EXPECTED_SIDES)) == sorted(sorted(c.sides) for c in catalog)
    assert len(set(map(frozenset, EDGES))) == len(EDGES) == 48
    for c in catalog:
        for other, wall in c.neighbors:
            assert any(n == c.name for n, _ in catalog[other].neighbors)


def test_walls_use_cyclic_neighbours():
    assert wall_between(frozenset({1, 3, 5}), frozenset({0, 3, 5})) == Swap01()
    assert wall_between(frozenset({1, 3, 5}), frozenset({1, 3, 5, 6})) == Insert(6, 5, 1)
    assert wall_between(frozenset({0, 3, 5}), frozenset({0, 3, 5, 6})) == Insert(6, 5, 0)
    assert wall_between(frozenset({1, 3, 5}), frozenset({1, 2, 3, 5})) == Insert(2, 1, 3)
    triples = {w.triple for _, _, w in fan_checks.insert_walls(default_catalog())}
    assert triples == set(WALL_RULES)


def test_delta_prime_and_membership(catalog):
    assert [c.name for c in chambers_containing((13, 8, 10, 6))] == ["135"]
    assert [c.name for c in chambers_containing((8, 13, 10, 6))] == ["035"]
    assert len(chambers_containing((0, 0, 0, 0))) == 26
    assert not in_delta_prime((1, 0, 0, 0))
    with pytest.raises(ValueError):
        chambers_containing((1, 0, 0, 0))


def test_examples(catalog):
    assert eval_q("135", (13, 8, 10, 6)) == q135((13, 8, 10, 6)) == 6
    assert reduced_kron_fast((0, 0, 0, 0)) == 1
    assert reduced_kron_fast((1, 0, 0, 0)) == 0
    assert reduced_kron_fast((1, 1, 1, 1)) == 1


def test_engine_agreement(catalog):
    assert len(fan_checks.count_mismatches(catalog, 25)) == 0


def test_scalar_and_array_paths_agree(catalog):
    rng = random.Random(1)
    points = np.array([[rng.randint(-15, 15) for _ in range(4)] for _ in range(500)])
    for chamber in catalog:
        expected = [catalog.eval_q(chamber, tuple(map(int, h))) for h in points]
        assert list(catalog.eval_q_array(chamber, points)) == expected


def test_covering_and_disjointness(catalog):
    uncovered, overlapping, inside = fan_checks.covering_report(catalog, 25)
    assert inside > 0 and uncovered == 0 and overlapping == 0


def test_nonnegative_on_cells(catalog):
    points = fan_checks.box_points(20)
    for chamber in catalog:
        hit = catalog.contains_array(chamber, points)
        assert (catalog.eval_q_array(chamber, points[hit]) >= 0).all(), chamber.name


def test_closed_cells_agree_on_shared_faces(catalog):
    grid = np.array(list(itertools.product(range(-10, 11), repeat=4)), dtype=np.int64)
    for a, b in EDGES:
        both = catalog.contains_array(a, grid) & catalog.contains_array(b, grid)
        assert (catalog.eval_q_array(a, grid[both]) == catalog.eval_q_array(b, grid[both])).all(), (a, b)


def test_path_independence(catalog):
    assert fan_checks.edge_identity_failures(catalog) == []
    assert fan_checks.cycle_failures(catalog) == []


def test_path_independence_on_whole_box(catalog):
    grid = np.array(list(itertools.product(range(-10, 11), repeat=4)), dtype=np.int64)
    for a, b in EDGES:
        wall = wall_between(catalog[a].sides, catalog[b].sides)
        qa, qb = catalog.eval_q_array(a, grid), catalog.eval_q_array(b, grid)
        if isinstance(wall, Swap01):
            assert (qa == qb).all()
            continue
        f = grid @ np.array(f_vector(wall.i, wall.j, wall.k))
        diff = np.array([rule_value(WALL_RULES[wall.triple], int(x)) for x in f])
        small_minus_big = qa - qb if wall.j in catalog[b].sides else qb - qa
        assert (small_minus_big == diff).all(), (a, b)


def test_wall_strips(catalog):
    assert fan_checks.wall_strip_failures(catalog) == []


def test_facet_strips(catalog):
    assert fan_checks.facet_strip_failures(catalog) == []


def test_formulas_vanish_just_outside_delta_prime(catalog):
    """The facet strips hold on the full hyperplanes, not only near the cone."""
    for entry, owners, deltas in fan_checks.FACET_OFFSETS:
        form = np.array(fan_checks.facet_form(entry))
        grid = np.array(list(itertools.product(range(-12, 13), repeat=4)), dtype=np.int64)
        for delta in deltas:
            on = grid[grid @ form == delta]
            for owner in owners:
                assert not catalog.eval_q_array(owner, on).any(), (owner, delta)


@pytest.mark.parametrize("triple", sorted(WALL_RULES))
def test_every_rule_mutation_is_detected(triple):
    for rule in RULE_CLASSES:
        if rule == WALL_RULES[triple]:
            continue
        mutated = ChamberCatalog(table={**WALL_RULES, triple: rule})
        detected = (fan_checks.wall_strip_failures(mutated, samples=50)
                    or fan_checks.edge_identity_failures(mutated)
                    or len(fan_checks.count_mismatches(mutated, 12)))
        assert detected, (triple, rule)


def test_dropping_an_edge_is_detected():
    mutated = ChamberCatalog(edges=[e for e in EDGES if e != ("135", "1345")])
    uncovered, overlapping, _ = fan_checks.covering_report(mutated, 12)
    assert uncovered or overlapping or len(fan_checks.count_mismatches(mutated, 12))


def test_export_round_trip(catalog):
    text = catalog.dumps()
    doc = json.loads(text)
    assert doc["schema_version"] == 1 and len(doc["chambers"]) == 26
    again = ChamberCatalog.loads(text)
    assert again.dumps() == text
    root = next(c for c in doc["chambers"] if c["name"] == "135")
    assert root["quasipolynomial"]["Q"] == {"s*s": 2, "s*g2": -4, "g2*g2": 2}


def test_tampered_export_is_refused(catalog):
    doc = json.loads(catalog.dumps())
    doc["wall_rules"]["234"] = "half"
    with pytest.raises(ValueError):
        ChamberCatalog.from_json(doc)
    doc = json.loads(catalog.dumps())
    doc["schema_version"] = 99
    with pytest.raises(ValueError):
        ChamberCatalog.from_json(doc)
