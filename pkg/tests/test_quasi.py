import random
from fractions import Fraction

import pytest

from kron22.chambers import default_catalog, q135_quasipolynomial
from kron22.quasi import Quasipolynomial, integral_on
from kron22.stretch import fit_quasipolynomial


def _random_points(rng, count, dim, lo=-50, hi=50):
    return [tuple(rng.randint(lo, hi) for _ in range(dim)) for _ in range(count)]


def test_every_chamber_formula_is_integral():
    rng = random.Random(7)
    points = _random_points(rng, 10_000, 4)
    catalog = default_catalog()
    for chamber in catalog:
        qp = catalog.quasipolynomial(chamber)
        assert integral_on(qp, points), chamber.name


def test_fitted_stretch_is_integral():
    qp = fit_quasipolynomial([(N, (N * N + N % 2) // 2) for N in range(1, 9)])
    assert integral_on(qp, [(N,) for N in range(-5_000, 5_000)])


def test_non_integral_value_is_refused():
    half = Quasipolynomial.from_polynomial(("x",), {(1,): Fraction(1, 2)})
    assert half(3) == Fraction(3, 2)
    with pytest.raises(ArithmeticError):
        half.evaluate_int((3,))


def test_normal_form_round_trip_and_shape():
    catalog = default_catalog()
    for chamber in catalog:
        qp = catalog.quasipolynomial(chamber)
        doc = qp.normal_form()
        assert Quasipolynomial.from_normal_form(doc) == qp
        for part in ("Q", "L", "M"):
            assert all(isinstance(v, int) for v in doc[part].values()), (chamber.name, part)
        assert len(doc["M"]) == 16
        assert doc["M"]["0000"] == 4


def test_q135_normal_form():
    doc = q135_quasipolynomial().normal_form()
    # 1/2 (s - g2 + 1)(s - g2 + 2) = 1/4 * 2(s - g2)^2 + 1/2 * 3(s - g2) + 4/4
    assert doc["Q"] == {"s*s": 2, "s*g2": -4, "g2*g2": 2}
    assert doc["L"] == {"s": 3, "g2": -3}
    assert all(m == 4 for m in doc["M"].values())
    assert q135_quasipolynomial().is_polynomial()


def test_arithmetic():
    x = Quasipolynomial.from_polynomial(("x",), {(1,): Fraction(1)})
    one = Quasipolynomial.from_polynomial(("x",), {(0,): Fraction(1)})
    assert (x + one)(4) == 5 and (x - x).is_zero() and (x - one).degree() == 1
