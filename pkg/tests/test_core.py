import pytest
from hypothesis import given, strategies as st

from kron22.core import (InvalidTripleError, KronIndex, Partition, ReducedIndex, ZeroSignal, kron_indices,
                         partitions, to_kron_index, validate_triple)
from kron22.oracle import kron_oracle


def test_partition_strips_trailing_zeros():
    assert Partition((3, 1, 0, 0)) == Partition((3, 1))
    assert Partition.parse("2,2,0") == (2, 2)
    assert Partition.parse("") == ()


@pytest.mark.parametrize("bad", [(1, 2), (3, -1), (2, 0, 1)])
def test_partition_rejects_non_partitions(bad):
    with pytest.raises(ValueError):
        Partition(bad)


@given(st.lists(st.integers(0, 9), max_size=6))
def test_weight_and_length(parts):
    lam = Partition(sorted(parts, reverse=True))
    assert lam.weight == sum(parts)
    assert lam.length == sum(1 for p in parts if p)


def test_partition_counts():
    assert [sum(1 for _ in partitions(n)) for n in range(10)] == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30]
    assert sum(1 for _ in partitions(8, max_length=2)) == 5


def test_kron_index_validity():
    assert KronIndex(4, 2, 2, 1, 1).valid()
    assert not KronIndex(4, 3, 2, 1, 1).valid()
    assert not KronIndex(4, 2, 2, 1, 2).valid()
    assert KronIndex(4, 2, 1, 1, 0).lam() == (3, 1)
    assert KronIndex(2, 1, 1, 0, 0).scaled(3) == (6, 3, 3, 0, 0)
    assert not ReducedIndex(1, 1, 0, 1).valid()


def test_kron_indices_are_exactly_the_valid_tuples():
    brute = {(n, r, s, a, b) for n in range(7) for r in range(n + 1) for s in range(n + 1)
             for a in range(n + 1) for b in range(n + 1) if KronIndex(n, r, s, a, b).valid()}
    assert set(kron_indices(6)) == brute


def test_validate_triple_examples():
    assert validate_triple((2, 2), (2, 2), (2, 2))
    report = validate_triple((3,), (1, 1, 1), (2,))
    assert not report
    assert len(report.problems) >= 2
    assert not validate_triple((5,), (1, 1, 1, 1, 1), (3, 2)) and validate_triple((1, 1, 1, 1), (3, 1), (3, 1))


def test_validate_triple_lists_every_problem():
    report = validate_triple((1, 1, 1, 1, 1), (2, 2, 1), (4,))
    text = str(report)
    assert "length" in text and len(report.problems) >= 3


def test_to_kron_index_examples():
    assert to_kron_index((2, 2), (2, 2), (2, 2)) == (4, 2, 2, 2, 0)
    assert to_kron_index((2, 2, 1, 1), (3, 3), (3, 3)) == (2, 1, 1, 1, 0)
    zero = to_kron_index((1, 1, 1, 1), (3, 1), (3, 1))
    assert isinstance(zero, ZeroSignal) and not zero
    with pytest.raises(InvalidTripleError):
        to_kron_index((3,), (2,), (2,))


def _triples(max_weight):
    for n in range(1, max_weight + 1):
        two_rows = list(partitions(n, max_length=2))
        for lam in partitions(n, max_length=4):
            for i, mu in enumerate(two_rows):
                for nu in two_rows[i:]:
                    yield lam, mu, nu


def test_reduction_weight():
    for lam, mu, nu in _triples(16):
        idx = to_kron_index(lam, mu, nu)
        if not isinstance(idx, ZeroSignal):
            assert idx.n == lam.weight - 4 * lam.part(3)
            assert idx.valid()


def test_zero_signal_agrees_with_oracle():
    seen = 0
    for lam, mu, nu in _triples(12):
        if isinstance(to_kron_index(lam, mu, nu), ZeroSignal):
            seen += 1
            assert kron_oracle(lam, mu, nu) == 0, (lam, mu, nu)
    assert seen > 0


def test_reduction_preserves_the_coefficient():
    for lam, mu, nu in _triples(10):
        idx = to_kron_index(lam, mu, nu)
        if not isinstance(idx, ZeroSignal):
            assert kron_oracle(lam, mu, nu) == kron_oracle(idx.lam(), idx.mu(), idx.nu())
