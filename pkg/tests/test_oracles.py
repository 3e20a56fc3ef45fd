import pytest

from gravchords import oracles
from gravchords.cohomology import basis_counts
from gravchords.polygon import stable_tilings
from gravchords.weights import LargeIntervalFamily


@pytest.mark.parametrize("n, ranks", [(4, (1, 2)), (5, (1, 5, 6)), (6, (1, 9, 26, 24))])
def test_orlik_solomon_ranks(n, ranks):
    assert oracles.os_quotient_ranks(n) == ranks


@pytest.mark.parametrize("n, total", [(4, 3), (5, 12), (6, 60), (8, 2520)])
def test_total_dimension(n, total):
    assert oracles.total_dimension(n) == total


@pytest.mark.parametrize("n", range(4, 8))
def test_open_point_count_matches_open_betti_numbers(n):
    # with no large interval the open stratum is M_{0,n}; purity reads Betti numbers off its count
    count = oracles.open_point_count(LargeIntervalFamily.all_ones(n))
    counts = basis_counts(n)
    d = n - 3
    assert [(-1) ** k * count[d - k] for k in range(d + 1)] == counts


@pytest.mark.parametrize("n, chi", [(4, 1), (5, 2), (6, 2), (7, 10), (8, -14)])
def test_weight_one_euler_characteristics(n, chi):
    assert oracles.euler_characteristic_all_ones(n) == chi
    assert oracles.euler_characteristic(LargeIntervalFamily.all_ones(n)) == chi


def test_stratum_count_pentagon():
    assert oracles.stratum_count(5) == 11 == len(stable_tilings(5))
