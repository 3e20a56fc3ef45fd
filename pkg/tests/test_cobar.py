import pytest

from gravchords import cobar, series
from gravchords.errors import SizeGuard
from gravchords.poly import PoincarePolynomial

EXPECTED = {3: [1], 4: [1, 0], 5: [1, 0, 1], 6: [1, 0, 5, 4], 7: [1, 0, 15, 28, 22]}


@pytest.fixture(scope="module")
def complexes():
    return {n: cobar.build_cobar(n) for n in range(3, 8)}


def primes_from_freeness(order):
    """Solve G = P(x + tG) for P one coefficient at a time."""
    G = series.gravity_series(order)
    h = series.add(series.X, series.scale(G, series.T))
    P = {}
    for k in range(2, order + 1):
        rest = series.compose(P, h, k)
        P[k] = G[k] - rest.get(k, PoincarePolynomial((0,)))
    return P


def test_square_dimensions(complexes):
    cx = complexes[4]
    assert cx.dims(0) == [1]
    # the empty tiling carries both chords; each one-chord tiling is two empty triangles
    assert cx.dims(1) == [2, 2]


@pytest.mark.parametrize("n", range(3, 8))
def test_square_zero(complexes, n):
    assert complexes[n].check_square_zero()


@pytest.mark.parametrize("n", range(4, 8))
def test_entries_are_units(complexes, n):
    assert complexes[n].entries() <= {1, -1}


@pytest.mark.parametrize("n", range(3, 8))
def test_homology_ranks(complexes, n):
    assert cobar.homology_ranks(complexes[n]) == EXPECTED[n]


@pytest.mark.parametrize("n", range(4, 8))
def test_homology_in_tiling_degree_zero(complexes, n):
    for row in cobar.homology_table(complexes[n]).values():
        assert all(v == 0 for v in row[1:])


@pytest.mark.parametrize("n", range(4, 8))
def test_euler_characteristic_matches_freeness(complexes, n):
    predicted = primes_from_freeness(n - 1)[n - 1].to_list()
    chis = cobar.euler_characteristics(complexes[n])
    assert chis == predicted + [0] * (len(chis) - len(predicted))


def test_differential_touches_every_decorated_tile():
    cx = cobar.build_cobar(5)
    # each degree-one decoration on the empty tiling splits along its single chord
    for x in cx.basis[(1, 0)]:
        assert len(cobar.differential(5, x)) == 1


def test_size_guard():
    with pytest.raises(SizeGuard):
        cobar.build_cobar(8)
    with pytest.raises(SizeGuard):
        cobar.build_cobar(2)


def test_export_shape(complexes):
    data = complexes[4].to_json()
    assert data["dimensions"] == {"0": [1], "1": [2, 2]}
    assert all(len(e) == 3 for d in data["differentials"] for e in d["entries"])
