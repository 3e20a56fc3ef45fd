import json

import pytest
from hypothesis import given, strategies as st

from gravchords import operad
from gravchords.cohomology import enumerate_gravity_basis, gravity_masks, reduce_chord
from gravchords.errors import InvalidChord, NotGravity, NotResidual, PresentationError
from gravchords.exterior import AlgebraElement, chords_of, monomial
from gravchords.operad import DecoratedPlanarTree as Tree
from gravchords.polygon import enumerate_chords, residual_chords

from strategies import elements

OCTAGON = ((1, 2), (3, 6), (5, 7), (3, 7))
# element of arity 9 factoring through a pentagon, a triangle and a hexagon
G9_TREE = Tree(5, ((1, 3), (2, 4)),
               ((1, Tree(3, (), ((2, Tree(6, ((1, 4), (2, 5), (1, 3)))),))),))


def diagrams(min_n=3, max_n=6):
    return st.integers(min_n, max_n).flatmap(
        lambda n: st.tuples(st.just(n), st.sampled_from(enumerate_gravity_basis(n))))


def test_graft_square_triangle():
    assert operad.graft(4, [], 1, 3, []) == (5, ((1, 2),), 1)


def test_graft_square_hexagon_octagon():
    n, chords, sign = operad.graft(4, [(1, 2)], 3, 6, [(1, 4), (3, 5)])
    assert n == 8 and set(chords) == set(OCTAGON)
    assert sign == 1


def test_cut_inverts_examples():
    assert operad.cut(8, OCTAGON, (3, 7)) == (4, ((1, 2),), 3, 6, ((1, 4), (3, 5)), 1)
    assert operad.cut(5, [(1, 2)], (1, 2)) == (4, (), 1, 3, (), 1)


def test_cut_errors():
    with pytest.raises(NotResidual):
        operad.cut(5, [(1, 3), (2, 4)], (1, 3))
    with pytest.raises(NotResidual):
        operad.cut(5, [(1, 3)], (2, 3))
    with pytest.raises(NotGravity):
        operad.cut(5, [(1, 2), (2, 3)], (1, 2))


def test_graft_errors():
    with pytest.raises(NotGravity):
        operad.graft(5, [(1, 2), (2, 3)], 1, 3, [])
    with pytest.raises(InvalidChord):
        operad.graft(4, [], 4, 3, [])


@pytest.mark.parametrize("n", range(3, 8))
def test_cut_graft_roundtrip(n):
    for d in enumerate_gravity_basis(n):
        for c in residual_chords(d):
            n_out, outer, slot, n_in, inner, sign = operad.cut(n, d, c)
            assert operad.graft(n_out, outer, slot, n_in, inner) == (n, tuple(d), sign)


@given(st.data())
def test_sequential_associativity(data):
    n1, d1 = data.draw(diagrams(3, 5))
    n2, d2 = data.draw(diagrams(3, 5))
    n3, d3 = data.draw(diagrams(3, 5))
    i = data.draw(st.integers(1, n1 - 1))
    j = data.draw(st.integers(1, n2 - 1))
    n, c, s = operad.graft(n1, d1, i, n2, d2)
    left = operad.graft(n, c, i + j - 1, n3, d3)
    n, c, t = operad.graft(n2, d2, j, n3, d3)
    right = operad.graft(n1, d1, i, n, c)
    assert left[:2] == right[:2]
    # each grafting contributes an odd glued chord
    assert s * left[2] == (-1) ** (len(d3) + 1) * t * right[2]


@given(st.data())
def test_parallel_associativity(data):
    n1, d1 = data.draw(diagrams(4, 6))
    n2, d2 = data.draw(diagrams(3, 5))
    n3, d3 = data.draw(diagrams(3, 5))
    i, i2 = sorted(data.draw(st.lists(st.integers(1, n1 - 1), min_size=2, max_size=2, unique=True)))
    n, c, s = operad.graft(n1, d1, i2, n3, d3)
    left = operad.graft(n, c, i, n2, d2)
    n, c, t = operad.graft(n1, d1, i, n2, d2)
    right = operad.graft(n, c, i2 + n2 - 2, n3, d3)
    assert left[:2] == right[:2]
    assert s * left[2] == (-1) ** ((len(d2) + 1) * (len(d3) + 1)) * t * right[2]


def test_factorization_of_arity_nine_example():
    n, chords, sign = operad.compose_tree(G9_TREE)
    assert n == 10
    assert set(chords) == {(1, 8), (1, 6), (2, 6), (2, 5), (3, 6), (2, 4), (7, 9)}
    tree, fsign = operad.prime_factorization(n, chords)
    assert tree == G9_TREE
    assert fsign == sign == -1
    assert tree.vertices == 3 and tree.arity == 9


def test_prime_diagrams_factor_trivially():
    assert operad.prime_factorization(6, [])[0] == Tree(6, ())
    assert operad.prime_factorization(5, [(1, 3), (2, 4)]) == (Tree(5, ((1, 3), (2, 4))), 1)


@pytest.mark.parametrize("n", range(3, 8))
def test_factorization_roundtrip(n):
    for d in enumerate_gravity_basis(n):
        tree, sign = operad.prime_factorization(n, d)
        assert operad.compose_tree(tree) == (n, tuple(d), sign)
        assert tree.arity == n - 1
        assert all(not residual_chords(ch) for _, ch in tree.decorations())


def test_tree_json_roundtrip():
    data = json.loads(json.dumps(G9_TREE.to_json()))
    assert Tree.from_json(data) == G9_TREE


def test_residue_examples():
    x = operad.gravity_element(4, [(1, 2)])
    res = operad.residue(x, (1, 2))
    assert res.terms == {(0, 0): 1}
    assert (res.n_inner, res.n_outer) == (3, 3)
    assert not operad.residue(operad.gravity_element(5, [(1, 3), (2, 4)]), (1, 3))
    assert not operad.residue(operad.gravity_element(5, [(1, 3)]), (2, 4))


def test_residue_needs_reduced_input():
    with pytest.raises(PresentationError):
        operad.residue(AlgebraElement.from_chords(5, [(1, 2)]), (1, 2))


@pytest.mark.parametrize("n", range(4, 8))
def test_residues_of_primes_vanish(n):
    for p in enumerate_gravity_basis(n, prime_only=True):
        x = operad.gravity_element(n, p)
        assert not any(operad.residue(x, c) for c in enumerate_chords(n))


@given(st.data())
def test_cocomposition_compatibility(data):
    x = data.draw(elements(min_n=4, max_n=6))
    c = data.draw(st.sampled_from(enumerate_chords(x.n)))
    assert operad.residue(reduce_chord(x), c) == operad.residue_alpha(x, c)


@given(st.data())
def test_rotation_has_order_n(data):
    n = data.draw(st.integers(3, 6))
    mask = data.draw(st.sampled_from(gravity_masks(n)))
    x = AlgebraElement(n, {mask: 1}, "gravity")
    y = x
    for _ in range(n):
        y = operad.rotate(y)
        assert y.degrees() <= x.degrees()
    assert y == x


@given(st.data())
def test_rotation_is_linear(data):
    n = data.draw(st.integers(4, 6))
    x = reduce_chord(data.draw(elements(n)))
    y = reduce_chord(data.draw(elements(n)))
    assert operad.rotate(x + y * 2) == operad.rotate(x) + operad.rotate(y) * 2


def test_rotate_fixes_empty_diagram():
    one = AlgebraElement.one(6, "gravity")
    assert operad.rotate(one) == one


def test_rotation_chord_map():
    assert operad.rotate_chord((1, 2), 5) == (2, 3)
    assert operad.rotate_chord((2, 4), 5) == (1, 2)


@pytest.mark.parametrize("n, degree", [(4, 1), (5, 2), (6, 2), (6, 3)])
def test_rotation_matrix_is_invertible_and_periodic(n, degree):
    from fractions import Fraction
    m = [[Fraction(v) for v in row] for row in operad.rotation_matrix(n, degree)]
    power = [[int(i == j) for j in range(len(m))] for i in range(len(m))]
    for _ in range(n):
        power = [[sum(power[i][k] * m[k][j] for k in range(len(m))) for j in range(len(m))]
                 for i in range(len(m))]
    assert power == [[int(i == j) for j in range(len(m))] for i in range(len(m))]


def test_prime_traces():
    assert operad.prime_trace(4, 0) == 1
    assert abs(operad.prime_trace(5, 2)) == 1
    assert abs(operad.prime_trace(6, 3)) == 1


def test_rotated_pentagon_prime_projects_onto_itself():
    p = [(1, 3), (2, 4)]
    img = operad.rotate(operad.gravity_element(5, p))
    assert abs(img.coefficient(p)) == 1
    primes = {monomial(q, 5)[1] for q in enumerate_gravity_basis(5, 2, prime_only=True)}
    others = [chords_of(m, 5) for m in img.terms if m not in primes]
    assert all(residual_chords(d) for d in others)
