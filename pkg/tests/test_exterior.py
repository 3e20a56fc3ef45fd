import json

import pytest
from hypothesis import given, strategies as st

from gravchords.errors import PresentationError
from gravchords.exterior import (
    AlgebraElement, apply_substitution, bits, contract, inverse_unipotent, koszul_boundary, lex_key,
    monomial, unipotent, unipotent_substitution, wedge,
)
from gravchords.polygon import enumerate_chords

from strategies import elements


def e(n, *chords, basis="omega"):
    return AlgebraElement.from_chords(n, chords, 1, basis)


def test_wedge_signs():
    assert wedge(e(5, (1, 2)), e(5, (2, 3))) == e(5, (1, 2), (2, 3))
    assert wedge(e(5, (2, 3)), e(5, (1, 2))) == -e(5, (1, 2), (2, 3))
    assert not wedge(e(5, (1, 2)), e(5, (1, 2)))


def test_wedge_rejects_mixed_polygons():
    with pytest.raises(PresentationError):
        wedge(e(5, (1, 2)), e(6, (1, 2)))
    with pytest.raises(PresentationError):
        e(5, (1, 2)) + e(5, (2, 3), basis="alpha")


def test_monomial_sorts_with_sign():
    s1, m1 = monomial([(1, 2), (2, 3)], 5)
    s2, m2 = monomial([(2, 3), (1, 2)], 5)
    assert m1 == m2 and s1 == -s2
    assert monomial([(1, 2), (1, 2)], 5)[0] == 0


def test_boundary_examples():
    assert koszul_boundary(e(5, (1, 2))) == AlgebraElement.one(5, "omega")
    assert koszul_boundary(e(5, (1, 2), (2, 3))) == e(5, (2, 3)) - e(5, (1, 2))
    assert not koszul_boundary(AlgebraElement.one(5, "omega"))


def test_contraction_examples():
    x = e(5, (1, 2), (2, 3), basis="alpha")
    assert contract((1, 2), x) == e(5, (2, 3), basis="alpha")
    assert contract((2, 3), x) == -e(5, (1, 2), basis="alpha")
    assert not contract((1, 3), x)


@given(elements(basis="omega", max_n=8))
def test_boundary_squares_to_zero(a):
    assert not koszul_boundary(koszul_boundary(a))


@given(st.data())
def test_boundary_is_a_derivation(data):
    n = data.draw(st.integers(4, 7))
    a = data.draw(elements(n, "omega", max_terms=3, max_degree=2))
    b = data.draw(elements(n, "omega", max_terms=3, max_degree=2))
    # graded Leibniz on homogeneous a
    for d in a.degrees():
        part = a.homogeneous_part(d)
        lhs = koszul_boundary(wedge(part, b))
        rhs = wedge(koszul_boundary(part), b) + (-1) ** d * wedge(part, koszul_boundary(b))
        assert lhs == rhs


@given(st.data())
def test_contractions_anticommute(data):
    n = data.draw(st.integers(4, 7))
    a = data.draw(elements(n))
    c1, c2 = data.draw(st.lists(st.sampled_from(enumerate_chords(n)), min_size=2, max_size=2, unique=True))
    assert contract(c1, contract(c2, a)) == -contract(c2, contract(c1, a))
    assert not contract(c1, contract(c1, a))


def test_unipotent_on_generator():
    # boundary terms with index 0 or the pair (1, n-1) drop out
    assert unipotent(e(5, (1, 2), basis="alpha")) == e(5, (1, 2)) - e(5, (1, 3))
    assert unipotent(e(5, (2, 3), basis="alpha")) == e(5, (2, 3)) - e(5, (1, 3)) - e(5, (2, 4))


@given(elements(basis="alpha", min_n=4, max_n=8))
def test_unipotent_inverse_roundtrip(a):
    assert inverse_unipotent(unipotent(a)) == a
    assert unipotent(inverse_unipotent(a.copy("omega")), "alpha") == a


@given(elements(basis="alpha", min_n=4, max_n=7))
def test_unipotent_preserves_leading_term(a):
    if a:
        image = unipotent(a)
        lead = a.leading_monomial()
        assert image.leading_monomial() == lead
        assert image.terms[lead] == a.terms[lead]


@given(elements(basis="alpha", min_n=4, max_n=7))
def test_substitution_matches_direct_unipotent(a):
    assert apply_substitution(unipotent_substitution(a.n), a, "omega") == unipotent(a)


@given(elements())
def test_identity_substitution(a):
    phi = {c: AlgebraElement.from_chords(a.n, [c]) for c in enumerate_chords(a.n)}
    assert apply_substitution(phi, a) == a


@given(elements(basis="gravity"))
def test_json_roundtrip(a):
    back = AlgebraElement.from_json(json.loads(json.dumps(a.to_json())))
    assert back == a and back.basis == a.basis


@given(st.integers(0, 2 ** 20 - 1), st.integers(0, 2 ** 20 - 1))
def test_lex_key_is_a_total_order_on_masks(a, b):
    assert (lex_key(a) == lex_key(b)) == (a == b)
    assert lex_key(a) == tuple(sorted(bits(a)))
