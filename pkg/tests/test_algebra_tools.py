from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from gravchords.linalg import matmul, matrix_rank, rank
from gravchords.poly import PoincarePolynomial, falling_factorial

ints = st.integers(-3, 3)
polys = st.lists(ints, min_size=1, max_size=5).map(PoincarePolynomial)


@given(st.lists(st.lists(ints, min_size=4, max_size=4), min_size=1, max_size=6))
def test_rank_matches_sympy(rows):
    sparse = [{j: v for j, v in enumerate(r) if v} for r in rows]
    assert rank(sparse) == sympy.Matrix(rows).rank()


@given(st.lists(st.lists(ints, min_size=3, max_size=3), min_size=3, max_size=3),
       st.lists(st.lists(ints, min_size=3, max_size=3), min_size=3, max_size=3))
def test_matmul_matches_sympy(a, b):
    sa = {(i, j): v for i, r in enumerate(a) for j, v in enumerate(r) if v}
    sb = {(i, j): v for i, r in enumerate(b) for j, v in enumerate(r) if v}
    prod = sympy.Matrix(a) * sympy.Matrix(b)
    assert matmul(sa, sb) == {(i, j): prod[i, j] for i in range(3) for j in range(3) if prod[i, j]}
    assert matrix_rank(sa, 3) == sympy.Matrix(a).rank()


def test_rank_with_fractions():
    assert rank([{0: Fraction(1, 2), 1: 1}, {0: 1, 1: 2}, {2: 3}]) == 2


@given(polys, polys, st.integers(-3, 3))
def test_polynomial_ring_laws(p, q, x):
    assert (p + q)(x) == p(x) + q(x)
    assert (p * q)(x) == p(x) * q(x)
    assert p - p == 0
    assert p.shift(2)(x) == x ** 2 * p(x)


@given(polys, st.integers(-3, 3))
def test_exact_division(p, root):
    factor = PoincarePolynomial((-root, 1))
    assert (p * factor).div_linear(root) == p


def test_inexact_division_raises():
    with pytest.raises(ArithmeticError):
        PoincarePolynomial((1, 1)).div_linear(1)


def test_falling_factorial():
    assert falling_factorial(3) == [0, 2, -3, 1]
    assert falling_factorial(0) == 1


def test_formatting():
    assert str(PoincarePolynomial((1, 0, 5, 4))) == "1 + 5t^2 + 4t^3"
    assert str(PoincarePolynomial((1, -1))) == "1 - t"
    assert PoincarePolynomial((1, 2, 0)).to_list() == [1, 2]
    assert PoincarePolynomial().degree == -1
