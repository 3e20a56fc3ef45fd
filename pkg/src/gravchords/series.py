"""Truncated power series in x with Poincare-polynomial coefficients.

G(x) = sum_n g_n(t) x^n counts gravity diagrams on the (n+1)-gon and
P(y) = sum_n p_n(t) y^n counts the prime ones. Operadic freeness says
G = P(x + t G); equivalently q(h(x)) = x for h = x + t G and q = y - t P.
"""
from __future__ import annotations

from .cohomology import basis_counts
from .poly import PoincarePolynomial

Series = dict  # power of x -> PoincarePolynomial


def truncate(s: Series, order: int) -> Series:
    return {k: v for k, v in s.items() if k <= order and v != 0}


def add(a: Series, b: Series) -> Series:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, PoincarePolynomial((0,))) + v
    return {k: v for k, v in out.items() if v != 0}


def mul(a: Series, b: Series, order: int) -> Series:
    out: Series = {}
    for i, u in a.items():
        for j, v in b.items():
            if i + j <= order:
                out[i + j] = out.get(i + j, PoincarePolynomial((0,))) + u * v
    return {k: v for k, v in out.items() if v != 0}


def scale(a: Series, p: PoincarePolynomial) -> Series:
    return {k: v * p for k, v in a.items() if v * p != 0}


def compose(outer: Series, inner: Series, order: int) -> Series:
    """outer(inner(x)) through x^order; ``inner`` must have no constant term."""
    if inner.get(0, 0) != 0:
        raise ValueError("inner series must vanish at 0")
    out: Series = {}
    power: Series = {0: PoincarePolynomial.one()}
    for k in range(order + 1):
        if k in outer:
            out = add(out, scale(power, outer[k]))
        power = mul(power, inner, order)
        if not power:
            break
    return truncate(out, order)


def gravity_series(order: int) -> Series:
    return {n: PoincarePolynomial(basis_counts(n + 1)) for n in range(2, order + 1)}


def prime_series(order: int, source=None) -> Series:
    """Prime counts; ``source(n)`` may supply the polynomial of the n-gon instead of the basis scan."""
    if source is None:
        return {n: PoincarePolynomial(basis_counts(n + 1, prime_only=True)) for n in range(2, order + 1)}
    return {n: source(n + 1) for n in range(2, order + 1)}


T = PoincarePolynomial.monomial(1)
X: Series = {1: PoincarePolynomial.one()}


def freeness_defect(G: Series, P: Series, order: int) -> Series:
    """G - P(x + t G); empty when the freeness identity holds through ``order``."""
    h = add(X, scale(G, T))
    return add(truncate(G, order), scale(compose(P, h, order), PoincarePolynomial((-1,))))


def inverse_defect(G: Series, P: Series, order: int) -> Series:
    """q(h(x)) - x for h = x + t G and q = y - t P."""
    h = truncate(add(X, scale(G, T)), order)
    q = add(X, scale(P, -T))
    return add(compose(q, h, order), scale(X, PoincarePolynomial((-1,))))


def series_to_json(s: Series) -> dict:
    return {str(k): v.to_list() for k, v in sorted(s.items())}
