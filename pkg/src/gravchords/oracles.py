"""Independent reference computations used to cross-check the main algorithms.

None of these share code with the rewriting or the recursion beyond the
basic polygon and interval helpers.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from math import comb, factorial, prod

import networkx as nx

from .exterior import boundary_mask, merge_sign, monomial
from .linalg import RowEchelon
from .poly import PoincarePolynomial, falling_factorial
from .polygon import enumerate_chords, stable_tilings
from .weights import LargeIntervalFamily


def _arc_graph(n: int) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(range(1, n))
    g.add_edges_from(enumerate_chords(n))
    return g


@lru_cache(maxsize=None)
def os_quotient_ranks(n: int) -> tuple[int, ...]:
    """Graded dimensions of the exterior algebra modulo the Orlik-Solomon ideal.

    The ideal is spanned in degree d by e_R * d(e_C) over cycles C of the arc
    graph and arbitrary R, together with the monomials whose arcs join vertex
    1 to vertex n-1 (those hyperplanes have empty intersection).
    """
    chords = enumerate_chords(n)
    size = len(chords)
    g = _arc_graph(n)
    cycles = []
    for cyc in nx.simple_cycles(g, length_bound=max(3, n - 1)):
        edges = [tuple(sorted((cyc[k], cyc[(k + 1) % len(cyc)]))) for k in range(len(cyc))]
        cycles.append(monomial(edges, n)[1])
    dims = []
    # once a whole degree lies in the ideal, so does everything above it
    for d in range(min(size, n - 2) + 1):
        ech = RowEchelon()
        for combo in combinations(range(size), d):
            cs = [chords[k] for k in combo]
            h = nx.Graph()
            h.add_nodes_from((1, n - 1))
            h.add_edges_from(cs)
            if nx.has_path(h, 1, n - 1):
                ech.add({sum(1 << k for k in combo): 1})
        for cyc in cycles:
            clen = bin(cyc).count("1")
            if clen - 1 > d:
                continue
            bnd = boundary_mask(cyc)
            for rest in combinations(range(size), d - clen + 1):
                rmask = sum(1 << k for k in rest)
                row: dict[int, int] = {}
                for m, s in bnd.items():
                    t = merge_sign(rmask, m)
                    if t:
                        row[rmask | m] = row.get(rmask | m, 0) + s * t
                ech.add(row)
        dims.append(comb(size, d) - ech.rank)
        if dims[-1] == 0:
            break
    while len(dims) > 1 and dims[-1] == 0:
        dims.pop()
    return tuple(dims)


def total_dimension(n: int) -> int:
    """Total Betti number of M_{0,n} as the product of the fibration fibre counts."""
    return prod(range(3, n))


def _set_partitions(items: list[int], ok):
    """Set partitions of ``items`` all of whose blocks satisfy ``ok``."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest, ok):
        for k, block in enumerate(part):
            merged = [first] + block
            if ok(merged):
                yield part[:k] + [merged] + part[k + 1:]
        yield [[first]] + part


@lru_cache(maxsize=None)
def open_point_count(key: LargeIntervalFamily) -> PoincarePolynomial:
    """Points of the open stratum over F_q, as a polynomial in q.

    Marking n sits at infinity; the others are points of the affine line that
    may coincide exactly when their hull is a small interval. The affine
    group q(q-1) acts freely.
    """
    m = key.n

    def ok(block):
        return not key.is_large(min(block), max(block))

    total = PoincarePolynomial((0,))
    for part in _set_partitions(list(range(1, m)), ok):
        total = total + falling_factorial(len(part))
    return total.div_linear(0).div_linear(1)


@lru_cache(maxsize=None)
def point_count(key: LargeIntervalFamily) -> PoincarePolynomial:
    """Point count of the whole space: a sum over strata indexed by stable tilings."""
    total = PoincarePolynomial((0,))
    for tiling in stable_tilings(key.n, large=key.is_large):
        term = PoincarePolynomial.one()
        for tile in tiling.tiles:
            term = term * open_point_count(key.tile_key(tile))
        total = total + term
    return total


def betti_from_point_count(key: LargeIntervalFamily) -> PoincarePolynomial:
    """Poincare polynomial read off the point count, using purity: b_k = (-1)^k [q^(n-3-k)] N."""
    count = point_count(key)
    d = key.n - 3
    return PoincarePolynomial((-1) ** k * count[d - k] for k in range(d + 1))


def euler_characteristic(key: LargeIntervalFamily) -> int:
    """Sum over stable tilings of the product of the open tile Euler characteristics."""
    total = 0
    for tiling in stable_tilings(key.n, large=key.is_large):
        total += prod(open_point_count(key.tile_key(t))(1) for t in tiling.tiles)
    return total


def euler_characteristic_all_ones(n: int) -> int:
    """Same sum at weight one, where an open m-gon tile contributes (-1)^(m-3) (m-3)!."""
    total = 0
    for tiling in stable_tilings(n):
        total += prod((-1) ** (t.size - 3) * factorial(t.size - 3) for t in tiling.tiles)
    return total


def stratum_count(n: int) -> int:
    return len(stable_tilings(n))

