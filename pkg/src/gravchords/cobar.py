"""Planar cobar complex of the gravity cooperad at a fixed arity.

A basis element is a tiling of the n-gon with a gravity diagram on every
tile. Tiles are listed root first, then by their output chord in chord
order; a decorated tile is an odd or even block according to the parity of
its chord count. The differential splits one tile along a residual chord of
its decoration, then restores the canonical tile order with Koszul signs.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field

from .cohomology import gravity_masks
from .errors import InvariantViolation, SizeGuard
from .exterior import chords_of, monomial, popcount
from .linalg import RowEchelon, matmul
from .operad import cut
from .polygon import Chord, Tiling, noncrossing_subsets, residual_chords
from .polygon import enumerate_chords

MIN_N, MAX_N = 3, 7


@dataclass(frozen=True)
class CobarBasisElement:
    tiling: tuple[Chord, ...]
    decorations: tuple[int, ...]

    @property
    def tiling_degree(self) -> int:
        return len(self.tiling)

    @property
    def total_chords(self) -> int:
        return len(self.tiling) + sum(popcount(m) for m in self.decorations)


@dataclass
class IntegerChainComplex:
    """Cobar complex split by total chord count D; within D the degree is the tiling size."""
    n: int
    basis: dict = field(default_factory=dict)        # (D, k) -> list of basis elements
    differentials: dict = field(default_factory=dict)  # (D, k) -> {(row, col): value}, C_{D,k} -> C_{D,k+1}

    def dims(self, D: int) -> list[int]:
        ks = [k for (d, k) in self.basis if d == D]
        top = max(ks, default=-1)
        return [len(self.basis.get((D, k), [])) for k in range(top + 1)]

    @property
    def total_degrees(self) -> list[int]:
        return sorted({d for d, _ in self.basis})

    def check_square_zero(self) -> bool:
        for (D, k), first in self.differentials.items():
            second = self.differentials.get((D, k + 1))
            if second and matmul(first, second):
                return False
        return True

    def entries(self) -> set:
        return {v for m in self.differentials.values() for v in m.values()}

    def to_json(self) -> dict:
        return {"n": self.n,
                "dimensions": {str(D): self.dims(D) for D in self.total_degrees},
                "differentials": [{"D": D, "k": k, "entries": [[r, c, v] for (r, c), v in sorted(m.items())]}
                                  for (D, k), m in sorted(self.differentials.items())]}


def _koszul_sort(blocks: list, key) -> tuple[list, int]:
    """Bubble ``blocks`` (pairs (sort key, parity, payload)) into order, tracking the sign."""
    blocks = list(blocks)
    sign = 1
    for end in range(len(blocks) - 1, 0, -1):
        for k in range(end):
            if key(blocks[k]) > key(blocks[k + 1]):
                if blocks[k][1] & blocks[k + 1][1] & 1:
                    sign = -sign
                blocks[k], blocks[k + 1] = blocks[k + 1], blocks[k]
    return blocks, sign


def _tile_key(output):
    if output is None:
        return (0,)
    return (1, output[0] - output[1], output[0], output[1])


def differential(n: int, x: CobarBasisElement) -> dict[CobarBasisElement, int]:
    tiling = Tiling(n, x.tiling)
    tiles = tiling.tiles
    out: dict[CobarBasisElement, int] = defaultdict(int)
    passed = 0
    for p, (tile, mask) in enumerate(zip(tiles, x.decorations)):
        m = tile.size
        local = chords_of(mask, m)
        for c in sorted(residual_chords(local)):
            n_out, outer, _, n_in, inner, sign = cut(m, local, c)
            glued = tile.local_to_global(c)
            blocks = [(_tile_key(t.output), popcount(d), (t.output, d))
                      for t, d in zip(tiles, x.decorations)]
            blocks[p:p + 1] = [(_tile_key(glued), len(inner), (glued, monomial(inner, n_in)[1])),
                               (_tile_key(tile.output), len(outer), (tile.output, monomial(outer, n_out)[1]))]
            ordered, perm = _koszul_sort(blocks, key=lambda b: b[0])
            new_tiling = Tiling(n, x.tiling + (glued,))
            if [b[2][0] for b in ordered] != [t.output for t in new_tiling.tiles]:
                raise InvariantViolation("tile order mismatch after splitting")
            y = CobarBasisElement(new_tiling.chords, tuple(b[2][1] for b in ordered))
            out[y] += (-1) ** passed * sign * perm
        passed += popcount(mask)
    return {y: v for y, v in out.items() if v}


def cobar_basis(n: int) -> list[CobarBasisElement]:
    out = []
    for chords in noncrossing_subsets(enumerate_chords(n)):
        tiling = Tiling(n, chords)
        choices = [gravity_masks(t.size) for t in tiling.tiles]
        stack = [()]
        for options in choices:
            stack = [prefix + (d,) for prefix in stack for d in options]
        out.extend(CobarBasisElement(tiling.chords, decs) for decs in stack)
    return out


def build_cobar(n: int) -> IntegerChainComplex:
    if not MIN_N <= n <= MAX_N:
        raise SizeGuard(f"cobar complex supports {MIN_N} <= n <= {MAX_N}, got {n}")
    cx = IntegerChainComplex(n)
    grouped = defaultdict(list)
    for x in cobar_basis(n):
        grouped[(x.total_chords, x.tiling_degree)].append(x)
    for key in grouped:
        grouped[key].sort(key=lambda x: (x.tiling, x.decorations))
    cx.basis = dict(grouped)
    index = {key: {x: r for r, x in enumerate(xs)} for key, xs in grouped.items()}
    for (D, k), xs in grouped.items():
        target = index.get((D, k + 1))
        if target is None:
            continue
        entries = {}
        for r, x in enumerate(xs):
            for y, v in differential(n, x).items():
                entries[(r, target[y])] = v
        cx.differentials[(D, k)] = entries
    return cx


def _rank(entries: dict) -> int:
    rows = defaultdict(dict)
    for (r, c), v in entries.items():
        rows[r][c] = v
    ech = RowEchelon()
    for r in rows.values():
        ech.add(r)
    return ech.rank


def homology_table(cx: IntegerChainComplex) -> dict[int, list[int]]:
    """Rational homology ranks, per total chord count D and tiling degree k."""
    if not cx.check_square_zero():
        raise InvariantViolation("cobar differential does not square to zero")
    ranks = {key: _rank(m) for key, m in cx.differentials.items()}
    table = {}
    for D in cx.total_degrees:
        dims = cx.dims(D)
        table[D] = [dims[k] - ranks.get((D, k), 0) - ranks.get((D, k - 1), 0) for k in range(len(dims))]
    return table


def homology_ranks(cx: IntegerChainComplex) -> list[int]:
    """Total homology rank for each total chord count D = 0, 1, ..."""
    table = homology_table(cx)
    top = max(table)
    return [sum(table.get(D, [0])) for D in range(top + 1)]


def euler_characteristics(cx: IntegerChainComplex) -> list[int]:
    top = max(cx.total_degrees)
    return [sum((-1) ** k * d for k, d in enumerate(cx.dims(D))) for D in range(top + 1)]
