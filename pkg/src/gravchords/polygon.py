"""Combinatorics of the labeled n-gon.

Sides are labeled 1..n clockwise. A chord is recorded as the pair (i, j),
i < j, of end sides of the side interval it cuts off that avoids side n.
Vertex v_k sits between sides k and k+1, so chord (i, j) joins v_{i-1}
and v_j.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Callable, Iterable, NamedTuple

from .errors import InvalidChord, InvalidPolygon

Chord = tuple[int, int]


def check_polygon(n: int, minimum: int = 3) -> None:
    if not isinstance(n, int) or n < minimum:
        raise InvalidPolygon(f"polygon size must be an integer >= {minimum}, got {n!r}")


def is_chord(c, n: int) -> bool:
    i, j = c
    return 1 <= i < j <= n - 1 and (i, j) != (1, n - 1)


def check_chord(c, n: int) -> Chord:
    try:
        i, j = c
    except (TypeError, ValueError):
        raise InvalidChord(f"not a chord: {c!r}") from None
    c = (int(i), int(j))
    if not is_chord(c, n):
        raise InvalidChord(f"{c} is not a chord of the {n}-gon")
    return c


def length(c: Chord) -> int:
    return c[1] - c[0]


def order_key(c: Chord):
    """Sort key for the chord order: longer chords first, then lexicographic."""
    return (c[0] - c[1], c[0], c[1])


@lru_cache(maxsize=None)
def enumerate_chords(n: int) -> tuple[Chord, ...]:
    check_polygon(n)
    cs = [(i, j) for i in range(1, n) for j in range(i + 1, n) if (i, j) != (1, n - 1)]
    return tuple(sorted(cs, key=order_key))


@lru_cache(maxsize=None)
def chord_index(n: int) -> dict[Chord, int]:
    return {c: k for k, c in enumerate(enumerate_chords(n))}


def sort_chords(chords: Iterable[Chord]) -> list[Chord]:
    return sorted(chords, key=order_key)


def crosses(c1: Chord, c2: Chord) -> bool:
    """True iff the side intervals overlap without either containing the other."""
    (a, b), (c, d) = c1, c2
    if b < c or d < a:
        return False
    if a <= c and d <= b:
        return False
    if c <= a and b <= d:
        return False
    return True


def contains(outer: Chord, inner: Chord) -> bool:
    return outer[0] <= inner[0] and inner[1] <= outer[1]


def cross_set(chords: Iterable[Chord], n: int) -> frozenset[Chord]:
    """All chords of the n-gon crossing every chord in ``chords``."""
    chords = list(chords)
    return frozenset(c for c in enumerate_chords(n)
                     if c not in chords and all(crosses(c, x) for x in chords))


def is_completely_crossing(A: Iterable[Chord], B: Iterable[Chord], n: int) -> bool:
    """Mutually crossing, and each side contains every chord crossing all of the other."""
    A, B = frozenset(A), frozenset(B)
    if not A or not B:
        return False
    if not all(crosses(a, b) for a in A for b in B):
        return False
    return cross_set(A, n) <= B and cross_set(B, n) <= A


@lru_cache(maxsize=None)
def completely_crossing_pairs(n: int) -> tuple[tuple[frozenset, frozenset], ...]:
    """Galois closures of singleton seeds under the crossing relation."""
    check_polygon(n, 4)
    seen = []
    for c in enumerate_chords(n):
        B = cross_set([c], n)
        if not B:
            continue
        A = cross_set(B, n)
        B2 = cross_set(A, n)
        pair = (A, B2)
        if pair not in seen and (B2, A) not in seen:
            seen.append(pair)
    for A, B in seen:
        if not is_completely_crossing(A, B, n):
            raise AssertionError(f"pair {sorted(A)}, {sorted(B)} is not completely crossing")
    return tuple(seen)


def residual_chords(chords: Iterable[Chord]) -> frozenset[Chord]:
    chords = list(chords)
    return frozenset(c for c in chords if not any(crosses(c, d) for d in chords if d != c))


def is_noncrossing(chords: Iterable[Chord]) -> bool:
    chords = list(chords)
    return all(not crosses(a, b) for k, a in enumerate(chords) for b in chords[k + 1:])


class Tile(NamedTuple):
    """A polygon of a tiling.

    ``output`` is the chord bounding the tile on the side of side n (None for
    the tile containing side n). ``parts`` are the remaining sides in
    clockwise order, each a side interval (lo, hi): a single polygon side when
    lo == hi, otherwise a chord of the tiling.
    """
    output: Chord | None
    parts: tuple[Chord, ...]

    @property
    def size(self) -> int:
        return len(self.parts) + 1

    @property
    def chord_parts(self) -> int:
        return sum(1 for lo, hi in self.parts if lo != hi)

    def local_to_global(self, c: Chord) -> Chord:
        """Chord of the tile polygon (local labels) as a chord of the big polygon."""
        return (self.parts[c[0] - 1][0], self.parts[c[1] - 1][1])

    def global_to_local(self, c: Chord) -> Chord:
        starts = {p[0]: k + 1 for k, p in enumerate(self.parts)}
        ends = {p[1]: k + 1 for k, p in enumerate(self.parts)}
        return (starts[c[0]], ends[c[1]])


def _parts(lo: int, hi: int, chords: Iterable[Chord], exclude=None) -> tuple[Chord, ...]:
    inside = [c for c in chords if lo <= c[0] and c[1] <= hi and c != exclude]
    maximal = sorted(c for c in inside
                     if not any(d != c and contains(d, c) for d in inside))
    parts = []
    k = lo
    for a, b in maximal:
        parts.extend((s, s) for s in range(k, a))
        parts.append((a, b))
        k = b + 1
    parts.extend((s, s) for s in range(k, hi + 1))
    return tuple(parts)


class Tiling:
    """A set of pairwise noncrossing chords on the n-gon, with its tiles."""

    def __init__(self, n: int, chords: Iterable[Chord] = ()):
        check_polygon(n)
        chords = [check_chord(c, n) for c in chords]
        if len(set(chords)) != len(chords):
            raise InvalidChord("repeated chord in tiling")
        if not is_noncrossing(chords):
            raise InvalidChord("tiling chords must be pairwise noncrossing")
        self.n = n
        self.chords = tuple(sort_chords(chords))

    def __eq__(self, other):
        return isinstance(other, Tiling) and (self.n, self.chords) == (other.n, other.chords)

    def __hash__(self):
        return hash((self.n, self.chords))

    def __repr__(self):
        return f"Tiling({self.n}, {list(self.chords)})"

    @property
    def tiles(self) -> tuple[Tile, ...]:
        """Root tile first, then one tile per chord in chord order."""
        tiles = [Tile(None, _parts(1, self.n - 1, self.chords))]
        for c in self.chords:
            tiles.append(Tile(c, _parts(c[0], c[1], self.chords, exclude=c)))
        return tuple(tiles)


def noncrossing_subsets(allowed: Iterable[Chord]) -> list[tuple[Chord, ...]]:
    allowed = sort_chords(set(allowed))
    out = []

    def rec(k, chosen):
        if k == len(allowed):
            out.append(tuple(chosen))
            return
        rec(k + 1, chosen)
        c = allowed[k]
        if all(not crosses(c, d) for d in chosen):
            chosen.append(c)
            rec(k + 1, chosen)
            chosen.pop()

    rec(0, [])
    return out


def all_ones_large(i: int, j: int) -> bool:
    return j > i


def stable_tilings(n: int, allowed: Iterable[Chord] | None = None,
                   large: Callable[[int, int], bool] | None = None) -> list[Tiling]:
    """Tilings by ``allowed`` chords whose tiles are all stable.

    ``large(i, j)`` decides whether the side interval [i, j] (within
    1..n-1) is large; the default treats every interval of two or more sides
    as large, i.e. all weights equal to one. A tile bounded by a single chord
    needs a large side interval; every other tile is stable automatically.
    """
    check_polygon(n)
    if allowed is None:
        allowed = enumerate_chords(n)
    large = large or all_ones_large
    result = []
    for chords in noncrossing_subsets(allowed):
        ok = True
        for c in chords:
            if not any(d != c and contains(c, d) for d in chords) and not large(*c):
                ok = False
                break
        if ok:
            result.append(Tiling(n, chords))
    return result


def diagram_to_json(n: int, chords: Iterable[Chord]) -> dict:
    return {"n": n, "chords": [list(c) for c in sort_chords(chords)]}


def diagram_from_json(data: dict) -> tuple[int, tuple[Chord, ...]]:
    n = int(data["n"])
    check_polygon(n)
    chords = tuple(check_chord(c, n) for c in data.get("chords", []))
    return n, chords
