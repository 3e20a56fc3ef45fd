"""Weight vectors and the large-interval data that determines the weighted spaces.

Markings are the sides 1..n of the polygon. Every family here is expressed in
a frame where marking n has weight one, so an interval through n with at
least two markings is automatically large and only the intervals inside
1..n-1 need to be recorded.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .errors import InvalidWeights, MalformedInput, UnsupportedWeights
from .polygon import Chord, Tile, check_polygon, contains, enumerate_chords


def parse_weight(s) -> Fraction:
    try:
        return Fraction(str(s).strip())
    except (ValueError, ZeroDivisionError):
        raise MalformedInput(f"cannot parse weight {s!r}") from None


@dataclass(frozen=True)
class WeightVector:
    weights: tuple[Fraction, ...]

    def __post_init__(self):
        ws = tuple(Fraction(w) for w in self.weights)
        object.__setattr__(self, "weights", ws)
        if len(ws) < 3:
            raise InvalidWeights("need at least three markings")
        if any(not 0 < w <= 1 for w in ws):
            raise InvalidWeights("weights must lie in (0, 1]")
        if sum(ws) <= 2:
            raise InvalidWeights("weights must sum to more than 2")

    @classmethod
    def parse(cls, text: str) -> "WeightVector":
        return cls(tuple(parse_weight(p) for p in text.split(",") if p.strip()))

    @classmethod
    def all_ones(cls, n: int) -> "WeightVector":
        return cls((Fraction(1),) * n)

    @property
    def n(self) -> int:
        return len(self.weights)

    def rotation_to_heavy_last(self) -> int:
        """Shift r such that marking r+1 moves to position n; the last weight-one marking is used."""
        ones = [k for k, w in enumerate(self.weights) if w == 1]
        if not ones:
            raise UnsupportedWeights("at least one marking must have weight 1")
        return (ones[-1] + 1) % self.n

    def normalized(self) -> "WeightVector":
        r = self.rotation_to_heavy_last()
        return WeightVector(self.weights[r:] + self.weights[:r])

    def interval_weight(self, i: int, j: int) -> Fraction:
        return sum(self.weights[i - 1:j], Fraction(0))

    def large_intervals(self) -> "LargeIntervalFamily":
        a = self.normalized()
        n = a.n
        large = frozenset((i, j) for i, j in enumerate_chords(n) if a.interval_weight(i, j) > 1)
        return LargeIntervalFamily(n, large)


@dataclass(frozen=True)
class LargeIntervalFamily:
    """Polygon size plus the large intervals [i, j] with 1 <= i < j <= n-1, (i, j) != (1, n-1)."""
    n: int
    large: frozenset

    def __post_init__(self):
        check_polygon(self.n)
        object.__setattr__(self, "large", frozenset(tuple(c) for c in self.large))
        chords = set(enumerate_chords(self.n))
        bad = [c for c in self.large if c not in chords]
        if bad:
            raise InvalidWeights(f"not intervals of the {self.n}-gon: {sorted(bad)}")

    @classmethod
    def all_ones(cls, n: int) -> "LargeIntervalFamily":
        return cls(n, frozenset(enumerate_chords(n)))

    def is_large(self, i: int, j: int) -> bool:
        if i >= j:
            return False
        if (i, j) == (1, self.n - 1):
            return True
        return (i, j) in self.large

    def is_up_closed(self) -> bool:
        for c in self.large:
            for d in enumerate_chords(self.n):
                if contains(d, c) and not self.is_large(*d):
                    return False
        return True

    def minimal(self) -> list[Chord]:
        """Minimal large intervals, in chord order."""
        out = [c for c in self.large
               if not any(d != c and contains(c, d) for d in self.large)]
        return sorted(out, key=lambda c: (c[0] - c[1], c))

    def without(self, c: Chord) -> "LargeIntervalFamily":
        return LargeIntervalFamily(self.n, self.large - {c})

    def tile_key(self, tile: Tile) -> "LargeIntervalFamily":
        """Family of a tile polygon: chord sides weigh one, original sides keep their weights."""
        parts = tile.parts
        m = len(parts) + 1
        large = set()
        for a in range(1, m):
            for b in range(a + 1, m):
                if (a, b) == (1, m - 1):
                    continue
                seg = parts[a - 1:b]
                if any(lo != hi for lo, hi in seg) or self.is_large(seg[0][0], seg[-1][1]):
                    large.add((a, b))
        return LargeIntervalFamily(m, frozenset(large))

    def merge(self, S: Sequence[int], kept: int) -> tuple["LargeIntervalFamily", list[int]]:
        """Collide the markings S (inside 1..n-1) onto ``kept``.

        Returns the merged family and the original label of each merged
        position. A merged interval is large iff the hull of its preimage is.
        """
        S = set(S)
        keep = [p for p in range(1, self.n + 1) if p == kept or p not in S]
        m = len(keep)

        def preimage(p):
            o = keep[p - 1]
            return S if o == kept else {o}

        large = set()
        for a in range(1, m):
            for b in range(a + 1, m):
                if (a, b) == (1, m - 1):
                    continue
                orig = set().union(*(preimage(p) for p in range(a, b + 1)))
                if self.is_large(min(orig), max(orig)):
                    large.add((a, b))
        return LargeIntervalFamily(m, frozenset(large)), keep

    # rotations

    def _large_cyclic(self, labels: list[int]) -> bool:
        if len(labels) < 2:
            return False
        if self.n in labels:
            return True
        return self.is_large(min(labels), max(labels))

    @cached_property
    def heavy_markings(self) -> tuple[int, ...]:
        """Markings p such that every interval of two or more markings through p is large."""
        n = self.n
        out = []
        for p in range(1, n + 1):
            ok = True
            for start in range(n):
                for length in range(2, n):
                    labels = [(start + k) % n + 1 for k in range(length)]
                    if p in labels and not self._large_cyclic(labels):
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                out.append(p)
        return tuple(out)

    def rotated(self, p: int) -> "LargeIntervalFamily":
        """Relabel so the heavy marking p becomes marking n."""
        n = self.n

        def old(x):
            return (x + p - 1) % n + 1

        large = set()
        for i, j in enumerate_chords(n):
            if self._large_cyclic([old(x) for x in range(i, j + 1)]):
                large.add((i, j))
        return LargeIntervalFamily(n, frozenset(large))

    def canonical(self) -> "LargeIntervalFamily":
        """Smallest rotation among those putting a heavy marking last."""
        options = [self.rotated(p) for p in self.heavy_markings]
        return min(options, key=lambda f: sorted(f.large))

    def to_json(self) -> dict:
        return {"n": self.n, "large": [list(c) for c in sorted(self.large)]}


def family_from_weights(weights: Iterable) -> LargeIntervalFamily:
    return WeightVector(tuple(Fraction(w) for w in weights)).large_intervals()
