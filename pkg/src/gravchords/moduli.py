"""Betti numbers of the dihedral partial compactifications by wall crossing.

The space for a family of large intervals is built from affine space by
adding large intervals one at a time. Peeling a minimal large interval I off
the family gives the exact-sequence recursion

    P(L) = P(L - I) + t (P(Y) - P(Z)),

where Z is the locus where all of I collides and Y the locus where its two
end markings collide. When |I| = 2 the two loci agree and nothing changes.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Sequence

from . import oracles
from .cohomology import basis_counts
from .errors import EmptyLocus, SizeGuard, UnsupportedWeights
from .poly import PoincarePolynomial
from .polygon import Chord, enumerate_chords, stable_tilings
from .weights import LargeIntervalFamily, WeightVector


def poincare_open(n: int) -> PoincarePolynomial:
    """Poincare polynomial of M_{0,n} from the gravity basis."""
    return PoincarePolynomial(basis_counts(n))


@dataclass
class MemoStats:
    hits: int = 0
    misses: int = 0
    fallbacks: int = 0
    fallback_keys: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"hits": self.hits, "misses": self.misses, "fallbacks": self.fallbacks}


class BettiMemo:
    """Memo table keyed by rotation-canonical families; insertion is idempotent."""

    def __init__(self):
        self.table: dict[LargeIntervalFamily, PoincarePolynomial] = {}
        self.stats = MemoStats()
        self.lock = threading.RLock()

    def get(self, key):
        with self.lock:
            value = self.table.get(key)
            if value is None:
                self.stats.misses += 1
            else:
                self.stats.hits += 1
            return value

    def put(self, key, value):
        with self.lock:
            return self.table.setdefault(key, value)

    def clear(self):
        with self.lock:
            self.table.clear()
            self.stats = MemoStats()


DEFAULT_MEMO = BettiMemo()


def crossing_sides(key: LargeIntervalFamily, I: Chord) -> tuple[bool, bool]:
    """Whether some small interval of ``key`` crosses I from the left, and from the right."""
    i, j = I
    n = key.n
    left = any(not key.is_large(q, m) for m in range(i + 1, j) for q in range(1, i))
    right = any(not key.is_large(m, p) for m in range(i + 1, j) for p in range(j + 1, n))
    return left, right


def merge_side(key: LargeIntervalFamily, I: Chord) -> int | None:
    """End of I that can absorb the collision of its two ends, or None.

    Keeping the right end is exact unless a small interval crosses I on the
    right; symmetrically for the left end.
    """
    left, right = crossing_sides(key, I)
    if not right:
        return I[1]
    if not left:
        return I[0]
    return None


def removed_divisors(key: LargeIntervalFamily, S: Sequence[int],
                     kept: int | None = None) -> tuple[LargeIntervalFamily, list[Chord], list[int]]:
    """Merged family, the boundary chords to delete, and the kept labels for the locus Delta_S.

    A chord is deleted when exactly one of its end vertices lies strictly
    inside the image of the hull of S.
    """
    S = sorted(set(S))
    if len(S) < 2:
        raise EmptyLocus("a coincidence needs at least two markings")
    if S[-1] >= key.n or key.is_large(S[0], S[-1]):
        raise EmptyLocus(f"markings {S} do not lie in a small interval")
    i, j = S[0], S[-1]
    if kept is None:
        kept = merge_side(key, (i, j)) if len(S) < j - i + 1 else j
        if kept is None:
            raise UnsupportedWeights(f"no exact merge for {S}: small intervals cross on both sides")
    if kept not in S:
        raise EmptyLocus(f"kept marking {kept} is not in {S}")
    merged, keep = key.merge(S, kept)
    image = [p for p in range(1, merged.n + 1) if i <= keep[p - 1] <= j]
    lo, hi = min(image), max(image)
    interior = set(range(lo, hi))
    removed = [(a, b) for a, b in enumerate_chords(merged.n) if len({a - 1, b} & interior) == 1]
    return merged, removed, keep


def coincidence_poincare(key: LargeIntervalFamily, S: Sequence[int], kept: int | None = None,
                         memo: BettiMemo | None = None) -> PoincarePolynomial:
    """Poincare polynomial of Delta_S by the Leray sum over stable tilings of deleted chords."""
    merged, removed, _ = removed_divisors(key, S, kept)
    total = PoincarePolynomial((0,))
    for tiling in stable_tilings(merged.n, allowed=removed, large=merged.is_large):
        term = PoincarePolynomial.one()
        for tile in tiling.tiles:
            term = term * poincare_delta(merged.tile_key(tile), memo)
        total = total + term.shift(len(tiling.chords))
    return total


def poincare_delta(key, memo: BettiMemo | None = None) -> PoincarePolynomial:
    """Poincare polynomial of the space attached to a family (or weight vector)."""
    if isinstance(key, WeightVector):
        key = key.large_intervals()
    memo = DEFAULT_MEMO if memo is None else memo
    canon = key.canonical()
    cached = memo.get(canon)
    if cached is not None:
        return cached
    if key.n <= 3 or not key.large:
        return memo.put(canon, PoincarePolynomial.one())
    # the recursion runs in the frame it was handed; other frames only if that one is stuck
    frames = [key] + [key.rotated(p) for p in key.heavy_markings if p != key.n]
    for frame in frames:
        result = _peel(frame, memo)
        if result is not None:
            break
    else:
        # every minimal interval is crossed on both sides; count points instead
        result = oracles.betti_from_point_count(key)
        with memo.lock:
            memo.stats.fallbacks += 1
            memo.stats.fallback_keys.append(canon)
    return memo.put(canon, result)


def _peel(key: LargeIntervalFamily, memo: BettiMemo) -> PoincarePolynomial | None:
    for I in key.minimal():
        X = key.without(I)
        i, j = I
        if j - i == 1:
            return poincare_delta(X, memo)
        side = merge_side(X, I)
        if side is None:
            continue
        py = coincidence_poincare(X, (i, j), side, memo)
        pz = coincidence_poincare(X, range(i, j + 1), j, memo)
        return poincare_delta(X, memo) + (py - pz).shift(1)
    return None


def recursion_trace(key: LargeIntervalFamily, memo: BettiMemo | None = None) -> list[dict]:
    """The walls peeled from ``key`` down to affine space, with the polynomial after each."""
    memo = DEFAULT_MEMO if memo is None else memo
    steps = []
    current = key
    while current.large:
        I = current.minimal()[0]
        steps.append({"interval": list(I), "poincare": poincare_delta(current, memo).to_list()})
        current = current.without(I)
    steps.append({"interval": None, "poincare": [1]})
    return steps


# blow-up description


def _coordinate_pattern(n: int, labels: Sequence[int]) -> str:
    """Equation set making the points z_k (k in labels) coincide, with z_1 = 0 and z_{n-1} = 1."""
    names = [f"z{k}" for k in labels if k not in (1, n - 1)]
    if 1 in labels:
        return "=".join(names + ["0"])
    if n - 1 in labels:
        return "=".join(names + ["1"])
    return "=".join(names)


@dataclass(frozen=True)
class BlowupStep:
    stage: int
    interval: Chord
    center: str
    center_dimension: int
    removed: str | None

    @property
    def divisorial(self) -> bool:
        return self.removed is None

    def to_json(self) -> dict:
        return {"stage": self.stage, "interval": list(self.interval), "center": self.center,
                "center_dimension": self.center_dimension, "removed": self.removed}


def blowup_sequence(weights) -> list[BlowupStep]:
    """Centers and removed divisors, from affine space up to the given weights.

    Large intervals are added longest first, so each center is minimal among
    those not yet blown up. Two-marking intervals blow up divisors, which is an
    isomorphism, and remove nothing.
    """
    key = weights.large_intervals() if isinstance(weights, WeightVector) else weights
    n = key.n
    steps = []
    for stage, (i, j) in enumerate(sorted(key.large, key=lambda c: (c[0] - c[1], c))):
        center = _coordinate_pattern(n, range(i, j + 1))
        removed = None if j - i == 1 else _coordinate_pattern(n, (i, j))
        steps.append(BlowupStep(stage, (i, j), center, n - 3 - (j - i), removed))
    return steps


def walls(weights: WeightVector) -> list[dict]:
    """Large intervals away from the heavy marking, with their weights, in blow-up order."""
    a = weights.normalized()
    key = a.large_intervals()
    out = []
    for i, j in sorted(key.large, key=lambda c: (c[0] - c[1], c)):
        out.append({"interval": [i, j], "weight": str(a.interval_weight(i, j)),
                    "minimal": (i, j) in key.minimal()})
    return out


def inverse_gf_check(order: int, prime_source=None, memo: BettiMemo | None = None) -> tuple[bool, dict]:
    """Check q(h(x)) = x through x^order.

    h = x + t G with G from the gravity basis, q = y - t P with P from the
    wall-crossing recursion at weight one (or ``prime_source`` if given).
    """
    from . import series

    if order > 9:
        raise SizeGuard(f"generating-function check is limited to order 9, got {order}")
    G = series.gravity_series(order)
    if prime_source is None:
        P = series.prime_series(order, lambda n: poincare_delta(LargeIntervalFamily.all_ones(n), memo))
    else:
        P = {k: PoincarePolynomial(v) if not isinstance(v, PoincarePolynomial) else v
             for k, v in prime_source.items()}
    defect = series.inverse_defect(G, P, order)
    report = {"order": order, "identity": "q(h(x)) = x with h = x + tG, q = y - tP",
              "G": series.series_to_json(G), "P": series.series_to_json(P),
              "defect": series.series_to_json(defect)}
    return not defect, report
