"""Exact rank of sparse rational matrices.

Rows are dictionaries column -> value. Elimination keeps one pivot row per
column, normalized to 1 at its largest column, so the fill-in stays small for
the near-triangular matrices met here.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping


class RowEchelon:
    """Incremental echelon form; ``add`` reports whether the rank grew."""

    def __init__(self):
        self.pivots: dict = {}

    def reduce(self, row: Mapping) -> dict:
        r = {k: v for k, v in row.items() if v}
        while r:
            col = max(r)
            p = self.pivots.get(col)
            if p is None:
                return r
            f = r[col]
            for k, v in p.items():
                w = r.get(k, 0) - f * v
                if w:
                    r[k] = w
                else:
                    r.pop(k, None)
        return r

    def add(self, row: Mapping) -> bool:
        r = self.reduce(row)
        if not r:
            return False
        col = max(r)
        lead = r[col]
        if lead != 1:
            r = {k: (Fraction(v) / lead if lead != -1 else -v) for k, v in r.items()}
            r = {k: (v.numerator if isinstance(v, Fraction) and v.denominator == 1 else v)
                 for k, v in r.items()}
        self.pivots[col] = r
        return True

    @property
    def rank(self) -> int:
        return len(self.pivots)


def rank(rows: Iterable[Mapping]) -> int:
    e = RowEchelon()
    for r in rows:
        e.add(r)
    return e.rank


def matmul(a: Mapping, b: Mapping) -> dict:
    """Product of sparse matrices stored as {(row, col): value}."""
    by_row: dict = {}
    for (k, j), v in b.items():
        by_row.setdefault(k, []).append((j, v))
    out: dict = {}
    for (i, k), v in a.items():
        for j, w in by_row.get(k, ()):
            out[(i, j)] = out.get((i, j), 0) + v * w
    return {k: v for k, v in out.items() if v}


def matrix_rank(entries: Mapping, nrows: int) -> int:
    rows: list[dict] = [{} for _ in range(nrows)]
    for (i, j), v in entries.items():
        if v:
            rows[i][j] = v
    return rank(rows)
