"""Exterior algebra on the chords of the n-gon with exact rational coefficients.

A monomial is a bitmask: bit k stands for the k-th chord in chord order, and
the generators are multiplied in increasing bit order. Signs are always
relative to that canonical order.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from .errors import PresentationError
from .polygon import Chord, check_chord, chord_index, enumerate_chords, is_chord

BASES = ("omega", "alpha", "gravity")


def popcount(x: int) -> int:
    return bin(x).count("1")


def bits(mask: int) -> list[int]:
    out = []
    k = 0
    while mask:
        if mask & 1:
            out.append(k)
        mask >>= 1
        k += 1
    return out


def lex_key(mask: int) -> tuple[int, ...]:
    """Monomial order: compare sorted generator indices lexicographically."""
    return tuple(bits(mask))


def merge_sign(a: int, b: int) -> int:
    """Sign of e_a * e_b relative to e_{a|b}; 0 if they share a generator."""
    if a & b:
        return 0
    inversions = 0
    for y in bits(b):
        inversions += popcount(a >> (y + 1))
    return -1 if inversions & 1 else 1


def monomial(chords: Iterable[Chord], n: int) -> tuple[int, int]:
    """(sign, mask) of the product of ``chords`` taken in the given order."""
    index = chord_index(n)
    mask = 0
    sign = 1
    for c in chords:
        k = index[check_chord(c, n)]
        bit = 1 << k
        if mask & bit:
            return 0, 0
        if popcount(mask >> (k + 1)) & 1:
            sign = -sign
        mask |= bit
    return sign, mask


def chords_of(mask: int, n: int) -> list[Chord]:
    cs = enumerate_chords(n)
    return [cs[k] for k in bits(mask)]


def _clean(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


def exact_div(a, b):
    if b == 1:
        return a
    if b == -1:
        return -a
    return _clean(Fraction(a) / b)


class AlgebraElement:
    """Sparse exact linear combination of monomials on the n-gon."""

    __slots__ = ("n", "basis", "terms")

    def __init__(self, n: int, terms: Mapping[int, object] | None = None, basis: str = "alpha"):
        if basis not in BASES:
            raise PresentationError(f"unknown presentation {basis!r}")
        self.n = n
        self.basis = basis
        self.terms = {m: _clean(c) for m, c in (terms or {}).items() if c != 0}

    @classmethod
    def from_chords(cls, n: int, chords: Iterable[Chord], coeff=1, basis: str = "alpha"):
        sign, mask = monomial(chords, n)
        return cls(n, {mask: sign * coeff} if sign else {}, basis)

    @classmethod
    def one(cls, n: int, basis: str = "alpha"):
        return cls(n, {0: 1}, basis)

    def copy(self, basis: str | None = None):
        return AlgebraElement(self.n, dict(self.terms), basis or self.basis)

    def _check(self, other):
        if self.n != other.n:
            raise PresentationError(f"elements live on different polygons ({self.n} vs {other.n})")
        if (self.basis == "omega") != (other.basis == "omega"):
            raise PresentationError(f"cannot combine {self.basis} and {other.basis} elements")

    def __add__(self, other):
        self._check(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, 0) + c
        return AlgebraElement(self.n, terms, self.basis if self.basis == other.basis else "alpha")

    def __neg__(self):
        return AlgebraElement(self.n, {m: -c for m, c in self.terms.items()}, self.basis)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        if isinstance(scalar, AlgebraElement):
            return wedge(self, scalar)
        return AlgebraElement(self.n, {m: c * scalar for m, c in self.terms.items()}, self.basis)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        if not self.terms:
            return f"0[{self.basis}, n={self.n}]"
        parts = []
        for m in sorted(self.terms, key=lex_key, reverse=True):
            name = "e" if self.basis == "omega" else "a"
            mon = "*".join(f"{name}{i}{j}" for i, j in chords_of(m, self.n)) or "1"
            parts.append(f"{self.terms[m]}*{mon}")
        return " + ".join(parts)

    def coefficient(self, chords: Iterable[Chord]):
        sign, mask = monomial(chords, self.n)
        return sign * self.terms.get(mask, 0) if sign else 0

    def homogeneous_part(self, degree: int):
        return AlgebraElement(self.n, {m: c for m, c in self.terms.items() if popcount(m) == degree},
                              self.basis)

    def degrees(self) -> set[int]:
        return {popcount(m) for m in self.terms}

    def leading_monomial(self) -> int:
        return max(self.terms, key=lex_key)

    def to_json(self) -> dict:
        terms = []
        for m in sorted(self.terms, key=lex_key, reverse=True):
            terms.append({"coeff": str(self.terms[m]), "chords": [list(c) for c in chords_of(m, self.n)]})
        return {"n": self.n, "basis": self.basis, "terms": terms}

    @classmethod
    def from_json(cls, data: Mapping) -> "AlgebraElement":
        n = int(data["n"])
        basis = data.get("basis", "alpha")
        out = cls(n, {}, basis)
        for term in data.get("terms", []):
            out = out + cls.from_chords(n, [tuple(c) for c in term["chords"]],
                                        Fraction(str(term["coeff"])), basis)
        return out


def wedge(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    a._check(b)
    terms: dict[int, object] = {}
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            s = merge_sign(ma, mb)
            if s:
                m = ma | mb
                terms[m] = terms.get(m, 0) + s * ca * cb
    return AlgebraElement(a.n, terms, "omega" if a.basis == "omega" else "alpha")


def boundary_mask(mask: int) -> dict[int, int]:
    out = {}
    for k, b in enumerate(bits(mask)):
        out[mask & ~(1 << b)] = -1 if k & 1 else 1
    return out


def koszul_boundary(a: AlgebraElement) -> AlgebraElement:
    """The derivation sending every generator to 1."""
    terms: dict[int, object] = {}
    for m, c in a.terms.items():
        for m2, s in boundary_mask(m).items():
            terms[m2] = terms.get(m2, 0) + s * c
    return AlgebraElement(a.n, terms, a.basis)


def contract_mask(k: int, mask: int) -> tuple[int, int]:
    """(sign, mask) of the interior derivative along generator k."""
    bit = 1 << k
    if not mask & bit:
        return 0, 0
    sign = -1 if popcount(mask & (bit - 1)) & 1 else 1
    return sign, mask & ~bit


def contract(c: Chord, a: AlgebraElement) -> AlgebraElement:
    k = chord_index(a.n)[check_chord(c, a.n)]
    terms = {}
    for m, coeff in a.terms.items():
        s, m2 = contract_mask(k, m)
        if s:
            terms[m2] = terms.get(m2, 0) + s * coeff
    return AlgebraElement(a.n, terms, a.basis)


def substitute_masks(images: list[dict[int, object]], terms: Mapping[int, object]) -> dict[int, object]:
    """Apply the algebra map generator k -> images[k] to a term dictionary."""
    out: dict[int, object] = {}
    for m, c in terms.items():
        acc = {0: c}
        for k in bits(m):
            nxt: dict[int, object] = {}
            for ma, ca in acc.items():
                for mb, cb in images[k].items():
                    s = merge_sign(ma, mb)
                    if s:
                        mm = ma | mb
                        nxt[mm] = nxt.get(mm, 0) + s * ca * cb
            acc = {mm: v for mm, v in nxt.items() if v != 0}
            if not acc:
                break
        for mm, v in acc.items():
            out[mm] = out.get(mm, 0) + v
    return {m: v for m, v in out.items() if v != 0}


def apply_substitution(phi: Mapping[Chord, AlgebraElement], a: AlgebraElement,
                       basis: str | None = None) -> AlgebraElement:
    """Apply the algebra endomorphism extending the generator assignment ``phi``."""
    cs = enumerate_chords(a.n)
    images = []
    for c in cs:
        if c not in phi:
            raise PresentationError(f"substitution is not defined on chord {c}")
        img = phi[c]
        if any(popcount(m) != 1 for m in img.terms):
            raise PresentationError("substitution images must be homogeneous of degree one")
        images.append(img.terms)
    return AlgebraElement(a.n, substitute_masks(images, a.terms), basis or a.basis)


@lru_cache(maxsize=None)
def unipotent_images(n: int) -> tuple[dict[int, int], ...]:
    """Degree-one images of u: e_ij -> e_ij + e_{i-1,j+1} - e_{i-1,j} - e_{i,j+1}.

    Terms leaving the chord set (an index 0 or n, or the pair {1, n-1}) vanish.
    """
    index = chord_index(n)
    images = []
    for i, j in enumerate_chords(n):
        img: dict[int, int] = {}
        for (a, b), s in (((i, j), 1), ((i - 1, j + 1), 1), ((i - 1, j), -1), ((i, j + 1), -1)):
            if is_chord((a, b), n):
                bit = 1 << index[(a, b)]
                img[bit] = img.get(bit, 0) + s
        images.append({m: c for m, c in img.items() if c})
    return tuple(images)


@lru_cache(maxsize=None)
def inverse_unipotent_images(n: int) -> tuple[dict[int, int], ...]:
    """Degree-one images of u^{-1}, as the finite series sum_k (-nu)^k with u = id + nu."""
    u = unipotent_images(n)
    size = len(u)
    nu = [{m: c for m, c in u[k].items() if m != 1 << k} for k in range(size)]
    inverse = []
    for k in range(size):
        total = {1 << k: 1}
        term = {1 << k: 1}
        while term:
            nxt: dict[int, int] = {}
            for m, c in term.items():
                for m2, c2 in nu[bits(m)[0]].items():
                    nxt[m2] = nxt.get(m2, 0) - c * c2
            term = {m: c for m, c in nxt.items() if c}
            for m, c in term.items():
                total[m] = total.get(m, 0) + c
        inverse.append({m: c for m, c in total.items() if c})
    return tuple(inverse)


def unipotent(a: AlgebraElement, basis: str = "omega") -> AlgebraElement:
    return AlgebraElement(a.n, substitute_masks(list(unipotent_images(a.n)), a.terms), basis)


def inverse_unipotent(a: AlgebraElement, basis: str = "alpha") -> AlgebraElement:
    return AlgebraElement(a.n, substitute_masks(list(inverse_unipotent_images(a.n)), a.terms), basis)


def unipotent_substitution(n: int, inverse: bool = False, basis: str = "omega") -> dict[Chord, AlgebraElement]:
    images = inverse_unipotent_images(n) if inverse else unipotent_images(n)
    return {c: AlgebraElement(n, dict(images[k]), basis) for k, c in enumerate(enumerate_chords(n))}
