"""Operad structure on gravity chord diagrams and residues on cohomology.

On an (r+1)-gon the output side is side r+1 and the inputs are sides 1..r.
Grafting a diagram on a (k+1)-gon into input i of a diagram on an (m+1)-gon
produces a diagram on the (m+k)-gon in which the glued side becomes the chord
[i, i+k-1]. Cutting along a residual chord undoes this.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .cohomology import enumerate_gravity_basis, is_gravity, reduce_chord
from .errors import InvalidChord, InvariantViolation, NotGravity, NotResidual, PresentationError
from .exterior import AlgebraElement, bits, chords_of, contract_mask, merge_sign, monomial
from .polygon import (Chord, check_chord, check_polygon, chord_index, contains, crosses,
                      enumerate_chords, residual_chords, sort_chords)


def _check_gravity(n: int, chords) -> tuple[Chord, ...]:
    check_polygon(n)
    cs = tuple(sort_chords(check_chord(c, n) for c in chords))
    if len(set(cs)) != len(cs):
        raise InvalidChord("repeated chord")
    if not is_gravity(cs):
        raise NotGravity(f"{list(cs)} is not a gravity diagram")
    return cs


def _outer_image(c: Chord, i: int, k: int) -> Chord:
    a, b = c
    return (a if a <= i else a + k - 1, b if b < i else b + k - 1)


def _inner_image(c: Chord, i: int) -> Chord:
    return (c[0] + i - 1, c[1] + i - 1)


def _block_sign(n: int, blocks: list[list[Chord]]) -> int:
    """Sign of the product of the blocks, each in its listed order, against chord order."""
    sign, _ = monomial([c for block in blocks for c in block], n)
    return sign


def graft(n1: int, d1: Iterable[Chord], i: int, n2: int, d2: Iterable[Chord]) -> tuple[int, tuple[Chord, ...], int]:
    """Insert d2 (on the n2-gon) into input side i of d1 (on the n1-gon).

    Returns (n, chords, sign), where the sign compares e_glued * e_inner *
    e_outer, each factor in its own chord order, with the canonical monomial.
    """
    d1 = _check_gravity(n1, d1)
    d2 = _check_gravity(n2, d2)
    m, k = n1 - 1, n2 - 1
    if not 1 <= i <= m:
        raise InvalidChord(f"slot {i} out of range 1..{m}")
    n = m + k
    glued = (i, i + k - 1)
    inner = [_inner_image(c, i) for c in d2]
    outer = [_outer_image(c, i, k) for c in d1]
    chords = tuple(sort_chords([glued] + inner + outer))
    if not is_gravity(chords):
        raise NotGravity("grafting produced a non-gravity diagram")
    return n, chords, _block_sign(n, [[glued], inner, outer])


def _split(n: int, d: Iterable[Chord], c: Chord):
    i, j = c
    k = j - i + 1
    rest = [x for x in sort_chords(d) if x != c]
    inner = [x for x in rest if contains(c, x)]
    outer = [x for x in rest if not contains(c, x)]
    return k, inner, outer


def _outer_preimage(x: Chord, i: int, k: int) -> Chord:
    a, b = x
    return (a if a <= i else a - k + 1, b if b < i else b - k + 1)


def cut(n: int, d: Iterable[Chord], c: Chord):
    """Cut along a residual chord.

    Returns (outer n, outer chords, slot, inner n, inner chords, sign). The sign
    is that of moving e_c to the front of e_d, then unshuffling the remaining
    chords into the inner block followed by the outer block, then sorting the
    relabelled outer chords.
    """
    d = _check_gravity(n, d)
    c = check_chord(c, n)
    if c not in d:
        raise NotResidual(f"{c} is not a chord of the diagram")
    if c not in residual_chords(d):
        raise NotResidual(f"{c} is crossed by another chord")
    i, j = c
    k, inner, outer = _split(n, d, c)
    index = chord_index(n)
    mask = sum(1 << index[x] for x in d)
    sign, rest = contract_mask(index[c], mask)
    inner_mask = sum(1 << index[x] for x in inner)
    sign *= merge_sign(inner_mask, rest & ~inner_mask)
    n_in, n_out = k + 1, n - k + 1
    local_in = [(a - i + 1, b - i + 1) for a, b in inner]
    local_out = [_outer_preimage(x, i, k) for x in outer]
    sort_sign, _ = monomial(local_out, n_out)
    sign *= sort_sign
    return n_out, tuple(sort_chords(local_out)), i, n_in, tuple(sort_chords(local_in)), sign


# residues


class Tensor:
    """Element of H(M_{0,k+1}) (x) H(M_{0,n-k+1}) for a fixed cut: inner factor first."""

    def __init__(self, n_inner: int, n_outer: int, slot: int, terms=None):
        self.n_inner = n_inner
        self.n_outer = n_outer
        self.slot = slot
        self.terms = {key: v for key, v in (terms or {}).items() if v}

    def add(self, inner_mask: int, outer_mask: int, coeff):
        key = (inner_mask, outer_mask)
        v = self.terms.get(key, 0) + coeff
        if v:
            self.terms[key] = v
        else:
            self.terms.pop(key, None)

    def __eq__(self, other):
        return (isinstance(other, Tensor) and self.terms == other.terms
                and (not self.terms or (self.n_inner, self.n_outer, self.slot)
                     == (other.n_inner, other.n_outer, other.slot)))

    def __bool__(self):
        return bool(self.terms)

    def to_json(self) -> dict:
        return {"inner_n": self.n_inner, "outer_n": self.n_outer, "slot": self.slot,
                "terms": [{"coeff": str(v),
                           "inner": [list(c) for c in chords_of(a, self.n_inner)],
                           "outer": [list(c) for c in chords_of(b, self.n_outer)]}
                          for (a, b), v in sorted(self.terms.items())]}

    def __repr__(self):
        return f"Tensor({self.to_json()})"


def _cut_data(n: int, c: Chord):
    i, j = c
    k = j - i + 1
    return k + 1, n - k + 1, i


def residue(a: AlgebraElement, c: Chord) -> Tensor:
    """Res_c on a gravity-reduced element: cut each basis diagram containing c as a residual chord."""
    if a.basis != "gravity":
        raise PresentationError("residue expects a gravity-reduced element")
    n = a.n
    c = check_chord(c, n)
    n_in, n_out, slot = _cut_data(n, c)
    out = Tensor(n_in, n_out, slot)
    for m, coeff in a.terms.items():
        d = chords_of(m, n)
        if c not in d or c not in residual_chords(d):
            continue
        _, outer, _, _, inner, sign = cut(n, d, c)
        out.add(monomial(inner, n_in)[1], monomial(outer, n_out)[1], sign * coeff)
    return out


def residue_alpha(a: AlgebraElement, c: Chord) -> Tensor:
    """Res_c on any alpha element, reducing each tensor factor afterwards.

    Contract alpha_c, restrict every other generator to the boundary divisor
    (crossing chords restrict to zero), and separate inner from outer chords.
    """
    if a.basis == "omega":
        raise PresentationError("residue_alpha expects a chord-side element")
    n = a.n
    c = check_chord(c, n)
    n_in, n_out, slot = _cut_data(n, c)
    i, j = c
    k = j - i + 1
    index = chord_index(n)
    raw = Tensor(n_in, n_out, slot)
    for m, coeff in a.terms.items():
        sign, rest = contract_mask(index[c], m)
        if not sign:
            continue
        chords = chords_of(rest, n)
        if any(crosses(x, c) for x in chords):
            continue
        inner = [x for x in chords if contains(c, x)]
        outer = [x for x in chords if not contains(c, x)]
        inner_mask = sum(1 << index[x] for x in inner)
        sign *= merge_sign(inner_mask, rest & ~inner_mask)
        s_in, m_in = monomial([(p - i + 1, q - i + 1) for p, q in inner], n_in)
        s_out, m_out = monomial([_outer_preimage(x, i, k) for x in outer], n_out)
        raw.add(m_in, m_out, sign * s_in * s_out * coeff)
    out = Tensor(n_in, n_out, slot)
    for (mi, mo), coeff in raw.terms.items():
        left = reduce_chord(AlgebraElement(n_in, {mi: 1}))
        right = reduce_chord(AlgebraElement(n_out, {mo: 1}))
        for x, cx in left.terms.items():
            for y, cy in right.terms.items():
                out.add(x, y, coeff * cx * cy)
    return out


# factorization trees


@dataclass(frozen=True)
class DecoratedPlanarTree:
    """Planar tree whose vertices carry gravity diagrams.

    ``n`` is the polygon size of the root decoration; ``children`` maps input
    slots of the root to subtrees.
    """
    n: int
    chords: tuple
    children: tuple = ()

    @property
    def arity(self) -> int:
        return self.n - 1 + sum(child.arity - 1 for _, child in self.children)

    @property
    def vertices(self) -> int:
        return 1 + sum(child.vertices for _, child in self.children)

    def decorations(self) -> list[tuple[int, tuple]]:
        out = [(self.n, self.chords)]
        for _, child in self.children:
            out.extend(child.decorations())
        return out

    def to_json(self) -> dict:
        return {"n": self.n, "chords": [list(c) for c in self.chords],
                "children": [{"slot": s, "tree": t.to_json()} for s, t in self.children]}

    @classmethod
    def from_json(cls, data: dict) -> "DecoratedPlanarTree":
        kids = tuple(sorted((int(k["slot"]), cls.from_json(k["tree"])) for k in data.get("children", [])))
        return cls(int(data["n"]), tuple(sort_chords(tuple(c) for c in data["chords"])), kids)


def graft_tree(t1: DecoratedPlanarTree, leaf: int, t2: DecoratedPlanarTree) -> DecoratedPlanarTree:
    """Attach t2 at leaf ``leaf`` (1-based, planar order) of t1."""
    offset = 0
    children = dict(t1.children)
    for slot in range(1, t1.n):
        if slot in children:
            child = children[slot]
            if leaf <= offset + child.arity:
                children[slot] = graft_tree(child, leaf - offset, t2)
                return DecoratedPlanarTree(t1.n, t1.chords, tuple(sorted(children.items())))
            offset += child.arity
        else:
            offset += 1
            if leaf == offset:
                children[slot] = t2
                return DecoratedPlanarTree(t1.n, t1.chords, tuple(sorted(children.items())))
    raise InvalidChord(f"leaf {leaf} out of range")


def compose_tree(tree: DecoratedPlanarTree) -> tuple[int, tuple[Chord, ...], int]:
    """Graft the whole tree back into one diagram; children are attached lowest slot last."""
    n, chords, sign = tree.n, tree.chords, 1
    # higher slots first keeps the positions of lower slots fixed
    for slot, child in sorted(tree.children, reverse=True):
        cn, cc, cs = compose_tree(child)
        n, chords, g = graft(n, chords, slot, cn, cc)
        sign *= cs * g
    return n, chords, sign


def _factor(n: int, d: tuple, reverse: bool) -> DecoratedPlanarTree:
    res = sort_chords(residual_chords(d))
    if not res:
        return DecoratedPlanarTree(n, d)
    c = res[-1] if reverse else res[0]
    n_out, outer, slot, n_in, inner, _ = cut(n, d, c)
    return graft_tree(_factor(n_out, outer, reverse), slot, _factor(n_in, inner, reverse))


def factorization_sign(n: int, d: Iterable[Chord]) -> int:
    """Product of cut signs, always cutting the lowest root-level residual chord first."""
    d = tuple(sort_chords(d))
    res = residual_chords(d)
    top = [c for c in res if not any(e != c and contains(e, c) for e in res)]
    if not top:
        return 1
    c = min(top)
    n_out, outer, _, n_in, inner, sign = cut(n, d, c)
    return sign * factorization_sign(n_out, outer) * factorization_sign(n_in, inner)


def prime_factorization(n: int, d: Iterable[Chord], check: bool = True) -> tuple[DecoratedPlanarTree, int]:
    """Tree of prime diagrams grafting to d, and the sign relating the two.

    Residual chords are cut in chord order. With ``check`` the reverse order is
    also run and must give the same tree.
    """
    d = _check_gravity(n, d)
    tree = _factor(n, d, reverse=False)
    if check:
        other = _factor(n, d, reverse=True)
        if other != tree:
            raise InvariantViolation("factorization depends on the cutting order")
    return tree, factorization_sign(n, d)


# rotation


def rotate_chord(c: Chord, n: int) -> Chord:
    """Image of a chord under the rotation moving side s to side s+1 (mod n)."""
    i, j = c
    if j + 1 == n:
        return (1, i)
    return (i + 1, j + 1)


def rotate(a: AlgebraElement) -> AlgebraElement:
    """Rotate an element and reduce the result to the gravity basis."""
    if a.basis == "omega":
        raise PresentationError("rotate acts on chord-side elements")
    n = a.n
    cs = enumerate_chords(n)
    terms: dict[int, object] = {}
    for m, coeff in a.terms.items():
        sign, mask = monomial([rotate_chord(cs[k], n) for k in bits(m)], n)
        terms[mask] = terms.get(mask, 0) + sign * coeff
    return reduce_chord(AlgebraElement(n, terms, "alpha"))


def prime_trace(n: int, degree: int):
    """Trace of rotation on prime coordinates of the given degree."""
    check_polygon(n, 3)
    primes = enumerate_gravity_basis(n, degree, prime_only=True)
    total = 0
    for p in primes:
        img = rotate(AlgebraElement.from_chords(n, p, basis="gravity"))
        total += img.coefficient(p)
    return total


def rotation_matrix(n: int, degree: int, prime_only: bool = False) -> list[list]:
    basis = enumerate_gravity_basis(n, degree, prime_only=prime_only)
    rows = []
    for p in basis:
        img = rotate(AlgebraElement.from_chords(n, p, basis="gravity"))
        rows.append([img.coefficient(q) for q in basis])
    return rows


def gravity_element(n: int, chords: Iterable[Chord], coeff=1) -> AlgebraElement:
    return AlgebraElement.from_chords(n, list(chords), coeff, basis="gravity")

