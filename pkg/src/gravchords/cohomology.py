"""Bases and normal forms for the cohomology of M_{0,n}.

Two presentations share the exterior algebra on chords: the arc side, where
a generator (i, j) is the hyperplane form of z_i = z_j, and the chord side,
where it is the logarithmic form of the cross-ratio attached to the chord.
Both have the same initial ideal, whose standard monomials are the gravity
diagrams.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Iterable

from . import cache
from .errors import InvariantViolation, NotCompletelyCrossing, PresentationError
from .exterior import (AlgebraElement, bits, boundary_mask, chords_of, exact_div, lex_key,
                       merge_sign, monomial, inverse_unipotent_images, popcount,
                       substitute_masks, unipotent_images)
from .polygon import (Chord, check_polygon, chord_index, enumerate_chords, is_chord,
                      is_completely_crossing, residual_chords)


def _pattern_triple(chords: Iterable[Chord]):
    """First (ij, jk) pair with i < j < k, or None."""
    cs = set(chords)
    by_start: dict[int, list[Chord]] = {}
    for c in cs:
        by_start.setdefault(c[0], []).append(c)
    for a in sorted(cs):
        for b in sorted(by_start.get(a[1], ())):
            return a, b
    return None


def _pattern_quad(chords: Iterable[Chord]):
    """First (ik, jk, jl) with i < j < k < l, or None."""
    cs = set(chords)
    for ik in sorted(cs):
        i, k = ik
        for jk in sorted(cs):
            j = jk[0]
            if jk[1] != k or not i < j:
                continue
            for jl in sorted(cs):
                if jl[0] == j and jl[1] > k:
                    return ik, jk, jl
    return None


def is_gravity(chords: Iterable[Chord]) -> bool:
    """No factor e_ij e_jk (i<j<k) and no factor e_ik e_jk e_jl (i<j<k<l)."""
    cs = list(chords)
    return _pattern_triple(cs) is None and _pattern_quad(cs) is None


def is_prime(chords: Iterable[Chord]) -> bool:
    cs = list(chords)
    return is_gravity(cs) and not residual_chords(cs)


def _gravity_extends(chosen: list[Chord], c: Chord) -> bool:
    i, j = c
    for a, b in chosen:
        if b == i or a == j:
            return False
    for x in chosen:
        for y in chosen:
            trio = [x, y, c]
            for ik in trio:
                for jk in trio:
                    for jl in trio:
                        if len({ik, jk, jl}) < 3:
                            continue
                        if (ik[1] == jk[1] and ik[0] < jk[0] and jl[0] == jk[0]
                                and jl[1] > jk[1]):
                            return False
    return True


_basis_lock = threading.Lock()
_basis_cache: dict[int, tuple[int, ...]] = {}


def _gravity_masks(n: int) -> tuple[int, ...]:
    with _basis_lock:
        if n in _basis_cache:
            return _basis_cache[n]
    check_polygon(n)
    chords = enumerate_chords(n)
    index = chord_index(n)
    out: list[int] = []

    def rec(k, chosen, mask):
        out.append(mask)
        for t in range(k, len(chords)):
            c = chords[t]
            if _gravity_extends(chosen, c):
                chosen.append(c)
                rec(t + 1, chosen, mask | (1 << index[c]))
                chosen.pop()

    rec(0, [], 0)
    result = tuple(sorted(out, key=lex_key))
    with _basis_lock:
        _basis_cache.setdefault(n, result)
    return result


def enumerate_gravity_basis(n: int, degree: int | None = None,
                            prime_only: bool = False) -> list[tuple[Chord, ...]]:
    """Gravity diagrams on the n-gon, sorted by the monomial order."""
    if degree is not None and degree < 0:
        return []
    out = []
    for m in _gravity_masks(n):
        if degree is not None and popcount(m) != degree:
            continue
        cs = tuple(chords_of(m, n))
        if prime_only and residual_chords(cs):
            continue
        out.append(cs)
    return out


def gravity_masks(n: int, degree: int | None = None) -> list[int]:
    return [m for m in _gravity_masks(n) if degree is None or popcount(m) == degree]


def basis_counts(n: int, prime_only: bool = False) -> list[int]:
    counts = [0] * (n - 2)
    for cs in enumerate_gravity_basis(n, prime_only=prime_only):
        counts[len(cs)] += 1
    while len(counts) > 1 and counts[-1] == 0:
        counts.pop()
    return counts


# ---------------------------------------------------------------- arc side

def connects_ends(chords: Iterable[Chord], n: int) -> bool:
    """True iff the arcs join vertex 1 to vertex n-1."""
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in chords:
        parent[find(i)] = find(j)
    return find(1) == find(n - 1)


@dataclass(frozen=True)
class RewriteStep:
    monomial: int
    rule: str
    factor: object
    relation: tuple

    def relation_terms(self) -> dict[int, object]:
        return dict(self.relation)


def _circuit_relation(circuit: list[Chord], rest: list[Chord], n: int) -> dict[int, int]:
    """(boundary of e_circuit) * e_rest as a term dictionary."""
    sign_c, mask_c = monomial(circuit, n)
    sign_r, mask_r = monomial(rest, n)
    out: dict[int, int] = {}
    for m, s in boundary_mask(mask_c).items():
        t = merge_sign(m, mask_r)
        if t:
            out[m | mask_r] = out.get(m | mask_r, 0) + s * t
    return {m: c for m, c in out.items() if c}


def arc_rewrite_rule(mask: int, n: int):
    """(rule name, relation) eliminating ``mask``, or None if it is an nbc monomial.

    The relation lies in the Orlik-Solomon ideal, contains ``mask`` with
    coefficient +-1, and every other term is smaller in the monomial order.
    """
    cs = chords_of(mask, n)
    if connects_ends(cs, n):
        return "R3", {mask: 1}
    tri = _pattern_triple(cs)
    if tri is not None:
        (i, j), (_, k) = tri
        rest = [c for c in cs if c not in tri]
        return "R1", _circuit_relation([(i, j), (j, k), (i, k)], rest, n)
    quad = _pattern_quad(cs)
    if quad is not None:
        (i, k), (j, _), (_, l) = quad
        rest = [c for c in cs if c not in quad]
        return "R2", _circuit_relation([(i, k), (j, k), (j, l), (i, l)], rest, n)
    return None


class _NormalForms:
    """Per-polygon memo of monomial normal forms; fills are idempotent."""

    def __init__(self, n: int):
        self.n = n
        self.lock = threading.Lock()
        self.arc: dict[int, dict[int, object]] = {}
        self.transport: dict[int, dict[int, object]] = {}
        self.chord: dict[int, dict[int, object]] = {}
        self.grobner: dict[int, dict[int, object]] = {}
        self.columns: dict[int, dict[int, object]] = {}


_forms: dict[int, _NormalForms] = {}
_forms_lock = threading.Lock()


def _memo(n: int) -> _NormalForms:
    with _forms_lock:
        if n not in _forms:
            _forms[n] = _NormalForms(n)
        return _forms[n]


def _add_scaled(acc: dict, terms: dict, scale) -> None:
    for m, c in terms.items():
        v = acc.get(m, 0) + scale * c
        if v:
            acc[m] = v
        else:
            acc.pop(m, None)


def _normal_form(mask: int, table: dict, step) -> dict[int, object]:
    """Memoized normal form of a monomial under a terminating one-step rewrite."""
    if mask in table:
        return table[mask]
    stack = [mask]
    while stack:
        m = stack[-1]
        if m in table:
            stack.pop()
            continue
        rule = step(m)
        if rule is None:
            table[m] = {m: 1}
            stack.pop()
            continue
        relation = rule
        lead = relation[m]
        missing = [m2 for m2 in relation if m2 != m and m2 not in table]
        if missing:
            stack.extend(missing)
            continue
        acc: dict[int, object] = {}
        for m2, c in relation.items():
            if m2 != m:
                _add_scaled(acc, table[m2], exact_div(-c, lead))
        table[m] = acc
        stack.pop()
    return table[mask]


def arc_normal_form(mask: int, n: int) -> dict[int, object]:
    memo = _memo(n)

    def step(m):
        r = arc_rewrite_rule(m, n)
        return None if r is None else r[1]

    return _normal_form(mask, memo.arc, step)


@dataclass
class ReductionCertificate:
    input: AlgebraElement
    output: AlgebraElement
    steps: list[RewriteStep] = field(default_factory=list)

    def replay(self) -> AlgebraElement:
        terms = dict(self.input.terms)
        for st in self.steps:
            _add_scaled(terms, st.relation_terms(), -st.factor)
        return AlgebraElement(self.input.n, terms, self.input.basis)

    def to_json(self) -> dict:
        n = self.input.n
        return {"steps": [{"rule": st.rule,
                           "monomial": [list(c) for c in chords_of(st.monomial, n)],
                           "factor": str(st.factor)} for st in self.steps]}


def reduce_arc(a: AlgebraElement, certificate: bool = False):
    """Normal form of an arc-side element in the nbc basis.

    With ``certificate`` the reduction is carried out step by step, always
    rewriting the largest reducible monomial, and (element, certificate) is
    returned.
    """
    if a.basis != "omega":
        raise PresentationError(f"reduce_arc expects an omega element, got {a.basis}")
    n = a.n
    if not certificate:
        acc: dict[int, object] = {}
        for m, c in a.terms.items():
            _add_scaled(acc, arc_normal_form(m, n), c)
        return AlgebraElement(n, acc, "omega")
    terms = dict(a.terms)
    steps = []
    while True:
        reducible = [(lex_key(m), m) for m in terms if arc_rewrite_rule(m, n) is not None]
        if not reducible:
            break
        m = max(reducible)[1]
        rule, relation = arc_rewrite_rule(m, n)
        factor = exact_div(terms[m], relation[m])
        _add_scaled(terms, relation, -factor)
        steps.append(RewriteStep(m, rule, factor, tuple(sorted(relation.items()))))
    out = AlgebraElement(n, terms, "omega")
    return out, ReductionCertificate(a, out, steps)


def is_nbc(chords: Iterable[Chord], n: int) -> bool:
    cs = list(chords)
    return is_gravity(cs) and not connects_ends(cs, n)


# -------------------------------------------------------------- chord side

def transport_image(mask: int, n: int) -> dict[int, object]:
    """Arc-side normal form of u(e_S): the nbc expansion of the class alpha_S."""
    memo = _memo(n)
    if mask in memo.transport:
        return memo.transport[mask]
    image = substitute_masks(list(unipotent_images(n)), {mask: 1})
    acc: dict[int, object] = {}
    for m, c in image.items():
        _add_scaled(acc, arc_normal_form(m, n), c)
    memo.transport[mask] = acc
    return acc


def change_of_basis(n: int, degree: int) -> dict[int, dict[int, object]]:
    """Columns: nbc expansions of the gravity diagrams of the given degree."""
    memo = _memo(n)
    key = ("change_of_basis", n, degree)
    stored = cache.get("cohomology", key)
    if stored is not None:
        try:
            cols = {int(g): {int(m): _parse_coeff(c) for m, c in col.items()}
                    for g, col in stored.items()}
            if set(cols) == set(gravity_masks(n, degree)):
                memo.columns.update(cols)
                return cols
        except (AttributeError, TypeError, ValueError):
            pass
    cols = {g: transport_image(g, n) for g in gravity_masks(n, degree)}
    for g, col in cols.items():
        if col.get(g) != 1 or any(lex_key(m) > lex_key(g) for m in col):
            raise InvariantViolation(f"transported gravity diagram {chords_of(g, n)} is not unitriangular")
    memo.columns.update(cols)
    cache.put("cohomology", key, {str(g): {str(m): str(c) for m, c in col.items()}
                                   for g, col in cols.items()})
    return cols


def _parse_coeff(s):
    from fractions import Fraction
    f = Fraction(s)
    return f.numerator if f.denominator == 1 else f


def _column(g: int, n: int) -> dict[int, object]:
    memo = _memo(n)
    if g not in memo.columns:
        change_of_basis(n, popcount(g))
    return memo.columns[g]


def chord_normal_form(mask: int, n: int) -> dict[int, object]:
    """Gravity expansion of alpha_S by transport and triangular solve."""
    memo = _memo(n)
    if mask in memo.chord:
        return memo.chord[mask]
    y = dict(transport_image(mask, n))
    result: dict[int, object] = {}
    while y:
        g = max(y, key=lex_key)
        c = y[g]
        col = _column(g, n) if g in _gravity_set(n) else None
        if col is None:
            raise InvariantViolation(f"nbc monomial {chords_of(g, n)} is not a gravity diagram")
        result[g] = c
        _add_scaled(y, col, -c)
    memo.chord[mask] = result
    return result


_gravity_sets: dict[int, frozenset] = {}


def _gravity_set(n: int) -> frozenset:
    if n not in _gravity_sets:
        _gravity_sets[n] = frozenset(_gravity_masks(n))
    return _gravity_sets[n]


def grobner_normal_form(mask: int, n: int) -> dict[int, object]:
    """Gravity expansion of alpha_S by rewriting with the relations pulled back by u^{-1}."""
    memo = _memo(n)
    inverse = list(inverse_unipotent_images(n))

    def step(m):
        r = arc_rewrite_rule(m, n)
        if r is None:
            return None
        pulled = substitute_masks(inverse, r[1])
        if pulled.get(m) != r[1][m] or any(lex_key(x) > lex_key(m) for x in pulled):
            raise InvariantViolation("u^{-1} changed a leading term")
        return pulled

    return _normal_form(mask, memo.grobner, step)


def reduce_chord(a: AlgebraElement, method: str = "transport") -> AlgebraElement:
    """Expand an alpha element in the gravity chord basis."""
    if a.basis == "omega":
        raise PresentationError("reduce_chord expects an alpha element")
    n = a.n
    nf = chord_normal_form if method == "transport" else grobner_normal_form
    acc: dict[int, object] = {}
    for m, c in a.terms.items():
        _add_scaled(acc, nf(m, n), c)
    return AlgebraElement(n, acc, "gravity")


def reduce_chord_checked(a: AlgebraElement) -> AlgebraElement:
    """Both reduction routes; disagreement is an invariant violation."""
    x = reduce_chord(a, "transport")
    y = reduce_chord(a, "grobner")
    if x != y:
        raise InvariantViolation("transport and Groebner reductions disagree")
    return x


def brown_relation(A: Iterable[Chord], B: Iterable[Chord], n: int) -> AlgebraElement:
    A, B = frozenset(A), frozenset(B)
    if not is_completely_crossing(A, B, n):
        raise NotCompletelyCrossing(f"{sorted(A)} and {sorted(B)} are not completely crossing")
    sa = AlgebraElement(n, {}, "alpha")
    for c in A:
        sa = sa + AlgebraElement.from_chords(n, [c])
    sb = AlgebraElement(n, {}, "alpha")
    for c in B:
        sb = sb + AlgebraElement.from_chords(n, [c])
    return sa * sb


def arnold_relation(i: int, j: int, k: int, n: int) -> AlgebraElement:
    """w_ij w_jk + w_ik w_ij - w_ik w_jk, with w_{1,n-1} = 0."""
    def w(a, b):
        if is_chord((a, b), n):
            return AlgebraElement.from_chords(n, [(a, b)], basis="omega")
        return AlgebraElement(n, {}, "omega")
    return w(i, j) * w(j, k) + w(i, k) * w(i, j) - w(i, k) * w(j, k)


def arnold_relations(n: int) -> list[AlgebraElement]:
    return [arnold_relation(i, j, k, n)
            for i in range(1, n) for j in range(i + 1, n) for k in range(j + 1, n)]


def clear_caches() -> None:
    """Drop every in-memory basis and normal-form table."""
    with _basis_lock:
        _basis_cache.clear()
    with _forms_lock:
        _forms.clear()
    _gravity_sets.clear()
