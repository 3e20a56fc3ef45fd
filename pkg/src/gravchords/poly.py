"""Integer polynomials in one variable, used for Poincare polynomials and point counts."""
from __future__ import annotations

from typing import Iterable


class PoincarePolynomial:
    """Immutable integer polynomial; coefficient k multiplies t^k."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = (0,)):
        cs = [int(c) for c in coeffs] or [0]
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def one(cls):
        return cls((1,))

    @classmethod
    def monomial(cls, k: int, c: int = 1):
        return cls([0] * k + [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1 if any(self.coeffs) else -1

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __add__(self, other):
        other = _lift(other)
        m = max(len(self.coeffs), len(other.coeffs))
        return PoincarePolynomial(self[k] + other[k] for k in range(m))

    __radd__ = __add__

    def __neg__(self):
        return PoincarePolynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-_lift(other))

    def __rsub__(self, other):
        return _lift(other) - self

    def __mul__(self, other):
        other = _lift(other)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return PoincarePolynomial(out)

    __rmul__ = __mul__

    def shift(self, k: int = 1):
        """Multiply by t^k."""
        return PoincarePolynomial([0] * k + list(self.coeffs))

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def div_linear(self, root: int):
        """Exact quotient by (t - root); a nonzero remainder is an error."""
        out = []
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * root + c
            out.append(acc)
        remainder = out.pop()
        if remainder:
            raise ArithmeticError(f"{self} is not divisible by (t - {root})")
        return PoincarePolynomial(reversed(out))

    def __eq__(self, other):
        if isinstance(other, (list, tuple)):
            other = PoincarePolynomial(other)
        if isinstance(other, int):
            other = PoincarePolynomial((other,))
        if not isinstance(other, PoincarePolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"PoincarePolynomial({list(self.coeffs)})"

    def __str__(self):
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0 and len(self.coeffs) > 1:
                continue
            if k == 0:
                parts.append(str(c))
            else:
                mag = "" if abs(c) == 1 else str(abs(c))
                term = f"{mag}t" + (f"^{k}" if k > 1 else "")
                parts.append(("-" if c < 0 else "") + term)
        return " + ".join(parts).replace("+ -", "- ")

    def to_list(self) -> list[int]:
        return list(self.coeffs)


def _lift(x) -> PoincarePolynomial:
    return x if isinstance(x, PoincarePolynomial) else PoincarePolynomial((x,))


def falling_factorial(k: int) -> PoincarePolynomial:
    """q (q - 1) ... (q - k + 1)."""
    out = PoincarePolynomial.one()
    for r in range(k):
        out = out * PoincarePolynomial((-r, 1))
    return out
