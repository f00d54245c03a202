"""Ordinals below epsilon_0 in Cantor normal form."""
from __future__ import annotations

from functools import total_ordering


@total_ordering
class Ordinal:
    """omega^e1 * c1 + ... + omega^ek * ck with e1 > ... > ek, all ci > 0.

    Exponents are themselves ordinals; zero is the empty sum.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=()):
        terms = tuple((e if isinstance(e, Ordinal) else Ordinal.of(e), c) for e, c in terms)
        for i, (e, c) in enumerate(terms):
            if not isinstance(c, int) or c <= 0:
                raise ValueError("coefficients must be positive integers")
            if i and not terms[i - 1][0] > e:
                raise ValueError("exponents must be strictly decreasing")
        self.terms = terms

    @classmethod
    def of(cls, n: int) -> "Ordinal":
        if n < 0:
            raise ValueError("negative ordinal")
        return cls(((ZERO, n),)) if n else ZERO

    def is_finite(self) -> bool:
        return all(not e.terms for e, _ in self.terms)

    def __int__(self):
        if not self.is_finite():
            raise ValueError(f"{self} is infinite")
        return self.terms[0][1] if self.terms else 0

    def __eq__(self, other):
        if isinstance(other, int):
            other = Ordinal.of(other)
        if not isinstance(other, Ordinal):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def __lt__(self, other):
        if isinstance(other, int):
            other = Ordinal.of(other)
        if not isinstance(other, Ordinal):
            return NotImplemented
        return compare(self, other) < 0

    def __add__(self, other):
        if isinstance(other, int):
            other = Ordinal.of(other)
        return add(self, other)

    def __radd__(self, other):
        return Ordinal.of(other) + self

    def __repr__(self):
        return f"Ordinal({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            if not e.terms:
                parts.append(str(c))
                continue
            if e == ONE:
                base = "w"
            elif e.is_finite():
                base = f"w^{int(e)}"
            else:
                base = f"w^({e})"
            parts.append(base if c == 1 else f"{base}*{c}")
        return " + ".join(parts)


ZERO = Ordinal.__new__(Ordinal)
ZERO.terms = ()
ONE = Ordinal(((ZERO, 1),))


def compare(a: Ordinal, b: Ordinal) -> int:
    """-1, 0 or 1 as a is less than, equal to or greater than b."""
    for (ea, ca), (eb, cb) in zip(a.terms, b.terms):
        c = compare(ea, eb)
        if c:
            return c
        if ca != cb:
            return -1 if ca < cb else 1
    la, lb = len(a.terms), len(b.terms)
    return (la > lb) - (la < lb)


def add(a: Ordinal, b: Ordinal) -> Ordinal:
    if not b.terms:
        return a
    lead, lc = b.terms[0]
    kept = [t for t in a.terms if compare(t[0], lead) > 0]
    same = [c for e, c in a.terms if compare(e, lead) == 0]
    out = kept + [(lead, lc + (same[0] if same else 0))] + list(b.terms[1:])
    return Ordinal(out)


def omega_pow(a: Ordinal | int) -> Ordinal:
    if isinstance(a, int):
        a = Ordinal.of(a)
    return Ordinal(((a, 1),))


W = omega_pow(1)
