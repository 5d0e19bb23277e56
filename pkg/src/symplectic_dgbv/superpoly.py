"""Supercommutative polynomials in formal variables x^0..x^{r-1}.

A monomial is a tuple of exponents. Variables flagged odd square to
zero and anticommute with each other; in a stored monomial the odd
variables are read in ascending index order.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator, Mapping, Sequence

Monomial = tuple[int, ...]


def unit(r: int) -> Monomial:
    return (0,) * r


def variable(i: int, r: int) -> Monomial:
    return tuple(int(j == i) for j in range(r))


def degree(mono: Monomial) -> int:
    return sum(mono)


def parity(mono: Monomial, parities: Sequence[int]) -> int:
    return sum(e for e, p in zip(mono, parities) if p) & 1


def multiply(a: Monomial, b: Monomial, parities: Sequence[int]) -> tuple[int, Monomial | None]:
    """Product of two monomials as (sign, monomial); monomial is None when zero."""
    swaps = 0
    odd_in_a_above = 0
    # walk from the top index down, counting odd a-variables that each
    # odd b-variable has to pass on its way into sorted position
    for i in range(len(a) - 1, -1, -1):
        if not parities[i]:
            continue
        if a[i] and b[i]:
            return 0, None
        if b[i]:
            swaps += odd_in_a_above
        if a[i]:
            odd_in_a_above += 1
    return (-1 if swaps & 1 else 1), tuple(x + y for x, y in zip(a, b))


def left_derivative(mono: Monomial, i: int, parities: Sequence[int]) -> tuple[Fraction, Monomial | None]:
    """Coefficient and monomial of d/dx^i acting from the left."""
    if not mono[i]:
        return Fraction(0), None
    rest = mono[:i] + (mono[i] - 1,) + mono[i + 1:]
    if not parities[i]:
        return Fraction(mono[i]), rest
    passed = sum(mono[j] for j in range(i) if parities[j])
    return Fraction(-1 if passed & 1 else 1), rest


def monomials_of_degree(r: int, n: int, parities: Sequence[int]) -> Iterator[Monomial]:
    """All admissible monomials of total degree n, in ascending tuple order."""
    def rec(i: int, left: int):
        if i == r:
            if left == 0:
                yield ()
            return
        top = min(left, 1) if parities[i] else left
        for e in range(top + 1):
            for tail in rec(i + 1, left - e):
                yield (e,) + tail
    return iter(sorted(rec(0, n)))


def to_string(mono: Monomial) -> str:
    parts = []
    for i, e in enumerate(mono):
        if e == 1:
            parts.append(f"x{i}")
        elif e > 1:
            parts.append(f"x{i}^{e}")
    return "*".join(parts) or "1"


class SuperPoly:
    """Truncation-free polynomial in supercommuting variables."""

    __slots__ = ("parities", "terms")

    def __init__(self, parities: Sequence[int], terms: Mapping[Monomial, Fraction] | None = None):
        self.parities = tuple(parities)
        self.terms: dict[Monomial, Fraction] = {}
        for mono, c in (terms or {}).items():
            if c != 0:
                self.terms[mono] = Fraction(c)

    @classmethod
    def constant(cls, parities: Sequence[int], c) -> "SuperPoly":
        return cls(parities, {unit(len(parities)): Fraction(c)})

    @classmethod
    def var(cls, parities: Sequence[int], i: int) -> "SuperPoly":
        return cls(parities, {variable(i, len(parities)): Fraction(1)})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = SuperPoly.constant(self.parities, other)
        return isinstance(other, SuperPoly) and self.terms == other.terms

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*{to_string(m)}" for m, c in sorted(self.terms.items()))

    def __add__(self, other: "SuperPoly") -> "SuperPoly":
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return SuperPoly(self.parities, out)

    def __neg__(self) -> "SuperPoly":
        return SuperPoly(self.parities, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "SuperPoly") -> "SuperPoly":
        return self + (-other)

    def scale(self, c) -> "SuperPoly":
        return SuperPoly(self.parities, {m: c * v for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        out: dict[Monomial, Fraction] = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                s, mono = multiply(ma, mb, self.parities)
                if mono is not None:
                    out[mono] = out.get(mono, 0) + s * ca * cb
        return SuperPoly(self.parities, out)

    __rmul__ = scale

    def derivative(self, i: int) -> "SuperPoly":
        out: dict[Monomial, Fraction] = {}
        for m, c in self.terms.items():
            k, rest = left_derivative(m, i, self.parities)
            if rest is not None:
                out[rest] = out.get(rest, 0) + k * c
        return SuperPoly(self.parities, out)

    def truncate(self, order: int) -> "SuperPoly":
        return SuperPoly(self.parities, {m: c for m, c in self.terms.items() if degree(m) <= order})

    def homogeneous(self, n: int) -> "SuperPoly":
        return SuperPoly(self.parities, {m: c for m, c in self.terms.items() if degree(m) == n})

    def at_zero(self) -> Fraction:
        return self.terms.get(unit(len(self.parities)), Fraction(0))

    def is_homogeneous_parity(self) -> bool:
        return len({parity(m, self.parities) for m in self.terms}) <= 1

    def term_parity(self) -> int:
        ps = {parity(m, self.parities) for m in self.terms}
        if len(ps) > 1:
            raise ValueError("polynomial has mixed parity")
        return ps.pop() if ps else 0
