"""Coefficient fields: a prime field GF(p) or the rationals.

Prime-field scalars are plain ints in [0, p); rational scalars are ints or
``fractions.Fraction``.  All arithmetic elsewhere uses the ordinary Python
operators followed by :meth:`Field.norm`.
"""

from __future__ import annotations

import random
from fractions import Fraction

DEFAULT_PRIME = 32003


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


class Field:
    """GF(p) when ``p`` is given, otherwise QQ."""

    __slots__ = ("p",)

    def __init__(self, p: int | None = DEFAULT_PRIME):
        if p is not None and not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p

    @classmethod
    def prime(cls, p: int = DEFAULT_PRIME) -> "Field":
        return cls(p)

    @classmethod
    def rationals(cls) -> "Field":
        return cls(None)

    @property
    def is_prime(self) -> bool:
        return self.p is not None

    def norm(self, c):
        if self.p is None:
            return c
        return c % self.p

    def inv(self, c):
        if self.p is None:
            if c == 0:
                raise ZeroDivisionError("inverse of zero")
            return Fraction(1) / c
        c %= self.p
        if c == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(c, self.p - 2, self.p)

    def div(self, a, b):
        return self.norm(a * self.inv(b))

    def parse(self, text: str):
        c = Fraction(text)
        if self.p is None:
            return c.numerator if c.denominator == 1 else c
        return self.norm(c.numerator * self.inv(c.denominator))

    def to_str(self, c) -> str:
        return str(c)

    def random(self, rng: random.Random, nonzero: bool = False, bound: int = 50):
        """A random scalar; over QQ a small integer."""
        while True:
            if self.p is None:
                c = rng.randint(-bound, bound)
            else:
                c = rng.randrange(self.p)
            if c or not nonzero:
                return c

    def signed(self, c) -> int | Fraction:
        """Representative in (-p/2, p/2] for display; identity over QQ."""
        if self.p is None:
            return c
        c %= self.p
        return c - self.p if c > self.p // 2 else c

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "QQ" if self.p is None else f"GF({self.p})"

    def describe(self) -> str:
        return "rationals" if self.p is None else f"prime-field:{self.p}"


QQ = Field(None)
GF = Field
