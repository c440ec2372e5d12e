"""Sparse multivariate polynomials and homogeneous ideals.

A polynomial is a dict from exponent tuples to nonzero field scalars.  The
text format is ``coeff*x0^e0*...*xn^en`` terms joined by ``+``; exponent 1
is written bare and zero exponents are omitted.
"""

from __future__ import annotations

import json
import re
from itertools import combinations_with_replacement, product
from math import comb
from typing import Callable, Iterable

import numpy as np

from .field import Field, DEFAULT_PRIME

Exp = tuple

# ---------------------------------------------------------------- orders


def _grevlex(a):
    return (sum(a),) + tuple(-x for x in reversed(a))


def _grlex(a):
    return (sum(a),) + tuple(a)


def _lex(a):
    return tuple(a)


ORDERS: dict[str, Callable[[Exp], tuple]] = {
    "grevlex": _grevlex,
    "grlex": _grlex,
    "lex": _lex,
}


def order_key(order: str) -> Callable[[Exp], tuple]:
    try:
        return ORDERS[order]
    except KeyError:
        raise ValueError(f"unsupported monomial order {order!r}") from None


def monomials(nvars: int, degree: int) -> list[Exp]:
    """All exponent vectors of the given total degree (empty for negative degree)."""
    if degree < 0:
        return []
    if nvars == 0:
        return [()] if degree == 0 else []
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for v in combo:
            e[v] += 1
        out.append(tuple(e))
    return out


def divides(a: Exp, b: Exp) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_lcm(a: Exp, b: Exp) -> Exp:
    return tuple(x if x > y else y for x, y in zip(a, b))


def mono_div(a: Exp, b: Exp) -> Exp:
    return tuple(x - y for x, y in zip(a, b))


def mono_mul(a: Exp, b: Exp) -> Exp:
    return tuple(x + y for x, y in zip(a, b))


# ----------------------------------------------------------- polynomials


class Polynomial:
    """An element of k[x0, ..., x_{n-1}]; treat as immutable."""

    __slots__ = ("nvars", "terms", "field")

    def __init__(self, nvars: int, terms: dict | None = None, field: Field | None = None):
        self.nvars = nvars
        self.field = field if field is not None else Field(DEFAULT_PRIME)
        t = {}
        if terms:
            norm = self.field.norm
            for e, c in terms.items():
                if len(e) != nvars:
                    raise ValueError("exponent length does not match variable count")
                c = norm(c)
                if c != 0:
                    t[tuple(e)] = c
        self.terms = t

    @classmethod
    def _raw(cls, nvars, terms, field):
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj.terms = terms
        obj.field = field
        return obj

    # constructors
    @classmethod
    def zero(cls, nvars, field=None):
        return cls(nvars, {}, field)

    @classmethod
    def constant(cls, nvars, c, field=None):
        return cls(nvars, {(0,) * nvars: c}, field)

    @classmethod
    def var(cls, nvars, i, field=None):
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1}, field)

    @classmethod
    def gens(cls, nvars, field=None):
        return [cls.var(nvars, i, field) for i in range(nvars)]

    # predicates / accessors
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def min_degree(self) -> int:
        if not self.terms:
            return -1
        return min(sum(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def homogeneous_part(self, d: int) -> "Polynomial":
        return Polynomial._raw(self.nvars, {e: c for e, c in self.terms.items() if sum(e) == d},
                               self.field)

    def leading_term(self, order: str = "grevlex"):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        key = order_key(order)
        e = max(self.terms, key=key)
        return e, self.terms[e]

    def _check(self, other: "Polynomial"):
        if other.nvars != self.nvars:
            raise ValueError("variable-count mismatch")

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return Polynomial.constant(self.nvars, other, self.field)

    # arithmetic
    def __add__(self, other):
        other = self._coerce(other)
        norm = self.field.norm
        t = dict(self.terms)
        for e, c in other.terms.items():
            v = norm(t.get(e, 0) + c)
            if v:
                t[e] = v
            else:
                t.pop(e, None)
        return Polynomial._raw(self.nvars, t, self.field)

    __radd__ = __add__

    def __neg__(self):
        norm = self.field.norm
        return Polynomial._raw(self.nvars, {e: norm(-c) for e, c in self.terms.items()}, self.field)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c0 = self.field.norm(other)
            if c0 == 0:
                return Polynomial._raw(self.nvars, {}, self.field)
            norm = self.field.norm
            return Polynomial._raw(self.nvars, {e: norm(c * c0) for e, c in self.terms.items()},
                                   self.field)
        self._check(other)
        norm = self.field.norm
        t: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, 0) + c1 * c2
        t = {e: v for e, v in ((e, norm(v)) for e, v in t.items()) if v != 0}
        return Polynomial._raw(self.nvars, t, self.field)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = Polynomial.constant(self.nvars, 1, self.field)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self.terms == other.terms
        if other == 0:
            return not self.terms
        return self == Polynomial.constant(self.nvars, other, self.field)

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def monic(self, order: str = "grevlex") -> "Polynomial":
        if not self.terms:
            return self
        _, c = self.leading_term(order)
        return self * self.field.inv(c)

    # evaluation / substitution
    def evaluate(self, point) -> object:
        norm = self.field.norm
        total = 0
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v = v * x ** k
            total += v
        return norm(total)

    def shift(self, point) -> "Polynomial":
        """f(x + point): Taylor re-centering at ``point``.

        Each term expands binomially, c x^e -> sum over e' <= e of
        c prod C(e_i, e'_i) a_i^(e_i - e'_i) x^e'.
        """
        if len(point) != self.nvars:
            raise ValueError("point dimension does not match variable count")
        norm = self.field.norm
        out: dict = {}
        for e, c in self.terms.items():
            support = [i for i, k in enumerate(e) if k]
            # per variable: list of (new exponent, factor)
            choices = []
            for i in support:
                a, k = point[i], e[i]
                opts = [(j, comb(k, j) * a ** (k - j)) for j in range(k + 1)]
                choices.append([(j, f) for j, f in opts if j == k or a])
            for pick in product(*choices):
                coef = c
                exp = list(e)
                for i, (j, f) in zip(support, pick):
                    exp[i] = j
                    coef = coef * f
                key = tuple(exp)
                out[key] = out.get(key, 0) + coef
        return Polynomial._raw(self.nvars, {k: v for k, v in ((k, norm(v)) for k, v in out.items())
                                            if v != 0}, self.field)

    def order_at(self, point) -> int:
        """Vanishing order at ``point``: lowest degree of f(x + point).

        Squarefree polynomials over a prime field (minors and Pfaffians of
        matrices of distinct variables) take a vectorized route: every term
        expands over the subsets of its variables, keyed by bitmask.
        """
        if len(point) != self.nvars:
            raise ValueError("point dimension does not match variable count")
        if self.is_zero():
            raise ValueError("order of the zero polynomial is undefined")
        p = self.field.p
        if p is None or self.nvars > 62 or any(max(e) > 1 for e in self.terms):
            return self.shift(point).min_degree()
        pt = np.array([int(v) % p for v in point], dtype=np.int64)
        groups: dict = {}
        for e, c in self.terms.items():
            groups.setdefault(sum(e), []).append(([i for i, k in enumerate(e) if k], c))
        keys, vals, degs = [], [], []
        for d, items in groups.items():
            sup = np.array([v for v, _ in items], dtype=np.int64).reshape(len(items), d)
            coef = np.array([c for _, c in items], dtype=np.int64) % p
            a = pt[sup]
            bits = np.left_shift(np.int64(1), sup)
            for mask in range(1 << d):
                val = coef.copy()
                key = np.zeros(len(items), dtype=np.int64)
                for col in range(d):
                    if mask >> col & 1:
                        key |= bits[:, col]
                    else:
                        val = val * a[:, col] % p
                keys.append(key)
                vals.append(val)
                degs.append(np.full(len(items), bin(mask).count("1"), dtype=np.int64))
        keys = np.concatenate(keys)
        vals = np.concatenate(vals)
        degs = np.concatenate(degs)
        order = np.argsort(keys, kind="stable")
        keys, vals, degs = keys[order], vals[order], degs[order]
        starts = np.flatnonzero(np.r_[True, keys[1:] != keys[:-1]])
        sums = np.add.reduceat(vals, starts) % p
        alive = degs[starts][sums != 0]
        return int(alive.min())

    def substitute(self, images: list["Polynomial"]) -> "Polynomial":
        """Replace x_i by images[i] (all images share a ring)."""
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        m = images[0].nvars
        field = images[0].field
        result = Polynomial.zero(m, field)
        for e, c in self.terms.items():
            term = Polynomial.constant(m, c, field)
            for i, k in enumerate(e):
                if k:
                    term = term * images[i] ** k
            result = result + term
        return result

    # text
    def to_str(self, order: str = "grevlex") -> str:
        if not self.terms:
            return "0"
        key = order_key(order)
        parts = []
        for e in sorted(self.terms, key=key, reverse=True):
            factors = [self.field.to_str(self.field.signed(self.terms[e]))]
            for i, k in enumerate(e):
                if k == 1:
                    factors.append(f"x{i}")
                elif k > 1:
                    factors.append(f"x{i}^{k}")
            parts.append("*".join(factors))
        return "+".join(parts)

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"Polynomial({self.to_str()!r})"

    @classmethod
    def parse(cls, text: str, nvars: int, field: Field | None = None) -> "Polynomial":
        field = field if field is not None else Field(DEFAULT_PRIME)
        s = text.replace(" ", "")
        if s in ("", "0"):
            return cls.zero(nvars, field)
        # split on + that is not an exponent sign; minus signs stay attached to coefficients
        s = re.sub(r"(?<=[0-9x\)])-", "+-", s)
        terms: dict = {}
        for chunk in s.split("+"):
            if not chunk:
                continue
            coeff = 1
            e = [0] * nvars
            sign = 1
            if chunk.startswith("-"):
                sign = -1
                chunk = chunk[1:]
            for f in chunk.split("*"):
                m = re.fullmatch(r"x(\d+)(?:\^(\d+))?", f)
                if m:
                    i = int(m.group(1))
                    if i >= nvars:
                        raise ValueError(f"variable x{i} out of range for {nvars} variables")
                    e[i] += int(m.group(2) or 1)
                else:
                    coeff = coeff * field.parse(f)
            e = tuple(e)
            terms[e] = terms.get(e, 0) + sign * coeff
        return cls(nvars, terms, field)


def poly_from_terms(nvars: int, items: Iterable, field: Field) -> Polynomial:
    return Polynomial(nvars, dict(items), field)


# ---------------------------------------------------------------- ideals


class GradedIdeal:
    """A homogeneous ideal of k[x0..xn] (coordinates of P^n) given by generators."""

    def __init__(self, nvars: int, generators: Iterable[Polynomial], field: Field | None = None):
        gens = [g for g in generators if not g.is_zero()]
        self.field = field if field is not None else (gens[0].field if gens else Field())
        self.nvars = nvars
        out = []
        seen = set()
        for g in gens:
            if g.nvars != nvars:
                raise ValueError("variable-count mismatch")
            if not g.is_homogeneous():
                raise ValueError(f"generator {g} is not homogeneous")
            m = g.monic()
            if m not in seen:
                seen.add(m)
                out.append(g)
        self.generators = out

    @property
    def n(self) -> int:
        """Dimension of the ambient projective space."""
        return self.nvars - 1

    def degrees(self) -> list[int]:
        return [g.degree() for g in self.generators]

    def __len__(self):
        return len(self.generators)

    def to_json(self) -> str:
        return json.dumps([g.to_str() for g in self.generators])

    @classmethod
    def from_json(cls, text: str, nvars: int, field: Field | None = None) -> "GradedIdeal":
        return cls(nvars, [Polynomial.parse(s, nvars, field) for s in json.loads(text)], field)

    def __repr__(self):
        return f"GradedIdeal({self.nvars} vars, {len(self.generators)} generators)"
