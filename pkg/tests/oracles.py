"""Independent reference computations used by the tests.

Everything here is plain linear algebra in a single degree, deliberately
avoiding Groebner bases and resolutions.
"""

from __future__ import annotations

import random
from math import comb

from eybound.algebra.linalg import rref
from eybound.algebra.poly import Polynomial, monomials


def degree_rows(gens, d):
    """Coefficient rows of all monomial multiples of the generators landing in degree d."""
    if not gens:
        return [], []
    nvars, fld = gens[0].nvars, gens[0].field
    basis = monomials(nvars, d)
    index = {m: i for i, m in enumerate(basis)}
    rows = []
    for g in gens:
        e = d - g.degree()
        if e < 0:
            continue
        for m in monomials(nvars, e):
            row = [0] * len(basis)
            for exp, c in g.terms.items():
                row[index[tuple(a + b for a, b in zip(exp, m))]] = c
            rows.append(row)
    return rows, basis


def ideal_dim(gens, d):
    rows, _ = degree_rows(gens, d)
    if not rows:
        return 0
    return len(rref(rows, gens[0].field)[1])


def quotient_dim(gens, nvars, d):
    """dim (S/I)_d by rank counting."""
    if d < 0:
        return 0
    return comb(d + nvars - 1, nvars - 1) - ideal_dim(gens, d)


def in_ideal(f, gens):
    """Membership of a homogeneous f in (gens) by a rank test in degree deg f."""
    d = f.degree()
    rows, basis = degree_rows(gens, d)
    vec = [f.terms.get(m, 0) for m in basis]
    before = len(rref(rows, f.field)[1]) if rows else 0
    return len(rref(rows + [vec], f.field)[1]) == before


def random_form(nvars, d, fld, rng, density=1.0):
    terms = {}
    for m in monomials(nvars, d):
        if rng.random() < density:
            terms[m] = rng.randrange(fld.p) if fld.p else rng.randint(-5, 5)
    return Polynomial(nvars, terms, fld)


def random_combination(gens, d, rng):
    nvars, fld = gens[0].nvars, gens[0].field
    total = Polynomial.zero(nvars, fld)
    for g in gens:
        if g.degree() <= d:
            total = total + g * random_form(nvars, d - g.degree(), fld, rng)
    return total


def seeded(seed):
    return random.Random(seed)
