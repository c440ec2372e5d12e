"""Hilbert functions and polynomials of graded modules, computed two ways.

One route counts standard monomials outside the initial module of a Gröbner
basis; the other takes the alternating sum over a free resolution.  The two
are independent and must agree in every degree.
"""

from __future__ import annotations

from fractions import Fraction

from .groebner import ModuleOrder, buchberger
from .poly import divides, monomials
from .resolution import FreeResolution, GradedModulePresentation, free_resolution, _binom


def initial_module(M: GradedModulePresentation, order="grevlex"):
    """Lead terms ``(exp, comp)`` of a Gröbner basis of the relation module."""
    mo = ModuleOrder(order, rank=M.rank)
    gb = buchberger(M.relation_vectors(), mo, M.field)
    return [mo.lead(v) for v in gb]


def hilbert_function_gb(M: GradedModulePresentation, d: int, order="grevlex", leads=None) -> int:
    """dim M_d by counting monomials outside the initial module."""
    if leads is None:
        leads = initial_module(M, order)
    total = 0
    for c, t in enumerate(M.target_degrees):
        lc = [e for e, comp in leads if comp == c]
        for m in monomials(M.nvars, d - t):
            if not any(divides(e, m) for e in lc):
                total += 1
    return total


def hilbert_function(M: GradedModulePresentation, d: int, order="grevlex",
                     resolution: FreeResolution | None = None) -> int:
    """dim M_d, computed by both routes; raises if they disagree."""
    a = hilbert_function_gb(M, d, order)
    res = resolution if resolution is not None else free_resolution(M, order)
    b = res.hilbert_function(d)
    if a != b:
        raise ArithmeticError(f"Hilbert function mismatch in degree {d}: {a} != {b}")
    return a


def binomial_polynomial(x: int, n: int) -> Fraction:
    """The polynomial (x+1)(x+2)...(x+n)/n!, i.e. C(x+n, n) extended to all integers x."""
    num = Fraction(1)
    for j in range(1, n + 1):
        num *= Fraction(x + j, j)
    return num


def hilbert_polynomial_value(res: FreeResolution, p: int) -> int:
    """Value at p of the Hilbert polynomial read off the Betti data."""
    n = res.nvars - 1
    total = Fraction(0)
    for i, degs in enumerate(res.degrees):
        s = sum(binomial_polynomial(p - a, n) for a in degs)
        total += -s if i % 2 else s
    assert total.denominator == 1
    return int(total)


def hilbert_polynomial_degree(res: FreeResolution) -> int:
    """Degree of the Hilbert polynomial (-1 for the zero polynomial), by finite differences."""
    n = res.nvars - 1
    vals = [hilbert_polynomial_value(res, p) for p in range(n + 2)]
    deg = -1
    j = 0
    while vals:
        if any(vals):
            deg = j
        vals = [b - a for a, b in zip(vals, vals[1:])]
        j += 1
    return deg


def krull_dimension(res: FreeResolution) -> int:
    """Dimension of the affine cone: 1 + degree of the Hilbert polynomial (0 if it vanishes)."""
    return hilbert_polynomial_degree(res) + 1


def projective_codimension(res: FreeResolution) -> int:
    """Codimension in P^n of the support (n+1 - Krull dimension of the cone)."""
    return res.nvars - krull_dimension(res)


__all__ = [
    "binomial_polynomial",
    "hilbert_function",
    "hilbert_function_gb",
    "hilbert_polynomial_value",
    "hilbert_polynomial_degree",
    "krull_dimension",
    "projective_codimension",
    "_binom",
]
