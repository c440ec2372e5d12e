"""Vanishing bounds for powers of the ideal of a curve C embedded by |K_C + D|.

Here g is the genus, d = deg D >= 3, and C sits in P^n with n = d + g - 2
as a curve of degree d + 2g - 2.  The blow-up X of P^n along C carries
H and E; the conditions below make A = pH - kE - K_X - (1 - eps)F nef and big
for the efficient divisor F of class ((d+g-5)/(d-4)) (dH - (d-2)E).
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .singularity import LC, DivisorClass, prop21_compose


def embedding_dimension(g: int, d: int) -> int:
    return d + g - 2


def prop4a_class(g: int, d: int, variant: str) -> DivisorClass:
    """Numerical classes of the three log canonical divisors on X."""
    if g < 0 or d < 3:
        raise ValueError("need g >= 0 and d >= 3")
    if variant == "a":
        return DivisorClass(d - 1, -(d - 3))
    if variant == "b":
        if g <= 0:
            raise ValueError("variant b needs g > 0")
        return DivisorClass(d, -(d - 2))
    if variant == "c":
        if g <= 0 or d <= 4:
            raise ValueError("variant c needs g > 0 and d > 4")
        return DivisorClass(d, -(d - 2)) * Fraction(d + g - 5, d - 4)
    raise ValueError(f"unknown variant {variant!r}")


def prop41_check(g: int, d: int) -> int:
    """e_Y <= 1 for genus 0 and 1, via F = (n+1)H - (n-1)E."""
    if g not in (0, 1):
        raise ValueError("only genus 0 and 1")
    if d < 4:
        raise ValueError("need d >= 4 so that the curve is cut out by quadrics")
    n = embedding_dimension(g, d)
    F = prop4a_class(g, d, "a" if g == 0 else "b")
    expected = DivisorClass(n + 1, -(n - 1))
    if F != expected:
        raise ArithmeticError(f"class {F} differs from {expected}")
    return prop21_compose(F, n, n - 1, LC)


# ------------------------------------------------------------- conditions


def epsilon_cap(g: int, d: int) -> Fraction:
    return Fraction(d + g - 5, d - 4)


@dataclass(frozen=True)
class CurveVanishingQuery:
    g: int
    d: int
    k: int
    p: int
    eps: Fraction

    def __post_init__(self):
        object.__setattr__(self, "eps", Fraction(self.eps))
        if self.d <= 4:
            raise ValueError("conditions need d > 4")
        if self.k < 1:
            raise ValueError("k must be positive")
        if not 0 < self.eps <= epsilon_cap(self.g, self.d):
            raise ValueError(f"eps' must lie in (0, {epsilon_cap(self.g, self.d)}]")


@dataclass
class Inequality:
    lhs: Fraction
    rhs: Fraction

    @property
    def holds(self):
        return self.lhs >= self.rhs

    @property
    def strict(self):
        return self.lhs > self.rhs

    def to_dict(self):
        return {"lhs": str(self.lhs), "rhs": str(self.rhs), "holds": self.holds,
                "strict": self.strict}


@dataclass
class ConditionReport:
    query: CurveVanishingQuery
    first: Inequality
    second: Inequality

    @property
    def sufficient(self) -> bool:
        return self.first.holds and self.second.holds and (self.first.strict or self.second.strict)

    @property
    def status(self) -> str:
        return "sufficient" if self.sufficient else "insufficient"

    def to_dict(self):
        q = self.query
        return {"g": q.g, "d": q.d, "k": q.k, "p": q.p, "eps": str(q.eps),
                "i": self.first.to_dict(), "ii": self.second.to_dict(), "status": self.status}


def conditions_check(q: CurveVanishingQuery) -> ConditionReport:
    g, d, k, p, eps = q.g, q.d, q.k, q.p, q.eps
    first = Inequality(p + d * eps, 2 * (k - 1 + (d - 2) * eps))
    second = Inequality(k - 1 + (d - 2) * eps, Fraction(2 * g - 2, d - 4))
    return ConditionReport(q, first, second)


def admissible_epsilon(g: int, d: int, k: int, p: int):
    """Some eps' in (0, cap] making the conditions sufficient, or None.

    Condition (i) minus its right side is affine in eps' with slope 4 - d < 0,
    and condition (ii) has slope d - 2 > 0.  So (i) holds exactly for
    eps' <= U' = (p - 2k + 2)/(d - 4) and (ii) exactly for eps' >= L.  With
    U = min(U', cap), a solution exists iff U > max(L, 0), or U = L > 0 with
    (i) strict there (cap binding).  U itself is then a witness.
    """
    if d <= 4:
        raise ValueError("conditions need d > 4")
    slope_i = d - 2 * (d - 2)
    slope_ii = d - 2
    assert slope_i < 0 < slope_ii
    cap = epsilon_cap(g, d)
    if cap <= 0:
        return None
    upper = Fraction(p - 2 * k + 2, d - 4)
    lower = (Fraction(2 * g - 2, d - 4) - (k - 1)) / (d - 2)
    u = min(upper, cap)
    if u <= 0:
        return None
    if u > lower or (u == lower and cap < upper):
        eps = u
        assert conditions_check(CurveVanishingQuery(g, d, k, p, eps)).sufficient
        return eps
    return None


def prop42_threshold(g: int) -> int:
    """Smallest d with d > (2g+8)/3 and d >= 5."""
    if g < 0:
        raise ValueError("genus must be nonnegative")
    return max(5, (2 * g + 8) // 3 + 1)


# ----------------------------------------------------------- exceptions


@dataclass
class ExceptionRegion:
    g: int
    d: int
    pairs: list = dc_field(default_factory=list)  # (k, p)
    note: str = ""

    @property
    def empty(self) -> bool:
        return not self.pairs

    def rows(self):
        """(k, p_min, p_max) for each k with exceptions."""
        by_k = {}
        for k, p in self.pairs:
            lo, hi = by_k.get(k, (p, p))
            by_k[k] = (min(lo, p), max(hi, p))
        return [(k, lo, hi) for k, (lo, hi) in sorted(by_k.items())]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["k", "p_min", "p_max"])
        for row in self.rows():
            w.writerow(row)
        return buf.getvalue()

    def to_dict(self):
        return {"g": self.g, "d": self.d, "empty": self.empty,
                "rows": [list(r) for r in self.rows()], "note": self.note}


def exception_region(g: int, d: int) -> ExceptionRegion:
    """All (k, p) with k >= 3, p >= 2k - 1 where no admissible eps' works.

    k = 1 is covered by projective normality and k = 2 by the vanishing for
    squares when d >= 5.  Writing p = 2k - 1 + a, an exception needs
    (k-1)(d-4) <= 2g - d - a(d-2) while eps' stays below the cap, and the cap
    is only reached once a >= d + g - 6, where every k works.  The scan covers
    a margin past both bounds and checks that it is exception-free.
    """
    if d < 5:
        raise ValueError("exception region needs d >= 5")
    if g < 0:
        raise ValueError("genus must be nonnegative")
    region = ExceptionRegion(g, d)
    if epsilon_cap(g, d) <= 0:
        # only g = 0, d = 5; the genus-0 divisor already gives e <= 1
        region.note = "no admissible eps'; genus 0 is settled by the (n+1)H - (n-1)E divisor"
        return region
    k_hi = 1 + max(0, 2 * g - d) // (d - 4)
    a_hi = max(0, d + g - 6)
    margin = 2
    for k in range(3, k_hi + margin + 1):
        for a in range(0, a_hi + margin + 1):
            p = 2 * k - 1 + a
            if admissible_epsilon(g, d, k, p) is None:
                if k > k_hi or a > a_hi:
                    raise ArithmeticError(f"exception ({k}, {p}) outside the proven bounds")
                region.pairs.append((k, p))
    return region
