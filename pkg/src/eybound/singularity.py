"""Numerical divisor classes, discrepancies of determinantal strategies, and bounds.

All divisor bookkeeping happens on the blow-up X of P^n along Y with
hyperplane class H and exceptional class E.  A strategy picks n_i general
combinations of the degree-i minors (degree-i Pfaffians in the skew case),
whose sum F has class (sum i n_i) H - (sum (i-1) n_i) E.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .catalog import EmbeddingCase, codim_delta
from .algebra.resolution import _binom

LC, KLT, PLT, NOT_LC = "lc", "klt", "plt", "not-lc"
INVALID = "invalid"


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class DivisorClass:
    """a H + b E, or a H + sum b_j E_j when ``e`` is a tuple."""

    h: Fraction
    e: object = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "h", _frac(self.h))
        if isinstance(self.e, (tuple, list)):
            object.__setattr__(self, "e", tuple(_frac(x) for x in self.e))
        else:
            object.__setattr__(self, "e", _frac(self.e))

    def _pair(self, other):
        if not isinstance(other, DivisorClass):
            return NotImplemented
        a, b = self.e, other.e
        if isinstance(a, tuple) != isinstance(b, tuple):
            raise ValueError("cannot mix single- and multi-exceptional classes")
        if isinstance(a, tuple) and len(a) != len(b):
            a = a + (Fraction(0),) * (len(b) - len(a))
            b = b + (Fraction(0),) * (len(a) - len(b))
        return a, b

    def __add__(self, other):
        a, b = self._pair(other)
        if isinstance(a, tuple):
            return DivisorClass(self.h + other.h, tuple(x + y for x, y in zip(a, b)))
        return DivisorClass(self.h + other.h, a + b)

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        c = _frac(c)
        if isinstance(self.e, tuple):
            return DivisorClass(self.h * c, tuple(x * c for x in self.e))
        return DivisorClass(self.h * c, self.e * c)

    __rmul__ = __mul__

    def __str__(self):
        parts = [f"{self.h}H"]
        if isinstance(self.e, tuple):
            for j, b in enumerate(self.e, start=1):
                parts.append(f"{b}E_{j}")
        else:
            parts.append(f"{self.e}E")
        return " + ".join(parts).replace("+ -", "- ")

    def to_dict(self):
        e = [str(x) for x in self.e] if isinstance(self.e, tuple) else str(self.e)
        return {"H": str(self.h), "E": e}


def canonical_class(n: int, r: int) -> DivisorClass:
    """K of the blow-up of P^n along a smooth codimension-r center."""
    if n < 1 or not 1 <= r <= n:
        raise ValueError("need n >= 1 and 1 <= r <= n")
    return DivisorClass(-(n + 1), r - 1)


def linear_series_class(i: int) -> DivisorClass:
    """iH - (i-1)E_1 - (i-2)E_2 - ... - E_{i-1} on the blow-up tower."""
    if i < 1:
        raise ValueError("i must be positive")
    return DivisorClass(i, tuple(-(i - j) for j in range(1, i)))


# ------------------------------------------------------------ discrepancies


@dataclass(frozen=True)
class MultiplicityVector:
    """n_i for i = 2 .. top, stored in that order."""

    values: tuple

    @classmethod
    def from_mapping(cls, case: EmbeddingCase, mapping: dict):
        top = case.max_index
        extra = set(mapping) - set(range(2, top + 1))
        if extra:
            raise ValueError(f"indices {sorted(extra)} outside 2..{top}")
        return cls(tuple(mapping.get(i, 0) for i in range(2, top + 1)))

    def get(self, i: int):
        return self.values[i - 2] if 2 <= i < 2 + len(self.values) else 0

    def as_dict(self):
        return {i: v for i, v in enumerate(self.values, start=2)}


def validate_vector(case: EmbeddingCase, nv: MultiplicityVector):
    top = case.max_index
    if len(nv.values) != top - 1:
        raise ValueError(f"expected {top - 1} multiplicities n_2..n_{top}")
    if any(v < 0 or int(v) != v for v in nv.values):
        raise ValueError("multiplicities must be nonnegative integers")
    last = nv.get(top)
    if case.kind == "generic" and case.k == case.m and last > 1:
        raise ValueError("square generic case needs n_k <= 1")
    if case.kind == "symmetric" and last > 1:
        raise ValueError("symmetric case needs n_k <= 1")
    if case.kind == "skew" and 2 * top == case.k and last > 1:
        raise ValueError("even skew case needs n_l <= 1")


def _base_term(case: EmbeddingCase, j: int) -> int:
    """The codimension-type term of the discrepancy at E_j (before subtracting)."""
    k = case.k
    if case.kind == "generic":
        return (k - j) * (case.m - j)
    if case.kind == "symmetric":
        return _binom(k - j + 1, 2)
    return _binom(k - 2 * j, 2)


def exceptional_range(case: EmbeddingCase):
    """Indices j whose exceptional divisors enter the verdict."""
    if case.kind == "skew":
        return range(2, case.max_index)
    return range(2, case.k)


def discrepancy_at(case: EmbeddingCase, nv: MultiplicityVector, j: int, scale=1) -> Fraction:
    scale = _frac(scale)
    s = sum((i - j) * nv.get(i) for i in range(j + 1, case.max_index + 1))
    return Fraction(_base_term(case, j) - 1) - scale * s


@dataclass
class DiscrepancyReport:
    case: EmbeddingCase
    vector: MultiplicityVector
    discrepancies: dict  # j -> Fraction
    strict_transforms: dict  # i -> discrepancy of the general member of |A_i|
    boundary: dict  # extra formula values outside the verdict range
    verdict: str
    verdict_with_boundary: str
    F: DivisorClass
    weight: int  # sum (i-1) n_i
    r: int
    n: int
    e_bound: object  # int or INVALID

    @property
    def all_minus_one(self) -> bool:
        return all(v == -1 for v in self.discrepancies.values())

    def to_dict(self):
        return {
            "case": self.case.to_dict(),
            "label": self.case.label(),
            "n": self.n,
            "r": self.r,
            "vector": {str(i): v for i, v in self.vector.as_dict().items()},
            "discrepancies": {str(j): str(v) for j, v in self.discrepancies.items()},
            "strict_transforms": {str(i): str(v) for i, v in self.strict_transforms.items()},
            "boundary": {str(j): str(v) for j, v in self.boundary.items()},
            "verdict": self.verdict,
            "verdict_with_boundary": self.verdict_with_boundary,
            "F": self.F.to_dict(),
            "weight": self.weight,
            "e_bound": self.e_bound,
        }


def classify(exceptional, others) -> str:
    """Verdict from exceptional discrepancies and strict-transform coefficients."""
    values = list(exceptional) + list(others)
    if any(v < -1 for v in values):
        return NOT_LC
    if all(v > -1 for v in values):
        return KLT
    if all(v > -1 for v in exceptional):
        return PLT
    return LC


def discrepancy_vector(case: EmbeddingCase, nv, scale=1) -> DiscrepancyReport:
    """Discrepancies of the strategy nv; ``scale`` multiplies every coefficient of F."""
    if not isinstance(nv, MultiplicityVector):
        nv = MultiplicityVector(tuple(nv))
    validate_vector(case, nv)
    scale = _frac(scale)
    disc = {j: discrepancy_at(case, nv, j, scale) for j in exceptional_range(case)}
    strict = {i: -scale for i in range(2, case.max_index + 1) if nv.get(i) >= 1}
    boundary = {}
    if case.kind == "skew":
        l = case.max_index
        boundary[l] = discrepancy_at(case, nv, l, scale)
    verdict = classify(disc.values(), strict.values())
    verdict_b = classify(list(disc.values()) + list(boundary.values()), strict.values())
    top = case.max_index
    deg = sum(i * nv.get(i) for i in range(2, top + 1))
    weight = sum((i - 1) * nv.get(i) for i in range(2, top + 1))
    F = DivisorClass(scale * deg, -scale * weight)
    r = case.r
    e_bound = deg - case.n if scale == 1 and weight == r else INVALID
    return DiscrepancyReport(case, nv, disc, strict, boundary, verdict, verdict_b, F,
                             weight, r, case.n, e_bound)


def is_lc(verdict: str) -> bool:
    return verdict in (LC, PLT, KLT)


def closed_form_vector(case: EmbeddingCase) -> MultiplicityVector:
    """The explicit strategy: largest minors first, then 2 (generic), 1 (symmetric) or 4 (skew)."""
    top = case.max_index
    vals = {}
    if case.kind == "generic":
        vals = {i: 2 for i in range(2, top)}
        vals[top] = case.m - case.k + 1
    elif case.kind == "symmetric":
        vals = {i: 1 for i in range(2, top + 1)}
    else:
        vals = {i: 4 for i in range(2, top)}
        vals[top] = 1 if case.k % 2 == 0 else 3
    return MultiplicityVector.from_mapping(case, vals)


# ---------------------------------------------------------------- optimizer


class Infeasible(RuntimeError):
    pass


def _upper_limit(case: EmbeddingCase, i: int) -> int:
    cap = codim_delta(case, i)
    top = case.max_index
    if i == top:
        if case.kind == "symmetric" or (case.kind == "generic" and case.k == case.m) or \
                (case.kind == "skew" and 2 * top == case.k):
            cap = min(cap, 1)
    return cap


def optimize_multiplicities(case: EmbeddingCase):
    """Minimize e over lc strategies with sum (i-1) n_i = r.

    Depth-first over n_top, n_{top-1}, ..., n_2 with larger values first, so
    the first optimum found is the lexicographically largest one.  Since
    e = r - n + sum n_i on the feasible set, the bound ceil(R / (i-1)) on the
    remaining count prunes the search.
    """
    top = case.max_index
    r = case.r
    exc = set(exceptional_range(case))
    best = {"count": None, "vec": None}
    vals = {}

    def disc_ok(j):
        if j not in exc:
            return True
        s = sum((i - j) * vals.get(i, 0) for i in range(j + 1, top + 1))
        return _base_term(case, j) - 1 - s >= -1

    def rec(i, remaining, count):
        if i == 1:
            if remaining == 0 and (best["count"] is None or count < best["count"]):
                best["count"] = count
                best["vec"] = dict(vals)
            return
        # after fixing n_{i+1}.., the discrepancy at E_i is determined
        if not disc_ok(i):
            return
        if remaining and i >= 2:
            need = -(-remaining // (i - 1))
            if best["count"] is not None and count + need >= best["count"]:
                return
        hi = min(_upper_limit(case, i), remaining // (i - 1))
        for v in range(hi, -1, -1):
            vals[i] = v
            rec(i - 1, remaining - (i - 1) * v, count + v)
        vals.pop(i, None)

    rec(top, r, 0)
    if best["vec"] is None:
        raise Infeasible(f"no lc strategy found for {case.label()}")
    nv = MultiplicityVector.from_mapping(case, best["vec"])
    report = discrepancy_vector(case, nv)
    if not is_lc(report.verdict) or report.e_bound == INVALID:
        raise Infeasible("optimizer returned an inadmissible vector")
    return nv, report


# ----------------------------------------------------------------- bounds


def theorem1_bound(degrees, n: int, r: int) -> int:
    """d_1 + ... + d_r - n for defining degrees sorted in decreasing order."""
    if r < 1:
        raise ValueError("codimension must be positive")
    degs = sorted(degrees, reverse=True)
    if len(degs) < r:
        raise ValueError(f"need at least r = {r} defining degrees, got {len(degs)}")
    return sum(degs[:r]) - n


def prop21_compose(F: DivisorClass, n: int, r: int, verdict: str):
    """Bound e from F = (e+n) H - r E with (X, F) lc near E."""
    if isinstance(F.e, tuple):
        raise ValueError("composition needs a single exceptional coefficient")
    if F.e != -r:
        raise ValueError(f"E-coefficient {F.e} differs from -r = {-r}")
    if not is_lc(verdict):
        raise ValueError(f"pair is {verdict}, not log canonical")
    e = F.h - n
    return int(e) if e.denominator == 1 else e


def lc_multiplicity_criterion(multiplicities, codims) -> str:
    """lc if every m_j <= codim Z_j, plt if every inequality is strict."""
    ms, cs = list(multiplicities), list(codims)
    if len(ms) != len(cs):
        raise ValueError("multiplicities and codimensions differ in length")
    if all(m < c for m, c in zip(ms, cs)):
        return PLT
    if all(m <= c for m, c in zip(ms, cs)):
        return LC
    return NOT_LC
