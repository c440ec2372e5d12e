"""Embedded varieties and degeneracy loci used as test cases.

Determinantal cases live in the projective space of k x m matrices
(generic), symmetric k x k matrices, or skew k x k matrices.  Coordinates
are the independent matrix entries in row-major order (upper triangle for the
symmetric and skew cases).  The variety itself is the rank-one locus (rank
two for skew); Delta_i is cut out by the size-i minors, or the 2i x 2i
principal sub-Pfaffians in the skew case.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from itertools import combinations

from .algebra.field import Field
from .algebra.hilbert import hilbert_polynomial_value, projective_codimension
from .algebra.linalg import rank as field_rank
from .algebra.matrices import determinant, pfaffian, submatrix
from .algebra.poly import GradedIdeal, Polynomial
from .algebra.resolution import _binom, resolve_ideal

KINDS = ("generic", "symmetric", "skew")


@dataclass(frozen=True)
class EmbeddingCase:
    kind: str
    k: int
    m: int | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown case kind {self.kind!r}")
        if self.kind == "generic":
            if self.m is None or not 2 <= self.k <= self.m:
                raise ValueError("generic case needs 2 <= k <= m")
        else:
            if self.m is not None:
                raise ValueError(f"{self.kind} case takes a single size")
            if self.k < 2:
                raise ValueError(f"{self.kind} case needs k >= 2")
            if self.kind == "skew" and self.k < 4:
                # rank-two skew matrices of size < 4 fill the whole space
                raise ValueError("skew case needs k >= 4")

    @classmethod
    def generic(cls, k, m):
        return cls("generic", k, m)

    @classmethod
    def symmetric(cls, k):
        return cls("symmetric", k)

    @classmethod
    def skew(cls, k):
        return cls("skew", k)

    @property
    def nvars(self) -> int:
        k = self.k
        if self.kind == "generic":
            return k * self.m
        if self.kind == "symmetric":
            return k * (k + 1) // 2
        return k * (k - 1) // 2

    @property
    def n(self) -> int:
        return self.nvars - 1

    @property
    def max_index(self) -> int:
        """Largest i for which Delta_i is defined."""
        return self.k // 2 if self.kind == "skew" else self.k

    @property
    def r(self) -> int:
        return codim_delta(self, 2)

    @property
    def d_Y(self) -> int:
        return 2

    def label(self) -> str:
        if self.kind == "generic":
            return f"segre:{self.k}x{self.m}"
        if self.kind == "symmetric":
            return f"veronese:{self.k}"
        return f"pluecker:{self.k}"

    def to_dict(self) -> dict:
        d = {"kind": self.kind, "k": self.k}
        if self.m is not None:
            d["m"] = self.m
        return d


@dataclass
class VarietySpec:
    label: str
    n: int
    ideal: GradedIdeal
    r: int
    d_Y: int
    case: EmbeddingCase | None = None
    genus: int | None = None
    degree: int | None = None

    def summary(self) -> dict:
        return {"label": self.label, "n": self.n, "r": self.r, "d_Y": self.d_Y,
                "generators": len(self.ideal)}


# ------------------------------------------------------------ matrices


def variable_index(case: EmbeddingCase):
    """Map matrix positions (i, j) to coordinate indices (None on a skew diagonal)."""
    k = case.k
    idx = {}
    if case.kind == "generic":
        for i in range(k):
            for j in range(case.m):
                idx[(i, j)] = i * case.m + j
        return idx
    c = 0
    for i in range(k):
        for j in range(i if case.kind == "symmetric" else i + 1, k):
            idx[(i, j)] = c
            c += 1
    return idx


def generic_matrix(case: EmbeddingCase, field: Field | None = None):
    """The matrix of coordinate functions for the case."""
    field = field if field is not None else Field()
    nv = case.nvars
    x = Polynomial.gens(nv, field)
    zero = Polynomial.zero(nv, field)
    idx = variable_index(case)
    rows = case.k
    cols = case.m if case.kind == "generic" else case.k
    mat = [[zero] * cols for _ in range(rows)]
    for (i, j), v in idx.items():
        mat[i][j] = x[v]
        if case.kind == "symmetric":
            mat[j][i] = x[v]
        elif case.kind == "skew":
            mat[j][i] = -x[v]
    return mat


def point_matrix(case: EmbeddingCase, point):
    """Matrix with the given coordinate vector plugged in."""
    idx = variable_index(case)
    rows = case.k
    cols = case.m if case.kind == "generic" else case.k
    mat = [[0] * cols for _ in range(rows)]
    for (i, j), v in idx.items():
        mat[i][j] = point[v]
        if case.kind == "symmetric":
            mat[j][i] = point[v]
        elif case.kind == "skew":
            mat[j][i] = -point[v]
    return mat


def matrix_to_point(case: EmbeddingCase, mat):
    idx = variable_index(case)
    point = [0] * case.nvars
    for (i, j), v in idx.items():
        point[v] = mat[i][j]
    return point


def minors(mat, size: int):
    rows = range(len(mat))
    cols = range(len(mat[0]))
    out = []
    for R in combinations(rows, size):
        for C in combinations(cols, size):
            sub = submatrix(mat, R, C)
            z = sub[0][0] * 0
            out.append(determinant(sub, z, z + 1))
    return out


def sub_pfaffians(mat, size: int):
    out = []
    for R in combinations(range(len(mat)), size):
        sub = submatrix(mat, R, R)
        z = sub[0][0] * 0
        out.append(pfaffian(sub, z, z + 1))
    return out


# --------------------------------------------------------- constructors


def codim_delta(case: EmbeddingCase, i: int) -> int:
    _check_index(case, i)
    k = case.k
    if case.kind == "generic":
        return (k - i + 1) * (case.m - i + 1)
    if case.kind == "symmetric":
        return _binom(k - i + 2, 2)
    return _binom(k - 2 * i + 2, 2)


def _check_index(case, i):
    if not 2 <= i <= case.max_index:
        raise ValueError(f"index {i} outside 2..{case.max_index} for {case.label()}")


def build_degeneracy_locus(case: EmbeddingCase, i: int, field: Field | None = None) -> GradedIdeal:
    _check_index(case, i)
    field = field if field is not None else Field()
    mat = generic_matrix(case, field)
    gens = sub_pfaffians(mat, 2 * i) if case.kind == "skew" else minors(mat, i)
    return GradedIdeal(case.nvars, gens, field)


def build_determinantal(case: EmbeddingCase, field: Field | None = None) -> VarietySpec:
    ideal = build_degeneracy_locus(case, 2, field)
    return VarietySpec(case.label(), case.n, ideal, case.r, case.d_Y, case=case)


def catalecticant(m: int, field: Field | None = None):
    """The 2 x m Hankel matrix in m+1 variables."""
    x = Polynomial.gens(m + 1, field)
    return [[x[j] for j in range(m)], [x[j + 1] for j in range(m)]]


def rational_normal_curve(m: int, field: Field | None = None) -> VarietySpec:
    if m < 2:
        raise ValueError("rational normal curve needs degree m >= 2")
    field = field if field is not None else Field()
    ideal = GradedIdeal(m + 1, minors(catalecticant(m, field), 2), field)
    return VarietySpec(f"rnc:{m}", m, ideal, m - 1, 2, genus=0, degree=m)


class CertificationError(RuntimeError):
    pass


def singular_locus_is_empty(I: GradedIdeal, codim: int) -> bool:
    """True iff I + (codim x codim minors of the Jacobian) defines the empty projective set."""
    nv = I.nvars
    jac = [[_diff(f, v) for v in range(nv)] for f in I.generators]
    gens = list(I.generators) + [m for m in minors(jac, codim) if not m.is_zero()]
    res = resolve_ideal(GradedIdeal(nv, gens, I.field))
    return projective_codimension(res) == nv


def _diff(f: Polynomial, v: int) -> Polynomial:
    terms = {}
    for e, c in f.terms.items():
        if e[v]:
            e2 = list(e)
            e2[v] -= 1
            terms[tuple(e2)] = c * e[v]
    return Polynomial(f.nvars, terms, f.field)


def elliptic_quartic(seed: int = 0, field: Field | None = None, retries: int = 20) -> VarietySpec:
    """Base locus of a seeded diagonal pencil of quadrics in P^3.

    The pencil sum a_i x_i^2, sum b_i x_i^2 is a smooth complete intersection
    exactly when the points (a_i : b_i) are pairwise distinct.
    """
    field = field if field is not None else Field()
    if field.p is not None and field.p < 11:
        raise ValueError("field too small for a general diagonal pencil")
    rng = random.Random(seed)
    x = Polynomial.gens(4, field)
    for _ in range(retries):
        a = [field.random(rng, nonzero=True) for _ in range(4)]
        b = [field.random(rng, nonzero=True) for _ in range(4)]
        ratios = {field.div(bi, ai) for ai, bi in zip(a, b)}
        if len(ratios) < 4:
            continue
        q1 = sum((x[i] ** 2 * a[i] for i in range(4)), Polynomial.zero(4, field))
        q2 = sum((x[i] ** 2 * b[i] for i in range(4)), Polynomial.zero(4, field))
        ideal = GradedIdeal(4, [q1, q2], field)
        return VarietySpec("elliptic:4", 3, ideal, 2, 2, genus=1, degree=4)
    raise CertificationError("no smooth diagonal pencil found")


def elliptic_quintic(seed: int = 0, field: Field | None = None, retries: int = 10) -> VarietySpec:
    """4x4 Pfaffians of a seeded 5x5 skew matrix of linear forms on P^4.

    Accepted only when the Hilbert polynomial is 5p (degree 5, arithmetic
    genus 1) and the Jacobian criterion shows the curve is smooth.
    """
    field = field if field is not None else Field()
    rng = random.Random(seed)
    x = Polynomial.gens(5, field)
    zero = Polynomial.zero(5, field)
    for _ in range(retries):
        mat = [[zero] * 5 for _ in range(5)]
        for i in range(5):
            for j in range(i + 1, 5):
                f = sum((x[v] * field.random(rng) for v in range(5)), zero)
                mat[i][j] = f
                mat[j][i] = -f
        ideal = GradedIdeal(5, sub_pfaffians(mat, 4), field)
        if len(ideal) != 5:
            continue
        res = resolve_ideal(ideal)
        if any(hilbert_polynomial_value(res, p) != 5 * p for p in range(3)):
            continue
        if not singular_locus_is_empty(ideal, 3):
            continue
        return VarietySpec("elliptic:5", 4, ideal, 3, 2, genus=1, degree=5)
    raise CertificationError("no smooth elliptic quintic found")


def build_curve(genus: int, target, seed: int = 0, field: Field | None = None) -> VarietySpec:
    """genus 0: target = m (rational normal curve in P^m); genus 1: target = 4 or 5."""
    if genus == 0:
        return rational_normal_curve(int(target), field)
    if genus == 1:
        if target in (4, "4", "quartic"):
            return elliptic_quartic(seed, field)
        if target in (5, "5", "quintic"):
            return elliptic_quintic(seed, field)
        raise ValueError(f"unknown genus-1 target {target!r}")
    raise ValueError("only genus 0 and 1 curves are built")


# ------------------------------------------------------------- labels

_LABEL = re.compile(r"(segre):(\d+)x(\d+)|(veronese|pluecker|rnc|elliptic):(\d+)")

DEFAULT_LABELS = ["segre:2x2", "segre:2x3", "segre:3x3", "segre:3x4", "veronese:2",
                  "veronese:3", "veronese:4", "pluecker:4", "pluecker:5", "pluecker:6",
                  "rnc:2", "rnc:3", "rnc:4", "elliptic:4", "elliptic:5"]


def parse_label(label: str):
    """Return ("case", EmbeddingCase) or ("curve", (genus, target))."""
    m = _LABEL.fullmatch(label.strip())
    if not m:
        raise KeyError(f"unknown catalog label {label!r}")
    if m.group(1):
        k, mm = int(m.group(2)), int(m.group(3))
        return "case", EmbeddingCase.generic(min(k, mm), max(k, mm))
    kind, size = m.group(4), int(m.group(5))
    if kind == "veronese":
        return "case", EmbeddingCase.symmetric(size)
    if kind == "pluecker":
        return "case", EmbeddingCase.skew(size)
    if kind == "rnc":
        return "curve", (0, size)
    return "curve", (1, size)


def label_info(label: str) -> dict:
    """n, r, d_Y for a label without building its ideal."""
    kind, obj = parse_label(label)
    if kind == "case":
        return {"label": label, "n": obj.n, "r": obj.r, "d_Y": obj.d_Y, "case": obj.to_dict()}
    genus, t = obj
    if genus == 0:
        if t < 2:
            raise ValueError("rational normal curve needs degree m >= 2")
        return {"label": label, "n": t, "r": t - 1, "d_Y": 2, "genus": 0, "degree": t}
    if t not in (4, 5):
        raise ValueError("elliptic curves are built in degree 4 or 5")
    return {"label": label, "n": t - 1, "r": t - 2, "d_Y": 2, "genus": 1, "degree": t}


def build(label: str, seed: int = 0, field: Field | None = None) -> VarietySpec:
    kind, obj = parse_label(label)
    if kind == "case":
        return build_determinantal(obj, field)
    return build_curve(obj[0], obj[1], seed, field)


# ------------------------------------------------------ points and multiplicity


def multiplicity_at_point(f: Polynomial, point) -> int:
    """Order of vanishing of f at the point: lowest degree surviving the shift to the origin."""
    if len(point) != f.nvars:
        raise ValueError("point dimension does not match variable count")
    if f.is_zero():
        raise ValueError("multiplicity of the zero polynomial is undefined")
    return f.order_at(point)


def _normalize_chart(point, field):
    for c in point:
        if c:
            inv = field.inv(c)
            return [field.norm(v * inv) for v in point]
    raise ValueError("zero vector is not a projective point")


def sample_rank_point(case: EmbeddingCase, rank: int, seed: int, field: Field | None = None,
                      retries: int = 50):
    """Seeded matrix point of exactly the requested rank, scaled into a standard chart."""
    field = field if field is not None else Field()
    rows = case.k
    cols = case.m if case.kind == "generic" else case.k
    if case.kind == "skew" and rank % 2:
        raise ValueError("skew matrices have even rank")
    if not 1 <= rank <= min(rows, cols):
        raise ValueError(f"rank {rank} not achievable for {case.label()}")
    rng = random.Random(seed)
    for _ in range(retries):
        mat = [[0] * cols for _ in range(rows)]
        if case.kind == "generic":
            A = [[field.random(rng) for _ in range(rank)] for _ in range(rows)]
            B = [[field.random(rng) for _ in range(cols)] for _ in range(rank)]
            for i in range(rows):
                for j in range(cols):
                    mat[i][j] = field.norm(sum(A[i][s] * B[s][j] for s in range(rank)))
        elif case.kind == "symmetric":
            for _s in range(rank):
                v = [field.random(rng) for _ in range(rows)]
                c = field.random(rng, nonzero=True)
                for i in range(rows):
                    for j in range(rows):
                        mat[i][j] = field.norm(mat[i][j] + c * v[i] * v[j])
        else:
            for _s in range(rank // 2):
                u = [field.random(rng) for _ in range(rows)]
                v = [field.random(rng) for _ in range(rows)]
                for i in range(rows):
                    for j in range(rows):
                        mat[i][j] = field.norm(mat[i][j] + u[i] * v[j] - u[j] * v[i])
        if field_rank(mat, field) != rank:
            continue
        return _normalize_chart(matrix_to_point(case, mat), field)
    raise CertificationError(f"could not sample a rank-{rank} point")


def degeneracy_generators_at(case: EmbeddingCase, i: int, point, field: Field | None = None):
    """Values of the generators of Delta_i at a point, computed numerically."""
    field = field if field is not None else Field()
    mat = point_matrix(case, point)
    if case.kind == "skew":
        vals = [pfaffian(submatrix(mat, R, R)) for R in combinations(range(case.k), 2 * i)]
    else:
        vals = [determinant(submatrix(mat, R, C))
                for R in combinations(range(len(mat)), i)
                for C in combinations(range(len(mat[0])), i)]
    return [field.norm(v) for v in vals]


__all__ = [
    "EmbeddingCase", "VarietySpec", "build", "build_curve", "build_degeneracy_locus",
    "build_determinantal", "codim_delta", "label_info", "multiplicity_at_point",
    "parse_label", "sample_rank_point",
]
