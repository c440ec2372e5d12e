"""Complete skew forms: limits of one-parameter families of skew 2-forms.

A family is alpha(t) = sum_s t^s A_s with skew N x N matrices A_s over a
prime field, truncated at t^T.  Two routes describe its limit:

* wedge limits: the leading t-coefficient of each divided power
  alpha^(r) = sum_I Pf(alpha_I) x_I, for r = 1 .. l;
* normal data: a flag V > W_1 > ... > W_m with a form on each piece, found
  by repeatedly taking the residue, passing to its kernel via a Schur
  complement, and dividing out the next power of t.

The divided power replaces alpha^r / r!, which keeps small characteristics
usable.  Everything "modulo scalars" is normalized so that the first nonzero
coordinate equals 1.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .algebra.field import Field
from .algebra.linalg import inverse, nullspace, rank, rref
from .algebra.matrices import determinant, pfaffian


class TruncationError(ArithmeticError):
    """The working precision in t is too small to see the requested term."""


# ------------------------------------------------------------- series


class Series:
    """Truncated power series in t over GF(p): coefficients c[0..T-1]."""

    __slots__ = ("c", "p")

    def __init__(self, coeffs, p):
        self.c = np.asarray(coeffs, dtype=np.int64) % p
        self.p = p

    @property
    def precision(self):
        return len(self.c)

    def valuation(self) -> int:
        nz = np.flatnonzero(self.c)
        return int(nz[0]) if len(nz) else self.precision

    def __bool__(self):
        return bool(self.c.any())

    def __add__(self, other):
        return Series(self.c + other.c, self.p)

    def __sub__(self, other):
        return Series(self.c - other.c, self.p)

    def __neg__(self):
        return Series(-self.c, self.p)

    def __mul__(self, other):
        if not isinstance(other, Series):
            return Series(self.c * (other % self.p), self.p)
        T = self.precision
        return Series(np.convolve(self.c, other.c)[:T] % self.p, self.p)

    __rmul__ = __mul__


def _series_matrix(coeffs, p):
    """(T, n, n) array -> nested lists of Series."""
    T, n, m = coeffs.shape
    return [[Series(coeffs[:, i, j], p) for j in range(m)] for i in range(n)]


def smul(a, b, p):
    """Product of series matrices of shapes (T, n, k) and (T, k, m)."""
    T = a.shape[0]
    out = np.zeros((T, a.shape[1], b.shape[2]), dtype=np.int64)
    for s in range(T):
        acc = np.zeros((a.shape[1], b.shape[2]), dtype=np.int64)
        for u in range(s + 1):
            acc = (acc + a[u] @ b[s - u]) % p
        out[s] = acc
    return out


def sinv(a, field: Field):
    """Inverse of a series matrix whose constant term is invertible."""
    p = field.p
    T, n, _ = a.shape
    a0inv = np.array(inverse(a[0].tolist(), field), dtype=np.int64)
    # a = a0 (I + N) with N = a0^{-1} (a - a0), so a^{-1} = sum_k (-N)^k a0^{-1}
    tail = a.copy()
    tail[0] = 0
    nmat = (a0inv @ tail) % p
    term = np.zeros_like(a)
    term[0] = a0inv
    total = term.copy()
    for _ in range(1, T):
        term = (-smul(nmat, term, p)) % p
        if not term.any():
            break
        total = (total + term) % p
    return total


def _delta(T):
    d = np.zeros(T, dtype=np.int64)
    d[0] = 1
    return d


def transpose_series(a):
    return a.transpose(0, 2, 1)


def valuation(a) -> int:
    for s in range(a.shape[0]):
        if a[s].any():
            return s
    return a.shape[0]


# ------------------------------------------------------- exterior algebra


def _merge_sign(I, J) -> int:
    """Sign of the shuffle sorting I followed by J (disjoint sorted tuples)."""
    inv = 0
    for a in I:
        for b in J:
            if a > b:
                inv += 1
    return -1 if inv % 2 else 1


def wedge(a: dict, b: dict, p: int) -> dict:
    """Product in the exterior algebra; elements map sorted index tuples to scalars."""
    out = {}
    for I, x in a.items():
        sI = set(I)
        for J, y in b.items():
            if sI.intersection(J):
                continue
            K = tuple(sorted(I + J))
            out[K] = (out.get(K, 0) + _merge_sign(I, J) * x * y) % p
    return {K: v for K, v in out.items() if v}


def two_form(mat, p: int) -> dict:
    n = len(mat)
    return {(i, j): int(mat[i][j]) % p for i in range(n) for j in range(i + 1, n)
            if int(mat[i][j]) % p}


def divided_power(mat, c: int, p: int) -> dict:
    """alpha^(c) = sum over 2c-subsets I of Pf(alpha_I) x_I (alpha^c / c! in characteristic 0)."""
    n = len(mat)
    if c == 0:
        return {(): 1}
    out = {}
    for I in combinations(range(n), 2 * c):
        v = int(pfaffian([[int(mat[i][j]) for j in I] for i in I])) % p
        if v:
            out[I] = v
    return out


def normalize_vector(vec: dict, p: int):
    """Scale so the first nonzero coordinate (sorted keys) is 1; returns a sorted tuple."""
    if not vec:
        raise ValueError("zero vector has no normalization")
    keys = sorted(vec)
    inv = pow(vec[keys[0]], p - 2, p)
    return tuple((tuple(int(i) for i in K), int(vec[K]) * inv % p) for K in keys if vec[K] % p)


def normalize_form(mat, p: int):
    """Skew matrix scaled so the first nonzero upper entry (row-major) is 1."""
    m = np.asarray(mat, dtype=np.int64) % p
    n = m.shape[0]
    for i in range(n):
        for j in range(i + 1, n):
            if m[i, j]:
                scaled = (m * pow(int(m[i, j]), p - 2, p)) % p
                return tuple(tuple(int(x) for x in row) for row in scaled)
    raise ValueError("zero form has no normalization")


# ------------------------------------------------------------- families


@dataclass
class SkewFamily:
    """alpha(t) = sum_s t^s coeffs[s]; coeffs has shape (T, N, N)."""

    coeffs: np.ndarray
    field: Field

    def __post_init__(self):
        if self.field.p is None:
            raise ValueError("skew families are handled over prime fields")
        p = self.field.p
        self.coeffs = np.asarray(self.coeffs, dtype=np.int64) % p
        if self.coeffs.ndim != 3 or self.coeffs.shape[1] != self.coeffs.shape[2]:
            raise ValueError("coefficients must have shape (T, N, N)")
        for A in self.coeffs:
            if ((A + A.T) % p).any() or np.diag(A).any():
                raise ValueError("family is not skew-symmetric")
        if not self.coeffs[0].any():
            raise ValueError("special fiber is zero")

    @property
    def dim(self) -> int:
        return self.coeffs.shape[1]

    @property
    def truncation(self) -> int:
        return self.coeffs.shape[0]

    @classmethod
    def from_terms(cls, dim: int, terms: dict, field: Field, truncation: int | None = None):
        """terms: {(i, j): [c_0, c_1, ...]} for i < j (entries in t)."""
        T = truncation if truncation is not None else 2 * dim
        coeffs = np.zeros((T, dim, dim), dtype=np.int64)
        for (i, j), cs in terms.items():
            if i == j:
                raise ValueError("diagonal entries of a skew form vanish")
            if len(cs) > T:
                if any(c % field.p for c in cs[T:]):
                    raise TruncationError("entry has terms beyond the truncation order")
                cs = cs[:T]
            for s, c in enumerate(cs):
                coeffs[s, i, j] += c
                coeffs[s, j, i] -= c
        return cls(coeffs, field)

    @classmethod
    def from_matrices(cls, mats, field: Field, truncation: int | None = None):
        mats = [np.asarray(m, dtype=np.int64) for m in mats]
        n = mats[0].shape[0]
        T = truncation if truncation is not None else max(2 * n, len(mats))
        if len(mats) > T:
            raise TruncationError("more coefficients than the truncation order")
        coeffs = np.zeros((T, n, n), dtype=np.int64)
        for s, m in enumerate(mats):
            coeffs[s] = m
        return cls(coeffs, field)

    def to_dict(self) -> dict:
        entries = []
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                cs = [int(c) for c in self.coeffs[:, i, j]]
                while cs and cs[-1] == 0:
                    cs.pop()
                if cs:
                    entries.append([i, j, cs])
        return {"dim": self.dim, "field": self.field.p, "truncation": self.truncation,
                "entries": entries}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict):
        field = Field(int(d["field"]))
        terms = {(int(i), int(j)): list(cs) for i, j, cs in d["entries"]}
        return cls.from_terms(int(d["dim"]), terms, field, d.get("truncation"))

    @classmethod
    def from_json(cls, text: str):
        return cls.from_dict(json.loads(text))

    def series_pfaffian(self, I) -> Series:
        p = self.field.p
        sub = self.coeffs[:, list(I)][:, :, list(I)]
        mat = _series_matrix(sub, p)
        zero = Series(np.zeros(self.truncation), p)
        one = Series(_delta(self.truncation), p)
        return pfaffian(mat, zero, one)

    def half_rank(self) -> int:
        """l = half the generic rank, as seen at the working precision."""
        l = 0
        for r in range(1, self.dim // 2 + 1):
            if any(self.series_pfaffian(I) for I in combinations(range(self.dim), 2 * r)):
                l = r
            else:
                break
        return l


@dataclass(frozen=True)
class WedgeLimit:
    r: int
    d: int
    limit: tuple  # normalized ((I, coeff), ...)

    def to_dict(self):
        return {"r": self.r, "d_r": self.d,
                "limit": [[list(I), c] for I, c in self.limit]}


def wedge_power_limit(fam: SkewFamily, r: int) -> WedgeLimit:
    """Valuation and leading coefficient of the r-th divided power of the family."""
    if r < 1 or 2 * r > fam.dim:
        raise ValueError(f"r must lie in 1..{fam.dim // 2}")
    p = fam.field.p
    coeffs = {I: fam.series_pfaffian(I) for I in combinations(range(fam.dim), 2 * r)}
    d = min(f.valuation() for f in coeffs.values())
    if d >= fam.truncation:
        raise TruncationError(f"all degree-{2 * r} coefficients vanish to order {fam.truncation}")
    lead = {I: int(f.c[d]) for I, f in coeffs.items() if f.c[d]}
    return WedgeLimit(r, d, normalize_vector(lead, p))


# ---------------------------------------------------------- normal data


def canonical_basis(cols, field: Field):
    """Reduced column-echelon basis (N x w) of the span of the given columns."""
    rows, piv = rref([list(c) for c in np.asarray(cols).T.tolist()], field)
    basis = np.array(rows[:len(piv)], dtype=np.int64).T if piv else np.zeros((len(cols), 0), np.int64)
    return basis % field.p, piv


def _column_change(Bn, field: Field):
    """Canonical basis Bc of span(Bn) and G with Bn @ G = Bc."""
    p = field.p
    Bc, piv = canonical_basis(Bn, field)
    sub = Bn[piv, :]
    G = np.array(inverse(sub.tolist(), field), dtype=np.int64)
    assert not ((Bn @ G - Bc) % p).any()
    return Bc, G


def _complement_indices(K, w, field: Field):
    """Standard basis indices completing the columns of K to a basis of F^w."""
    chosen = []
    current = [list(c) for c in np.asarray(K).T.tolist()]
    base = rank(current, field) if current else 0
    for i in range(w):
        e = [0] * w
        e[i] = 1
        if rank(current + [e], field) > base:
            current.append(e)
            base += 1
            chosen.append(i)
    return chosen


@dataclass(frozen=True)
class SkewNormalData:
    """Flag V > W_1 > ... > W_m (canonical bases) and forms alpha_0 .. alpha_m.

    alpha_i is a skew form on W_i written in the basis of W_i, modulo scalars;
    ranks[i] is its rank.  Ranks sum to twice l.
    """

    dim: int
    p: int
    flag: tuple  # tuple of N x w_i bases, as nested tuples
    forms: tuple  # normalized skew matrices, as nested tuples
    ranks: tuple

    @property
    def l(self) -> int:
        return sum(self.ranks) // 2

    @property
    def field(self) -> Field:
        return Field(self.p)

    def basis(self, i: int) -> np.ndarray:
        if i == 0:
            return np.eye(self.dim, dtype=np.int64)
        return np.array(self.flag[i - 1], dtype=np.int64).reshape(self.dim, -1)

    def form(self, i: int) -> np.ndarray:
        return np.array(self.forms[i], dtype=np.int64)

    def to_dict(self) -> dict:
        return {"dim": self.dim, "field": self.p,
                "flag": [[list(r) for r in b] for b in self.flag],
                "forms": [[list(r) for r in f] for f in self.forms],
                "ranks": list(self.ranks)}

    @classmethod
    def from_dict(cls, d):
        return make_normal_data(int(d["dim"]), Field(int(d["field"])),
                                [np.array(b, dtype=np.int64).reshape(int(d["dim"]), -1)
                                 for b in d["flag"]],
                                [np.array(f, dtype=np.int64) for f in d["forms"]])


def make_normal_data(dim: int, field: Field, flag, forms) -> SkewNormalData:
    """Validate and canonicalize a flag with forms (bases may be arbitrary)."""
    p = field.p
    given = [np.eye(dim, dtype=np.int64)] + [np.asarray(b, dtype=np.int64) % p for b in flag]
    if len(forms) != len(given):
        raise ValueError("need one form per flag member (including V)")
    ranks = []
    canon_flag = []
    canon_forms = []
    for i, (B, f) in enumerate(zip(given, forms)):
        f = np.asarray(f, dtype=np.int64) % p
        w = B.shape[1]
        if rank(B.T.tolist(), field) != w:
            raise ValueError(f"basis of W_{i} is not independent")
        if f.shape != (w, w) or ((f + f.T) % p).any() or np.diag(f).any():
            raise ValueError(f"form {i} is not a skew form on W_{i}")
        rk = rank(f.tolist(), field)
        if rk == 0:
            raise ValueError(f"form {i} is zero")
        ranks.append(rk)
        if i + 1 < len(given):
            nxt = given[i + 1]
            if nxt.shape[1] != w - rk:
                raise ValueError(f"W_{i + 1} has the wrong dimension")
            if ((f @ _coordinates(B, nxt, field)) % p).any():
                raise ValueError(f"W_{i + 1} is not the kernel of form {i}")
        elif w - rk > 1:
            raise ValueError("forms stop before reaching half the dimension")
        if i == 0:
            canon_forms.append(normalize_form(f, p))
            continue
        Bc, G = _column_change(B, field)
        canon_flag.append(Bc)
        canon_forms.append(normalize_form((G.T @ f @ G) % p, p))
    return SkewNormalData(dim, p, tuple(tuple(tuple(int(x) for x in row) for row in b)
                                          for b in canon_flag),
                          tuple(canon_forms), tuple(ranks))


def _coordinates(B, X, field: Field):
    """Coordinates G of the columns of X in the basis B (B @ G = X)."""
    p = field.p
    rows_sel = _independent_rows(B, field)
    Binv = np.array(inverse(B[rows_sel, :].tolist(), field), dtype=np.int64)
    G = (Binv @ X[rows_sel, :]) % p
    if ((B @ G - X) % p).any():
        raise ValueError("subspace is not contained in the ambient basis span")
    return G


def _independent_rows(B, field: Field):
    chosen = []
    for i in range(B.shape[0]):
        trial = chosen + [i]
        if rank(B[trial, :].tolist(), field) == len(trial):
            chosen = trial
        if len(chosen) == B.shape[1]:
            break
    return chosen


def extract_normal_data(fam: SkewFamily) -> SkewNormalData:
    """Residue, kernel, Schur complement, divide by t; repeat until rank 2l is exhausted."""
    field = fam.field
    p = field.p
    l = fam.half_rank()
    if l == 0:
        raise TruncationError("family vanishes to working precision")
    B = np.eye(fam.dim, dtype=np.int64)
    S = fam.coeffs.copy()
    flag, forms, ranks = [], [], []
    total = 0
    while True:
        v = valuation(S)
        if v >= S.shape[0]:
            raise TruncationError("restricted family vanishes to working precision")
        S = S[v:]
        S0 = S[0]
        rk = rank(S0.tolist(), field)
        forms.append(S0 % p)
        ranks.append(rk)
        total += rk // 2
        if total == l:
            break
        if total > l:
            raise ValueError("residue ranks exceed the generic rank")
        w = S0.shape[0]
        K = np.array(nullspace(S0.tolist(), w, field), dtype=np.int64).T  # w x (w - rk)
        comp = _complement_indices(K, w, field)
        P = np.zeros((w, w), dtype=np.int64)
        for c, i in enumerate(comp):
            P[i, c] = 1
        P[:, rk:] = K
        Sp = (P.T @ S @ P) % p
        A = Sp[:, :rk, :rk]
        C = Sp[:, :rk, rk:]
        D = Sp[:, rk:, rk:]
        Snext = (D + smul(smul(transpose_series(C), sinv(A, field), p), C, p)) % p
        Bc, G = _column_change((B @ K) % p, field)
        S = (G.T @ Snext @ G) % p
        B = Bc
        flag.append(Bc)
    return make_normal_data(fam.dim, field, flag, forms)


# --------------------------------------------------------------- omega


def _left_inverse(B, field: Field):
    """A w x N matrix P with P @ B = I (canonical: supported on independent rows)."""
    rows_sel = _independent_rows(B, field)
    Binv = np.array(inverse(B[rows_sel, :].tolist(), field), dtype=np.int64)
    P = np.zeros((B.shape[1], B.shape[0]), dtype=np.int64)
    P[:, rows_sel] = Binv
    return P % field.p


def canonical_lift(data: SkewNormalData, i: int):
    p = data.p
    P = _left_inverse(data.basis(i), data.field)
    return (P.T @ data.form(i) @ P) % p


def random_lift(data: SkewNormalData, i: int, rng: random.Random):
    """Lift plus a random skew form vanishing on W_i x W_i."""
    p = data.p
    B = data.basis(i)
    L = canonical_lift(data, i)
    n = data.dim
    X0 = np.zeros((n, n), dtype=np.int64)
    for a in range(n):
        for b in range(a + 1, n):
            v = rng.randrange(p)
            X0[a, b], X0[b, a] = v, -v
    P = _left_inverse(B, data.field)
    X = (X0 - P.T @ (B.T @ X0 @ B) @ P) % p
    assert not ((B.T @ X @ B) % p).any()
    return (L + X) % p


def omega_counts(data: SkewNormalData, r: int):
    """Copies of each form in the greedy product with r factors."""
    if not 1 <= r <= data.l:
        raise ValueError(f"r must lie in 1..{data.l}")
    counts = []
    left = r
    for rk in data.ranks:
        c = min(rk // 2, left)
        counts.append(c)
        left -= c
    return counts


def build_omega(data: SkewNormalData, r: int, lifts=None, seed: int | None = None):
    """Normalized wedge of divided powers of the (lifted) forms with r factors in total."""
    p = data.p
    counts = omega_counts(data, r)
    rng = random.Random(seed) if seed is not None else None
    out = {(): 1}
    for i, c in enumerate(counts):
        if c == 0:
            continue
        if lifts is not None:
            L = np.asarray(lifts[i], dtype=np.int64)
        elif i == 0:
            L = data.form(0)
        elif rng is not None:
            L = random_lift(data, i, rng)
        else:
            L = canonical_lift(data, i)
        out = wedge(out, divided_power(L, c, p), p)
    if not out:
        raise ArithmeticError(f"omega_{r} vanishes")
    return normalize_vector(out, p)


def omega_tuple(data: SkewNormalData):
    return tuple(build_omega(data, r) for r in range(1, data.l + 1))


# ------------------------------------------------------------ smoothing


def _random_invertible(n, rng, p):
    while True:
        M = [[rng.randrange(p) for _ in range(n)] for _ in range(n)]
        if rank(M, Field(p)) == n:
            return np.array(M, dtype=np.int64)


def smoothing(data: SkewNormalData, seed: int = 0, truncation: int | None = None) -> SkewFamily:
    """alpha = sum_i t^i s_i lift(alpha_i) with lifts adapted to a random splitting of the flag.

    Each lift vanishes on a chosen complement of W_i, so the family is block
    diagonal in an adapted basis and its normal data are exactly the input.
    """
    p = data.p
    field = data.field
    rng = random.Random(seed)
    n = data.dim
    m = len(data.forms)
    # adapted basis: random complements T_i of W_{i+1} inside W_i, then the last kernel
    cols = []
    for i in range(m):
        B = data.basis(i)
        if i + 1 < m:
            inner = data.basis(i + 1)
        else:
            Kc = nullspace(data.form(i).tolist(), B.shape[1], field)
            inner = (B @ np.array(Kc, dtype=np.int64).T) % p if Kc else np.zeros((n, 0), np.int64)
        # random vectors of W_i, kept while independent of inner + chosen
        need = B.shape[1] - inner.shape[1]
        chosen = []
        while len(chosen) < need:
            v = (B @ np.array([rng.randrange(p) for _ in range(B.shape[1])], dtype=np.int64)) % p
            trial = np.column_stack([inner] + chosen + [v])
            if rank(trial.T.tolist(), field) == inner.shape[1] + len(chosen) + 1:
                chosen.append(v)
        cols.extend(chosen)
        if i + 1 == m:
            cols.extend(inner.T)
    E = np.column_stack(cols) % p
    Einv = np.array(inverse(E.tolist(), field), dtype=np.int64)
    mats = []
    start = 0
    for i in range(m):
        B = data.basis(i)
        keep = np.zeros((n, n), dtype=np.int64)
        for c in range(start, n):
            keep[c, c] = 1
        proj = (E @ keep @ Einv) % p  # projection onto W_i killing T_0 .. T_{i-1}
        Pi = (_left_inverse(B, field) @ proj) % p
        scale = rng.randrange(1, p)
        mats.append((scale * (Pi.T @ data.form(i) @ Pi)) % p)
        start += data.ranks[i]
    T = truncation if truncation is not None else max(2 * n, m + 1)
    return SkewFamily.from_matrices(mats, field, T)


def reparametrize(fam: SkewFamily, seed: int, order: int = 2) -> SkewFamily:
    """g(t)^T alpha g(t) for a seeded g(t) = g_0 + t g_1 + ... with g_0 invertible."""
    p = fam.field.p
    rng = random.Random(seed)
    n, T = fam.dim, fam.truncation
    g = np.zeros((T, n, n), dtype=np.int64)
    g[0] = _random_invertible(n, rng, p)
    for s in range(1, min(order + 1, T)):
        g[s] = [[rng.randrange(p) for _ in range(n)] for _ in range(n)]
    return SkewFamily(smul(smul(transpose_series(g), fam.coeffs, p), g, p), fam.field)


# ---------------------------------------------------------- enumeration


def _all_vectors(w, p):
    if w == 0:
        yield ()
        return
    for rest in _all_vectors(w - 1, p):
        for c in range(p):
            yield rest + (c,)


def nonzero_forms_mod_scalar(w: int, p: int):
    """Every nonzero skew w x w form over GF(p), one per scalar class."""
    pairs = [(i, j) for i in range(w) for j in range(i + 1, w)]
    for vals in _all_vectors(len(pairs), p):
        nz = [v for v in vals if v]
        if not nz or nz[0] != 1:
            continue
        M = np.zeros((w, w), dtype=np.int64)
        for (i, j), v in zip(pairs, vals):
            M[i, j], M[j, i] = v, -v
        yield M % p


def enumerate_normal_data(dim: int, field: Field):
    """All data (flag with forms, modulo scalars) for generic rank 2 * floor(dim/2)."""
    p = field.p

    def rec(B, flag, forms):
        w = B.shape[1]
        for f in nonzero_forms_mod_scalar(w, p):
            rk = rank(f.tolist(), field)
            if w - rk <= 1:
                yield make_normal_data(dim, field, flag, forms + [f])
                continue
            K = np.array(nullspace(f.tolist(), w, field), dtype=np.int64).T
            Bc, _ = _column_change((B @ K) % p, field)
            yield from rec(Bc, flag + [Bc], forms + [f])

    yield from rec(np.eye(dim, dtype=np.int64), [], [])


def random_family(dim: int, field: Field, seed: int, truncation: int | None = None) -> SkewFamily:
    """Seeded family built from low-rank pieces at increasing orders, then reparametrized."""
    p = field.p
    rng = random.Random(seed)
    T = truncation if truncation is not None else 2 * dim
    mats = []
    while True:
        mats = []
        for s in range(min(T, dim)):
            M = np.zeros((dim, dim), dtype=np.int64)
            for _ in range(rng.choice([0, 1, 1, 2, 3])):
                u = [rng.randrange(p) for _ in range(dim)]
                v = [rng.randrange(p) for _ in range(dim)]
                for i in range(dim):
                    for j in range(dim):
                        M[i, j] += u[i] * v[j] - u[j] * v[i]
            mats.append(M % p)
        if mats[0].any():
            fam = SkewFamily.from_matrices(mats, field, T)
            if 2 * fam.half_rank() >= 2 * (dim // 2):
                return reparametrize(fam, rng.randrange(1 << 30))


__all__ = [
    "Series", "SkewFamily", "SkewNormalData", "TruncationError", "WedgeLimit",
    "build_omega", "canonical_lift", "determinant", "divided_power", "enumerate_normal_data",
    "extract_normal_data", "make_normal_data", "omega_tuple", "pfaffian", "random_family",
    "random_lift", "reparametrize", "smoothing", "two_form", "wedge", "wedge_power_limit",
]
