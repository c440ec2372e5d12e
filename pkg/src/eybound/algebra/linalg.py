"""Exact linear algebra over a :class:`Field`.

Small matrices go through plain list-of-lists elimination.  Large prime-field
matrices (graded pieces in the cohomology engine) use a vectorized numpy
elimination with int64 arithmetic, which is exact while p < 2**31.
"""

from __future__ import annotations

import numpy as np

from .field import Field


def rref(rows, field: Field):
    """Reduced row echelon form. Returns (rows, pivot_columns); input is not modified."""
    m = [[field.norm(x) for x in row] for row in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(m)):
            if m[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = field.inv(m[r][c])
        m[r] = [field.norm(x * inv) for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [field.norm(a - f * b) for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows, field: Field) -> int:
    if not rows or not len(rows[0]):
        return 0
    if field.p is not None and len(rows) * len(rows[0]) > 400:
        return rank_mod_p(np.array(rows, dtype=np.int64), field.p)
    return len(rref(rows, field)[1])


def nullspace(rows, ncols: int, field: Field):
    """Basis of {v : M v = 0} as a list of column vectors (lists), one per free column."""
    red, pivots = rref(rows, field) if rows else ([], [])
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for row, pc in zip(red, pivots):
            v[pc] = field.norm(-row[f])
        basis.append(v)
    return basis


def mat_mul(a, b, field: Field):
    if not a:
        return []
    inner = len(b)
    ncols = len(b[0]) if b else 0
    return [[field.norm(sum(a[i][k] * b[k][j] for k in range(inner))) for j in range(ncols)]
            for i in range(len(a))]


def transpose(a):
    return [list(col) for col in zip(*a)] if a else []


def inverse(a, field: Field):
    n = len(a)
    aug = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(a)]
    red, piv = rref(aug, field)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red]


def det(a, field: Field):
    """Determinant by elimination (field scalars only)."""
    n = len(a)
    m = [[field.norm(x) for x in row] for row in a]
    d = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            d = -d
        d = field.norm(d * m[c][c])
        inv = field.inv(m[c][c])
        for i in range(c + 1, n):
            if m[i][c]:
                f = field.norm(m[i][c] * inv)
                m[i] = [field.norm(x - f * y) for x, y in zip(m[i], m[c])]
    return field.norm(d)


def rank_mod_p(a: np.ndarray, p: int) -> int:
    """Rank of an integer matrix over GF(p) by vectorized elimination."""
    if p >= 1 << 31:
        raise ValueError("prime too large for int64 elimination")
    m = np.array(a, dtype=np.int64) % p
    nrows, ncols = m.shape
    if nrows == 0 or ncols == 0:
        return 0
    if nrows > ncols:
        m = m.T.copy()
        nrows, ncols = ncols, nrows
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        inv = pow(int(m[r, c]), p - 2, p)
        m[r, c:] = (m[r, c:] * inv) % p
        below = np.nonzero(m[r + 1:, c])[0] + r + 1
        if below.size:
            f = m[below, c][:, None]
            m[below, c:] = (m[below, c:] - f * m[r, c:][None, :]) % p
        r += 1
    return r
