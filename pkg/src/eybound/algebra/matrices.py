"""Determinants and Pfaffians over any commutative ring of Python objects.

Entries only need ``+``, ``-`` and ``*``; ``zero`` and ``one`` supply the
ring's identities.  Both routines memoize over index subsets, so symbolic
matrices up to 8x8 stay cheap.
"""

from __future__ import annotations

from functools import lru_cache


def determinant(mat, zero=0, one=1):
    """Laplace expansion along rows, memoized over the set of unused columns."""
    n = len(mat)
    if n == 0:
        return one
    if any(len(row) != n for row in mat):
        raise ValueError("determinant of a non-square matrix")

    @lru_cache(maxsize=None)
    def rec(row, cols):
        if row == n:
            return one
        total = zero
        sign = 1
        for c in range(n):
            if not cols >> c & 1:
                continue
            a = mat[row][c]
            if _nonzero(a):
                sub = rec(row + 1, cols & ~(1 << c))
                total = total + a * sub if sign > 0 else total - a * sub
            sign = -sign
        return total

    return rec(0, (1 << n) - 1)


def pfaffian(mat, zero=0, one=1):
    """Pfaffian by expansion along the first remaining row.

    Sign convention: Pf([[0, a], [-a, 0]]) = a.
    """
    n = len(mat)
    if n % 2:
        raise ValueError("Pfaffian needs an even-dimensional matrix")
    if any(len(row) != n for row in mat):
        raise ValueError("Pfaffian of a non-square matrix")

    @lru_cache(maxsize=None)
    def rec(idx):
        if not idx:
            return one
        i = idx[0]
        rest = idx[1:]
        total = zero
        for pos, j in enumerate(rest):
            a = mat[i][j]
            if not _nonzero(a):
                continue
            sub = rec(rest[:pos] + rest[pos + 1:])
            total = total + a * sub if pos % 2 == 0 else total - a * sub
        return total

    return rec(tuple(range(n)))


def is_skew(mat, zero=0) -> bool:
    n = len(mat)
    for i in range(n):
        if _nonzero(mat[i][i]):
            return False
        for j in range(i + 1, n):
            if _nonzero(mat[i][j] + mat[j][i]):
                return False
    return True


def submatrix(mat, rows, cols):
    return [[mat[r][c] for c in cols] for r in rows]


def _nonzero(a) -> bool:
    return bool(a)
