"""Sheaf cohomology on P^n of graded modules via graded local duality.

For a graded module M over S = k[x_0..x_n] with minimal free resolution F,
``H^j_m(M)_p`` is dual to ``Ext^{n+1-j}(M, S(-n-1))_{-p}``, which is finite
linear algebra on the dual complex ``Hom(F, S(-n-1))`` in degree ``-p``.
Then ``H^i(P^n, M~(p)) = H^{i+1}_m(M)_p`` for i >= 1, and
``h^0 = dim M_p - h^0_m + h^1_m``.
"""

from __future__ import annotations

import csv
import io
import json
import time
from dataclasses import dataclass, field as dc_field

import numpy as np

from .algebra.field import Field
from .algebra.groebner import ResourceLimitExceeded, ideal_power
from .algebra.hilbert import hilbert_polynomial_value
from .algebra.linalg import rank as field_rank
from .algebra.linalg import rank_mod_p
from .algebra.poly import GradedIdeal, monomials
from .algebra.resolution import (
    FreeResolution,
    GradedModulePresentation,
    free_resolution,
    resolve_ideal,
    _binom,
)


def line_bundle_cohomology(n: int, p: int, i: int) -> int:
    """dim H^i(P^n, O(p)) in closed form."""
    if i == 0:
        return _binom(n + p, n) if p >= 0 else 0
    if i == n:
        return _binom(-p - 1, n) if p <= -n - 1 else 0
    return 0


class _DualComplex:
    """Graded pieces of Hom(F, S(-N)) with cached ranks of the coboundaries."""

    def __init__(self, res: FreeResolution, deadline=None):
        self.res = res
        self.N = res.nvars
        self.field = res.field
        self.deadline = deadline
        self._mono = {}
        self._rank = {}

    def _basis(self, d):
        if d not in self._mono:
            ms = monomials(self.N, d)
            self._mono[d] = (ms, {m: i for i, m in enumerate(ms)})
        return self._mono[d]

    def dim(self, q, p):
        if q < 0 or q >= len(self.res.degrees):
            return 0
        return sum(_binom(a - self.N - p + self.N - 1, self.N - 1) for a in self.res.degrees[q])

    def coboundary_rank(self, q, p):
        """Rank of C^q -> C^{q+1} in degree -p (transpose of d_{q+1})."""
        key = (q, p)
        if key in self._rank:
            return self._rank[key]
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise ResourceLimitExceeded("wall-time cap reached in cohomology")
        res = self.res
        if q < 0 or q + 1 >= len(res.degrees):
            self._rank[key] = 0
            return 0
        src = res.degrees[q]
        dst = res.degrees[q + 1]
        N = self.N
        # column offsets
        col_off = []
        total_c = 0
        for a in src:
            col_off.append(total_c)
            total_c += len(self._basis(a - N - p)[0])
        row_off = []
        total_r = 0
        for a in dst:
            row_off.append(total_r)
            total_r += len(self._basis(a - N - p)[0])
        if total_c == 0 or total_r == 0:
            self._rank[key] = 0
            return 0
        fld = self.field
        mat = np.zeros((total_r, total_c), dtype=np.int64 if fld.p else object)
        for c, col in enumerate(res.maps[q + 1]):
            tgt_ms, tgt_idx = self._basis(dst[c] - N - p)
            for r, f in col.items():
                src_ms, _ = self._basis(src[r] - N - p)
                for j, m in enumerate(src_ms):
                    cj = col_off[r] + j
                    for e, v in f.terms.items():
                        t = tuple(x + y for x, y in zip(e, m))
                        mat[row_off[c] + tgt_idx[t], cj] += v
        if fld.p is not None:
            rk = rank_mod_p(mat % fld.p, fld.p)
        else:
            rk = field_rank(mat.tolist(), fld)
        self._rank[key] = rk
        return rk

    def ext(self, q, p):
        """dim Ext^q(M, S(-N))_{-p}."""
        return self.dim(q, p) - self.coboundary_rank(q, p) - self.coboundary_rank(q - 1, p)


class CohomologyEngine:
    """Cohomology of the sheaf associated to one module, sharing its resolution."""

    def __init__(self, res: FreeResolution, deadline=None):
        if len(res.degrees) - 1 > res.nvars:
            raise RuntimeError("resolution longer than the number of variables")
        self.res = res
        self.n = res.nvars - 1
        self._dual = _DualComplex(res, deadline)

    def local_cohomology(self, j: int, p: int) -> int:
        """dim H^j_m(M)_p."""
        return self._dual.ext(self.n + 1 - j, p)

    def module_dim(self, p: int) -> int:
        return self.res.hilbert_function(p)

    def sheaf(self, i: int, p: int) -> int:
        if not 0 <= i <= self.n:
            raise ValueError(f"cohomological index {i} outside 0..{self.n}")
        if i >= 1:
            return self.local_cohomology(i + 1, p)
        return self.module_dim(p) - self.local_cohomology(0, p) + self.local_cohomology(1, p)

    def euler_characteristic(self, p: int) -> int:
        return sum((-1) ** i * self.sheaf(i, p) for i in range(self.n + 1))

    def hilbert_polynomial(self, p: int) -> int:
        return hilbert_polynomial_value(self.res, p)


def sheaf_cohomology(M, i: int, p: int, order="grevlex", deadline=None) -> int:
    """dim H^i(P^n, M~(p)) for a presentation (or an already computed resolution)."""
    res = M if isinstance(M, FreeResolution) else free_resolution(M, order, deadline=deadline)
    return CohomologyEngine(res, deadline).sheaf(i, p)


def ideal_module_resolution(I: GradedIdeal, order="grevlex", deadline=None, max_degree=None):
    """Minimal resolution of the ideal I viewed as a graded module."""
    return resolve_ideal(I, order, deadline, max_degree).shifted()


def ideal_sheaf_cohomology(I: GradedIdeal, i: int, p: int, order="grevlex") -> int:
    return CohomologyEngine(ideal_module_resolution(I, order)).sheaf(i, p)


# ------------------------------------------------------------- scanning


@dataclass
class CohomologyTable:
    """dim H^i(P^n, I^k(p)) over a probe window."""

    label: str
    field: str
    n: int
    entries: dict = dc_field(default_factory=dict)  # (i, k, p) -> dim
    windows: dict = dc_field(default_factory=dict)  # k -> (p_lo, p_hi)
    hilbert_polynomial: dict = dc_field(default_factory=dict)  # (k, p) -> value

    def get(self, i, k, p):
        return self.entries[(i, k, p)]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["k", "p", "i", "dim"])
        for (i, k, p) in sorted(self.entries, key=lambda t: (t[1], t[2], t[0])):
            w.writerow([k, p, i, self.entries[(i, k, p)]])
        return buf.getvalue()

    def to_dict(self) -> dict:
        by_k = {}
        for (i, k, p), v in sorted(self.entries.items(), key=lambda t: (t[0][1], t[0][2], t[0][0])):
            by_k.setdefault(str(k), {}).setdefault(str(p), {})[str(i)] = v
        return {
            "label": self.label,
            "field": self.field,
            "n": self.n,
            "windows": {str(k): list(w) for k, w in sorted(self.windows.items())},
            "table": by_k,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def euler_mismatches(self):
        """Columns (k, p) where sum (-1)^i h^i differs from the Hilbert polynomial."""
        bad = []
        for (k, p), hp in self.hilbert_polynomial.items():
            chi = sum((-1) ** i * self.entries[(i, k, p)] for i in range(self.n + 1))
            if chi != hp:
                bad.append((k, p, chi, hp))
        return bad


@dataclass
class ScanVerdict:
    status: str  # "pass" | "fail" | "incomplete"
    threshold: str
    e: int
    d_Y: int
    violations: list = dc_field(default_factory=list)  # (i, k, p, dim) at or above threshold
    subthreshold_nonvanishing: list = dc_field(default_factory=list)
    incomplete: list = dc_field(default_factory=list)  # (k, reason)

    def to_dict(self):
        return {
            "status": self.status,
            "threshold": self.threshold,
            "e": self.e,
            "d_Y": self.d_Y,
            "violations": [list(v) for v in self.violations],
            "subthreshold_nonvanishing": [list(v) for v in self.subthreshold_nonvanishing],
            "incomplete": [list(v) for v in self.incomplete],
        }


def scan_window(e: int, d_Y: int, k: int, pad: int):
    c = e + (k - 1) * d_Y
    return c - pad, c + pad


def vanishing_scan(I: GradedIdeal, d_Y: int, e: int, k_max: int, p_pad: int, *,
                   label: str = "", order="grevlex", time_cap: float | None = None,
                   max_degree: int | None = None, powers: dict | None = None):
    """Scan H^i(P^n, I^k(p)) for 1 <= k <= k_max over the window around e + (k-1) d_Y.

    The verdict passes iff every entry with i > 0 and p >= e + (k-1) d_Y
    vanishes.  Cap overruns make the affected k "incomplete" instead of failing.
    """
    if k_max < 1:
        raise ValueError("k_max must be at least 1")
    if p_pad < 0:
        raise ValueError("p_pad must be nonnegative")
    n = I.nvars - 1
    table = CohomologyTable(label, I.field.describe(), n)
    verdict = ScanVerdict("pass", "p >= e + (k-1)*d_Y", e, d_Y)
    for k in range(1, k_max + 1):
        deadline = time.monotonic() + time_cap if time_cap else None
        lo, hi = scan_window(e, d_Y, k, p_pad)
        try:
            Ik = powers[k] if powers and k in powers else ideal_power(I, k, order)
            res = ideal_module_resolution(Ik, order, deadline, max_degree)
            eng = CohomologyEngine(res, deadline)
            col = {}
            for p in range(lo, hi + 1):
                for i in range(n + 1):
                    col[(i, k, p)] = eng.sheaf(i, p)
                table.hilbert_polynomial[(k, p)] = eng.hilbert_polynomial(p)
        except ResourceLimitExceeded as exc:
            verdict.incomplete.append((k, str(exc)))
            continue
        table.entries.update(col)
        table.windows[k] = (lo, hi)
        thr = e + (k - 1) * d_Y
        for (i, kk, p), v in sorted(col.items(), key=lambda t: (t[0][2], t[0][0])):
            if i == 0 or v == 0:
                continue
            if p >= thr:
                verdict.violations.append((i, kk, p, v))
            else:
                verdict.subthreshold_nonvanishing.append((i, kk, p, v))
    if verdict.violations:
        verdict.status = "fail"
    elif verdict.incomplete:
        verdict.status = "incomplete"
    return table, verdict
