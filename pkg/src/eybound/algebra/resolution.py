"""Graded module presentations, syzygies and minimal free resolutions.

The resolution is built with Schreyer's construction: the syzygies coming from
S-pairs of a Gröbner basis form a Gröbner basis of the syzygy module for the
induced order, so iterating needs no further Buchberger runs.  The resulting
(non-minimal) resolution is then pruned of unit entries.
"""

from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass, field as dc_field

from .field import Field
from .groebner import (
    ModuleOrder,
    Reducer,
    ResourceLimitExceeded,
    buchberger,
    poly_to_vec,
    scale_shift,
    vec_add,
)
from .poly import GradedIdeal, Polynomial, divides, mono_div, mono_lcm


@dataclass
class GradedModulePresentation:
    """The cokernel of a homogeneous map ``F1 -> F0``.

    ``target_degrees[c]`` is the degree of the c-th generator of F0 (so
    ``F0 = sum S(-target_degrees[c])``); ``relations`` is a list of columns,
    each a list of ``len(target_degrees)`` polynomials.
    """

    nvars: int
    field: Field
    target_degrees: list[int]
    relations: list[list[Polynomial]] = dc_field(default_factory=list)

    def __post_init__(self):
        self.relations = [list(col) for col in self.relations]
        for col in self.relations:
            if len(col) != len(self.target_degrees):
                raise ValueError("relation column length differs from number of targets")
            self.column_degree(col)

    def column_degree(self, col) -> int | None:
        deg = None
        for c, f in enumerate(col):
            if f.is_zero():
                continue
            if not f.is_homogeneous():
                raise ValueError("relation entries must be homogeneous")
            d = self.target_degrees[c] + f.degree()
            if deg is None:
                deg = d
            elif d != deg:
                raise ValueError("relation column is not homogeneous for the declared twists")
        return deg

    @property
    def rank(self) -> int:
        return len(self.target_degrees)

    def relation_vectors(self):
        vecs = []
        for col in self.relations:
            v = {}
            for c, f in enumerate(col):
                v.update(poly_to_vec(f, c))
            if v:
                vecs.append(v)
        return vecs

    @classmethod
    def free(cls, nvars, field=None, degrees=(0,)):
        return cls(nvars, field or Field(), list(degrees), [])

    @classmethod
    def quotient_ring(cls, I: GradedIdeal) -> "GradedModulePresentation":
        """S/I presented as the cokernel of the row of generators."""
        return cls(I.nvars, I.field, [0], [[g] for g in I.generators])

    @classmethod
    def from_ideal(cls, I: GradedIdeal, order="grevlex", deadline=None) -> "GradedModulePresentation":
        """The ideal I itself as a graded module: generators modulo their syzygies."""
        res = free_resolution(cls.quotient_ring(I), order, deadline=deadline)
        gens = [res.maps[1][j][0] for j in range(len(res.degrees[1]))] if len(res.degrees) > 1 else []
        rels = res.maps[2] if len(res.maps) > 2 else []
        pres = cls(I.nvars, I.field, list(res.degrees[1]),
                   [[col.get(r, Polynomial.zero(I.nvars, I.field)) for r in range(len(gens))]
                    for col in rels])
        pres.generator_images = gens
        return pres


@dataclass
class FreeResolution:
    """``0 <- F0 <- F1 <- ... `` with ``F_i = sum_a S(-a)`` over ``degrees[i]``.

    ``maps[i]`` (i >= 1) is the differential F_i -> F_{i-1}: a list of
    columns, one per generator of F_i, each a dict ``row -> Polynomial``.
    ``maps[0]`` is ``None``.
    """

    nvars: int
    field: Field
    degrees: list[list[int]]
    maps: list

    @property
    def length(self) -> int:
        return len(self.degrees) - 1

    def betti(self) -> list[dict[int, int]]:
        return [dict(sorted(Counter(d).items())) for d in self.degrees]

    def betti_numbers(self) -> list[int]:
        return [len(d) for d in self.degrees]

    @property
    def steps(self):
        return [(b, m) for b, m in zip(self.betti(), self.maps)]

    def entry(self, i, row, col) -> Polynomial:
        return self.maps[i][col].get(row, Polynomial.zero(self.nvars, self.field))

    def compose_is_zero(self) -> bool:
        """d_i o d_{i+1} = 0 for every i (checked exactly on polynomials)."""
        zero = Polynomial.zero(self.nvars, self.field)
        for i in range(1, len(self.maps) - 1):
            for col in self.maps[i + 1]:
                acc = {}
                for mid, f in col.items():
                    for row, g in self.maps[i][mid].items():
                        acc[row] = acc.get(row, zero) + g * f
                if any(not v.is_zero() for v in acc.values()):
                    return False
        return True

    def is_minimal(self) -> bool:
        return all(not (f.terms and f.is_constant())
                   for m in self.maps[1:] for col in m for f in col.values())

    def hilbert_function(self, d: int) -> int:
        n = self.nvars
        total = 0
        for i, degs in enumerate(self.degrees):
            s = sum(_binom(d - a + n - 1, n - 1) for a in degs)
            total += -s if i % 2 else s
        return total

    def shifted(self) -> "FreeResolution":
        """Drop F0: the resolution of the image of d_1 (e.g. I from S/I)."""
        return FreeResolution(self.nvars, self.field, self.degrees[1:], [None] + self.maps[2:])


def _binom(a: int, b: int) -> int:
    if b < 0 or a < b:
        return 0
    num = 1
    for i in range(b):
        num = num * (a - i) // (i + 1)
    return num


# ------------------------------------------------------------ Schreyer


def _sort_for_variable(gens, leads, var):
    idx = sorted(range(len(gens)), key=lambda i: (leads[i][1], -leads[i][0][var]))
    return [gens[i] for i in idx], [leads[i] for i in idx]


def schreyer_resolution(pres: GradedModulePresentation, order="grevlex", deadline=None,
                        max_degree=None):
    """Non-minimal resolution of ``pres`` via iterated Schreyer syzygies.

    Returns ``(degrees, maps)`` in the layout of :class:`FreeResolution`.
    """
    N = pres.nvars
    fld = pres.field
    zero_exp = (0,) * N
    rank0 = pres.rank
    mo = ModuleOrder(order, rank=rank0, shifts=[zero_exp] * rank0)
    gens = buchberger(pres.relation_vectors(), ModuleOrder(order, rank=rank0), fld,
                      deadline=deadline)
    degrees = [list(pres.target_degrees)]
    maps = [None]
    level = 0
    while gens:
        if deadline is not None and time.monotonic() > deadline:
            raise ResourceLimitExceeded("wall-time cap reached in resolution")
        leads = [mo.lead(g) for g in gens]
        gens, leads = _sort_for_variable(gens, leads, min(level, N - 1))
        prev_deg = degrees[-1]
        col_degrees = [sum(lead[0]) + prev_deg[lead[1]] for lead in leads]
        if max_degree is not None and any(d > max_degree for d in col_degrees):
            raise ResourceLimitExceeded("resolution degree cap reached")
        degrees.append(col_degrees)
        maps.append([_vec_to_column(g, N, fld) for g in gens])
        # order on the next free module, induced by these leads
        shifts = [tuple(x + y for x, y in zip(lead[0], mo.shifts[lead[1]])) for lead in leads]
        ties = [mo.ties[lead[1]] + (-c,) for c, lead in enumerate(leads)]
        next_mo = ModuleOrder(order, rank=len(gens), shifts=shifts, ties=ties)
        red = Reducer(mo, fld)
        for g, lead in zip(gens, leads):
            red.add(g, lead)
        gens_monic = [e[0] for e in red.elems]
        syz = []
        by_comp = {}
        for i, lead in enumerate(leads):
            by_comp.setdefault(lead[1], []).append(i)
        for comp, idxs in by_comp.items():
            for pos, i in enumerate(idxs):
                cands = []
                for j in idxs[pos + 1:]:
                    L = mono_lcm(leads[i][0], leads[j][0])
                    cands.append((mono_div(L, leads[i][0]), j, L))
                chosen = []
                for m, j, L in cands:
                    if any(divides(m2, m) and (m2 != m or j2 < j) for m2, j2, _ in cands):
                        continue
                    chosen.append((m, j, L))
                for m, j, L in chosen:
                    if deadline is not None and time.monotonic() > deadline:
                        raise ResourceLimitExceeded("wall-time cap reached in resolution")
                    mj = mono_div(L, leads[j][0])
                    s = vec_add(scale_shift(gens_monic[i], m, 1, fld),
                                scale_shift(gens_monic[j], mj, 1, fld), fld, scale=-1)
                    rem, quot = red.reduce(s, track=True)
                    if rem:
                        raise RuntimeError("S-vector did not reduce to zero; input is not a Gröbner basis")
                    v = {(m, i): 1}
                    v = vec_add(v, {(mj, j): 1}, fld, scale=-1)
                    v = vec_add(v, {(e, u): c for (e, u), c in quot.items()}, fld, scale=-1)
                    syz.append(v)
        # the stored columns must match the monic generators used for the syzygies
        maps[-1] = [_vec_to_column(g, N, fld) for g in gens_monic]
        gens = syz
        mo = next_mo
        level += 1
        if level > N + 1:
            raise RuntimeError("resolution longer than the number of variables")
    return degrees, maps


def _vec_to_column(vec, nvars, fld):
    col = {}
    for (e, c), v in vec.items():
        col.setdefault(c, {})[e] = v
    return {c: Polynomial._raw(nvars, t, fld) for c, t in col.items()}


def minimize(degrees, maps, fld: Field):
    """Prune unit entries: each one splits off a trivial summand ``S(-a) -> S(-a)``."""
    degs = [dict(enumerate(d)) for d in degrees]
    mats = [None] + [dict(enumerate(m)) for m in maps[1:]]
    for L in range(1, len(mats)):
        changed = True
        while changed:
            changed = False
            for b in list(mats[L].keys()):
                col_b = mats[L].get(b)
                if col_b is None:
                    continue
                a = next((r for r, f in col_b.items()
                          if degs[L - 1][r] == degs[L][b] and f.terms and f.is_constant()), None)
                if a is None:
                    continue
                u = col_b[a].terms[(0,) * col_b[a].nvars]
                uinv = fld.inv(u)
                for c, col_c in mats[L].items():
                    if c == b or a not in col_c:
                        continue
                    q = col_c[a] * uinv
                    for r, f in col_b.items():
                        nv = col_c.get(r)
                        nv = (-(f * q)) if nv is None else nv - f * q
                        if nv.is_zero():
                            col_c.pop(r, None)
                        else:
                            col_c[r] = nv
                    col_c.pop(a, None)
                del mats[L][b]
                del degs[L][b]
                del degs[L - 1][a]
                if L + 1 < len(mats):
                    for col in mats[L + 1].values():
                        col.pop(b, None)
                if L - 1 >= 1:
                    mats[L - 1].pop(a, None)
                changed = True
    # relabel
    out_degrees = []
    out_maps = [None]
    relabel = []
    for L, d in enumerate(degs):
        ids = sorted(d, key=lambda i: (d[i], i))
        relabel.append({old: new for new, old in enumerate(ids)})
        out_degrees.append([d[i] for i in ids])
    for L in range(1, len(mats)):
        ids = sorted(mats[L], key=lambda i: relabel[L][i])
        out_maps.append([{relabel[L - 1][r]: f for r, f in mats[L][i].items()} for i in ids])
    while len(out_degrees) > 1 and not out_degrees[-1]:
        out_degrees.pop()
        out_maps.pop()
    return out_degrees, out_maps


def free_resolution(M: GradedModulePresentation, order="grevlex", deadline=None,
                    max_degree=None) -> FreeResolution:
    """Minimal graded free resolution of the cokernel module."""
    degrees, maps = schreyer_resolution(M, order, deadline, max_degree)
    degrees, maps = minimize(degrees, maps, M.field)
    if len(degrees) - 1 > M.nvars:
        raise RuntimeError("resolution longer than the number of variables")
    return FreeResolution(M.nvars, M.field, degrees, maps)


def resolve_ideal(I: GradedIdeal, order="grevlex", deadline=None, max_degree=None) -> FreeResolution:
    """Minimal resolution of S/I."""
    return free_resolution(GradedModulePresentation.quotient_ring(I), order, deadline, max_degree)


def syzygies(M: GradedModulePresentation, order="grevlex", deadline=None) -> GradedModulePresentation:
    """Minimal generators of the kernel of the relation map ``F1 -> F0``.

    The columns f_1..f_m are lifted to (f_i, e_i) in F0 + F1 and a Gröbner
    basis is taken for an order eliminating F0; the elements left with no F0
    part generate the syzygy module, and are then pruned to a minimal set.
    The result presents that kernel inside F1 (targets = column degrees).
    """
    s = M.rank
    cols = M.relations
    m = len(cols)
    col_deg = [M.column_degree(c) or 0 for c in cols]
    N = M.nvars
    vecs = []
    for j, col in enumerate(cols):
        v = {}
        for c, f in enumerate(col):
            v.update(poly_to_vec(f, c))
        v[((0,) * N, s + j)] = 1
        vecs.append(v)
    mo = ModuleOrder(order, rank=s + m, blocks=[1] * s + [0] * m)
    gb = buchberger(vecs, mo, M.field, deadline=deadline)
    kernel = []
    for v in gb:
        if all(c >= s for (_, c) in v):
            kernel.append({(e, c - s): x for (e, c), x in v.items()})
    kernel = _minimal_vectors(kernel, order, m, col_deg, M.field, deadline)
    zero = Polynomial.zero(N, M.field)
    out_cols = []
    for v in kernel:
        col = _vec_to_column(v, N, M.field)
        out_cols.append([col.get(j, zero) for j in range(m)])
    return GradedModulePresentation(N, M.field, col_deg, out_cols)


def _minimal_vectors(vecs, order, rank, degs, fld, deadline=None):
    """Minimal homogeneous generators among ``vecs`` (by increasing degree)."""
    def vdeg(v):
        (e, c) = next(iter(v))
        return sum(e) + degs[c]
    vecs = sorted(vecs, key=vdeg)
    mo = ModuleOrder(order, rank=rank)
    accepted = []
    gb = []
    cur = None
    echelon = Reducer(mo, fld)
    for v in vecs:
        d = vdeg(v)
        if d != cur:
            gb_red = Reducer(mo, fld)
            if accepted:
                for g in buchberger(accepted, mo, fld, deadline=deadline):
                    gb_red.add(g)
            echelon = Reducer(mo, fld)
            cur = d
        r, _ = gb_red.reduce(v)
        if r:
            r, _ = echelon.reduce(r)
        if r:
            echelon.add(r)
            accepted.append(v)
    return accepted
