"""Buchberger's algorithm for homogeneous submodules of graded free modules.

Internally a module element ("vector") is a dict ``{(exp, comp): coeff}``.
Ideals are the rank-one case with every ``comp == 0``.  Module orders are
term-over-position refinements of a monomial order, optionally twisted by a
per-component shift monomial and tie-break tuple (the Schreyer order used by
the resolution code) and by a position block (used for elimination).
"""

from __future__ import annotations

import heapq
import time
from itertools import combinations_with_replacement

from .field import Field
from .poly import GradedIdeal, Polynomial, divides, mono_div, mono_lcm, order_key


class ResourceLimitExceeded(RuntimeError):
    """A computation ran past its wall-time or degree cap."""


def _neg_grevlex(a):
    return (-sum(a),) + a[::-1]


def _neg_grlex(a):
    return (-sum(a),) + tuple(-x for x in a)


def _neg_lex(a):
    return tuple(-x for x in a)


_NEG = {"grevlex": _neg_grevlex, "grlex": _neg_grlex, "lex": _neg_lex}


class ModuleOrder:
    """Order on terms x^a e_c of a free module.

    ``x^a e_c`` is compared by ``(block[c], mono(a + shift[c]), tie[c])``, larger
    meaning bigger.  With no shifts and ``tie[c] = (-c,)`` this is the usual
    term-over-position order preferring lower component indices.
    """

    def __init__(self, order="grevlex", rank=1, shifts=None, ties=None, blocks=None):
        order_key(order)  # validates
        self.order = order
        self.rank = rank
        self._neg_mono = _NEG[order]
        self.shifts = shifts
        self.ties = ties if ties is not None else [(-c,) for c in range(rank)]
        self.blocks = blocks
        self._neg_ties = [tuple(-x for x in t) for t in self.ties]

    def neg_key(self, exp, comp):
        if self.shifts is not None:
            s = self.shifts[comp]
            exp = tuple(x + y for x, y in zip(exp, s))
        k = self._neg_mono(exp) + self._neg_ties[comp]
        if self.blocks is not None:
            k = (-self.blocks[comp],) + k
        return k

    def lead(self, vec):
        return min(vec, key=lambda t: self.neg_key(*t))


class Reducer:
    """A list of monic module elements with lead-term lookup, used for division."""

    def __init__(self, order: ModuleOrder, field: Field):
        self.order = order
        self.field = field
        self.elems = []  # (vec, lead)
        self._by_comp = {}

    def add(self, vec, lead=None) -> int:
        if lead is None:
            lead = self.order.lead(vec)
        c = vec[lead]
        if c != 1:
            inv = self.field.inv(c)
            norm = self.field.norm
            vec = {t: norm(v * inv) for t, v in vec.items()}
        idx = len(self.elems)
        self.elems.append((vec, lead))
        self._by_comp.setdefault(lead[1], []).append((lead[0], idx))
        return idx

    def find(self, exp, comp):
        for lexp, idx in self._by_comp.get(comp, ()):
            if all(x <= y for x, y in zip(lexp, exp)):
                return idx
        return None

    def reduce(self, vec, full=True, track=False, skip=None):
        """Divide ``vec`` by the stored elements.

        Returns ``(remainder, quotients)`` where quotients maps
        ``(monomial, index) -> coeff`` when ``track`` is set.
        With ``full=False`` stops at the first irreducible lead term.
        """
        norm = self.field.norm
        nk = self.order.neg_key
        p = dict(vec)
        heap = [(nk(*t), t) for t in p]
        heapq.heapify(heap)
        rem = {}
        quot = {}
        by_comp = self._by_comp
        elems = self.elems
        while heap:
            _, t = heapq.heappop(heap)
            c = p.get(t)
            if c is None:
                continue
            exp, comp = t
            j = None
            for lexp, idx in by_comp.get(comp, ()):
                if idx != skip and all(x <= y for x, y in zip(lexp, exp)):
                    j = idx
                    break
            if j is None:
                if not full:
                    rem.update(p)
                    return rem, quot
                rem[t] = c
                del p[t]
                continue
            g, lead = elems[j]
            mexp = tuple(x - y for x, y in zip(exp, lead[0]))
            del p[t]
            for (e2, c2), cg in g.items():
                if e2 == lead[0] and c2 == comp:
                    continue
                nt = (tuple(x + y for x, y in zip(e2, mexp)), c2)
                old = p.get(nt)
                if old is None:
                    v = norm(-c * cg)
                    if v:
                        p[nt] = v
                        heapq.heappush(heap, (nk(*nt), nt))
                else:
                    v = norm(old - c * cg)
                    if v:
                        p[nt] = v
                    else:
                        del p[nt]
            if track:
                key = (mexp, j)
                v = norm(quot.get(key, 0) + c)
                if v:
                    quot[key] = v
                else:
                    quot.pop(key, None)
        return rem, quot


def scale_shift(vec, mexp, coeff, field):
    norm = field.norm
    out = {}
    for (e, c), v in vec.items():
        w = norm(v * coeff)
        if w:
            out[(tuple(x + y for x, y in zip(e, mexp)), c)] = w
    return out


def vec_add(a, b, field, scale=1):
    norm = field.norm
    out = dict(a)
    for t, v in b.items():
        w = norm(out.get(t, 0) + scale * v)
        if w:
            out[t] = w
        else:
            out.pop(t, None)
    return out


def buchberger(vectors, order: ModuleOrder, field: Field, deadline=None, reduced=True):
    """Reduced Gröbner basis of the submodule generated by ``vectors``.

    Normal selection strategy (smallest lcm first) with the Gebauer–Möller
    form of both Buchberger criteria; the coprime criterion is applied only
    in rank one, where it is valid.
    """
    nk = order.neg_key
    rank1 = order.rank == 1 and order.shifts is None
    red = Reducer(order, field)
    pairs = []  # heap of (pos_key, i, j, lcm)
    live = set()

    def pos_key(exp, comp):
        return tuple(-x for x in nk(exp, comp))

    def update(t):
        lt_exp, lt_comp = red.elems[t][1]
        cands = []
        for i in range(t):
            e_i, c_i = red.elems[i][1]
            if c_i != lt_comp:
                continue
            L = mono_lcm(e_i, lt_exp)
            coprime = rank1 and all(x == 0 or y == 0 for x, y in zip(e_i, lt_exp))
            cands.append((i, L, coprime))
        # B criterion on old pairs
        for key in list(live):
            i, j = key
            L = pair_lcm[key]
            if red.elems[i][1][1] != lt_comp:
                continue
            if divides(lt_exp, L):
                Li = mono_lcm(red.elems[i][1][0], lt_exp)
                Lj = mono_lcm(red.elems[j][1][0], lt_exp)
                if Li != L and Lj != L:
                    live.discard(key)
        # M criterion: drop pairs whose lcm is a proper multiple of another new lcm
        keep = []
        for i, L, cop in cands:
            if any(L2 != L and divides(L2, L) for _, L2, _ in cands):
                continue
            keep.append((i, L, cop))
        # F criterion: one pair per lcm; none if any of them is coprime
        by_lcm = {}
        for i, L, cop in keep:
            by_lcm.setdefault(L, []).append((i, cop))
        for L, lst in by_lcm.items():
            if any(cop for _, cop in lst):
                continue
            i = lst[0][0]
            key = (i, t)
            live.add(key)
            pair_lcm[key] = L
            heapq.heappush(pairs, (pos_key(L, lt_comp), i, t))

    pair_lcm = {}
    inputs = sorted((v for v in vectors if v), key=lambda v: min(nk(*t) for t in v), reverse=True)
    for v in inputs:
        r, _ = red.reduce(v)
        if r:
            idx = red.add(r)
            update(idx)
    while pairs:
        if deadline is not None and time.monotonic() > deadline:
            raise ResourceLimitExceeded("wall-time cap reached in Buchberger")
        _, i, j = heapq.heappop(pairs)
        if (i, j) not in live:
            continue
        live.discard((i, j))
        L = pair_lcm[(i, j)]
        gi, li = red.elems[i]
        gj, lj = red.elems[j]
        s = vec_add(scale_shift(gi, mono_div(L, li[0]), 1, field),
                    scale_shift(gj, mono_div(L, lj[0]), 1, field), field, scale=-1)
        r, _ = red.reduce(s)
        if r:
            idx = red.add(r)
            update(idx)
    basis = [(v, lead) for v, lead in red.elems]
    return _minimalize(basis, order, field, reduced)


def _minimalize(basis, order, field, reduced):
    keep = []
    for i, (v, (e, c)) in enumerate(basis):
        dominated = False
        for j, (_, (e2, c2)) in enumerate(basis):
            if j != i and c2 == c and divides(e2, e) and (e2 != e or j < i):
                dominated = True
                break
        if not dominated:
            keep.append((v, (e, c)))
    if not reduced:
        return [v for v, _ in keep]
    red = Reducer(order, field)
    for v, lead in keep:
        red.add(v, lead)
    out = []
    for idx, (v, lead) in enumerate(red.elems):
        tail = {t: c for t, c in v.items() if t != lead}
        r, _ = red.reduce(tail, skip=idx)
        r[lead] = 1
        out.append(r)
    out.sort(key=lambda v: order.neg_key(*order.lead(v)))
    return out


# ------------------------------------------------------- polynomial API


def poly_to_vec(f: Polynomial, comp: int = 0):
    return {(e, comp): c for e, c in f.terms.items()}


def vec_to_poly(v, nvars, field, comp=0) -> Polynomial:
    return Polynomial._raw(nvars, {e: c for (e, k), c in v.items() if k == comp}, field)


def groebner_basis(I: GradedIdeal, order: str = "grevlex", deadline=None) -> list[Polynomial]:
    """Reduced Gröbner basis of a homogeneous ideal."""
    for g in I.generators:
        if not g.is_homogeneous():
            raise ValueError("generators must be homogeneous")
    mo = ModuleOrder(order)
    gb = buchberger([poly_to_vec(g) for g in I.generators], mo, I.field, deadline=deadline)
    return [vec_to_poly(v, I.nvars, I.field) for v in gb]


def normal_form(f: Polynomial, G: list[Polynomial], order: str = "grevlex") -> Polynomial:
    """Remainder of ``f`` under multivariate division by ``G``."""
    for g in G:
        if g.nvars != f.nvars:
            raise ValueError("variable-count mismatch")
    red = Reducer(ModuleOrder(order), f.field)
    for g in G:
        if g:
            red.add(poly_to_vec(g))
    r, _ = red.reduce(poly_to_vec(f))
    return vec_to_poly(r, f.nvars, f.field)


def s_polynomial(f: Polynomial, g: Polynomial, order: str = "grevlex") -> Polynomial:
    ef, cf = f.leading_term(order)
    eg, cg = g.leading_term(order)
    L = mono_lcm(ef, eg)
    n = f.nvars
    mf = Polynomial(n, {mono_div(L, ef): f.field.inv(cf)}, f.field)
    mg = Polynomial(n, {mono_div(L, eg): g.field.inv(cg)}, f.field)
    return mf * f - mg * g


def is_groebner_basis(G: list[Polynomial], order: str = "grevlex") -> bool:
    """Exhaustive S-pair check: every S-polynomial reduces to zero."""
    for i in range(len(G)):
        for j in range(i + 1, len(G)):
            if not normal_form(s_polynomial(G[i], G[j], order), G, order).is_zero():
                return False
    return True


def ideal_contains(G: list[Polynomial], f: Polynomial, order: str = "grevlex") -> bool:
    return normal_form(f, G, order).is_zero()


def _dedup(polys, nvars, field, order, deadline=None):
    """Keep the polynomials not in the ideal of previously kept ones (increasing degree).

    Within one degree the test is linear: normal form modulo the lower-degree
    Gröbner basis, then modulo the echelon basis of earlier same-degree keepers.
    """
    by_deg = {}
    for f in polys:
        by_deg.setdefault(f.degree(), []).append(f)
    accepted: list[Polynomial] = []
    for d in sorted(by_deg):
        gb = groebner_basis(GradedIdeal(nvars, accepted, field), order, deadline) if accepted else []
        echelon: list[Polynomial] = []
        for f in by_deg[d]:
            r = normal_form(f, gb, order) if gb else f
            if r and echelon:
                r = normal_form(r, echelon, order)
            if r.is_zero():
                continue
            echelon.append(r.monic(order))
            accepted.append(f)
    return accepted


def minimal_generators(I: GradedIdeal, order: str = "grevlex", deadline=None) -> GradedIdeal:
    """Drop generators lying in the ideal of the others (processed by increasing degree)."""
    return GradedIdeal(I.nvars, _dedup(I.generators, I.nvars, I.field, order, deadline), I.field)


def ideal_power(I: GradedIdeal, k: int, order: str = "grevlex") -> GradedIdeal:
    """Generators of I^k: all k-fold products, deduplicated by normal form."""
    if k < 1:
        raise ValueError("k must be a positive integer (use the unit ideal for k = 0)")
    products = []
    for combo in combinations_with_replacement(range(len(I.generators)), k):
        f = I.generators[combo[0]]
        for i in combo[1:]:
            f = f * I.generators[i]
        products.append(f)
    return GradedIdeal(I.nvars, _dedup(products, I.nvars, I.field, order), I.field)
