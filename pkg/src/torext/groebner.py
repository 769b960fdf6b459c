"""Buchberger's algorithm for ideals and submodules of free S-modules.

Vectors are plain dicts ``{packed term: coefficient}`` where a packed term
carries both the monomial and the free-module position (see ``poly``).
Polynomials are vectors living in position 0.

Syzygies are obtained by tracking: the free module is split at ``split``;
positions ``< split`` hold the module itself, positions ``>= split`` record
how each element was built from the tracked generators.  With the split
block ordered below everything else, an S-vector whose upper part reduces to
zero leaves a syzygy behind in the lower part (Schreyer).
"""

from __future__ import annotations

import contextvars
import heapq
from contextlib import contextmanager
from dataclasses import dataclass, replace
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .poly import MonomialOrder, PolyRing, Polynomial, StructuralError

Vector = dict

DEG_OFF = 1 << 24
POS_BITS = 16
POS_MAX = (1 << POS_BITS) - 1


class ResourceLimitError(RuntimeError):
    """A configured resource cap was exceeded; no result is returned."""

    def __init__(self, cap: str, value: int, limit: int):
        super().__init__(f"resource cap {cap} exceeded ({value} > {limit})")
        self.cap = cap
        self.value = value
        self.limit = limit


@dataclass(frozen=True)
class Limits:
    max_degree: int = 40
    max_pairs: int = 200_000
    max_res_length: int = 64


_LIMITS: contextvars.ContextVar[Limits] = contextvars.ContextVar("torext_limits", default=Limits())


def get_limits() -> Limits:
    return _LIMITS.get()


@contextmanager
def limits(**kw):
    """Temporarily override resource caps, e.g. ``with limits(max_degree=10): ...``."""
    token = _LIMITS.set(replace(_LIMITS.get(), **kw))
    try:
        yield _LIMITS.get()
    finally:
        _LIMITS.reset(token)


class TermOrder:
    """Order on module terms built from a monomial order plus a position rule.

    ``rule`` is ``"top"`` (term over position, degrees shifted by ``shifts``)
    or ``"pot"`` (position over term).  Positions ``>= split`` form a lower
    block compared by the Schreyer order induced from ``leads`` when given.
    Lower position indices win ties.
    """

    def __init__(self, ring: PolyRing, order: MonomialOrder | None = None, shifts: Sequence[int] = (),
                 rule: str = "top", split: int | None = None, leads: Sequence[int] | None = None):
        if rule not in ("top", "pot"):
            raise StructuralError(f"unknown position rule {rule!r}")
        self.ring = ring
        self.order = order or ring.order
        self.shifts = list(shifts)
        self.rule = rule
        self.split = split
        self.leads = list(leads) if leads is not None else None
        self._unit = self.order.degree_unit(ring.n)
        self._kbits = 15 * ring.n + 64
        self._huge = 1 << (self._kbits + 2 * POS_BITS + 8)
        self._cache: dict[int, int] = {}

    def shift(self, pos: int) -> int:
        return self.shifts[pos] if pos < len(self.shifts) else 0

    def tdeg(self, term: int) -> int:
        """Shifted weighted degree of a term."""
        ring = self.ring
        return ring.wdeg(term & ring.mon_mask) + self.shift(term >> ring.pos_shift)

    def _base(self, term: int) -> int:
        ring = self.ring
        pos = term >> ring.pos_shift
        mon = term & ring.mon_mask
        mk = self.order.key(ring.unpack(mon))
        if self.rule == "pot":
            return ((POS_MAX - pos) << self._kbits) | mk
        if self.order.graded:
            mk += (self.shift(pos) + DEG_OFF) * self._unit
        return (mk << POS_BITS) | (POS_MAX - pos)

    def key(self, term: int) -> int:
        k = self._cache.get(term)
        if k is not None:
            return k
        ring = self.ring
        pos = term >> ring.pos_shift
        if self.split is not None and pos >= self.split:
            j = pos - self.split
            if self.leads is not None:
                k = (self._base((term & ring.mon_mask) + self.leads[j]) << POS_BITS) | (POS_MAX - j)
            else:
                k = self._base(term)
        else:
            k = self._base(term)
            if self.split is not None:
                k += self._huge
        self._cache[term] = k
        return k

    def lead(self, v: Vector) -> int:
        return max(v, key=self.key)


class _Elem:
    __slots__ = ("vec", "lt", "sugar", "fixed", "active")

    def __init__(self, vec, lt, sugar, fixed):
        self.vec = vec
        self.lt = lt
        self.sugar = sugar
        self.fixed = fixed
        self.active = True


def _monic(vec: Vector, lc, p: int) -> Vector:
    if lc == 1:
        return vec
    if p:
        inv = pow(lc, -1, p)
        return {t: c * inv % p for t, c in vec.items()}
    inv = 1 / Fraction(lc)
    return {t: c * inv for t, c in vec.items()}


class _Basis:
    """Elements indexed by leading position for divisor search."""

    def __init__(self, order: TermOrder):
        self.order = order
        self.ring = order.ring
        self.elems: list[_Elem] = []
        self.by_pos: dict[int, list[int]] = {}

    def add(self, vec: Vector, sugar: int, fixed: bool = False, lt: int | None = None) -> int:
        if lt is None:
            lt = self.order.lead(vec)
        vec = _monic(vec, vec[lt], self.ring.char)
        self.elems.append(_Elem(vec, lt, sugar, fixed))
        idx = len(self.elems) - 1
        self.by_pos.setdefault(lt >> self.ring.pos_shift, []).append(idx)
        return idx

    def find(self, term: int):
        lst = self.by_pos.get(term >> self.ring.pos_shift)
        if not lst:
            return None
        guard = self.ring.guard
        elems = self.elems
        for i in lst:
            e = elems[i]
            d = term - e.lt
            if d >= 0 and not (d & guard):
                return e
        return None

    def reduce(self, vec: Vector, full: bool = True, stop_below: int | None = None):
        """Reduce ``vec``.

        Top reduction stops at the first irreducible leading term.  With
        ``stop_below`` set, reduction also stops once the leading term lies
        in a position ``>= stop_below`` (the tracking block).  Returns
        ``(remainder, leading_term_or_None)``.
        """
        return _reduce(vec, self.find, self.order.key, self.ring, full, stop_below)


def _reduce(vec, find, key, ring: PolyRing, full: bool, stop_below):
    p = ring.char
    pos_shift = ring.pos_shift
    f = dict(vec)
    heap = []
    k2t = {}
    for t in f:
        k = key(t)
        k2t[k] = t
        heap.append(-k)
    heapq.heapify(heap)
    inheap = set(f)
    out = {} if full else None
    lead = None
    while heap:
        t = k2t[-heap[0]]
        c = f.get(t)
        if not c:
            heapq.heappop(heap)
            inheap.discard(t)
            continue
        if stop_below is not None and (t >> pos_shift) >= stop_below:
            break
        g = find(t)
        if g is None:
            if not full:
                lead = t
                break
            heapq.heappop(heap)
            inheap.discard(t)
            out[t] = c
            del f[t]
            if lead is None:
                lead = t
            continue
        heapq.heappop(heap)
        inheap.discard(t)
        shift = t - g.lt
        gv = g.vec
        if p:
            for s, d in gv.items():
                u = s + shift
                v = (f.get(u, 0) - c * d) % p
                if v:
                    if u not in f and u not in inheap:
                        k = key(u)
                        k2t[k] = u
                        heapq.heappush(heap, -k)
                        inheap.add(u)
                    f[u] = v
                else:
                    f.pop(u, None)
        else:
            for s, d in gv.items():
                u = s + shift
                v = f.get(u, 0) - c * d
                if v:
                    if u not in f and u not in inheap:
                        k = key(u)
                        k2t[k] = u
                        heapq.heappush(heap, -k)
                        inheap.add(u)
                    f[u] = v
                else:
                    f.pop(u, None)
    if full:
        # anything left is in the stop block or was never reached
        out.update(f)
        return out, lead
    return f, lead


def _run(order: TermOrder, gens: Sequence[Vector], fixed: Sequence[Vector] = (), *,
         product_criterion: bool = False, stop_on_unit: bool = False):
    """Core Buchberger loop.  Returns ``(basis, syzygy_parts)``."""
    ring = order.ring
    lim = get_limits()
    key = order.key
    tdeg = order.tdeg
    split = order.split
    pos_shift = ring.pos_shift
    basis = _Basis(order)

    def sugar_of(v):
        return max(tdeg(t) for t in v)

    for v in fixed:
        if v:
            basis.add(v, sugar_of(v), fixed=True)

    base = None
    for v in gens:
        if v:
            s = sugar_of(v)
            base = s if base is None else min(base, s)
    if base is None:
        return basis, []

    heap = []
    seq = 0
    for j, v in enumerate(gens):
        if v:
            heapq.heappush(heap, (sugar_of(v), key(order.lead(v)), seq, -1, j))
            seq += 1

    syz: list[Vector] = []
    lcm_cache: dict[tuple, int] = {}

    def lcm_term(a, b):
        kk = (a, b)
        r = lcm_cache.get(kk)
        if r is None:
            r = ring.lcm(a, b) | ((a >> pos_shift) << pos_shift)
            lcm_cache[kk] = r
        return r

    def update(t_idx):
        nonlocal heap, seq
        elems = basis.elems
        h = elems[t_idx]
        pos = h.lt >> pos_shift
        cand = []
        for i in basis.by_pos.get(pos, ()):
            if i == t_idx or not elems[i].active:
                continue
            lt_i = elems[i].lt
            l = lcm_term(lt_i, h.lt)
            copr = product_criterion and ring.coprime(lt_i, h.lt)
            cand.append((l, i, copr))
        # criterion B on existing pairs
        if heap:
            kept = []
            for entry in heap:
                _, _, _, i, j = entry
                if i < 0:
                    kept.append(entry)
                    continue
                ei, ej = elems[i], elems[j]
                if (ei.lt >> pos_shift) == pos:
                    lij = lcm_term(ei.lt, ej.lt)
                    if ring.divides(h.lt, lij) and lcm_term(ei.lt, h.lt) != lij and lcm_term(ej.lt, h.lt) != lij:
                        continue
                kept.append(entry)
            if len(kept) != len(heap):
                heap = kept
                heapq.heapify(heap)
        # criterion M: drop pairs whose lcm is a proper multiple of another's
        lcms = [c[0] for c in cand]
        survivors = []
        for (l, i, copr) in cand:
            strict = False
            for l2 in lcms:
                if l2 != l and ring.divides(l2, l):
                    strict = True
                    break
            if not strict:
                survivors.append((l, i, copr))
        # criterion F + product criterion
        groups: dict[int, list] = {}
        for item in survivors:
            groups.setdefault(item[0], []).append(item)
        for l, items in groups.items():
            if any(c for _, _, c in items):
                continue
            _, i, _ = min(items, key=lambda it: it[1])
            ei = elems[i]
            dl = tdeg(l)
            sug = max(ei.sugar + dl - tdeg(ei.lt), h.sugar + dl - tdeg(h.lt))
            heapq.heappush(heap, (sug, key(l), seq, i, t_idx))
            seq += 1
        if len(heap) > lim.max_pairs:
            raise ResourceLimitError("max_pairs", len(heap), lim.max_pairs)
        for i in basis.by_pos.get(pos, ()):
            e = elems[i]
            if i != t_idx and e.active and not e.fixed and ring.divides(h.lt, e.lt):
                e.active = False

    fixed_count = len(basis.elems)
    for i in range(fixed_count):
        pass  # fixed elements already form a Groebner basis among themselves

    p = ring.char
    while heap:
        sug, _, _, i, j = heapq.heappop(heap)
        if sug - base > lim.max_degree:
            raise ResourceLimitError("max_degree", sug - base, lim.max_degree)
        if i < 0:
            vec = gens[j]
        else:
            ei, ej = basis.elems[i], basis.elems[j]
            l = lcm_term(ei.lt, ej.lt)
            si, sj = l - ei.lt, l - ej.lt
            vec = {}
            for t, c in ei.vec.items():
                vec[t + si] = c
            for t, c in ej.vec.items():
                u = t + sj
                v = vec.get(u, 0) - c
                if p:
                    v %= p
                if v:
                    vec[u] = v
                else:
                    vec.pop(u, None)
        rem, lead = _reduce(vec, basis.find, key, ring, False, split)
        if lead is None:
            if split is not None:
                part = {t: c for t, c in rem.items() if (t >> pos_shift) >= split}
                if part:
                    syz.append(part)
            continue
        if stop_on_unit and (lead & ring.mon_mask) == 0 and (split is None or (lead >> pos_shift) < split):
            idx = basis.add(rem, sug, lt=lead)
            return basis, syz
        idx = basis.add(rem, sug, lt=lead)
        update(idx)
    return basis, syz


def _interreduce(basis: _Basis) -> list[Vector]:
    """Reduced Groebner basis from a (non-reduced) one."""
    ring = basis.ring
    elems = sorted(basis.elems, key=lambda e: basis.order.key(e.lt))
    minimal: list[_Elem] = []
    for e in elems:
        if not any(ring.divides(m.lt, e.lt) and (m.lt >> ring.pos_shift) == (e.lt >> ring.pos_shift)
                   for m in minimal):
            minimal.append(e)
    tmp = _Basis(basis.order)
    for e in minimal:
        tmp.add(e.vec, e.sugar, lt=e.lt)
    out = []
    for k, e in enumerate(tmp.elems):
        others = _Basis(basis.order)
        for k2, e2 in enumerate(tmp.elems):
            if k2 != k:
                others.add(e2.vec, e2.sugar, lt=e2.lt)
        tail = {t: c for t, c in e.vec.items() if t != e.lt}
        red, _ = others.reduce(tail, full=True)
        red[e.lt] = 1
        out.append(red)
    out.sort(key=lambda v: basis.order.key(basis.order.lead(v)), reverse=True)
    return out


class GroebnerBasis:
    """A Groebner basis of a submodule of S^rank (rank 1: an ideal)."""

    def __init__(self, ring: PolyRing, order: TermOrder, elements: list[Vector], rank: int,
                 reduced: bool, syzygies: list[Vector] | None = None, n_gens: int | None = None):
        self.ring = ring
        self.order = order
        self.elements = elements
        self.rank = rank
        self.reduced = reduced
        self.syzygies = syzygies
        self.n_gens = n_gens
        self._basis = _Basis(order)
        for v in elements:
            self._basis.add(v, 0)

    def __len__(self):
        return len(self.elements)

    def leading_terms(self) -> list[int]:
        return [e.lt for e in self._basis.elems]

    def reduce(self, v: Vector) -> Vector:
        r, _ = self._basis.reduce(v, full=True)
        return r

    def contains(self, v: Vector) -> bool:
        return not self.reduce(v)

    def is_unit(self) -> bool:
        return self.rank == 1 and any((t & self.ring.mon_mask) == 0 for t in self.leading_terms())

    def polynomials(self) -> list[Polynomial]:
        return [Polynomial(self.ring, dict(v)) for v in self.elements]


def _as_vectors(gens) -> tuple[PolyRing | None, list[Vector]]:
    ring = None
    out = []
    for g in gens:
        if isinstance(g, Polynomial):
            if ring is not None and g.ring != ring:
                raise StructuralError("generators from different rings")
            ring = g.ring
            out.append(dict(g.terms))
        else:
            out.append(dict(g))
    return ring, out


def buchberger(gens, order: MonomialOrder | TermOrder | None = None, *, ring: PolyRing | None = None,
               rank: int | None = None, shifts: Sequence[int] | None = None, track: bool = False,
               reduced: bool = True) -> GroebnerBasis:
    """Groebner basis of the submodule generated by ``gens``.

    ``gens`` is a list of Polynomials (ideal case) or of vectors over
    ``ring``.  With ``track=True`` the syzygies of the generators are
    recorded (see ``syzygy_module``); the returned elements then form a
    non-reduced basis.
    """
    r2, vecs = _as_vectors(gens)
    ring = ring or r2
    if ring is None:
        raise StructuralError("empty generator list needs an explicit ring")
    if rank is None:
        rank = 1 + max((t >> ring.pos_shift for v in vecs for t in v), default=0)
    for v in vecs:
        for t in v:
            if (t >> ring.pos_shift) >= rank:
                raise StructuralError("generator outside the ambient free module")
    if isinstance(order, TermOrder):
        torder = order
    else:
        torder = TermOrder(ring, order, shifts or ())
    if track:
        m = len(vecs)
        sh = list(torder.shifts) + [0] * max(0, rank - len(torder.shifts))
        sh = sh[:rank]
        leads = []
        for v in vecs:
            if v:
                lt = torder.lead(v)
                leads.append(lt)
                sh.append(torder.tdeg(lt))
            else:
                leads.append(0)
                sh.append(0)
        tord = TermOrder(ring, torder.order, sh, torder.rule, split=rank, leads=leads)
        aug = []
        for k, v in enumerate(vecs):
            w = dict(v)
            w[(rank + k) << ring.pos_shift] = 1
            aug.append(w)
        basis, syz = _run(tord, aug)
        shift_back = rank << ring.pos_shift
        elements = []
        for e in basis.elems:
            elements.append({t: c for t, c in e.vec.items() if (t >> ring.pos_shift) < rank})
        syzv = [{t - shift_back: c for t, c in s.items()} for s in syz]
        gb = GroebnerBasis(ring, torder, elements, rank, reduced=False, syzygies=syzv, n_gens=m)
        return gb
    basis, _ = _run(torder, vecs, product_criterion=(rank == 1))
    elements = _interreduce(basis) if reduced else [e.vec for e in basis.elems]
    return GroebnerBasis(ring, torder, elements, rank, reduced=reduced)


def normal_form(f, gb: GroebnerBasis):
    """Full normal form of ``f`` (Polynomial or vector) with respect to ``gb``."""
    if isinstance(f, Polynomial):
        if f.ring != gb.ring:
            raise StructuralError("polynomial and basis from different rings")
        return Polynomial(gb.ring, gb.reduce(f.terms))
    return gb.reduce(f)


@dataclass
class SubmoduleGB:
    """Generators of a submodule of S^rank, with a lazily computed basis."""

    ring: PolyRing
    rank: int
    gens: list
    shifts: tuple = ()
    _gb: GroebnerBasis | None = None

    @property
    def gb(self) -> GroebnerBasis:
        if self._gb is None:
            self._gb = buchberger(self.gens, TermOrder(self.ring, None, self.shifts), ring=self.ring,
                                  rank=self.rank)
        return self._gb


def syzygy_module(gb: GroebnerBasis) -> SubmoduleGB:
    """Kernel of the map sending basis vector k to the k-th tracked generator."""
    if gb.syzygies is None:
        raise StructuralError("basis was computed without syzygy tracking")
    return SubmoduleGB(gb.ring, gb.n_gens, list(gb.syzygies))


def track_syzygies(ring: PolyRing, order: TermOrder, tracked: Sequence[Vector], untracked: Sequence[Vector] = (),
                   fixed: Sequence[Vector] = (), rank: int | None = None, leads: bool = True) -> list[Vector]:
    """Syzygy generators of ``tracked`` modulo the submodule ``untracked + fixed``.

    Returns vectors ``s`` in S^len(tracked) generating
    ``{s : sum s_k tracked_k lies in <untracked, fixed>}``.  ``fixed`` must
    already be a Groebner basis with respect to ``order``.
    """
    if rank is None:
        rank = 1 + max((t >> ring.pos_shift for v in list(tracked) + list(untracked) + list(fixed) for t in v),
                       default=0)
    sh = list(order.shifts) + [0] * max(0, rank - len(order.shifts))
    sh = sh[:rank]
    lead_terms = []
    for v in tracked:
        if v:
            lt = order.lead(v)
            lead_terms.append(lt)
            sh.append(order.tdeg(lt))
        else:
            lead_terms.append(0)
            sh.append(0)
    tord = TermOrder(ring, order.order, sh, order.rule, split=rank, leads=lead_terms if leads else None)
    gens = []
    unit = ring.pos_unit
    for k, v in enumerate(tracked):
        w = dict(v)
        w[(rank + k) * unit] = 1
        gens.append(w)
    gens.extend(dict(v) for v in untracked if v)
    _, syz = _run(tord, gens, fixed)
    back = rank * unit
    return [{t - back: c for t, c in s.items()} for s in syz]


# --- ideal operations ---------------------------------------------------------

def _repack(f: Polynomial, target: PolyRing, index_map: Sequence[int]) -> Polynomial:
    out = {}
    src = f.ring
    for m, c in f.terms.items():
        e = src.unpack(m)
        ne = [0] * target.n
        for i, x in enumerate(e):
            ne[index_map[i]] = x
        out[target.pack(ne)] = c
    return Polynomial(target, out)


def _fresh_name(ring: PolyRing, base: str = "t") -> str:
    name = base
    k = 0
    while name in ring.names:
        k += 1
        name = f"{base}{k}"
    return name


def ideal_intersect(I: Sequence[Polynomial], J: Sequence[Polynomial], method: str = "elimination") -> list[Polynomial]:
    """Reduced Groebner basis of the intersection of two ideals.

    ``method="elimination"`` eliminates t from tI + (1-t)J;
    ``method="syzygy"`` reads the intersection off the syzygies of (1, 1)
    modulo I e_1 + J e_2.
    """
    ring = _common_ring(list(I) + list(J))
    if not I or not J or all(f.is_zero() for f in I) or all(f.is_zero() for f in J):
        return []
    if method == "elimination":
        big = ring.extend(_fresh_name(ring), prepend=True)
        emb = [i + 1 for i in range(ring.n)]
        t = big.gens()[0]
        gens = [t * _repack(f, big, emb) for f in I if f] + [(1 - t) * _repack(g, big, emb) for g in J if g]
        gb = buchberger(gens, MonomialOrder("elim", block=1), ring=big)
        out = []
        for v in gb.elements:
            if all(big.unpack(m)[0] == 0 for m in v):
                back = {}
                for m, c in v.items():
                    back[ring.pack(big.unpack(m)[1:])] = c
                out.append(Polynomial(ring, back))
        return reduced_basis(out)
    if method == "syzygy":
        unit = ring.pos_unit
        col = {0: 1, unit: 1}
        unt = [dict(f.terms) for f in I if f] + [{m + unit: c for m, c in g.terms.items()} for g in J if g]
        syz = track_syzygies(ring, TermOrder(ring), [col], unt, rank=2)
        return reduced_basis([Polynomial(ring, s) for s in syz])
    raise StructuralError(f"unknown intersection method {method!r}")


def _common_ring(polys: Sequence[Polynomial]) -> PolyRing:
    rings = {f.ring for f in polys}
    if len(rings) != 1:
        raise StructuralError("need polynomials from exactly one ring")
    return rings.pop()


def reduced_basis(gens: Sequence[Polynomial], order: MonomialOrder | None = None) -> list[Polynomial]:
    gens = [g for g in gens if g]
    if not gens:
        return []
    return buchberger(gens, order).polynomials()


def module_ann(relations: Sequence[Vector], rank: int, ring: PolyRing, shifts: Sequence[int] = ()) -> list[Polynomial]:
    """Annihilator of S^rank / <relations>: all r with r e_j in the span for every j."""
    if rank == 0:
        return [ring.one()]
    order = TermOrder(ring, None, shifts)
    gb = buchberger(relations, order, ring=ring, rank=rank, reduced=False)
    return _ann_from_gb(ring, gb.elements, rank, shifts)


def _ann_from_gb(ring: PolyRing, gb_elements: Sequence[Vector], rank: int, shifts: Sequence[int] = (),
                 columns: Sequence[Vector] | None = None) -> list[Polynomial]:
    """{r : r * columns_k in span(gb) for all k}; columns default to the unit vectors."""
    unit = ring.pos_unit
    if columns is None:
        columns = [{j * unit: 1} for j in range(rank)]
    m = len(columns)
    if m == 0:
        return [ring.one()]
    big_shifts = []
    for k in range(m):
        big_shifts.extend(list(shifts)[:rank] + [0] * max(0, rank - len(shifts)))
    fixed = []
    for k in range(m):
        off = k * rank * unit
        for v in gb_elements:
            fixed.append({t + off: c for t, c in v.items()})
    col = {}
    for k, v in enumerate(columns):
        off = k * rank * unit
        for t, c in v.items():
            col[t + off] = c
    if not col:
        return [ring.one()]
    order = TermOrder(ring, None, big_shifts)
    syz = track_syzygies(ring, order, [col], fixed=fixed, rank=m * rank)
    return reduced_basis([Polynomial(ring, s) for s in syz]) if syz else []


def ideal_quotient(I: Sequence[Polynomial], g: Polynomial) -> list[Polynomial]:
    """(I : g) as a reduced Groebner basis."""
    ring = g.ring
    if g.is_zero():
        return [ring.one()]
    gb = buchberger([f for f in I if f] or [ring.zero()], ring=ring, reduced=False) if any(I) else None
    fixed = gb.elements if gb else []
    syz = track_syzygies(ring, TermOrder(ring), [dict(g.terms)], fixed=fixed, rank=1)
    return reduced_basis([Polynomial(ring, s) for s in syz])


def saturate(I: Sequence[Polynomial], J: Sequence[Polynomial]) -> list[Polynomial]:
    """(I : J^infinity) by repeated colon ideals until the chain stabilizes."""
    J = [g for g in J if g]
    if not J:
        return reduced_basis(I) if any(I) else []
    cur = reduced_basis([f for f in I if f]) if any(I) else []
    for _ in range(get_limits().max_degree + 1):
        parts = [ideal_quotient(cur, g) for g in J]
        nxt = parts[0]
        for q in parts[1:]:
            nxt = reduced_basis(ideal_intersect(nxt, q))
        if [f.terms for f in nxt] == [f.terms for f in cur]:
            return cur
        cur = nxt
    raise ResourceLimitError("saturation steps", get_limits().max_degree + 1, get_limits().max_degree)


def radical_membership(f: Polynomial, I: Sequence[Polynomial]) -> bool:
    """True iff some power of f lies in I (Rabinowitsch: 1 in I + (1 - t f))."""
    ring = f.ring
    if f.is_zero():
        return True
    big = ring.extend(_fresh_name(ring))
    emb = list(range(ring.n))
    t = big.gens()[-1]
    gens = [_repack(g, big, emb) for g in I if g] + [1 - t * _repack(f, big, emb)]
    _, vecs = _as_vectors(gens)
    basis, _ = _run(TermOrder(big, MonomialOrder("grevlex")), vecs, product_criterion=True, stop_on_unit=True)
    return any((e.lt & big.mon_mask) == 0 for e in basis.elems)


def leading_monomials(gb: GroebnerBasis, pos: int = 0) -> list[tuple]:
    ring = gb.ring
    return [ring.unpack(t) for t in gb.leading_terms() if (t >> ring.pos_shift) == pos]


def _dim_from_leads(leads: Sequence[tuple], n: int) -> int:
    if any(sum(e) == 0 for e in leads):
        return -1
    best = 0
    for size in range(n, 0, -1):
        for U in combinations(range(n), size):
            Us = set(U)
            if all(any(e[i] and i not in Us for i in range(n)) for e in leads):
                return size
    return best


def dim_quotient(I) -> int:
    """Krull dimension of S/I (-1 for the unit ideal)."""
    if isinstance(I, GroebnerBasis):
        gb = I
    else:
        I = [f for f in I if f]
        if not I:
            raise StructuralError("dim of S/0 needs the ring; pass a GroebnerBasis")
        gb = buchberger(I, reduced=False)
    return _dim_from_leads(leading_monomials(gb), gb.ring.n)


def dim_module(gb: GroebnerBasis) -> int:
    """Krull dimension of S^rank / M from the leading terms of a basis of M."""
    ring = gb.ring
    best = -1
    for j in range(gb.rank):
        best = max(best, _dim_from_leads(leading_monomials(gb, j), ring.n) if leading_monomials(gb, j)
                   else ring.n)
    return best


def hilbert_function(gb: GroebnerBasis, lo: int, hi: int, shifts: Sequence[int] | None = None) -> dict[int, int]:
    """dim_k of the graded pieces of S^rank / M in degrees lo..hi (by standard monomials)."""
    ring = gb.ring
    shifts = list(shifts) if shifts is not None else list(gb.order.shifts)
    shifts = shifts + [0] * max(0, gb.rank - len(shifts))
    leads = {j: [] for j in range(gb.rank)}
    for t in gb.leading_terms():
        leads[t >> ring.pos_shift].append(t & ring.mon_mask)
    out = {}
    for d in range(lo, hi + 1):
        total = 0
        for j in range(gb.rank):
            dd = d - shifts[j]
            if dd < 0:
                continue
            ls = leads[j]
            for m in ring.monomials_of_degree(dd):
                if not any(ring.divides(l, m) for l in ls):
                    total += 1
        out[d] = total
    return out


def hilbert_series(gens, D: int, *, ring: PolyRing | None = None, rank: int | None = None,
                   shifts: Sequence[int] | None = None) -> list[int]:
    """Hilbert function of S^rank / <gens> in degrees 0..D (homogeneous input only)."""
    r2, vecs = _as_vectors(gens)
    ring = ring or r2
    if ring is None:
        raise StructuralError("hilbert_series needs a ring")
    shifts = list(shifts or ())
    order = TermOrder(ring, None, shifts)
    for v in vecs:
        degs = {order.tdeg(t) for t in v}
        if len(degs) > 1:
            raise StructuralError("hilbert_series needs homogeneous input")
    if rank is None:
        rank = 1 + max((t >> ring.pos_shift for v in vecs for t in v), default=0)
    vecs = [v for v in vecs if v]
    if vecs:
        gb = buchberger(vecs, order, ring=ring, rank=rank, reduced=False)
    else:
        gb = GroebnerBasis(ring, order, [], rank, reduced=True)
    hf = hilbert_function(gb, 0, D, shifts)
    return [hf[d] for d in range(D + 1)]


def s_pairs_reduce_to_zero(gb: GroebnerBasis) -> bool:
    """Exhaustive Buchberger criterion check on an emitted basis."""
    ring = gb.ring
    p = ring.char
    els = [(e.lt, e.vec) for e in gb._basis.elems]
    for (lt1, v1), (lt2, v2) in combinations(els, 2):
        if (lt1 >> ring.pos_shift) != (lt2 >> ring.pos_shift):
            continue
        l = ring.lcm(lt1, lt2) | ((lt1 >> ring.pos_shift) << ring.pos_shift)
        s = {}
        for t, c in v1.items():
            s[t + l - lt1] = c
        for t, c in v2.items():
            u = t + l - lt2
            v = s.get(u, 0) - c
            if p:
                v %= p
            if v:
                s[u] = v
            else:
                s.pop(u, None)
        if gb.reduce(s):
            return False
    return True
