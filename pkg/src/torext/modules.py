"""Finitely presented graded modules over a QuotientRing.

An FPModule lives in an ambient free module S^b with generator degrees
``degrees``.  It is either presented (generators are the unit vectors) or a
subquotient ``(span(gens) + N) / N`` where N is spanned by ``rels`` together
with I times the ambient.  Annihilators and Hilbert functions are computed
straight from the subquotient; a presentation is only built on demand.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from .groebner import ResourceLimitError, TermOrder, _Basis, _run, get_limits, track_syzygies
from .poly import Polynomial, StructuralError
from .ring import Ideal, QuotientRing, intersect, minors, unit_ideal, zero_ideal

INF = math.inf


# --- vector helpers -----------------------------------------------------------

def vec_degree(v: dict, shifts: Sequence[int], S) -> int:
    """Degree of a homogeneous vector; StructuralError if inhomogeneous."""
    ps = S.pos_shift
    degs = {S.wdeg(t & S.mon_mask) + shifts[t >> ps] for t in v}
    if len(degs) != 1:
        raise StructuralError("inhomogeneous vector for the given generator degrees")
    return degs.pop()


def entry(v: dict, k: int, S) -> dict:
    """Polynomial (as terms) sitting in position k of v."""
    ps = S.pos_shift
    off = k << ps
    return {t - off: c for t, c in v.items() if (t >> ps) == k}


def poly_times_vec(f: dict, v: dict, p: int) -> dict:
    out: dict = {}
    for m, a in f.items():
        for t, b in v.items():
            u = t + m
            c = out.get(u, 0) + a * b
            if p:
                c %= p
            if c:
                out[u] = c
            else:
                out.pop(u, None)
    return out


def vec_add(a: dict, b: dict, p: int, sign: int = 1) -> dict:
    out = dict(a)
    for t, c in b.items():
        v = out.get(t, 0) + sign * c
        if p:
            v %= p
        if v:
            out[t] = v
        else:
            out.pop(t, None)
    return out


def scale(v: dict, c, p: int) -> dict:
    if p:
        return {t: a * c % p for t, a in v.items() if a * c % p}
    return {t: a * c for t, a in v.items() if a * c}


def unit_vec(k: int, S) -> dict:
    return {k << S.pos_shift: 1}


def transpose_matrix(cols: Sequence[dict], nrows: int, S) -> list[dict]:
    """Columns of the transpose (nrows columns living in S^len(cols))."""
    ps = S.pos_shift
    mask = S.mon_mask
    out = [dict() for _ in range(nrows)]
    for k, c in enumerate(cols):
        for t, a in c.items():
            out[t >> ps][(t & mask) | (k << ps)] = a
    return out


def kron_identity(cols: Sequence[dict], g: int, S) -> list[dict]:
    """Columns of A (x) Id_g; row (k, l) and column (c, l) are numbered k*g + l."""
    ps = S.pos_shift
    mask = S.mon_mask
    out = []
    for c in cols:
        for l in range(g):
            out.append({(t & mask) | (((t >> ps) * g + l) << ps): a for t, a in c.items()})
    return out


def block_copies(vecs: Sequence[dict], block: int, nblocks: int, S) -> list[dict]:
    unit = S.pos_unit
    out = []
    for k in range(nblocks):
        off = k * block * unit
        out.extend({t + off: c for t, c in v.items()} for v in vecs)
    return out


def _drop_row(v: dict, j: int, S) -> dict:
    ps = S.pos_shift
    unit = S.pos_unit
    out = {}
    for t, c in v.items():
        r = t >> ps
        if r == j:
            continue
        out[t - unit if r > j else t] = c
    return out


def _hf_from_basis(basis: _Basis, shifts: Sequence[int], lo: int, hi: int) -> list[int]:
    S = basis.ring
    leads: dict[int, list[int]] = {j: [] for j in range(len(shifts))}
    for e in basis.elems:
        leads[e.lt >> S.pos_shift].append(e.lt & S.mon_mask)
    out = []
    for d in range(lo, hi + 1):
        tot = 0
        for j, sh in enumerate(shifts):
            dd = d - sh
            if dd < 0:
                continue
            ls = leads[j]
            for m in S.monomials_of_degree(dd):
                if not any(S.divides(l, m) for l in ls):
                    tot += 1
        out.append(tot)
    return out


# --- modules ------------------------------------------------------------------

class FPModule:
    """A finitely generated graded module over ``ring`` (see module docstring).

    ``fixed`` may supply a Groebner basis (for the ambient term order) of a
    submodule containing I times the ambient; it is added to ``rels``.
    """

    def __init__(self, ring: QuotientRing, degrees: Sequence[int], rels: Sequence[dict] = (), *,
                 gens: Sequence[dict] | None = None, fixed: Sequence[dict] | None = None,
                 name: str | None = None):
        S = ring.S
        self.ring = ring
        self.degrees = tuple(int(d) for d in degrees)
        self.name = name
        b = len(self.degrees)
        rl = []
        for v in rels:
            for t in v:
                if (t >> S.pos_shift) >= b:
                    raise StructuralError("relation has an entry outside the generator range")
            v = ring.reduce_vec(v)
            if v:
                vec_degree(v, self.degrees, S)
                rl.append(v)
        self.rels = rl
        if gens is None and fixed is not None:
            gens = [unit_vec(k, S) for k in range(b)]
        if gens is not None:
            gl, gd = [], []
            for v in gens:
                v = ring.reduce_vec(v)
                if v:
                    gd.append(vec_degree(v, self.degrees, S))
                    gl.append(v)
            self.gens = gl
            self.gen_degrees = tuple(gd)
        else:
            self.gens = None
            self.gen_degrees = self.degrees
        self._fixed = list(fixed) if fixed is not None else None
        self._basis: _Basis | None = None
        self._cache: dict = {}

    def __repr__(self):
        kind = "presented" if self.gens is None else "subquotient"
        nm = f"{self.name}: " if self.name else ""
        return f"FPModule({nm}{kind}, gen degrees {list(self.gen_degrees)}, {len(self.rels)} relations)"

    # basics ----------------------------------------------------------------
    @property
    def S(self):
        return self.ring.S

    @property
    def rank(self) -> int:
        return len(self.degrees)

    @property
    def is_presented(self) -> bool:
        return self.gens is None

    @property
    def order(self) -> TermOrder:
        o = self._cache.get("order")
        if o is None:
            o = TermOrder(self.S, None, self.degrees)
            self._cache["order"] = o
        return o

    def generators(self) -> list[dict]:
        if self.gens is None:
            return [unit_vec(k, self.S) for k in range(self.rank)]
        return self.gens

    def relation_basis(self) -> _Basis:
        """Groebner basis of rels + I (or rels + fixed) in the ambient."""
        if self._basis is None:
            fixed = self._fixed if self._fixed is not None else self.ring.ideal_lifts(self.rank)
            if self.rels:
                self._basis, _ = _run(self.order, self.rels, fixed)
            else:
                b = _Basis(self.order)
                for v in fixed:
                    b.add(v, 0, fixed=True)
                self._basis = b
        return self._basis

    def relgb(self) -> list[dict]:
        return [e.vec for e in self.relation_basis().elems]

    def reduce(self, v: dict) -> dict:
        r, _ = self.relation_basis().reduce(v, full=True)
        return r

    def is_zero(self) -> bool:
        z = self._cache.get("is_zero")
        if z is None:
            z = all(not self.reduce(g) for g in self.generators())
            self._cache["is_zero"] = z
        return z

    # presentations -----------------------------------------------------------
    def presentation(self) -> "FPModule":
        """An isomorphic presented module (self if already presented)."""
        if self.gens is None:
            return self
        P = self._cache.get("presentation")
        if P is None:
            Z = track_syzygies(self.S, self.order, self.gens, fixed=self.relgb(), rank=self.rank)
            P = FPModule(self.ring, self.gen_degrees, Z, name=self.name)
            self._cache["presentation"] = P
        return P

    def minimalize(self) -> "FPModule":
        """Minimal presentation: no unit entries, minimal generators and relations."""
        M = self._cache.get("minimal")
        if M is not None:
            return M
        M = _minimalize(self.presentation())
        M.name = self.name
        M._cache["minimal"] = M
        self._cache["minimal"] = M
        return M

    @property
    def mu(self) -> int:
        """Minimal number of generators."""
        return len(self.minimalize().degrees)

    # invariants --------------------------------------------------------------
    def annihilator(self) -> Ideal:
        ann = self._cache.get("ann")
        if ann is None:
            ann = _annihilator(self)
            self._cache["ann"] = ann
        return ann

    def hilbert(self, lo: int, hi: int) -> list[int]:
        """dim_k M_delta for delta = lo..hi."""
        key = ("hf", lo, hi)
        h = self._cache.get(key)
        if h is not None:
            return h
        base = _hf_from_basis(self.relation_basis(), self.degrees, lo, hi)
        if self.gens is None:
            h = base
        else:
            if self.gens:
                big, _ = _run(self.order, self.gens, self.relgb())
                sub = _hf_from_basis(big, self.degrees, lo, hi)
            else:
                sub = base
            h = [x - y for x, y in zip(base, sub)]
        self._cache[key] = h
        return h

    def hilbert_prefix(self, D: int) -> list[int]:
        return self.hilbert(0, D)

    def signature(self, D: int = 8) -> tuple:
        """Hilbert function from the lowest generator degree on, D+1 values."""
        if self.is_zero():
            return ()
        lo = min(self.minimalize().degrees)
        return tuple(self.hilbert(lo, lo + D))

    def shift(self, k: int) -> "FPModule":
        """M(-k): all degrees raised by k."""
        P = self.presentation()
        return FPModule(self.ring, [d + k for d in P.degrees], P.rels)

    def direct_sum(self, other: "FPModule") -> "FPModule":
        A, B = self.presentation(), other.presentation()
        off = A.rank * self.S.pos_unit
        rels = list(A.rels) + [{t + off: c for t, c in v.items()} for v in B.rels]
        return FPModule(self.ring, A.degrees + B.degrees, rels)

    def matrix_text(self) -> list[list[str]]:
        """Relation columns as lists of canonical entry strings."""
        P = self.presentation()
        S = self.S
        return [[str(Polynomial(S, entry(v, k, S))) for k in range(P.rank)] for v in P.rels]


def make_module(ring: QuotientRing, gen_degrees: Sequence[int], relations: Sequence[Sequence], name=None) -> FPModule:
    """Cokernel of the matrix whose columns are ``relations``.

    Each column is a sequence of polynomials (or strings) of length
    ``len(gen_degrees)``.
    """
    S = ring.S
    b = len(gen_degrees)
    cols = []
    for col in relations:
        if len(col) != b:
            raise StructuralError(f"relation column has {len(col)} entries, expected {b}")
        v = {}
        for k, e in enumerate(col):
            f = S.parse(e) if isinstance(e, str) else e
            if isinstance(f, int):
                f = S.const(f)
            for m, c in f.terms.items():
                v[m | (k << S.pos_shift)] = c
        cols.append(v)
    return FPModule(ring, gen_degrees, cols, name=name)


def free_module(ring: QuotientRing, degrees: Sequence[int]) -> FPModule:
    return FPModule(ring, degrees, [])


def cyclic_module(ring: QuotientRing, ideal_gens: Sequence, degree: int = 0) -> FPModule:
    """R/J as a module with one generator."""
    return make_module(ring, [degree], [[g] for g in ideal_gens])


def ideal_module(ring: QuotientRing, ideal_gens: Sequence) -> FPModule:
    """The ideal J of R as a module: subquotient of R generated by the gens."""
    S = ring.S
    gens = []
    for g in ideal_gens:
        f = S.parse(g) if isinstance(g, str) else g
        gens.append(dict(f.terms))
    return FPModule(ring, [0], [], gens=gens)


# --- minimalization -------------------------------------------------------

def _const_entry(v: dict, S):
    mask = S.mon_mask
    best = None
    for t, c in v.items():
        if not (t & mask):
            j = t >> S.pos_shift
            if best is None or j < best[0]:
                best = (j, c)
    return best


def _eliminate_units(ring: QuotientRing, degs: list[int], cols: list[dict]) -> tuple[list[int], list[dict]]:
    S = ring.S
    p = ring.char
    degs = list(degs)
    cols = [c for c in cols if c]
    while True:
        hit = None
        for k, c in enumerate(cols):
            ce = _const_entry(c, S)
            if ce is not None:
                hit = (k, ce[0], ce[1])
                break
        if hit is None:
            return degs, cols
        k, j, u = hit
        piv = cols.pop(k)
        inv = ring.S.field.inv(u)
        new = []
        for c in cols:
            e = entry(c, j, S)
            if e:
                c = vec_add(c, poly_times_vec(scale(e, inv, p), piv, p), p, -1)
            c = ring.reduce_vec(_drop_row(c, j, S))
            if c:
                new.append(c)
        cols = new
        degs.pop(j)


def _minimal_columns(ring: QuotientRing, order: TermOrder, cols: list[dict], rank: int):
    """Drop redundant relations greedily by degree; returns (kept, basis of kept + I)."""
    S = ring.S
    fixed = ring.ideal_lifts(rank)
    basis = _Basis(order)
    for v in fixed:
        basis.add(v, 0, fixed=True)
    keyed = sorted(range(len(cols)), key=lambda k: (vec_degree(cols[k], order.shifts, S), k))
    kept = []
    for k in keyed:
        c = cols[k]
        _, lead = basis.reduce(c, full=False)
        if lead is None:
            continue
        kept.append(c)
        basis, _ = _run(order, [c], [e.vec for e in basis.elems])
    return kept, basis


def _minimalize(P: FPModule) -> FPModule:
    ring = P.ring
    degs, cols = _eliminate_units(ring, list(P.degrees), list(P.rels))
    M = FPModule(ring, degs, [])
    if cols:
        kept, basis = _minimal_columns(ring, M.order, cols, len(degs))
        M = FPModule(ring, degs, kept)
        M._basis = basis
    return M


def prune_with_syzygies(ring: QuotientRing, cols: list[dict], Z: list[dict]) -> tuple[list[int], list[dict]]:
    """Remove generators that some syzygy expresses through the others.

    ``Z`` generates all syzygies of ``cols`` (mod I).  Returns the indices of
    the kept columns and generators of the syzygies among them.
    """
    S = ring.S
    p = ring.char
    Z = [ring.reduce_vec(z) for z in Z]
    Z = [z for z in Z if z]
    alive = [True] * len(cols)
    while True:
        hit = None
        for zi, z in enumerate(Z):
            ce = _const_entry(z, S)
            if ce is not None:
                hit = (zi, ce[0], ce[1])
                break
        if hit is None:
            break
        zi, k, u = hit
        piv = Z.pop(zi)
        alive[k] = False
        inv = S.field.inv(u)
        new = []
        for z in Z:
            e = entry(z, k, S)
            if e:
                z = vec_add(z, poly_times_vec(scale(e, inv, p), piv, p), p, -1)
                z = ring.reduce_vec(z)
            if z:
                new.append(z)
        Z = new
    kept = [k for k in range(len(cols)) if alive[k]]
    if len(kept) != len(cols):
        newpos = {k: i for i, k in enumerate(kept)}
        ps = S.pos_shift
        mask = S.mon_mask
        Z = [{(t & mask) | (newpos[t >> ps] << ps): c for t, c in z.items()} for z in Z]
    return kept, Z


# --- annihilator ----------------------------------------------------------

def colon_vec(ring: QuotientRing, basis: _Basis, order: TermOrder, v: dict, rank: int) -> Ideal:
    """{r in S : r v in span(basis)} as an ideal of R."""
    if not v:
        return unit_ideal(ring)
    r, _ = basis.reduce(v, full=False)
    if _ is None:
        return unit_ideal(ring)
    syz = track_syzygies(ring.S, order, [v], fixed=[e.vec for e in basis.elems], rank=rank)
    return Ideal(ring, [Polynomial(ring.S, s) for s in syz])


def _annihilator(M: FPModule) -> Ideal:
    if M.is_zero():
        return unit_ideal(M.ring)
    basis = M.relation_basis()
    gens = sorted(M.generators(), key=lambda v: (len(v), sorted(v)))
    cur: Ideal | None = None
    for g in gens:
        if cur is not None:
            # skip if already everything in cur kills g
            if all(not M.reduce(poly_times_vec(f.terms, g, M.ring.char)) for f in cur.gens):
                continue
        J = colon_vec(M.ring, basis, M.order, g, M.rank)
        cur = J if cur is None else intersect([cur, J])
        if cur.is_zero():
            break
    return cur if cur is not None else unit_ideal(M.ring)


# --- maps -----------------------------------------------------------------

class ModuleMap:
    """Homogeneous map from a presented module to a module, by images of generators."""

    def __init__(self, source: FPModule, target: FPModule, images: Sequence[dict], check: bool = True):
        if not source.is_presented:
            raise StructuralError("map source must be presented")
        if source.ring is not target.ring:
            raise StructuralError("modules over different rings")
        if len(images) != source.rank:
            raise StructuralError("need one image per source generator")
        self.source = source
        self.target = target
        self.images = [target.ring.reduce_vec(v) for v in images]
        if check:
            for v, dg in zip(self.images, source.degrees):
                if v and vec_degree(v, target.degrees, target.S) != dg:
                    raise StructuralError("map is not homogeneous of degree 0")
            for r in source.rels:
                if target.reduce(self.apply(r)):
                    raise StructuralError("map is not well defined on relations")

    def apply(self, v: dict) -> dict:
        S = self.source.S
        p = S.char
        out: dict = {}
        for k in range(self.source.rank):
            e = entry(v, k, S)
            if e and self.images[k]:
                out = vec_add(out, poly_times_vec(e, self.images[k], p), p)
        return out

    def compose(self, other: "ModuleMap") -> "ModuleMap":
        """self after other."""
        return ModuleMap(other.source, self.target, [self.apply(v) for v in other.images])

    def is_zero(self) -> bool:
        return all(not self.target.reduce(v) for v in self.images)


def identity_map(M: FPModule) -> ModuleMap:
    P = M.presentation()
    return ModuleMap(P, P, P.generators())


def zero_map(M: FPModule, N: FPModule) -> ModuleMap:
    P = M.presentation()
    return ModuleMap(P, N, [{} for _ in range(P.rank)])


def multiplication_map(M: FPModule, f: Polynomial) -> ModuleMap:
    """Multiplication by a homogeneous f, as M(-deg f) -> M."""
    P = M.presentation()
    dg = f.total_weighted_degree() if f else 0
    src = P.shift(dg)
    return ModuleMap(src, P, [poly_times_vec(f.terms, g, M.ring.char) for g in P.generators()])


def kernel(f: ModuleMap) -> FPModule:
    T = f.target
    if not any(f.images):
        return f.source
    Z = track_syzygies(T.S, T.order, f.images, fixed=T.relgb(), rank=T.rank)
    src = f.source
    return FPModule(src.ring, src.degrees, [], gens=Z, fixed=src.relgb())


def image(f: ModuleMap) -> FPModule:
    T = f.target
    return FPModule(T.ring, T.degrees, T.rels, gens=f.images, fixed=T._fixed)


def cokernel(f: ModuleMap) -> FPModule:
    T = f.target
    return FPModule(T.ring, T.degrees, list(T.rels) + [v for v in f.images if v], gens=T.gens, fixed=T._fixed)


def homology(f: ModuleMap, g: ModuleMap) -> FPModule:
    """ker g / im f for A -f-> B -g-> C with B presented."""
    B = g.source
    if f.target is not B and f.target.presentation() is not B:
        raise StructuralError("maps are not composable")
    for v in f.images:
        if g.target.reduce(g.apply(v)):
            raise StructuralError("composite g o f is not zero")
    if any(g.images):
        Z = track_syzygies(B.S, g.target.order, g.images, fixed=g.target.relgb(), rank=g.target.rank)
    else:
        Z = B.generators()
    return FPModule(B.ring, B.degrees, list(B.rels) + [v for v in f.images if v], gens=Z)


# --- tensor and Hom -------------------------------------------------------

def tensor(M: FPModule, N: FPModule) -> FPModule:
    A, B = M.minimalize(), N.minimalize()
    S = A.S
    a, g = A.rank, B.rank
    degs = [da + db for da in A.degrees for db in B.degrees]
    rels = kron_identity(A.rels, g, S)
    ps = S.pos_shift
    mask = S.mon_mask
    for k in range(a):
        for r in B.rels:
            rels.append({(t & mask) | ((k * g + (t >> ps)) << ps): c for t, c in r.items()})
    return FPModule(M.ring, degs, rels)


def hom_module(M: FPModule, N: FPModule) -> FPModule:
    """Hom_R(M, N) as a subquotient of N^b, b = mu(M).

    Generator vectors z decode to maps via ``hom_decode``.
    """
    A, B = M.minimalize(), N.minimalize()
    S = A.S
    b, g = A.rank, B.rank
    if b == 0 or g == 0:
        return FPModule(M.ring, [], [])
    degs = [dn - dm for dm in A.degrees for dn in B.degrees]
    fixed_src = block_copies(B.relgb(), g, b, S)
    if not A.rels:
        return FPModule(M.ring, degs, [], fixed=fixed_src)
    col_degs = [vec_degree(c, A.degrees, S) for c in A.rels]
    tdegs = [dn - dc for dc in col_degs for dn in B.degrees]
    cols = kron_identity(transpose_matrix(A.rels, b, S), g, S)
    torder = TermOrder(S, None, tdegs)
    fixed_tgt = block_copies(B.relgb(), g, len(A.rels), S)
    Z = track_syzygies(S, torder, cols, fixed=fixed_tgt, rank=len(A.rels) * g)
    H = FPModule(M.ring, degs, [], gens=Z, fixed=fixed_src)
    H._cache["hom_of"] = (A, B)
    return H


def hom_decode(M: FPModule, N: FPModule, z: dict) -> ModuleMap:
    """Turn an element of Hom(M, N) (ambient vector of hom_module) into a map."""
    A, B = M.minimalize(), N.minimalize()
    S = A.S
    g = B.rank
    ps = S.pos_shift
    mask = S.mon_mask
    imgs = [dict() for _ in range(A.rank)]
    for t, c in z.items():
        pos = t >> ps
        imgs[pos // g][(t & mask) | ((pos % g) << ps)] = c
    return ModuleMap(A, B, imgs, check=False)


# --- Fitting ideals ---------------------------------------------------------

def _matrix_rows(P: FPModule) -> list[list[Polynomial]]:
    S = P.S
    return [[Polynomial(S, entry(c, k, S)) for c in P.rels] for k in range(P.rank)]


def fitting_ideal(M: FPModule, i: int) -> Ideal:
    """Ideal of (b-i)-minors of a presentation matrix (b generators)."""
    P = M.minimalize()
    b = P.rank
    k = b - i
    if k <= 0:
        return unit_ideal(M.ring)
    if k > len(P.rels):
        return zero_ideal(M.ring)
    return Ideal(M.ring, minors(_matrix_rows(P), k, M.ring.S.zero()))


def ideal_annihilator(J: Ideal) -> Ideal:
    """(0 :_R J)."""
    ring = J.ring
    if J.is_zero():
        return unit_ideal(ring)
    M = FPModule(ring, [0], [])
    basis = M.relation_basis()
    parts = [colon_vec(ring, basis, M.order, dict(g.terms), 1) for g in J.gens]
    return intersect(parts)


# --- resolutions ----------------------------------------------------------

@dataclass
class Resolution:
    """Minimal graded free resolution F_0 <- F_1 <- ... of a module.

    ``differentials[i-1]`` holds the columns of d_i : F_i -> F_{i-1};
    ``degrees[i]`` the generator degrees of F_i.  ``tail`` generates the
    kernel of the last stored differential (not minimized).  ``length`` is
    the projective dimension once the resolution has terminated.
    """

    module: FPModule
    degrees: list = field(default_factory=list)
    differentials: list = field(default_factory=list)
    tail: list = field(default_factory=list)
    length: int | None = None

    @property
    def ring(self) -> QuotientRing:
        return self.module.ring

    def betti(self) -> list[int]:
        return [len(d) for d in self.degrees]

    def computed(self) -> int:
        return len(self.differentials)

    def extend(self, L: int) -> "Resolution":
        ring = self.ring
        S = ring.S
        cap = get_limits().max_res_length
        while self.length is None and len(self.differentials) < L:
            i = len(self.differentials)
            if i + 1 > cap:
                raise ResourceLimitError("resolution length", i + 1, cap)
            rows = self.degrees[i]
            cols = self.tail
            if not cols:
                self.length = i
                break
            order = TermOrder(S, None, rows)
            Z = track_syzygies(S, order, cols, fixed=ring.ideal_lifts(len(rows)), rank=len(rows))
            kept, Z = prune_with_syzygies(ring, cols, Z)
            cols = [cols[k] for k in kept]
            self.differentials.append(cols)
            self.degrees.append([vec_degree(c, rows, S) for c in cols])
            self.tail = Z
            if not Z:
                self.length = i + 1
        return self

    def differential(self, i: int) -> list[dict]:
        """Columns of d_i (i >= 1); empty past the end of a finite resolution."""
        self.extend(i)
        if i - 1 < len(self.differentials):
            return self.differentials[i - 1]
        return []

    def rank(self, i: int) -> int:
        self.extend(i)
        return len(self.degrees[i]) if i < len(self.degrees) else 0

    def free_degrees(self, i: int) -> list[int]:
        self.extend(i)
        return list(self.degrees[i]) if i < len(self.degrees) else []

    def check_complex(self) -> bool:
        """d_i o d_{i+1} = 0 mod I for all stored differentials."""
        ring = self.ring
        S = ring.S
        p = ring.char
        for i in range(1, len(self.differentials)):
            d_prev = self.differentials[i - 1]
            for c in self.differentials[i]:
                acc: dict = {}
                for k in range(len(d_prev)):
                    e = entry(c, k, S)
                    if e:
                        acc = vec_add(acc, poly_times_vec(e, d_prev[k], p), p)
                if ring.reduce_vec(acc):
                    return False
        return True


def free_resolution(M: FPModule, L: int, level: str = "overR") -> Resolution:
    """Minimal free resolution of M to homological degree L.

    ``level="overS"`` resolves M as a module over the ambient polynomial ring
    (where the resolution is finite).
    """
    if level == "overS":
        M = over_ambient(M)
    elif level != "overR":
        raise StructuralError(f"unknown resolution level {level!r}")
    res = M._cache.get("resolution")
    if res is None:
        P = M.minimalize()
        res = Resolution(M, [list(P.degrees)], [], list(P.rels), None)
        if P.rank == 0:
            res.length = 0
        M._cache["resolution"] = res
    res.extend(L)
    if level == "overS" and res.length is None and L > M.ring.n:
        raise StructuralError("resolution over S longer than the number of variables")
    return res


def over_ambient(M: FPModule) -> FPModule:
    """M regarded as a module over S (relations gain I times the ambient)."""
    key = "over_ambient"
    MS = M._cache.get(key)
    if MS is None:
        P = M.minimalize()
        amb = P.ring.ambient()
        MS = FPModule(amb, P.degrees, list(P.rels) + P.ring.ideal_lifts(P.rank))
        M._cache[key] = MS
    return MS


def pd_over_S(M: FPModule) -> int:
    res = free_resolution(M, M.ring.n + 1, level="overS")
    if res.length is None:
        raise StructuralError("resolution over S did not terminate")
    return res.length


def depth(M: FPModule):
    """n - pd_S M (Auslander-Buchsbaum); +inf for the zero module."""
    if M.is_zero():
        return INF
    return M.ring.n - pd_over_S(M)


def support_dim(M: FPModule) -> int:
    return M.annihilator().dim()


def is_mcm(M: FPModule) -> bool:
    """depth M = dim R and full support (zero module counts as MCM)."""
    if M.is_zero():
        return True
    d = M.ring.d
    return depth(M) == d and support_dim(M) == d


def nonfree_locus(M: FPModule) -> Ideal:
    """Ideal E with V(E) = NF(M): ann Ext^1(M, Omega M)."""
    from .homological import stable_end_ann

    return stable_end_ann(M)


def dim_nf(M: FPModule) -> int:
    return nonfree_locus(M).dim()


def fitting_free_locus_ideal(M: FPModule) -> Ideal:
    """sum_r Fitt_r * (0 : Fitt_{r-1}); its zero set is the nonfree locus."""
    ring = M.ring
    P = M.minimalize()
    total = zero_ideal(ring)
    prev_ann = unit_ideal(ring)  # (0 : Fitt_{-1}) = (0 : 0) = R
    for r in range(0, P.rank + 1):
        F = fitting_ideal(P, r)
        total = total + F * prev_ann
        prev_ann = ideal_annihilator(F)
    return total
