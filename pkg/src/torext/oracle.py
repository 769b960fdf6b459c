"""Degreewise linear-algebra route to Tor and Ext.

Nothing here touches the Groebner engine.  Each graded piece R_d is
S_d modulo the span of monomial multiples of the defining relations (row
reduced), modules are tensored and dualized as explicit matrices of
polynomials, and a free resolution is built one degree at a time by taking
kernels and picking complements of the part generated from lower degrees.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .linalg import left_nullspace, nullspace, rank, row_basis, rref, span_contains
from .poly import StructuralError

# a polynomial matrix is a list of columns; a column maps row index -> {monomial: coeff}
PolyCols = list


class DegreewiseRing:
    """Graded pieces of R = S/I with standard-monomial coordinates."""

    def __init__(self, ring):
        if not ring.char:
            raise StructuralError("the degreewise oracle needs a prime field")
        self.ring = ring
        self.S = ring.S
        self.p = ring.char
        self._pieces: dict[int, tuple] = {}
        self._mult: dict[tuple, np.ndarray] = {}

    def piece(self, d: int):
        """(monomials, index, rref rows of I_d, pivots, standard indices)."""
        pc = self._pieces.get(d)
        if pc is not None:
            return pc
        S = self.S
        if d < 0:
            pc = ([], {}, np.zeros((0, 0), dtype=np.int64), [], [])
            self._pieces[d] = pc
            return pc
        mons = S.monomials_of_degree(d)
        index = {m: i for i, m in enumerate(mons)}
        rows = []
        for f in self.ring.relations:
            e = f.total_weighted_degree()
            if e > d:
                continue
            for m in S.monomials_of_degree(d - e):
                v = np.zeros(len(mons), dtype=np.int64)
                for t, c in f.terms.items():
                    v[index[t + m]] = c
                rows.append(v)
        if rows:
            R, piv = rref(np.array(rows), self.p)
        else:
            R, piv = np.zeros((0, len(mons)), dtype=np.int64), []
        pset = set(piv)
        std = [i for i in range(len(mons)) if i not in pset]
        pc = (mons, index, R, piv, std)
        self._pieces[d] = pc
        return pc

    def dim(self, d: int) -> int:
        return len(self.piece(d)[4])

    def to_std(self, d: int, v: np.ndarray) -> np.ndarray:
        mons, index, R, piv, std = self.piece(d)
        if len(piv):
            v = (v - v[piv] @ R) % self.p
        return v[std] % self.p

    def std_monomials(self, d: int) -> list[int]:
        mons, _, _, _, std = self.piece(d)
        return [mons[i] for i in std]

    def mult_matrix(self, f: dict, d: int) -> np.ndarray:
        """Matrix of multiplication by the homogeneous f from R_d to R_{d+deg f}."""
        if not f:
            raise StructuralError("zero multiplier has no degree")
        e = self.S.wdeg(next(iter(f)))
        key = (tuple(sorted(f.items())), d)
        M = self._mult.get(key)
        if M is not None:
            return M
        src = self.std_monomials(d)
        mons, index, _, _, _ = self.piece(d + e)
        out = np.zeros((self.dim(d + e), len(src)), dtype=np.int64)
        for j, m in enumerate(src):
            v = np.zeros(len(mons), dtype=np.int64)
            for t, c in f.items():
                v[index[t + m]] = (v[index[t + m]] + c) % self.p
            out[:, j] = self.to_std(d + e, v)
        self._mult[key] = out
        return out

    def free_dims(self, degs: Sequence[int], d: int) -> list[int]:
        return [self.dim(d - a) for a in degs]

    def map_matrix(self, cols: PolyCols, src: Sequence[int], tgt: Sequence[int], d: int) -> np.ndarray:
        """Degree-d piece of the map given by polynomial columns (degree 0 map)."""
        rd = self.free_dims(tgt, d)
        cd = self.free_dims(src, d)
        roff = np.concatenate([[0], np.cumsum(rd)]).astype(int)
        coff = np.concatenate([[0], np.cumsum(cd)]).astype(int)
        out = np.zeros((int(roff[-1]), int(coff[-1])), dtype=np.int64)
        for k, col in enumerate(cols):
            if cd[k] == 0:
                continue
            for r, f in col.items():
                if not f or rd[r] == 0:
                    continue
                out[roff[r]:roff[r + 1], coff[k]:coff[k + 1]] = self.mult_matrix(f, d - src[k])
        return out

    def element_to_column(self, vec: np.ndarray, degs: Sequence[int], d: int) -> dict:
        """Coordinates of an element of a free module in degree d -> polynomial column."""
        col: dict[int, dict] = {}
        off = 0
        for k, a in enumerate(degs):
            basis = self.std_monomials(d - a)
            n = len(basis)
            part = vec[off:off + n]
            off += n
            poly = {m: int(c) for m, c in zip(basis, part) if c % self.p}
            if poly:
                col[k] = poly
        return col

    def ideal_piece(self, gens, e: int) -> np.ndarray:
        """Row basis of the degree-e piece of the ideal generated by ``gens`` in R_e."""
        rows = []
        for g in gens:
            terms = g.terms if hasattr(g, "terms") else g
            if not terms:
                continue
            dg = self.S.wdeg(next(iter(terms)))
            if dg > e:
                continue
            for m in self.S.monomials_of_degree(e - dg):
                prod: dict = {}
                for t, c in terms.items():
                    prod[t + m] = (prod.get(t + m, 0) + c) % self.p
                mons, index, _, _, _ = self.piece(e)
                v = np.zeros(len(mons), dtype=np.int64)
                for t, c in prod.items():
                    v[index[t]] = c
                rows.append(self.to_std(e, v))
        if not rows:
            return np.zeros((0, self.dim(e)), dtype=np.int64)
        return row_basis(np.array(rows), self.p)


def module_data(M) -> tuple[list[int], PolyCols]:
    """(generator degrees, relation columns) of a presented module."""
    P = M if M.is_presented else M.presentation()
    S = P.S
    ps = S.pos_shift
    mask = S.mon_mask
    cols = []
    for v in P.rels:
        col: dict[int, dict] = {}
        for t, c in v.items():
            col.setdefault(t >> ps, {})[t & mask] = c
        cols.append(col)
    return list(P.degrees), cols


def _col_degree(DR: DegreewiseRing, col: dict, src: Sequence[int]) -> int:
    for r, f in col.items():
        if f:
            return DR.S.wdeg(next(iter(f))) + src[r]
    raise StructuralError("zero column")


def transpose_cols(cols: PolyCols, nrows: int) -> PolyCols:
    out = [dict() for _ in range(nrows)]
    for k, col in enumerate(cols):
        for r, f in col.items():
            if f:
                out[r][k] = f
    return out


def tensor_identity(cols: PolyCols, g: int) -> PolyCols:
    """A (x) Id_g with index (k, l) -> k*g + l."""
    out = []
    for col in cols:
        for l in range(g):
            out.append({r * g + l: f for r, f in col.items()})
    return out


def identity_tensor(cols: PolyCols, a: int, g: int) -> PolyCols:
    """Id_a (x) B for B with g rows."""
    out = []
    for k in range(a):
        for col in cols:
            out.append({k * g + r: f for r, f in col.items()})
    return out


@dataclass
class OracleResolution:
    degrees: list = field(default_factory=list)   # degrees[i] = generator degrees of F_i
    differentials: list = field(default_factory=list)  # differentials[i-1] = columns of d_i
    bound: int = 0


def oracle_resolution(DR: DegreewiseRing, degs0: Sequence[int], rel_cols: PolyCols, length: int,
                      bound: int) -> OracleResolution:
    """Free resolution of coker(rel_cols) up to F_length, generators in degrees <= bound.

    d_1 is the given presentation; every later differential is minimal.
    """
    p = DR.p
    S = DR.S
    res = OracleResolution([list(degs0)], [], bound)
    cols = [c for c in rel_cols if any(c.values())]
    res.degrees.append([_col_degree(DR, c, degs0) for c in cols])
    res.differentials.append(cols)
    weights = list(S.weights)
    var_mons = [S.pack([1 if j == i else 0 for j in range(S.n)]) for i in range(S.n)]
    for i in range(1, length):
        src = res.degrees[i]
        tgt = res.degrees[i - 1]
        d_i = res.differentials[i - 1]
        new_cols, new_degs = [], []
        if src:
            kernels: dict[int, np.ndarray] = {}
            for d in range(min(src), bound + 1):
                Dm = DR.map_matrix(d_i, src, tgt, d)
                n = Dm.shape[1]
                if n == 0:
                    kernels[d] = np.zeros((0, 0), dtype=np.int64)
                    continue
                K = nullspace(Dm, p) if Dm.shape[0] else np.eye(n, dtype=np.int64)
                kernels[d] = K
                if K.shape[0] == 0:
                    continue
                gen_rows = []
                for vm, w in zip(var_mons, weights):
                    Kp = kernels.get(d - w)
                    if Kp is None or Kp.size == 0:
                        continue
                    X = _free_mult(DR, {vm: 1}, src, d - w)
                    gen_rows.append((X @ Kp.T % p).T)
                span = np.vstack(gen_rows) % p if gen_rows else np.zeros((0, n), dtype=np.int64)
                r0 = rank(span, p) if span.size else 0
                cur = span
                for row in K:
                    trial = np.vstack([cur, row[None, :]]) if cur.size else row[None, :]
                    r1 = rank(trial, p)
                    if r1 > r0:
                        cur, r0 = trial, r1
                        new_cols.append(DR.element_to_column(row, src, d))
                        new_degs.append(d)
        res.degrees.append(new_degs)
        res.differentials.append(new_cols)
        if not new_cols:
            break
    return res


def _free_mult(DR: DegreewiseRing, f: dict, degs: Sequence[int], d: int) -> np.ndarray:
    """Block-diagonal multiplication by f on a free module, degree d to d + deg f."""
    e = DR.S.wdeg(next(iter(f)))
    src = DR.free_dims(degs, d)
    tgt = DR.free_dims(degs, d + e)
    out = np.zeros((sum(tgt), sum(src)), dtype=np.int64)
    ro = co = 0
    for a, ns, nt in zip(degs, src, tgt):
        if ns and nt:
            out[ro:ro + nt, co:co + ns] = DR.mult_matrix(f, d - a)
        ro += nt
        co += ns
    return out


@dataclass
class OracleTable:
    """Per-degree dimensions and the truncated annihilator of a homology module."""

    kind: str
    index: int
    window: tuple
    dims: dict
    ann: dict = field(default_factory=dict)   # e -> row basis of ann_e inside R_e

    def hilbert(self, lo: int, hi: int) -> list[int]:
        return [self.dims.get(d, 0) for d in range(lo, hi + 1)]


class _TensoredComplex:
    """C+ --in--> C0 --out--> C-, each tensored with N = coker(psi)."""

    def __init__(self, DR, ndegs, psi, degs_plus, d_in, degs0, d_out, degs_minus):
        g = len(ndegs)
        self.DR = DR
        self.p = DR.p
        self.V0 = [a + c for a in degs0 for c in ndegs]
        self.Vp = [a + c for a in degs_plus for c in ndegs]
        self.Vm = [a + c for a in degs_minus for c in ndegs]
        rel_degs = [_col_degree(DR, c, ndegs) for c in psi]
        self.W0src = [a + r for a in degs0 for r in rel_degs]
        self.Wmsrc = [a + r for a in degs_minus for r in rel_degs]
        self.W0 = identity_tensor(psi, len(degs0), g)
        self.Wm = identity_tensor(psi, len(degs_minus), g)
        self.Din = tensor_identity(d_in, g)
        self.Dout = tensor_identity(d_out, g)
        self._cycles: dict = {}
        self._quot: dict = {}

    def cycles(self, d: int) -> np.ndarray:
        """Rows spanning {v in V0_d : Dout v in image of Wm}."""
        Z = self._cycles.get(d)
        if Z is not None:
            return Z
        DR, p = self.DR, self.p
        n = sum(DR.free_dims(self.V0, d))
        if n == 0:
            Z = np.zeros((0, 0), dtype=np.int64)
        elif not self.Vm or sum(DR.free_dims(self.Vm, d)) == 0:
            Z = np.eye(n, dtype=np.int64)
        else:
            D = DR.map_matrix(self.Dout, self.V0, self.Vm, d)
            W = DR.map_matrix(self.Wm, self.Wmsrc, self.Vm, d)
            big = np.hstack([D, (-W) % p]) if W.size else D
            N = nullspace(big, p)
            Z = row_basis(N[:, :n], p) if N.size else np.zeros((0, n), dtype=np.int64)
        self._cycles[d] = Z
        return Z

    def boundary_cols(self, d: int) -> np.ndarray:
        DR = self.DR
        parts = []
        n = sum(DR.free_dims(self.V0, d))
        if self.W0:
            W = DR.map_matrix(self.W0, self.W0src, self.V0, d)
            if W.size:
                parts.append(W)
        if self.Vp and self.Din:
            B = DR.map_matrix(self.Din, self.Vp, self.V0, d)
            if B.size:
                parts.append(B)
        if not parts:
            return np.zeros((n, 0), dtype=np.int64)
        return np.hstack(parts)

    def quotient_map(self, d: int) -> np.ndarray:
        """Rows y with y v = 0 exactly for v in the boundaries (plus relations) of degree d."""
        Q = self._quot.get(d)
        if Q is None:
            B = self.boundary_cols(d)
            n = B.shape[0]
            if B.shape[1] == 0:
                Q = np.eye(n, dtype=np.int64)
            else:
                Q = left_nullspace(B, self.p)
            self._quot[d] = Q
        return Q

    def dim(self, d: int) -> int:
        Z = self.cycles(d)
        if Z.size == 0:
            return 0
        B = self.boundary_cols(d)
        rb = rank(B.T, self.p) if B.size else 0
        return Z.shape[0] - rb

    def ann_piece(self, e: int, lo: int, hi: int) -> np.ndarray:
        """Row basis of {r in R_e : r Z_d in B_{d+e} for lo <= d <= hi}."""
        DR, p = self.DR, self.p
        mons = DR.std_monomials(e)
        nr = len(mons)
        if nr == 0:
            return np.zeros((0, 0), dtype=np.int64)
        blocks = []
        for d in range(lo, hi + 1):
            Z = self.cycles(d)
            if Z.size == 0:
                continue
            Q = self.quotient_map(d + e)
            if Q.size == 0:
                continue
            cols = []
            for m in mons:
                X = _free_mult(DR, {m: 1}, self.V0, d)
                cols.append((Q @ (X @ Z.T % p)) % p)   # (q, nz)
            # constraint: sum_m r_m * cols[m][:, j] = 0 for every j
            C = np.stack([c.reshape(-1) for c in cols], axis=1)
            blocks.append(C)
        if not blocks:
            return np.eye(nr, dtype=np.int64)
        A = np.vstack(blocks) % p
        return row_basis(nullspace(A, p), p) if A.size else np.eye(nr, dtype=np.int64)


def _prepare(M, N, i: int, kind: str, bound: int, DR: DegreewiseRing | None = None):
    if M.ring is not N.ring:
        raise StructuralError("modules over different rings")
    DR = DR or DegreewiseRing(M.ring)
    mdegs, mcols = module_data(M)
    ndegs, psi = module_data(N)
    res = oracle_resolution(DR, mdegs, mcols, i + 1, bound)

    def F(j):
        return res.degrees[j] if 0 <= j < len(res.degrees) else []

    def d(j):
        return res.differentials[j - 1] if 1 <= j <= len(res.differentials) else []

    if kind == "tor":
        cx = _TensoredComplex(DR, ndegs, psi, F(i + 1), d(i + 1), F(i), d(i), F(i - 1) if i > 0 else [])
    elif kind == "ext":
        fi = F(i)
        dual = lambda degs: [-a for a in degs]
        d_in = transpose_cols(d(i), len(F(i - 1))) if i > 0 else []
        d_out = transpose_cols(d(i + 1), len(fi))
        # transposes run F_{i-1}^* -> F_i^* and F_i^* -> F_{i+1}^*
        cx = _TensoredComplex(DR, ndegs, psi, dual(F(i - 1)) if i > 0 else [], d_in, dual(fi), d_out,
                              dual(F(i + 1)))
    else:
        raise StructuralError(f"unknown kind {kind!r}")
    return DR, res, cx


def oracle_tor_ext(M, N, i: int, D: int, kind: str = "tor", lo: int = 0, ann_degree: int = 8,
                   res_bound: int | None = None, DR: DegreewiseRing | None = None) -> OracleTable:
    """Degreewise Tor_i(M, N) or Ext^i(M, N) in degrees lo..lo+D.

    The annihilator piece of degree e (e <= ann_degree) is the set of r in
    R_e sending every cycle of degree lo..lo+D into the boundaries.  For
    Tor the resolution only needs generators up to the top degree in play;
    Ext needs every generator of F_{i-1}, F_i, F_{i+1}, so the degree bound
    is grown until the last generator sits well below it.
    """
    if M.ring is not N.ring:
        raise StructuralError("modules over different rings")
    hi = lo + D
    DR = DR or DegreewiseRing(M.ring)
    ndegs = module_data(N)[0]
    mdegs = module_data(M)[0]
    if kind == "tor":
        bound = res_bound if res_bound is not None else hi + ann_degree - min(ndegs or [0])
        DR, res, cx = _prepare(M, N, i, kind, bound, DR)
    else:
        gap = 2 * max(M.ring.S.weights) + 2
        bound = res_bound if res_bound is not None else max(mdegs or [0]) + (i + 2) * gap
        for _ in range(6):
            DR, res, cx = _prepare(M, N, i, kind, bound, DR)
            top = max((a for degs in res.degrees[:i + 2] for a in degs), default=0)
            if res_bound is not None or top <= bound - gap:
                break
            bound += 2 * gap
        else:
            raise StructuralError("oracle resolution did not stabilize")
    dims = {d: cx.dim(d) for d in range(lo, hi + 1)}
    ann = {e: cx.ann_piece(e, lo, hi) for e in range(ann_degree + 1)}
    t = OracleTable(kind, i, (lo, hi), dims, ann)
    t.resolution = res
    return t


def ann_matches(DR: DegreewiseRing, table: OracleTable, ideal_gens, upto: int) -> bool:
    """True iff the ideal's pieces equal the oracle's truncated annihilator for e <= upto."""
    p = DR.p
    for e in range(upto + 1):
        A = table.ann.get(e)
        J = DR.ideal_piece(ideal_gens, e)
        ra = A.shape[0] if A is not None and A.size else 0
        rj = J.shape[0] if J.size else 0
        if ra != rj:
            return False
        if rj and not span_contains(A, J, p):
            return False
    return True


def cross_check(M, N, i: int, kind: str = "tor", D: int = 8, DR: DegreewiseRing | None = None) -> dict:
    """Compare the resolution route with the degreewise route for one Tor/Ext.

    Hilbert functions are compared on D+1 degrees from the lowest generator
    degree of the engine's module, annihilators on pieces of degree <= D.
    """
    from .homological import ext, tor

    T = tor(M, N, i) if kind == "tor" else ext(M, N, i)
    DR = DR or DegreewiseRing(M.ring)
    lo = min(T.minimalize().degrees) if not T.is_zero() else 0
    Mp, Np = M.presentation(), N.presentation()
    table = oracle_tor_ext(Mp, Np, i, D, kind, lo=lo, ann_degree=D, DR=DR)
    h_engine = T.hilbert(lo, lo + D)
    h_oracle = table.hilbert(lo, lo + D)
    ann = T.annihilator()
    ann_ok = ann_matches(DR, table, ann.gb.polynomials(), D)
    return {"hilbert_ok": h_engine == h_oracle, "ann_ok": ann_ok, "lo": lo,
            "engine": h_engine, "oracle": h_oracle, "ann": ann.to_strings()}
