"""Syzygies, transposes, Tor, Ext and the ideals built from them."""

from __future__ import annotations

from dataclasses import dataclass

from .groebner import TermOrder, track_syzygies
from .modules import (
    FPModule, block_copies, free_resolution, hom_module, is_mcm, kron_identity, transpose_matrix,
    vec_degree,
)
from .poly import Polynomial, StructuralError
from .ring import Ideal, canonical_module, unit_ideal


class TheoremViolation(RuntimeError):
    """Two routes that must agree by a proven identity disagreed (an engine bug)."""


class DomainError(StructuralError):
    pass


def zero_module(ring) -> FPModule:
    return FPModule(ring, [], [])


def _next_differential(res, i: int) -> list[dict]:
    """Generators of ker d_i as columns in F_i (minimal if already computed)."""
    res.extend(i)
    if res.length is not None and i >= res.length:
        return []
    if len(res.differentials) > i:
        return res.differentials[i]
    return res.tail


def syzygy(M: FPModule, j: int = 1) -> FPModule:
    """Omega^j M from a minimal resolution (Omega^0 M = M)."""
    if j < 0:
        raise StructuralError("syzygy index must be nonnegative")
    if j == 0:
        return M.minimalize()
    key = ("syz", j)
    if key in M._cache:
        return M._cache[key]
    res = free_resolution(M, j)
    if res.length is not None and j > res.length:
        out = zero_module(M.ring)
    else:
        degs = res.free_degrees(j)
        cols = _next_differential(res, j)
        out = FPModule(M.ring, degs, cols).minimalize()
    M._cache[key] = out
    return out


def transpose(M: FPModule) -> FPModule:
    """Auslander transpose from a minimal presentation."""
    if "tr" in M._cache:
        return M._cache["tr"]
    P = M.minimalize()
    S = P.S
    if not P.rels:
        out = zero_module(M.ring)
    else:
        col_degs = [vec_degree(c, P.degrees, S) for c in P.rels]
        cols = transpose_matrix(P.rels, P.rank, S)
        out = FPModule(M.ring, [-d for d in col_degs], cols).minimalize()
    M._cache["tr"] = out
    return out


def tor(M: FPModule, N: FPModule, i: int) -> FPModule:
    """Tor_i(M, N) = H_i(F(M) (x) N), as a subquotient of N^{b_i}."""
    if i < 0:
        raise StructuralError("Tor index must be nonnegative")
    key = ("tor", id(N), i)
    hit = M._cache.get(key)
    if hit is not None and hit[0] is N:
        return hit[1]
    ring = M.ring
    S = ring.S
    B = N.minimalize()
    g = B.rank
    res = free_resolution(M, i)
    degs_i = res.free_degrees(i)
    if g == 0 or not degs_i:
        out = zero_module(ring)
    else:
        amb = [df + dn for df in degs_i for dn in B.degrees]
        fixed_src = block_copies(B.relgb(), g, len(degs_i), S)
        if i == 0:
            K = None
        else:
            prev = res.free_degrees(i - 1)
            tdegs = [df + dn for df in prev for dn in B.degrees]
            cols = kron_identity(res.differential(i), g, S)
            K = track_syzygies(S, TermOrder(S, None, tdegs), cols,
                               fixed=block_copies(B.relgb(), g, len(prev), S), rank=len(tdegs))
        rels = kron_identity(_next_differential(res, i), g, S)
        out = FPModule(ring, amb, rels, gens=K, fixed=fixed_src)
    M._cache[key] = (N, out)
    return out


def ext(M: FPModule, N: FPModule, i: int) -> FPModule:
    """Ext^i(M, N) = H^i(Hom(F(M), N)), as a subquotient of N^{b_i}."""
    if i < 0:
        raise StructuralError("Ext index must be nonnegative")
    key = ("ext", id(N), i)
    hit = M._cache.get(key)
    if hit is not None and hit[0] is N:
        return hit[1]
    ring = M.ring
    S = ring.S
    B = N.minimalize()
    g = B.rank
    res = free_resolution(M, i)
    degs_i = res.free_degrees(i)
    if g == 0 or not degs_i:
        out = zero_module(ring)
    else:
        amb = [dn - df for df in degs_i for dn in B.degrees]
        fixed_src = block_copies(B.relgb(), g, len(degs_i), S)
        nxt = _next_differential(res, i)
        if nxt:
            ndegs = [vec_degree(c, degs_i, S) for c in nxt]
            tdegs = [dn - df for df in ndegs for dn in B.degrees]
            cols = kron_identity(transpose_matrix(nxt, len(degs_i), S), g, S)
            K = track_syzygies(S, TermOrder(S, None, tdegs), cols,
                               fixed=block_copies(B.relgb(), g, len(ndegs), S), rank=len(tdegs))
        else:
            K = None
        if i > 0:
            prev = res.free_degrees(i - 1)
            rels = kron_identity(transpose_matrix(res.differential(i), len(prev), S), g, S)
        else:
            rels = []
        out = FPModule(ring, amb, rels, gens=K, fixed=fixed_src)
    M._cache[key] = (N, out)
    return out


def stable_end_ann(M: FPModule) -> Ideal:
    """ann Ext^1(M, Omega M), cross-checked against ann Tor_1(M, Tr M)."""
    if "stable_end" in M._cache:
        return M._cache["stable_end"]
    a = ext(M, syzygy(M, 1), 1).annihilator()
    b = tor(M, transpose(M), 1).annihilator()
    if a != b:
        raise TheoremViolation(f"ann Ext^1(M, Omega M) = {a} but ann Tor_1(M, Tr M) = {b}")
    M._cache["stable_end"] = a
    return a


@dataclass
class ReflexivityVerdict:
    """Bounded evidence: ``ok`` means Ext vanished for every index tested."""

    ok: bool
    bound: int
    witness: tuple | None = None

    def __bool__(self):
        return self.ok


def is_totally_reflexive(M: FPModule, bound: int = 4) -> ReflexivityVerdict:
    if bound < 1:
        raise StructuralError("bound must be at least 1")
    R = FPModule(M.ring, [0], [])
    T = transpose(M)
    for i in range(1, bound + 1):
        if not ext(M, R, i).is_zero():
            return ReflexivityVerdict(False, bound, ("M", i))
        if not ext(T, R, i).is_zero():
            return ReflexivityVerdict(False, bound, ("Tr M", i))
    return ReflexivityVerdict(True, bound)


def trace_ideal(M: FPModule) -> Ideal:
    """Ideal generated by the entries of the generators of ker(Phi^T)."""
    ring = M.ring
    P = M.minimalize()
    S = P.S
    if P.rank == 0:
        from .ring import zero_ideal
        return zero_ideal(ring)
    if not P.rels:
        return unit_ideal(ring)
    col_degs = [vec_degree(c, P.degrees, S) for c in P.rels]
    cols = transpose_matrix(P.rels, P.rank, S)
    order = TermOrder(S, None, [-d for d in col_degs])
    Z = track_syzygies(S, order, cols, fixed=ring.ideal_lifts(len(col_degs)), rank=len(col_degs))
    ps = S.pos_shift
    mask = S.mon_mask
    gens = []
    for z in Z:
        parts: dict[int, dict] = {}
        for t, c in z.items():
            parts.setdefault(t >> ps, {})[t & mask] = c
        gens.extend(Polynomial(S, d) for d in parts.values())
    return Ideal(ring, gens)


def omega(ring) -> FPModule:
    return canonical_module(ring).module


def canonical_dual(M: FPModule, check_mcm: bool = False) -> FPModule:
    """Hom(M, omega)."""
    if check_mcm and not is_mcm(M):
        raise DomainError("canonical dual is only used on maximal Cohen-Macaulay modules")
    if "dagger" in M._cache:
        return M._cache["dagger"]
    out = hom_module(M, omega(M.ring)).minimalize()
    M._cache["dagger"] = out
    return out


def algebraic_dual(M: FPModule) -> FPModule:
    return hom_module(M, FPModule(M.ring, [0], [])).minimalize()


def cosyzygy(M: FPModule, j: int = 1, check: bool = True) -> FPModule:
    """(Omega^j (M^dagger))^dagger."""
    if j == 0:
        return M.minimalize()
    if check and not is_mcm(M):
        raise DomainError("cosyzygy needs a maximal Cohen-Macaulay module")
    return canonical_dual(syzygy(canonical_dual(M), j))
