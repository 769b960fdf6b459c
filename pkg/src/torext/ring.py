"""Graded quotient rings R = S/I and ideals of R."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .groebner import (
    GroebnerBasis, TermOrder, _Basis, _reduce, buchberger, dim_quotient, hilbert_function,
    ideal_intersect, radical_membership, track_syzygies,
)
from .poly import MonomialOrder, PolyRing, Polynomial, StructuralError, homogeneous_degree


class DegenerateRingError(StructuralError):
    """The defining ideal is the unit ideal."""


class NotCohenMacaulayError(StructuralError):
    pass


class QuotientRing:
    """R = S/I for a weighted polynomial ring S and a homogeneous ideal I.

    The reduced Groebner basis of I is computed once at construction.  An
    empty relation list gives R = S.
    """

    def __init__(self, S: PolyRing, relations: Sequence[Polynomial] = (), name: str | None = None):
        rels = []
        for f in relations:
            if not isinstance(f, Polynomial) or f.ring != S:
                raise StructuralError("relation from a different ring")
            if f.is_zero():
                continue
            if homogeneous_degree(f, S.weights) is None:
                raise StructuralError(f"relation {f} is not homogeneous for weights {list(S.weights)}")
            rels.append(f)
        self.S = S
        self.name = name or "R"
        self.relations = rels
        if rels:
            self.gb = buchberger(rels)
            if self.gb.is_unit():
                raise DegenerateRingError("defining ideal is the unit ideal")
            self.ideal_vecs = [dict(v) for v in self.gb.elements]
            self.d = dim_quotient(self.gb)
        else:
            self.gb = None
            self.ideal_vecs = []
            self.d = S.n
        self.n = S.n
        self.c = self.n - self.d
        self.char = S.char
        self._plain = TermOrder(S)
        self._ibasis = _Basis(self._plain)
        for v in self.ideal_vecs:
            self._ibasis.add(v, 0)
        self._lifts: dict[int, list] = {}
        self._cache: dict = {}

    def __repr__(self):
        return f"QuotientRing({self.name}: {list(self.S.names)} / {[str(f) for f in self.relations]})"

    @property
    def vars(self) -> list[Polynomial]:
        return self.S.gens()

    def parse(self, text: str) -> Polynomial:
        return self.S.parse(text)

    # reduction mod I -----------------------------------------------------
    def _find_i(self, term):
        mask = self.S.mon_mask
        m = term & mask
        for e in self._ibasis.elems:
            d = m - e.lt
            if d >= 0 and not (d & self.S.guard):
                # term - e.lt also carries the position, so e moves there
                return e
        return None

    def reduce_vec(self, v: dict) -> dict:
        """Reduce every entry of a vector modulo I (positions untouched)."""
        if not self.ideal_vecs or not v:
            return dict(v)
        out, _ = _reduce(v, self._find_i, self._plain.key, self.S, True, None)
        return out

    def reduce(self, f: Polynomial) -> Polynomial:
        return Polynomial(self.S, self.reduce_vec(f.terms))

    def is_zero(self, f: Polynomial) -> bool:
        return not self.reduce_vec(f.terms)

    def ideal_lifts(self, rank: int, offset: int = 0) -> list[dict]:
        """The Groebner basis of I placed in every position offset..offset+rank-1."""
        unit = self.S.pos_unit
        out = []
        for j in range(offset, offset + rank):
            sh = j * unit
            out.extend({t + sh: c for t, c in v.items()} for v in self.ideal_vecs)
        return out

    def ambient(self) -> "QuotientRing":
        """S itself viewed as a quotient ring with zero ideal."""
        if not self.relations:
            return self
        amb = self._cache.get("ambient")
        if amb is None:
            amb = QuotientRing(self.S, (), name=f"S({self.name})")
            self._cache["ambient"] = amb
        return amb

    def hilbert(self, D: int) -> list[int]:
        if self.gb is None:
            gb = GroebnerBasis(self.S, self._plain, [], 1, True)
        else:
            gb = self.gb
        hf = hilbert_function(gb, 0, D, [0])
        return [hf[k] for k in range(D + 1)]

    def ideal(self, gens: Iterable, certified: bool = False) -> "Ideal":
        gens = [self.parse(g) if isinstance(g, str) else g for g in gens]
        return Ideal(self, gens)

    def irrelevant(self) -> "Ideal":
        return Ideal(self, self.vars)


def define_ring(char: int, vars: Sequence[str], weights: Sequence[int] | None, relations, name: str | None = None
                ) -> QuotientRing:
    """Build R = F_p[vars]/(relations); relations may be strings or Polynomials."""
    S = PolyRing(vars, weights, char)
    rels = [S.parse(r) if isinstance(r, str) else r for r in relations]
    return QuotientRing(S, rels, name=name)


# --- ideals -------------------------------------------------------------------

class Ideal:
    """An ideal of R, stored by generators in S; I is always added implicitly."""

    kind = "ideal"

    def __init__(self, ring: QuotientRing, gens: Iterable[Polynomial]):
        self.ring = ring
        gl = []
        for g in gens:
            if g.ring != ring.S:
                raise StructuralError("ideal generator from a different ring")
            g = ring.reduce(g)
            if g:
                gl.append(g)
        self.gens = gl
        self._gb: GroebnerBasis | None = None
        self._canon: list[Polynomial] | None = None

    @property
    def gb(self) -> GroebnerBasis:
        """Reduced Groebner basis of gens + I in S."""
        if self._gb is None:
            allg = list(self.gens) + list(self.ring.relations)
            if not allg:
                self._gb = GroebnerBasis(self.ring.S, self.ring._plain, [], 1, True)
            else:
                self._gb = buchberger(allg)
        return self._gb

    def canonical(self) -> list[Polynomial]:
        """Reduced basis elements not already in I, largest leading term first."""
        if self._canon is None:
            out = [p for p in self.gb.polynomials() if not self.ring.is_zero(p)]
            self._canon = out
        return self._canon

    def to_strings(self) -> list[str]:
        """Canonical generators as text, sorted descending by grevlex leading monomial."""
        order = MonomialOrder("grevlex")
        S = self.ring.S

        def key(p):
            return max(order.key(S.unpack(m)) for m in p.terms)

        return [str(p) for p in sorted(self.canonical(), key=key, reverse=True)]

    def __repr__(self):
        return f"({', '.join(self.to_strings())})" if not self.is_zero() else "(0)"

    def is_zero(self) -> bool:
        return not self.canonical()

    def is_unit(self) -> bool:
        return self.gb.is_unit()

    def contains(self, f: Polynomial) -> bool:
        return not self.gb.reduce(f.terms)

    def __le__(self, other: "Ideal") -> bool:
        _same(self, other)
        return all(other.contains(g) for g in self.gens)

    def __ge__(self, other: "Ideal") -> bool:
        return other <= self

    def __eq__(self, other) -> bool:
        if not isinstance(other, Ideal) or other.ring is not self.ring:
            return NotImplemented
        return [p.terms for p in self.gb.polynomials()] == [p.terms for p in other.gb.polynomials()]

    def __hash__(self):
        return hash(tuple(self.to_strings()))

    def __add__(self, other: "Ideal") -> "Ideal":
        _same(self, other)
        return Ideal(self.ring, self.gens + other.gens)

    def __mul__(self, other: "Ideal") -> "Ideal":
        _same(self, other)
        return Ideal(self.ring, [f * g for f in self.gens for g in other.gens])

    def __pow__(self, k: int) -> "Ideal":
        out = Ideal(self.ring, [self.ring.S.one()])
        for _ in range(k):
            out = out * self
        return out

    def __and__(self, other: "Ideal") -> "Ideal":
        return intersect([self, other])

    def radical_contains(self, f: Polynomial) -> bool:
        return radical_membership(f, list(self.gens) + list(self.ring.relations))

    def radical_le(self, other: "Ideal") -> bool:
        """sqrt(self) contained in sqrt(other)."""
        return all(other.radical_contains(g) for g in self.gens)

    def dim(self) -> int:
        """Krull dimension of R/J (-1 if J is the unit ideal)."""
        return dim_quotient(self.gb)

    def height(self) -> int:
        return self.ring.d - self.dim()


def _same(a: Ideal, b: Ideal):
    if a.ring is not b.ring:
        raise StructuralError("ideals of different rings")


def unit_ideal(ring: QuotientRing) -> Ideal:
    return Ideal(ring, [ring.S.one()])


def zero_ideal(ring: QuotientRing) -> Ideal:
    return Ideal(ring, [])


def intersect(ideals: Sequence[Ideal]) -> Ideal:
    """Intersection of ideals of R (I is included in every lift)."""
    ideals = list(ideals)
    if not ideals:
        raise StructuralError("empty intersection")
    ring = ideals[0].ring
    cur = None
    for J in ideals:
        if J.is_unit():
            continue
        if cur is None:
            cur = J
            continue
        if cur <= J:
            continue
        if J <= cur:
            cur = J
            continue
        a = cur.gb.polynomials()
        b = J.gb.polynomials()
        cur = Ideal(ring, ideal_intersect(a, b))
    return cur if cur is not None else unit_ideal(ring)


def radical_equal(I: Ideal, J: Ideal) -> bool:
    return I.radical_le(J) and J.radical_le(I)


# --- ring invariants ----------------------------------------------------------

def _det(rows: list[list[Polynomial]], zero: Polynomial) -> Polynomial:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = zero
    for j in range(n):
        if rows[0][j].is_zero():
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * _det(minor, zero)
        total = total + term if j % 2 == 0 else total - term
    return total


def minors(matrix: list[list[Polynomial]], k: int, zero: Polynomial) -> list[Polynomial]:
    """All nonzero k x k minors of a matrix given as a list of rows."""
    if k == 0:
        return [zero + 1]
    nr = len(matrix)
    nc = len(matrix[0]) if matrix else 0
    out = []
    for rs in combinations(range(nr), k):
        for cs in combinations(range(nc), k):
            m = _det([[matrix[r][c] for c in cs] for r in rs], zero)
            if m:
                out.append(m)
    return out


def jacobian(ring: QuotientRing) -> list[list[Polynomial]]:
    gens = [p for p in ring.gb.polynomials()] if ring.gb is not None else []
    return [[f.derivative(i) for i in range(ring.n)] for f in gens]


def singular_locus(ring: QuotientRing) -> Ideal:
    """Jacobian ideal: I plus the c x c minors of the Jacobian, c = n - d."""
    if ring.c == 0:
        return unit_ideal(ring)
    J = jacobian(ring)
    return Ideal(ring, minors(J, ring.c, ring.S.zero()))


@dataclass
class CanonicalModule:
    module: object
    mu: int


def canonical_module(ring: QuotientRing) -> CanonicalModule:
    """omega = Ext^{n-d}_S(R, S), from the minimal S-resolution of R; twist dropped."""
    cm = ring._cache.get("omega")
    if cm is not None:
        return cm
    from .modules import FPModule, free_resolution

    if not ring.relations:
        om = FPModule(ring, [0], [])
        cm = CanonicalModule(om, 1)
        ring._cache["omega"] = cm
        return cm
    amb = ring.ambient()
    RS = FPModule(amb, [0], [dict(v) for v in ring.ideal_vecs])
    res = free_resolution(RS, ring.n + 1)
    pd = res.length
    if pd != ring.c:
        raise NotCohenMacaulayError(f"pd_S R = {pd} but n - d = {ring.c}; R is not Cohen-Macaulay")
    c = ring.c
    from .modules import transpose_matrix

    d_c = res.differential(c)               # F_c -> F_{c-1}
    cols = transpose_matrix(d_c, len(res.degrees[c - 1]), ring.S)  # F_{c-1}^* -> F_c^*
    top = max(res.degrees[c])
    degs = [top - e for e in res.degrees[c]]
    om = FPModule(ring, degs, cols).minimalize()
    cm = CanonicalModule(om, len(om.degrees))
    ring._cache["omega"] = cm
    return cm


def is_gorenstein(ring: QuotientRing) -> bool:
    return canonical_module(ring).mu == 1


def nongor_locus(ring: QuotientRing) -> Ideal:
    """tr(omega); its zero set is the non-Gorenstein locus."""
    from .homological import trace_ideal

    key = "nongor"
    if key not in ring._cache:
        ring._cache[key] = trace_ideal(canonical_module(ring).module)
    return ring._cache[key]
