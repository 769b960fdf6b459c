"""Standard rings and modules used by the tests, demos and bundled scenarios,
plus a seeded generator of random graded modules."""

from __future__ import annotations

import random

from .modules import FPModule, cyclic_module, free_module, ideal_module, make_module
from .ring import QuotientRing, define_ring

CHAR = 101


def h2(char: int = CHAR) -> QuotientRing:
    """k[x,y]/(x^2)."""
    return define_ring(char, ["x", "y"], None, ["x^2"], name="H2")


def h3(char: int = CHAR) -> QuotientRing:
    """k[x,y,z]/(x^2)."""
    return define_ring(char, ["x", "y", "z"], None, ["x^2"], name="H3")


def c345(char: int = CHAR) -> QuotientRing:
    """The monomial curve k[t^3, t^4, t^5] with a, b, c of weights 3, 4, 5."""
    return define_ring(char, ["a", "b", "c"], [3, 4, 5], ["b^2-a*c", "c^2-a^2*b", "b*c-a^3"], name="C345")


def q2(char: int = CHAR) -> QuotientRing:
    """k[x,y]/(x,y)^2."""
    return define_ring(char, ["x", "y"], None, ["x^2", "x*y", "y^2"], name="Q2")


def smooth(char: int = CHAR) -> QuotientRing:
    """k[x,y]/(y - x^2) with y of weight 2 (a polynomial ring in disguise)."""
    return define_ring(char, ["x", "y"], [1, 2], ["y-x^2"], name="Smooth")


def hyper_ideal(R: QuotientRing, j: int) -> FPModule:
    """The ideal (x, y^j) of k[x,y]/(x^2), presented by a 2x2 matrix factorization."""
    return make_module(R, [0, j - 1], [["x", "0"], [f"y^{j}", "-x"]], name=f"I{j}")


def hyper_quotient(R: QuotientRing, j: int) -> FPModule:
    """R/(x, y^j)."""
    M = cyclic_module(R, ["x", f"y^{j}"])
    M.name = f"R/I{j}"
    return M


def ring_module(R: QuotientRing) -> FPModule:
    M = free_module(R, [0])
    M.name = "R"
    return M


def named(M: FPModule, name: str) -> FPModule:
    M.name = name
    return M


def random_module(R: QuotientRing, rng: random.Random, max_gens: int = 2, max_rels: int = 3,
                  max_deg: int = 2, density: float = 0.5) -> FPModule:
    """A random graded cokernel: generator degrees in {0, w} for w the lightest
    weight, homogeneous relation columns of small degree with sparse random
    coefficients."""
    S = R.S
    w = min(S.weights)
    b = rng.randint(1, max_gens)
    degs = [rng.choice([0, w]) for _ in range(b)]
    top = max(S.weights)
    cols = []
    for _ in range(rng.randint(1, max_rels)):
        # any degree up to max_deg steps of the heaviest variable, so that
        # weighted rings see relations beyond powers of the lightest one
        e = max(degs) + rng.randint(w, max_deg * top)
        col = []
        for g in degs:
            mons = S.monomials_of_degree(e - g) if e >= g else []
            terms = {}
            for m in mons:
                if rng.random() < density:
                    terms[m] = rng.randint(1, R.char - 1)
            col.append(terms)
        if not any(col):
            k = rng.randrange(b)
            mons = S.monomials_of_degree(e - degs[k])
            if mons:
                col[k] = {rng.choice(mons): 1}
        v = {}
        for k, terms in enumerate(col):
            for m, c in terms.items():
                v[m | (k << S.pos_shift)] = S.field(c)
        cols.append(v)
    return FPModule(R, degs, cols)


def random_cyclic(R: QuotientRing, rng: random.Random, max_gens: int = 2, max_deg: int = 2) -> FPModule:
    """R/J for J generated by a few random monomials."""
    S = R.S
    gens = []
    for _ in range(rng.randint(1, max_gens)):
        e = min(S.weights) * rng.randint(1, max_deg)
        mons = S.monomials_of_degree(e)
        gens.append(str(_mono(S, rng.choice(mons))))
    return cyclic_module(R, gens)


def _mono(S, m):
    from .poly import Polynomial

    return Polynomial(S, {m: S.field(1)})


def ideal_as_module(R: QuotientRing, gens, name: str | None = None) -> FPModule:
    M = ideal_module(R, gens)
    M.name = name
    return M
