from __future__ import annotations

import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from torext import fixtures as fx
from torext.homological import ext, tor
from torext.linalg import nullspace, rank, rref
from torext.modules import cyclic_module
from torext.oracle import DegreewiseRing, cross_check, oracle_tor_ext
from torext.poly import StructuralError
from torext.ring import define_ring

RINGS = {"H2": fx.h2(), "H3": fx.h3(), "C345": fx.c345(), "Q2": fx.q2()}


def test_linear_algebra_mod_p():
    p = 101
    A = np.array([[1, 2, 3], [2, 4, 6], [0, 1, 1]], dtype=np.int64)
    assert rank(A, p) == 2
    K = nullspace(A, p)
    assert K.shape[0] == 1
    assert not (A @ K.T % p).any()
    R, piv = rref(A, p)
    assert list(piv) == [0, 1]


def test_degreewise_pieces():
    DR = DegreewiseRing(RINGS["C345"])
    assert [DR.dim(d) for d in range(9)] == [1, 0, 0, 1, 1, 1, 1, 1, 1]
    DR = DegreewiseRing(RINGS["H2"])
    assert [DR.dim(d) for d in range(5)] == [1, 2, 2, 2, 2]


def test_needs_prime_field():
    with pytest.raises(StructuralError):
        DegreewiseRing(define_ring(0, ["x"], None, []))


def test_tor_table_h2():
    """Tor_h(I_2, R/I_1) is two copies of k, generated in the degrees of F_h."""
    R = RINGS["H2"]
    t = oracle_tor_ext(fx.hyper_ideal(R, 2), fx.hyper_quotient(R, 1), 1, 6)
    assert sum(t.hilbert(0, 6)) == 2
    assert t.hilbert(0, 6) == tor(fx.hyper_ideal(R, 2), fx.hyper_quotient(R, 1), 1).hilbert(0, 6)


@pytest.mark.parametrize("kind", ["tor", "ext"])
@pytest.mark.parametrize("name", ["H2", "C345", "Q2"])
def test_residue_field_cross_check(name, kind):
    R = RINGS[name]
    k = cyclic_module(R, [str(v) for v in R.S.gens()])
    for i in (1, 2):
        r = cross_check(k, k, i, kind, 6)
        assert r["hilbert_ok"] and r["ann_ok"], r


def _random(name, seed):
    return fx.random_module(RINGS[name], random.Random(seed))


@given(st.sampled_from(["H2", "H3", "C345"]), st.integers(0, 10 ** 6), st.integers(1, 2),
       st.sampled_from(["tor", "ext"]))
@settings(max_examples=20, deadline=None)
def test_routes_agree_on_random_pairs(name, seed, i, kind):
    M, N = _random(name, seed), _random(name, seed + 11)
    r = cross_check(M, N, i, kind, 6)
    assert r["hilbert_ok"], r
    assert r["ann_ok"], r


def test_engine_and_oracle_see_the_same_module():
    R = RINGS["H2"]
    M, N = fx.hyper_quotient(R, 2), fx.hyper_ideal(R, 3)
    T = ext(M, N, 2)
    r = cross_check(M, N, 2, "ext", 8)
    assert r["engine"] == T.hilbert(r["lo"], r["lo"] + 8)
    assert r["ann"] == T.annihilator().to_strings()
