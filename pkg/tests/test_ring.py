from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from torext import fixtures as fx
from torext.ring import (
    DegenerateRingError, NotCohenMacaulayError, canonical_module, define_ring, intersect, is_gorenstein,
    nongor_locus, radical_equal, singular_locus, unit_ideal, zero_ideal,
)
from torext.poly import StructuralError


def test_dimensions(H2, H3, C345, Q2):
    assert (H2.d, H3.d, C345.d, Q2.d) == (1, 2, 1, 0)
    assert fx.smooth().d == 1


def test_hilbert_functions(H2, C345, Q2):
    assert H2.hilbert(5) == [1, 2, 2, 2, 2, 2]
    assert Q2.hilbert(3) == [1, 2, 0, 0]
    assert C345.hilbert(8) == [1, 0, 0, 1, 1, 1, 1, 1, 1]


def test_rejects_bad_rings():
    with pytest.raises(DegenerateRingError):
        define_ring(101, ["x"], None, ["x - x + 1"])
    with pytest.raises(StructuralError):
        define_ring(101, ["x", "y"], None, ["x - y^2"])
    with pytest.raises(StructuralError):
        define_ring(12, ["x"], None, [])


def test_ideal_arithmetic(H2):
    R = H2
    x, y = R.parse("x"), R.parse("y")
    I = R.ideal([x, y ** 2])
    J = R.ideal([y])
    assert (I + J) == R.ideal([x, y])
    assert (I * J) == R.ideal([x * y, y ** 3])
    assert (I & J) == R.ideal([x * y, y ** 2])
    assert I ** 2 == R.ideal([x * y ** 2, y ** 4])  # x^2 = 0 in R
    assert R.ideal([x ** 2]).is_zero()
    assert J <= R.ideal([x, y]) and not R.ideal([x, y]) <= J
    assert intersect([I, J, R.ideal([x])]) == R.ideal([x * y])
    assert unit_ideal(R).is_unit() and zero_ideal(R).is_zero()


def test_ideal_serialization(H2, C345):
    assert H2.ideal([H2.parse("x"), H2.parse("y^6")]).to_strings() == ["y^6", "x"]
    assert C345.irrelevant().to_strings() == ["a", "b", "c"]


def test_radicals(H2):
    R = H2
    I = R.ideal([R.parse("x"), R.parse("y^6")])
    assert I.radical_contains(R.parse("x")) and I.radical_contains(R.parse("y"))
    assert radical_equal(I, R.irrelevant())
    assert radical_equal(zero_ideal(R), R.ideal([R.parse("x")]))


def test_singular_loci(H2, H3, C345, Q2):
    assert singular_locus(H2).to_strings() == ["x"]
    assert radical_equal(singular_locus(H3), H3.ideal([H3.parse("x")]))
    assert singular_locus(C345).dim() == 0
    assert radical_equal(singular_locus(C345), C345.irrelevant())
    assert radical_equal(singular_locus(Q2), Q2.irrelevant())
    assert singular_locus(fx.smooth()).is_unit()


def test_canonical_modules(H2, C345, Q2):
    assert is_gorenstein(H2)
    assert is_gorenstein(fx.smooth())
    # type of k[t^3,t^4,t^5] is 2 (pseudo-Frobenius numbers 1 and 2)
    assert canonical_module(C345).mu == 2 and not is_gorenstein(C345)
    # socle of k[x,y]/(x,y)^2 is two-dimensional
    assert canonical_module(Q2).mu == 2
    assert nongor_locus(C345) == C345.irrelevant()
    assert nongor_locus(H2).is_unit()


def test_not_cohen_macaulay():
    R = define_ring(101, ["x", "y"], None, ["x^2", "x*y"])
    with pytest.raises(NotCohenMacaulayError):
        canonical_module(R)


@given(st.integers(1, 6), st.integers(1, 6))
@settings(max_examples=20, deadline=None)
def test_hypersurface_ideal_lattice(i, j):
    R = fx.h2()
    I = R.ideal([R.parse("x"), R.parse(f"y^{i}")])
    J = R.ideal([R.parse("x"), R.parse(f"y^{j}")])
    assert (I <= J) == (i >= j)
    assert (I & J) == (I if i >= j else J)
    assert (I + J) == (J if i >= j else I)
