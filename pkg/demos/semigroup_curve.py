"""The monomial curve k[t^3, t^4, t^5].

A one-dimensional Cohen-Macaulay domain that is not Gorenstein: the
canonical module needs two generators and its trace is the maximal ideal.
We check the t = 0 equalities and the trace-shift containments on a few
MCM modules, then compare Tor and Ext family ideals.

    python demos/semigroup_curve.py
"""

from __future__ import annotations

from torext import fixtures as fx
from torext.homological import omega, trace_ideal
from torext.lab import check_radical_equal, check_spectral_bound, check_trace_shift, close_family
from torext.modules import cyclic_module
from torext.ring import is_gorenstein, singular_locus


def main():
    R = fx.c345()
    W = fx.named(omega(R), "W")
    M = fx.ideal_as_module(R, ["a", "b", "c"], "M")
    A = fx.ideal_as_module(R, ["a", "c"], "A")
    K = fx.named(cyclic_module(R, ["a", "b", "c"]), "K")

    print("Hilbert function:", R.hilbert(10))
    print("Gorenstein:", is_gorenstein(R), "| generators of omega:", len(W.degrees))
    print("tr omega:", trace_ideal(W).to_strings(), "| dim Sing:", singular_locus(R).dim())

    for X, Y in ((W, W), (M, A), (A, M)):
        r = check_spectral_bound(X, Y, 1, 0, "equality")
        print(f"t = 0 equality {X.name},{Y.name}: {r.status}  ann Tor_1 = {r.ideals['ann_tor']}")

    for N, X in ((W, K), (M, K)):
        r = check_trace_shift(N, X, 1, 1)
        print(f"trace shift {N.name},{X.name}: {r.status}  target {r.ideals['target']}")

    F = close_family([W, M, A], ["syz", "tr", "dual"], 1, ["W", "M", "A"], name="WIT")
    print("family:", ", ".join(F.labels))
    r = check_radical_equal(F, F, 0)
    print("radical equality:", r.status, r.ideals)


if __name__ == "__main__":
    main()
