"""Tor and Ext by two independent routes.

The engine computes Tor/Ext from minimal free resolutions and Groebner
bases; the oracle rebuilds every graded piece with dense linear algebra
over F_p.  Here both are run on a handful of pairs and their Hilbert
functions and truncated annihilators compared.

    python demos/two_routes.py
"""

from __future__ import annotations

import random

from torext import fixtures as fx
from torext.oracle import cross_check


def main():
    rng = random.Random(7)
    for R in (fx.h2(), fx.h3(), fx.c345()):
        for _ in range(3):
            M, N = fx.random_module(R, rng), fx.random_module(R, rng)
            for kind in ("tor", "ext"):
                r = cross_check(M, N, 1, kind, 6)
                ok = r["hilbert_ok"] and r["ann_ok"]
                print(f"{R.name:5} {kind} lo={r['lo']:>3}  {r['engine']}  ann {r['ann']}  {'agree' if ok else 'DIFFER'}")


if __name__ == "__main__":
    main()
