"""Tor and Ext annihilators over k[x,y]/(x^2).

The ideals I_j = (x, y^j) are the nonfree indecomposable maximal
Cohen-Macaulay modules of this ring (up to shift).  We tabulate
ann Tor_h(I_i, I_j), intersect over a family, and compare with the
singular locus V(x).

    python demos/hypersurface_ideals.py
"""

from __future__ import annotations

from torext import fixtures as fx
from torext.homological import tor
from torext.lab import CertifiedIdeal, Family, check_sing_equality, family_ideal
from torext.ring import singular_locus


def main():
    R = fx.h2()
    I = {j: fx.hyper_ideal(R, j) for j in range(1, 7)}

    print("ann Tor_h(I_i, I_j) for j <= i <= 4, h = 1..3")
    for i in range(1, 5):
        row = []
        for j in range(1, i + 1):
            anns = {tuple(tor(I[i], I[j], h).annihilator().to_strings()) for h in (1, 2, 3)}
            (a,) = anns  # the same ideal for every h
            row.append("(" + ", ".join(a) + ")")
        print(f"  i={i}: " + "  ".join(row))

    # a larger family only shrinks the ideal: {I_1..I_J} gives (x, y^J)
    for J in (1, 3, 6):
        F = Family(R, [I[j] for j in range(1, J + 1)])
        t = family_ideal("tor", 0, F, F).ideal
        e = family_ideal("ext", 0, F, F).ideal
        print(f"family I_1..I_{J}: Tor ideal {t.to_strings()}, Ext ideal {e.to_strings()}")

    print("singular locus:", singular_locus(R).to_strings())
    F = Family(R, list(I.values()), name="F")
    # the finite family cannot see the whole singular locus by itself ...
    print("uncertified:", check_sing_equality(F, F, 0).status)
    # ... but the certified category ideal (x) does
    cert = CertifiedIdeal(R.ideal([R.parse("x")]), "MCM classification over k[[x,y]]/(x^2)")
    print("certified (x):", check_sing_equality(F, F, 0, cert).status)


if __name__ == "__main__":
    main()
