#!/usr/bin/env python3
"""Regenerate src/bureshall/data/coefficients.txt from the factored polynomials.

The closed forms of the three kernel integrals are linear combinations of
polygamma values whose coefficients are bivariate integer polynomials in
(m, a).  This script holds those polynomials in their compact factored form,
expands them with sympy, and emits one integer monomial per line:

    <table> <coeff> <m_pow> <a_pow> <value>

followed by a sha256 checksum line over the data rows.  The runtime loader
(`bureshall.closedforms`) refuses a file whose checksum does not match, so
any hand edit of the table must go through this script.

Requires sympy (dev dependency only; the generated file is committed).
"""

import hashlib
import sys
from pathlib import Path

import sympy as sp

m, a = sp.symbols("m a")

Q5 = 5*m**2 + 10*a*m + 5*m + 4*a**2 + 4*a + 2

TABLE_IA = {
    "a0": -18*a*m*(m+a)*(m+2*a)*(m+2*a+1)*(2*m+2*a+1)**2*Q5,
    "a1": -a*m*(m+a)*(m+2*a)*(
        1756*m**5 + 8760*a*m**4 + 4464*m**4 + 15900*a**2*m**3 + 16152*a*m**3
        + 3941*m**3 + 12736*a**3*m**2 + 19320*a**2*m**2 + 9288*a*m**2
        + 1370*m**2 + 4032*a**4*m + 8112*a**3*m + 5604*a**2*m + 1500*a*m
        + 147*m + 192*a**5 + 480*a**4 + 320*a**3 - 60*a - 14),
    "a2": -18*m*(m+a)*(m+2*a+1)*(2*m+2*a+1)**2*(3*m+4*a)*Q5,
    "a3": 12*(m+2*a)*(2*m+2*a+1)**2*(
        15*m**5 - 30*a**2*m**4 + 60*a*m**4 + 30*m**4 - 120*a**3*m**3
        + 27*a**2*m**3 + 72*a*m**3 + 21*m**3 - 154*a**4*m**2 - 75*a**3*m**2
        + 19*a**2*m**2 + 24*a*m**2 + 6*m**2 - 68*a**5*m - 50*a**4*m
        - 16*a**3*m - a**2*m - 4*a**6 + 4*a**5 + a**4 - a**3),
    "a4": 6*(m+a)*(m+2*a)*(2*m+2*a+1)**2*(
        15*m**4 - 120*a**2*m**3 + 30*a*m**3 + 30*m**3 - 360*a**3*m**2
        - 228*a**2*m**2 + 12*a*m**2 + 21*m**2 - 256*a**4*m - 336*a**3*m
        - 176*a**2*m - 18*a*m + 6*m - 16*a**5 - 32*a**4 - 68*a**3
        - 52*a**2 - 12*a),
    "a5": 6*(m+2*a)*(2*m+2*a+1)*(
        106*a*m**6 - 60*m**6 + 636*a**2*m**5 - 65*a*m**5 - 150*m**5
        + 1506*a**3*m**4 + 503*a**2*m**4 - 324*a*m**4 - 144*m**4
        + 1784*a**4*m**3 + 1300*a**3*m**3 + 60*a**2*m**3 - 235*a*m**3
        - 66*m**3 + 1080*a**5*m**2 + 1120*a**4*m**2 + 468*a**3*m**2
        + 15*a**2*m**2 - 58*a*m**2 - 12*m**2 + 288*a**6*m + 320*a**5*m
        + 216*a**4*m + 96*a**3*m + 16*a**2*m + 16*a**7 - 8*a**6 - 12*a**5
        + 2*a**4 + 2*a**3),
    "a6": 6*(m+2*a+1)*(2*m+2*a+1)*(
        212*a*m**6 - 30*m**6 + 1512*a**2*m**5 + 198*a*m**5 - 45*m**5
        + 4212*a**3*m**4 + 1820*a**2*m**4 + 111*a*m**4 - 27*m**4
        + 5760*a**4*m**3 + 4344*a**3*m**3 + 1238*a**2*m**3 + 31*a*m**3
        - 6*m**3 + 3936*a**5*m**2 + 4304*a**4*m**2 + 2296*a**3*m**2
        + 440*a**2*m**2 + 6*a*m**2 + 1152*a**6*m + 1680*a**5*m
        + 1480*a**4*m + 584*a**3*m + 72*a**2*m + 64*a**7 + 128*a**6
        + 272*a**5 + 208*a**4 + 48*a**3),
    "a7": -12*a*(
        212*m**8 + 1908*a*m**7 + 636*m**7 + 7252*a**2*m**6 + 4920*a*m**6
        + 823*m**6 + 15148*a**3*m**5 + 15660*a**2*m**5 + 5545*a*m**5
        + 601*m**5 + 18888*a**4*m**4 + 26400*a**3*m**4 + 14738*a**2*m**4
        + 3552*a*m**4 + 255*m**4 + 14192*a**5*m**3 + 25104*a**4*m**3
        + 19608*a**3*m**3 + 7724*a**2*m**3 + 1329*a*m**3 + 59*m**3
        + 6080*a**6*m**2 + 13056*a**5*m**2 + 13480*a**4*m**2
        + 7696*a**3*m**2 + 2250*a**2*m**2 + 272*a*m**2 + 6*m**2
        + 1248*a**7*m + 3168*a**6*m + 4304*a**5*m + 3432*a**4*m
        + 1494*a**3*m + 316*a**2*m + 24*a*m + 64*a**8 + 192*a**7
        + 416*a**6 + 512*a**5 + 324*a**4 + 100*a**3 + 12*a**2),
}

TABLE_IBC = {
    "bc0": 18*a*m*(m+a)*(m+a+1)*(m+2*a)*(m+2*a+1)*(2*m+2*a+1)**3*Q5,
    "bc1": -2*a*m*(m+a)*(m+a+1)*(m+2*a)*(
        1756*m**6 + 10516*a*m**5 + 5504*m**5 + 24660*a**2*m**4
        + 25608*a*m**4 + 6479*m**4 + 28636*a**3*m**3 + 44304*a**2*m**3
        + 22151*a*m**3 + 3480*m**3 + 16768*a**4*m**2 + 34376*a**3*m**2
        + 25380*a**2*m**2 + 7802*a*m**2 + 805*m**2 + 4224*a**5*m
        + 10752*a**4*m + 10268*a**3*m + 4464*a**2*m + 819*a*m + 37*m
        + 192*a**6 + 576*a**5 + 560*a**4 + 160*a**3 - 60*a**2 - 44*a - 7),
    "bc2": -18*m*(m+a)*(m+a+1)*(m+2*a+1)*(2*m+2*a+1)**3*(3*m+4*a)*Q5,
    "bc3": 12*(m+a+1)*(m+2*a)*(2*m+2*a+1)**3*(
        15*m**5 - 30*a**2*m**4 + 60*a*m**4 + 30*m**4 - 120*a**3*m**3
        + 27*a**2*m**3 + 72*a*m**3 + 21*m**3 - 154*a**4*m**2 - 75*a**3*m**2
        + 19*a**2*m**2 + 24*a*m**2 + 6*m**2 - 68*a**5*m - 50*a**4*m
        - 16*a**3*m - a**2*m - 4*a**6 + 4*a**5 + a**4 - a**3),
    "bc4": 6*(m+a)*(m+a+1)*(m+2*a)*(2*m+2*a+1)**3*(
        15*m**4 - 120*a**2*m**3 + 30*a*m**3 + 30*m**3 - 360*a**3*m**2
        - 228*a**2*m**2 + 12*a*m**2 + 21*m**2 - 256*a**4*m - 336*a**3*m
        - 176*a**2*m - 18*a*m + 6*m - 16*a**5 - 32*a**4 - 68*a**3
        - 52*a**2 - 12*a),
    "bc5": 12*(m+a+1)*(m+2*a)*(2*m+2*a+1)*(
        106*a*m**7 - 60*m**7 + 742*a**2*m**6 - 141*a*m**6 - 180*m**6
        + 2142*a**3*m**5 + 378*a**2*m**5 - 670*a*m**5 - 219*m**5
        + 3290*a**4*m**4 + 1743*a**3*m**4 - 698*a**2*m**4 - 679*a*m**4
        - 138*m**4 + 2864*a**5*m**3 + 2448*a**4*m**3 + 104*a**3*m**3
        - 613*a**2*m**3 - 291*a*m**3 - 45*m**3 + 1368*a**6*m**2
        + 1524*a**5*m**2 + 500*a**4*m**2 - 84*a**3*m**2 - 132*a**2*m**2
        - 47*a*m**2 - 6*m**2 + 304*a**7*m + 360*a**6*m + 172*a**5*m
        + 62*a**4*m + 18*a**3*m + 2*a**2*m + 16*a**8 - 16*a**6 - 4*a**5
        + 3*a**4 + a**3),
    "bc6": 6*(2*m+2*a+1)*(
        424*a*m**9 - 60*m**9 + 4720*a**2*m**8 + 1036*a*m**8 - 240*m**8
        + 22640*a**3*m**7 + 13764*a**2*m**7 + 716*a*m**7 - 399*m**7
        + 61184*a**4*m**6 + 62444*a**3*m**6 + 17280*a**2*m**6 - 80*a*m**6
        - 357*m**6 + 102120*a**5*m**5 + 148488*a**4*m**5 + 74852*a**3*m**5
        + 13467*a**2*m**5 - 265*a*m**5 - 183*m**5 + 108240*a**6*m**4
        + 206232*a**5*m**4 + 152936*a**4*m**4 + 53828*a**3*m**4
        + 7650*a**2*m**4 - 74*a*m**4 - 51*m**4 + 71744*a**7*m**3
        + 170208*a**6*m**3 + 169160*a**5*m**3 + 90024*a**4*m**3
        + 25492*a**3*m**3 + 3057*a**2*m**3 + 13*a*m**3 - 6*m**3
        + 27776*a**8*m**2 + 79328*a**7*m**2 + 100928*a**6*m**2
        + 74144*a**5*m**2 + 32140*a**4*m**2 + 7480*a**3*m**2
        + 722*a**2*m**2 + 6*a*m**2 + 5248*a**9*m + 17664*a**8*m
        + 28608*a**7*m + 28512*a**6*m + 17544*a**5*m + 6216*a**4*m
        + 1112*a**3*m + 72*a**2*m + 256*a**10 + 1024*a**9 + 2432*a**8
        + 3712*a**7 + 3344*a**6 + 1696*a**5 + 448*a**4 + 48*a**3),
    "bc7": -12*a*(2*m+2*a+1)*(
        212*m**9 + 2120*a*m**8 + 758*m**8 + 9160*a**2*m**7 + 6726*a*m**7
        + 1162*m**7 + 22400*a**3*m**6 + 25294*a**2*m**6 + 9200*a*m**6
        + 1049*m**6 + 34036*a**4*m**5 + 52450*a**3*m**5 + 29970*a**2*m**5
        + 7475*a*m**5 + 631*m**5 + 33080*a**5*m**4 + 65124*a**4*m**4
        + 51812*a**3*m**4 + 20908*a**2*m**4 + 4038*a*m**4 + 251*m**4
        + 20272*a**6*m**3 + 48896*a**5*m**3 + 50800*a**4*m**3
        + 29310*a**3*m**3 + 9392*a**2*m**3 + 1417*a*m**3 + 59*m**3
        + 7328*a**7*m**2 + 21056*a**6*m**2 + 27624*a**5*m**2
        + 21476*a**4*m**2 + 10018*a**3*m**2 + 2550*a**2*m**2 + 284*a*m**2
        + 6*m**2 + 1312*a**8*m + 4416*a**7*m + 7312*a**6*m + 7576*a**5*m
        + 4866*a**4*m + 1802*a**3*m + 340*a**2*m + 24*a*m + 64*a**9
        + 256*a**8 + 608*a**7 + 928*a**6 + 836*a**5 + 424*a**4
        + 112*a**3 + 12*a**2),
    "bc8": -18*a*m*(m+a)*(m+a+1)*(m+2*a)*(m+2*a+1)*(2*m+2*a+1)**2*(
        7*m**2 + 14*a*m + 7*m + 8*a**2 + 8*a + 2),
    "bc9": 36*a*m*(m+a)*(m+a+1)*(m+2*a)*(m+2*a+1)*(2*m+2*a+1)**2*(
        10*m**3 + 30*a*m**2 + 9*m**2 + 28*a**2*m + 16*a*m + 3*m
        + 8*a**3 + 4*a**2),
    "bc10": -72*a*m*(m+a)*(m+a+1)*(m+2*a)*(m+2*a+1)*(2*m+2*a+1)**2*(
        10*m**3 + 30*a*m**2 + 12*m**2 + 28*a**2*m + 22*a*m + 6*m
        + 8*a**3 + 8*a**2 + 4*a + 1),
    "bc11": 18*a*m*(m+a)*(m+a+1)*(m+2*a)*(m+2*a+1)*(2*m+2*a+1)**2*(
        10*m**3 + 30*a*m**2 + 3*m**2 + 28*a**2*m + 4*a*m - 3*m
        + 8*a**3 - 4*a**2 - 8*a - 2),
}

TABLE_ID = {
    "d0": m*(36*m**4 + 136*a*m**3 + 68*m**3 + 196*a**2*m**2 + 188*a*m**2
             + 31*m**2 + 128*a**3*m + 184*a**2*m + 64*a*m - 6*m + 32*a**4
             + 64*a**3 + 36*a**2 - 4*a - 5),
    "d1": 2*m*(2*m+2*a+1)*(14*m**3 + 46*a*m**2 + 29*m**2 + 48*a**2*m
               + 60*a*m + 20*m + 16*a**3 + 32*a**2 + 22*a + 5),
    "d2": 4*(2*m+2*a+1)*(32*a**4 + 64*a**3 + 48*a**2 + 16*a + 30*m**4
             + 126*a*m**3 + 69*m**3 + 192*a**2*m**2 + 204*a*m**2 + 56*m**2
             + 128*a**3*m + 200*a**2*m + 106*a*m + 19*m + 2),
    "d3": -4*(60*m**5 + 312*a*m**4 + 168*m**4 + 636*a**2*m**3 + 672*a*m**3
              + 181*m**3 + 640*a**3*m**2 + 1000*a**2*m**2 + 528*a*m**2
              + 94*m**2 + 320*a**4*m + 656*a**3*m + 508*a**2*m + 176*a*m
              + 23*m + 64*a**5 + 160*a**4 + 160*a**3 + 80*a**2 + 20*a + 2),
    "d4": 8*(m+2*a+1)*(2*m+2*a+1)**2*(3*m**2 + 6*a*m + 3*m + 4*a**2
             + 4*a + 1),
    "d5": -2*m*(m+2*a+1)**2*(2*m+2*a+1)**2,
    "d6": 4*(m+2*a+1)*(2*m+2*a+1)**3*Q5,
}


def rows_for(table_id, table):
    rows = []
    for name, expr in table.items():
        poly = sp.Poly(sp.expand(expr), m, a)
        for (pm, pa), coeff in sorted(poly.terms()):
            c = int(coeff)
            assert coeff == c, f"non-integer coefficient in {table_id}/{name}"
            rows.append(f"{table_id} {name} {pm} {pa} {c}")
    return rows


def main():
    out = Path(__file__).resolve().parents[1] / "src" / "bureshall" / "data" / "coefficients.txt"
    rows = []
    rows += rows_for("IA", TABLE_IA)
    rows += rows_for("IBC", TABLE_IBC)
    rows += rows_for("ID", TABLE_ID)
    body = "\n".join(rows) + "\n"
    digest = hashlib.sha256(body.encode("ascii")).hexdigest()
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(body + f"# sha256 {digest}\n", encoding="ascii")
    print(f"wrote {out} ({len(rows)} monomials, sha256 {digest[:16]}...)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
