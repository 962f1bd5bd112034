"""Regenerate src/charplie/data/moduli.json.

For each p in {2, 3} and 1 <= k <= 64 the table stores the lexicographically
first monic irreducible polynomial of degree k over GF(p).  Polynomials are
ordered by the integer sum(c_i * p**i) of their lower coefficients.
"""

import json
import pathlib

from sympy import GF, Poly, symbols

X = symbols("x")
OUT = pathlib.Path(__file__).resolve().parents[1] / "src" / "charplie" / "data" / "moduli.json"
VERSION = "lexfirst-1"


def digits(n, p, k):
    out = []
    for _ in range(k):
        n, r = divmod(n, p)
        out.append(r)
    return out


def first_irreducible(p, k):
    for low in range(p**k):
        coeffs = digits(low, p, k) + [1]
        if k > 1 and coeffs[0] == 0:
            continue
        poly = Poly(list(reversed(coeffs)), X, domain=GF(p))
        if poly.is_irreducible:
            return coeffs
    raise RuntimeError((p, k))


def main():
    table = {"version": VERSION, "moduli": {}}
    for p in (2, 3):
        for k in range(1, 65):
            table["moduli"][f"{p},{k}"] = first_irreducible(p, k)
    OUT.write_text(json.dumps(table, indent=1) + "\n")


if __name__ == "__main__":
    main()
