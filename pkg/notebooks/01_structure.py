"""
Distinguished subalgebras in characteristic 2
=============================================

Builds the Chevalley Lie algebras of type B and C over GF(2) and looks at
the ideals that only exist in special characteristic.
"""

from charplie.chevalley import (
    build_lie_algebra,
    center_of,
    derived,
    distinguished_subalgebras,
    very_special_differential,
)

# the ideal n has dimension 2n+1 in type B and 2n^2-n-1 in type C
for fam in "BC":
    for n in range(2, 6):
        g = build_lie_algebra(fam, n)
        d = distinguished_subalgebras(g)
        print(fam, n, "dim g =", g.dim, {k: s.space.dim for k, s in d.items()})

# in type B, n is a Heisenberg algebra: [n, n] is its one-dimensional center
g = build_lie_algebra("B", 4)
n = distinguished_subalgebras(g)["n"].space
print("[n,n] == z(n):", derived(g, n) == center_of(g, n), "dim", center_of(g, n).dim)

# the map to the dual type kills exactly n
iso = very_special_differential(g)
print("homomorphism:", iso.is_homomorphism(), " kernel == n:", iso.kernel() == n)

# z(g) sits inside n for C_n exactly when n is even
for r in range(2, 7):
    d = distinguished_subalgebras(build_lie_algebra("C", r))
    print("C%d" % r, "z in n:", d["n"].space.contains(d["z"].space))
