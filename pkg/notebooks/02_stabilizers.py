"""
Generic stabilizers
===================

Samples a random vector over GF(2^20) and computes its stabilizer in g.
A module is generically free when that stabilizer is zero, and virtually
free when it equals the kernel of the action.
"""

from charplie.chevalley import build_lie_algebra
from charplie.repmod import copies, irreducible, spin_module, spin_pullback
from charplie.stabmod import SampleConfig, generic_stabilizer

cfg = SampleConfig(field_degree=20, trials=5, seed=0)


def show(name, mod):
    r = generic_stabilizer(mod, cfg)
    print(f"{name:28s} dim V={r.dim_module:4d}  dim g_v={r.min_dim:3d}  ker={r.ker_dim:3d}  {r.verdict}")
    return r


# spin modules of B_n become generically free from n = 7 on
for n in (4, 5, 6, 7):
    show(f"spin B{n}", spin_module(build_lie_algebra("B", n)))

# a few copies are enough in lower rank
for n, c in zip(range(2, 7), (4, 4, 3, 2, 2)):
    show(f"{c} x spin B{n}", copies(spin_module(build_lie_algebra("B", n)), c))

# over sp_2n the spin module is pulled back, so the kernel is large
for n in (3, 4, 5):
    show(f"spin pullback C{n}", spin_pullback(build_lie_algebra("C", n)))

# weights use the numbering where node 1 is short in type B
show("B3 L(w2)", irreducible(build_lie_algebra("B", 3), (0, 1, 0)))
show("C3 L(w1+w3)", irreducible(build_lie_algebra("C", 3), (1, 0, 1)))
show("G2 L(2w2), p=3", irreducible(build_lie_algebra("G2", 2, 3), (0, 2)))
