"""
Orbit dimensions and the counting inequality
============================================

For each class of square-zero or toral element we compare dim V^x with the
orbit dimension; the inequality dim V - dim V^x > orbit dim rules the class
out of every generic stabilizer.
"""

from charplie.chevalley import build_lie_algebra
from charplie.orbitbounds import (
    ClassLabel,
    bounds_table,
    mother_inequality,
    orbit_dim,
    representative,
    verify_representative,
)
from charplie.repmod import spin_module

for row in bounds_table("C", 4):
    print(row)

g = build_lie_algebra("B", 6)
v = spin_module(g)
# toral classes carry a closed-form orbit dimension; odd r has no
# representative inside the Cartan of Spin, so only even r is listed
labels = [ClassLabel("B", 6, "toral_B", r) for r in (2, 4, 6)]
for lab in labels:
    x = representative(g, lab)
    chk = verify_representative(g, lab, x)
    res = mother_inequality(v, x, orbit_dim(lab))
    print(f"{lab.label():16s} kind ok={chk['kind_ok']}  dim V^x={res['dim_Vx']:3d}  "
          f"orbit={res['orbit_dim']:3d}  margin={res['margin']:4d}")
