"""
Building a code on the 3-sphere and in R^8
==========================================

A code is fixed by its dimension and minimum distance.  We count it,
look at the leaf table, encode a few indices and check the distance
by brute force.
"""

import numpy as np
from scipy.spatial.distance import pdist

from hopfcode import CodeSpec, build_tables, cardinality, codebook, encode

# sixteen points at distance 1 in R^4: a single torus at eta = pi/4
spec = CodeSpec(4, 1.0)
tables = build_tables(spec)
print(spec, "->", tables.size, "codewords")
for row in tables.root.rows():
    print("  leaf", row.i, "eta", round(row.eta, 4), "points per circle", row.M1, "circles", row.M2)

# index 5 lives on the second circle, shifted by half a step
print("codeword 5:", np.round(encode(tables, 5).coords, 4))

# R^8 at d = 0.5 uses three leaves, each a product of two R^4 codes
big = build_tables(CodeSpec(8, 0.5))
print()
print("C(8, 0.5) has", big.size, "codewords on", len(big.root.rows()), "leaves")
for row in big.root.rows():
    print(f"  i={row.i:+d}  eta={row.eta:.4f}  {row.M1} x {row.M2}")

pts = codebook(big)
print("min distance", pdist(pts).min(), "norms in", np.ptp(np.linalg.norm(pts, axis=1)))

# cardinalities stay exact integers far beyond what could be listed
for dim in (16, 32, 64):
    print(f"C({dim}, 0.1) has {cardinality(CodeSpec(dim, 0.1)):,} codewords")
