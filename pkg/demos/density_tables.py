"""
How dense are the codes?
========================

The centre density M (d/2)^(n-1) / S_n tends to a closed form as d
shrinks.  Each doubling of the dimension squares it and halves it.
"""

import math

from hopfcode import CodeSpec, cardinality
from hopfcode import density as D
from hopfcode.references import CARDINALITIES

for k in range(2, 6):
    print(f"dim {2**k:2}: limit {D.center_density_label(k):>14} = {D.asymptotic_center_density(k):.6g}")

print()
print("approach to the limit in R^4 and R^8")
for dim, k in ((4, 2), (8, 3)):
    for d in (0.5, 0.1, 0.01):
        M = cardinality(CodeSpec(dim, d))
        ratio = D.center_density(M, dim, d) / D.asymptotic_center_density(k)
        print(f"  dim {dim} d {d:<5} M {M:>20,}  ratio {ratio:.4f}")

print()
print("against other constructions in R^4")
for d in (0.5, 0.3, 0.1):
    ours = cardinality(CodeSpec(4, d))
    others = ", ".join(f"{name} {t[4, d]:,}" for name, t in CARDINALITIES.items() if (4, d) in t)
    print(f"  d {d}: hopf {ours:,}; {others}")

print()
print("fraction of S^7 covered by the caps of C(8, 0.5):",
      round(D.code_density(cardinality(CodeSpec(8, 0.5)), 8, 0.5), 4))
print("rate of C(64, 0.1):", round(D.binary_rate(cardinality(CodeSpec(64, 0.1)), 64), 3), "bits per dimension")
print("CGC bound at dim 4, d 0.1:", round(D.cgc_bound(4, 0.1, 1 / (2 * math.sqrt(3)))))
