"""Reported cardinalities of other spherical code constructions, for comparison output.

Each entry maps ``(dim, d)`` to a cardinality; values printed in scientific
notation are stored as floats with their printed precision.  ``None`` marks an
unknown value.  These numbers are reported as given and never validated.
"""
from __future__ import annotations

# reported sizes of the modified Hopf-foliation code, keyed like the others
HOPF_MODIFIED = {
    (4, 0.5): 168, (4, 0.4): 321, (4, 0.3): 774, (4, 0.2): 2683, (4, 0.1): 22164,
    (4, 1e-2): 2.27e7, (4, 1e-3): 2.27e10,
    (8, 0.5): 4206, (8, 0.3): 150200, (8, 0.1): 3.89e8, (8, 0.01): 4.28e15,
    (16, 0.5): 182384, (16, 0.3): 2.13e8, (16, 0.1): 4.67e15, (16, 0.01): 6.48e30,
    (32, 0.5): 2.11e7, (32, 0.3): 1.40e12, (32, 0.1): 1.45e27, (32, 0.01): 3.96e58,
    (64, 0.5): 1.69e11, (64, 0.3): 9.56e17, (64, 0.1): 6.81e42,
}

CARDINALITIES = {
    "TLSC": {
        (4, 0.5): 172, (4, 0.4): 308, (4, 0.3): 798, (4, 0.2): 2718, (4, 0.1): 22406,
        (4, 1e-2): 2.27e7, (4, 1e-3): 2.27e10,
    },
    "apple-peeling": {
        (4, 0.5): 170, (4, 0.4): 342, (4, 0.3): 826, (4, 0.2): 2822, (4, 0.1): 22740,
        (4, 1e-2): 1.97e7, (4, 1e-3): 2.27e10,
    },
    # the two smallest distances are estimates
    "wrapped": {(4, 0.1): 17198, (4, 1e-2): 2.31e7, (4, 1e-3): 2.59e10},
    "laminated": {(4, 0.1): 16976, (4, 1e-2): 2.31e7, (4, 1e-3): 2.59e10},
    "TLSC-k-elements": {
        (8, 0.5): 2748, (8, 0.3): 45252, (8, 0.1): 6.47e6, (8, 0.01): 7.66e10,
        (16, 0.5): 69984, (16, 0.3): 1.17e8, (16, 0.1): 2.41e12, (16, 0.01): 3.66e20,
        (32, 0.5): 32, (32, 0.3): 2.68e12, (32, 0.1): 6.81e21, (32, 0.01): 2.48e38,
        (64, 0.5): 64, (64, 0.3): 2.40e11, (64, 0.1): 1.08e38,
    },
    "TLSC-polygon-layers": {
        (8, 0.5): 2312, (8, 0.3): 89945, (8, 0.1): 4.09e8, (8, 0.01): 5.19e15,
        (16, 0.5): 195312, (16, 0.3): 7.17e7, (16, 0.1): 2.39e15, (16, 0.01): None,
        (32, 0.5): 32768, (32, 0.3): 1.41e12, (32, 0.1): 7.02e24, (32, 0.01): None,
        (64, 0.5): 2.14e9, (64, 0.3): 9.22e18, (64, 0.1): 2.90e37,
    },
    "EQPA": {
        (4, 0.27944): 500, (4, 0.23707): 1000, (4, 0.10374): 10000,
        (8, 0.51282): 500, (8, 0.47025): 1000, (8, 0.31379): 10000,
        (16, 0.56498): 500, (16, 0.51483): 1000, (16, 0.40868): 10000,
        (32, 0.45847): 500, (32, 0.44805): 1000, (32, 0.41207): 10000,
    },
    "commutative-group": {
        (4, 0.330158): 200, (4, 0.237033): 400, (4, 0.193059): 600, (4, 0.16806): 800, (4, 0.149405): 1000,
        (4, 0.012706): 141180, (4, 0.00733585): 423540, (4, 0.00465076): 1053780, (4, 0.00423537): 1270620,
        (8, 0.707107): 648, (8, 0.541196): 2048, (8, 0.437016): 5000, (8, 0.366025): 10368,
    },
    "hopf-preimage": {(4, 0.488876): 112, (4, 0.389872): 128},
}

# asymptotic center densities of other constructions, by dimension
CENTER_DENSITIES = {
    "TLSC": {4: 0.1443, 8: 0.0221, 16: 0.0039, 32: 0.0028},
    "apple-peeling": {4: 0.1925, 8: 0.0330, 16: 0.0115, 32: 2.00e-5},
    "best-packing-one-dimension-lower": {4: 0.1768, 8: 0.0625, 16: 0.0442, 32: 1.2095},
    "hopf-half-dimension": {8: 0.0156, 16: 0.0020, 32: 0.0010},
}

# mean milliseconds to decode one word: (unrefined, refined, exhaustive)
DECODE_TIMES_MS = {
    (52, 4, 0.7): (0.109, 0.139, 0.409),
    (152, 4, 0.5): (0.114, 0.139, 1.169),
    (360, 8, 0.7): (0.287, 0.582, 2.837),
}


def reference_rows(dim: int | None = None):
    """``(construction, dim, d, M)`` for every known cardinality, optionally for one dimension."""
    for name, table in CARDINALITIES.items():
        for (n, d), M in sorted(table.items()):
            if M is not None and (dim is None or n == dim):
                yield name, n, d, M
