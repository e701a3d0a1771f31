"""Leaves of the Hopf foliation of S^{2n-1}.

The sphere S^{2n-1} is the union of the product manifolds
``S^{n-1}_{cos(eta)} x S^{n-1}_{sin(eta)}`` for ``eta`` in ``[0, pi/2]``.
Two leaves are at Euclidean distance ``2 sin(|eta - eta'| / 2)`` from each
other, so a code with minimum distance ``d`` may place its sub-codes on any
family of leaves whose angles are at least ``2 arcsin(d / 2)`` apart.

All angles are in radians.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

HALF_PI = 0.5 * math.pi
QUARTER_PI = 0.25 * math.pi
ANGLE_TOL = 1e-12


def check_distance(d: float) -> float:
    d = float(d)
    if not (0.0 < d <= 2.0) or math.isnan(d):
        raise DomainError(f"minimum distance must lie in (0, 2], got {d!r}")
    return d


def ffloor(x: float, tol: float = 0.0) -> int:
    """Floor of ``x``, treating values within ``tol`` below an integer as that integer.

    With ``tol = 0`` this is the plain floating-point floor, the package
    default.  A positive ``tol`` (e.g. ``1e-9``) recovers points lost to
    rounding at exactly tight distances.
    """
    return math.floor(x + tol)


def minimal_leaf_separation(d: float) -> float:
    """Smallest angle ``2 arcsin(d/2)`` between leaves at distance ``>= d``."""
    d = check_distance(d)
    return 2.0 * math.asin(0.5 * d)


def leaf_count(d: float, floor_tol: float = 0.0) -> int:
    """Number ``t(d)`` of disjoint separation intervals fitting in ``[0, pi/2]``."""
    d = check_distance(d)
    return ffloor(math.pi / (4.0 * math.asin(0.5 * d)), floor_tol)


def leaf_distance(eta: float, eta2: float) -> float:
    """Minimum Euclidean distance between the leaves at ``eta`` and ``eta2``."""
    for e in (eta, eta2):
        if not (-ANGLE_TOL <= e <= HALF_PI + ANGLE_TOL):
            raise DomainError(f"leaf angle must lie in [0, pi/2], got {e!r}")
    return 2.0 * math.sin(0.5 * abs(eta - eta2))


@dataclass(frozen=True)
class LeafScheme:
    """Rule for placing leaf angles.

    ``kind`` is one of ``"symmetric"`` (around pi/4), ``"from-zero"``,
    ``"from-half-pi"`` or ``"offset"``; ``offset`` is only read for the last.
    """

    kind: str = "symmetric"
    offset: float = 0.0

    KINDS = ("symmetric", "from-zero", "from-half-pi", "offset")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise DomainError(f"unknown leaf scheme {self.kind!r}")

    @classmethod
    def centered(cls, d: float, floor_tol: float = 0.0) -> "LeafScheme":
        """Offset scheme that splits the unused slack evenly at both ends."""
        t = leaf_count(d, floor_tol)
        slack = HALF_PI - t * minimal_leaf_separation(d)
        return cls("offset", max(0.0, 0.5 * slack))


SYMMETRIC = LeafScheme("symmetric")
FROM_ZERO = LeafScheme("from-zero")
FROM_HALF_PI = LeafScheme("from-half-pi")


def symmetric_leaf_indices(d: float, floor_tol: float = 0.0) -> range:
    """Signed leaf indices ``-floor(t/2) .. floor(t/2)`` of the symmetric scheme."""
    h = leaf_count(d, floor_tol) // 2
    return range(-h, h + 1)


def leaf_angles(d: float, scheme: LeafScheme = SYMMETRIC, floor_tol: float = 0.0) -> list[float]:
    """Ascending leaf angles for minimum distance ``d`` under ``scheme``."""
    d = check_distance(d)
    step = minimal_leaf_separation(d)
    t = leaf_count(d, floor_tol)
    if scheme.kind == "symmetric":
        return [QUARTER_PI + i * step for i in symmetric_leaf_indices(d, floor_tol)]
    if scheme.kind == "from-zero":
        return [k * step for k in range(t + 1)]
    if scheme.kind == "from-half-pi":
        return [HALF_PI - k * step for k in range(t, -1, -1)]
    limit = 0.5 * (HALF_PI - t * step)
    if not (-ANGLE_TOL <= scheme.offset <= limit + ANGLE_TOL):
        raise DomainError(f"offset {scheme.offset!r} outside [0, {limit!r}]")
    return [scheme.offset + k * step for k in range(t + 1)]
