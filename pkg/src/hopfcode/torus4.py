"""Point layouts on the flat tori foliating S^3.

A point of S^3 is written ``(e^{i xi1} cos(eta), e^{i xi2} sin(eta))``.  On a
fixed torus ``T_eta`` the code uses ``n_circles`` internal circles of constant
``xi2``, each carrying ``m`` equidistant points, with consecutive circles
shifted by half a step (``pi/m``) in ``xi1``.

Point ``a`` of a layout sits at ``j = a mod m``, ``k = a // m``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .foliation import ANGLE_TOL, HALF_PI, check_distance, ffloor

DEGENERATE_TOL = 1e-12


def embed(eta: float, xi1: float, xi2: float) -> tuple[float, float, float, float]:
    """The map iota: leaf angle and two phases to a unit vector of R^4."""
    c, s = math.cos(eta), math.sin(eta)
    return (c * math.cos(xi1), c * math.sin(xi1), s * math.cos(xi2), s * math.sin(xi2))


def points_per_circle(d: float, eta: float, floor_tol: float = 0.0) -> int:
    d = check_distance(d)
    c = math.cos(eta)
    if d <= 2.0 * c:
        return max(1, ffloor(math.pi / math.asin(d / (2.0 * c)), floor_tol))
    return 1


def diagonal_circle_count(d: float, floor_tol: float = 0.0) -> int:
    """Points that fit on a unit-radius circle (e.g. a Hopf fibre) at distance ``d``."""
    d = check_distance(d)
    return ffloor(math.pi / math.asin(0.5 * d), floor_tol)


def circles_per_torus(d: float, eta: float, m: int | None = None, floor_tol: float = 0.0) -> int:
    """Number of displaced internal circles on ``T_eta``.

    The count is the even part of ``min(n1, n2)`` (at least 1), where ``n1``
    protects adjacent displaced circles and ``n2`` protects aligned circles two
    steps apart.  Outside the regime where ``n1`` is defined a single circle
    is used.
    """
    d = check_distance(d)
    if m is None:
        m = points_per_circle(d, eta, floor_tol)
    s, c = math.sin(eta), math.cos(eta)
    if s < DEGENERATE_TOL:
        return 1
    rad = (d * d / 4.0) / (s * s) - (c / s) ** 2 * math.sin(math.pi / (2 * m)) ** 2
    if rad <= 0.0 or rad > 1.0:
        n1 = 1
    else:
        n1 = ffloor(math.pi / math.asin(math.sqrt(rad)), floor_tol)
    if d <= 2.0 * s:
        n2 = ffloor(2.0 * math.pi / math.asin(d / (2.0 * s)), floor_tol)
    else:
        n2 = 1
    return max(2 * (min(n1, n2) // 2), 1)


@dataclass(frozen=True)
class TorusLayout:
    """Code points on one torus ``T_eta``.

    ``mirrored`` layouts are generated on ``T_{pi/2 - eta}`` and have their two
    complex coordinates swapped, which lands them on ``T_eta``; the standard
    construction obtains the leaves below pi/4 this way.  ``kind="fiber"``
    places ``m`` points on a single great circle ``xi1 = xi2`` (a Hopf fibre).
    """

    eta: float
    m: int
    n_circles: int
    mirrored: bool = False
    kind: str = "standard"

    def __post_init__(self):
        if self.m < 1 or self.n_circles < 1:
            raise DomainError("layout needs m >= 1 and n_circles >= 1")
        if self.kind not in ("standard", "fiber"):
            raise DomainError(f"unknown layout kind {self.kind!r}")
        if not (-ANGLE_TOL <= self.eta <= HALF_PI + ANGLE_TOL):
            raise DomainError(f"leaf angle must lie in [0, pi/2], got {self.eta!r}")

    @property
    def size(self) -> int:
        return self.m * self.n_circles

    @property
    def base_eta(self) -> float:
        """Angle of the torus the phases are laid out on (before any swap)."""
        return HALF_PI - self.eta if self.mirrored else self.eta

    @property
    def dxi1(self) -> float:
        return 2.0 * math.pi / self.m

    @property
    def dxi2(self) -> float:
        return 2.0 * math.pi / self.n_circles

    def phases(self, a: int) -> tuple[float, float]:
        """``(xi1, xi2)`` of point ``a`` on the base torus."""
        if not 0 <= a < self.size:
            raise IndexError(f"index out of range [0,{self.size})")
        if self.kind == "fiber":
            xi = a * self.dxi1
            return xi, xi
        j, k = a % self.m, a // self.m
        return j * self.dxi1 + k * math.pi / self.m, k * self.dxi2

    def point(self, a: int) -> tuple[float, float, float, float]:
        x = embed(self.base_eta, *self.phases(a))
        if self.mirrored:
            return (x[2], x[3], x[0], x[1])
        return x


def torus_layout(d: float, eta: float, floor_tol: float = 0.0, mirrored: bool = False) -> TorusLayout:
    """Standard layout on ``T_eta`` (computed on ``T_{pi/2-eta}`` when mirrored).

    Degenerate leaves (``eta`` at 0 or pi/2) collapse to a unit circle which
    carries ``diagonal_circle_count(d)`` points.
    """
    d = check_distance(d)
    base = HALF_PI - eta if mirrored else eta
    if math.cos(base) < DEGENERATE_TOL:
        return TorusLayout(eta, 1, diagonal_circle_count(d, floor_tol), mirrored)
    if math.sin(base) < DEGENERATE_TOL:
        return TorusLayout(eta, diagonal_circle_count(d, floor_tol), 1, mirrored)
    m = points_per_circle(d, base, floor_tol)
    return TorusLayout(eta, m, circles_per_torus(d, base, m, floor_tol), mirrored)


def torus_points(layout: TorusLayout) -> np.ndarray:
    """All points of ``layout`` as an ``(m * n_circles, 4)`` array in index order."""
    a = np.arange(layout.size)
    if layout.kind == "fiber":
        xi1 = xi2 = a * layout.dxi1
    else:
        j, k = a % layout.m, a // layout.m
        xi1 = j * layout.dxi1 + k * (math.pi / layout.m)
        xi2 = k * layout.dxi2
    e = layout.base_eta
    c, s = math.cos(e), math.sin(e)
    pts = np.column_stack([c * np.cos(xi1), c * np.sin(xi1), s * np.cos(xi2), s * np.sin(xi2)])
    if layout.mirrored:
        pts = pts[:, [2, 3, 0, 1]]
    return pts
