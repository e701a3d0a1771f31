"""Measures on spheres and density figures of merit for spherical codes.

Surface measures follow the convention that ``sphere_surface(n)`` is the
(n-1)-dimensional area of the unit sphere in R^n, so ``sphere_surface(2)`` is
the circumference ``2 pi``.  Gamma functions are evaluated in log space.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import asdict, dataclass

from scipy import integrate

from .errors import DomainError
from .foliation import check_distance

LOG2 = math.log(2.0)
LOG3 = math.log(3.0)


class InfeasibleDensityWarning(UserWarning):
    """A computed density exceeds one, so the caps cannot be disjoint."""


def _check_dim(n, least: int = 1) -> int:
    if int(n) != n or n < least:
        raise DomainError(f"dimension must be an integer >= {least}, got {n}")
    return int(n)


def log_sphere_surface(n: int) -> float:
    n = _check_dim(n)
    return math.log(n) + 0.5 * n * math.log(math.pi) - math.lgamma(1.0 + 0.5 * n)


def sphere_surface(n: int) -> float:
    """Area of the unit sphere in R^n, ``n pi^(n/2) / Gamma(1 + n/2)``."""
    return math.exp(log_sphere_surface(n))


def ball_volume(n: int) -> float:
    """Volume of the unit ball in R^n, ``pi^(n/2) / Gamma(1 + n/2)``."""
    n = _check_dim(n)
    return math.exp(0.5 * n * math.log(math.pi) - math.lgamma(1.0 + 0.5 * n))


def sine_power_integral(p: int, upper: float) -> float:
    """``int_0^upper sin(x)^p dx`` by adaptive quadrature."""
    value, _ = integrate.quad(lambda x: math.sin(x) ** p, 0.0, upper, epsabs=0.0, epsrel=1e-12, limit=200)
    return value


def cap_area(n: int, d: float) -> float:
    """Area of a spherical cap on the unit sphere of R^n with chordal diameter ``d``.

    A cap of angular radius ``theta/2`` with ``theta = 2 arcsin(d/2)``, which is
    the region a codeword owns in a packing with minimum distance ``d``.  At
    ``d = 2`` it is a half sphere.
    """
    n = _check_dim(n, 2)
    check_distance(d)
    half_angle = math.asin(0.5 * d)
    return sphere_surface(n - 1) * sine_power_integral(n - 2, half_angle)


def code_density(M: int, n: int, d: float) -> float:
    """Fraction of the sphere covered by ``M`` caps, ``M * cap_area / sphere_surface``.

    Warns with :class:`InfeasibleDensityWarning` if the result exceeds one.
    """
    if M < 1:
        raise DomainError("M must be positive")
    value = M * cap_area(n, d) / sphere_surface(n)
    if value > 1.0 + 1e-12:
        warnings.warn(f"density {value:.6g} > 1: no such packing exists", InfeasibleDensityWarning, stacklevel=2)
    return value


def center_density(M: int, n: int, d: float) -> float:
    """Normalized count ``M (d/2)^(n-1) / sphere_surface(n)``; tends to the asymptotic value as ``d -> 0``."""
    check_distance(d)
    n = _check_dim(n, 2)
    return math.exp(math.log(M) + (n - 1) * math.log(0.5 * d) - log_sphere_surface(n))


def _check_k(k) -> int:
    if int(k) != k or k < 2:
        raise DomainError(f"k must be an integer >= 2, got {k}")
    return int(k)


def log_asymptotic_center_density(k: int) -> float:
    k = _check_k(k)
    return (1 - 3 * 2 ** (k - 2)) * LOG2 - 2.0 ** (k - 3) * LOG3


def _center_density_denominator(k: int) -> int:
    # exact for k >= 3, where the value is 1/denominator
    return 2 ** (3 * 2 ** (k - 2) - 1) * 3 ** (2 ** (k - 3))


def asymptotic_center_density(k: int) -> float:
    """Limit of the normalized count of the recursive code in dimension ``2^k``.

    ``2^(1 - 3 * 2^(k-2)) * 3^(-2^(k-3))``; ``1/(4 sqrt 3)`` for ``k = 2`` and
    the square of the previous value halved for each further doubling.
    Correctly rounded for ``k >= 3``.
    """
    k = _check_k(k)
    if k == 2:
        return 1.0 / (4.0 * math.sqrt(3.0))
    if k <= 10:
        return 1.0 / _center_density_denominator(k)
    return math.exp(log_asymptotic_center_density(k))


def center_density_label(k: int) -> str:
    """Exact form of :func:`asymptotic_center_density` as text, e.g. ``"1/96"``."""
    k = _check_k(k)
    if k == 2:
        return "1/(4√3)"
    return f"1/{_center_density_denominator(k)}"


def doubled_density(half: float) -> float:
    """Asymptotic center density in dimension ``2n`` from the value ``half`` in dimension ``n``."""
    if half < 0:
        raise DomainError("density must be nonnegative")
    return 0.5 * half * half


def log_asymptotic_cardinality(k: int, d: float) -> float:
    check_distance(d)
    n = 2 ** _check_k(k)
    return log_asymptotic_center_density(k) + log_sphere_surface(n) + (n - 1) * math.log(2.0 / d)


def asymptotic_cardinality(k: int, d: float) -> float:
    """Approximate size of the recursive code in dimension ``2^k`` at distance ``d``.

    Returns ``inf`` when the value overflows a float; use
    :func:`log_asymptotic_cardinality` for such cases.
    """
    try:
        return math.exp(log_asymptotic_cardinality(k, d))
    except OverflowError:
        return math.inf


def cgc_bound(n: int, d: float, lattice_center_density: float) -> float:
    """Size bound for a code obtained by wrapping a lattice of dimension ``n/2`` around tori.

    ``lattice_center_density * (4 pi / (d sqrt(n/2)))^(n/2)``
    """
    n = _check_dim(n, 2)
    if n % 2:
        raise DomainError("n must be even")
    check_distance(d)
    h = n // 2
    return lattice_center_density * (4.0 * math.pi / (d * math.sqrt(h))) ** h


def binary_rate(M: int, n: int) -> float:
    """Bits per dimension, ``log2(M) / n``.  Exact for arbitrarily large integer ``M``."""
    if M < 1:
        raise DomainError("M must be positive")
    n = _check_dim(n)
    return math.log2(M) / n


def foliation_measure(n: int) -> float:
    """``sphere_surface(2n)`` reassembled from its leaves: ``S_n^2 / 2^n * int_0^pi sin^(n-1)``."""
    n = _check_dim(n)
    return sphere_surface(n) ** 2 / 2.0**n * sine_power_integral(n - 1, math.pi)


@dataclass(frozen=True)
class DensityReport:
    M: int
    dim: int
    dmin: float
    density: float
    center_density: float
    rate_per_dim: float

    def to_dict(self) -> dict:
        out = asdict(self)
        out["M"] = str(self.M)
        return out


def density_report(M: int, dim: int, d: float) -> DensityReport:
    return DensityReport(M, dim, d, code_density(M, dim, d), center_density(M, dim, d), binary_rate(M, dim))
