"""Decoding received vectors to code indices.

The suboptimal decoder follows the foliation: read the leaf angle of the
received vector from the norms of its two halves, snap it to the nearest leaf
of the code, and decode each half recursively at its scaled distance.  In
R^4 the phases on the chosen torus are rounded to the nearest circle and the
nearest point on it.  With ``refine`` enabled, a leaf whose candidate lies at
least ``d/2`` from the received vector is compared against its neighbours.

``decode_ml`` is the exhaustive maximum-likelihood reference.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DomainError
from .foliation import QUARTER_PI, minimal_leaf_separation
from ._fastdecode import FlatTables
from .schf import CodeSpec, CodeTables, FoliationNode, PointSetNode, TorusNode, build_tables

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class DecodeConfig:
    """``breadth`` neighbouring leaves are tried on each side when ``refine`` is on."""

    breadth: int = 1
    refine: bool = False

    def __post_init__(self):
        if self.breadth < 0:
            raise DomainError("breadth must be nonnegative")


UNREFINED = DecodeConfig()
REFINED = DecodeConfig(refine=True)


@dataclass(frozen=True)
class DecodeResult:
    index: int
    codeword: np.ndarray
    residual: float


def angles_from_point(y: Sequence[float]) -> tuple[float, float, float]:
    """Leaf angle and phases ``(eta, xi1, xi2)`` of a vector of R^4, phases in ``[0, 2 pi)``.

    A vanishing coordinate pair gets phase 0.
    """
    y1, y2, y3, y4 = (float(v) for v in y)
    eta = math.atan2(math.hypot(y3, y4), math.hypot(y1, y2))
    return eta, _phase(y1, y2), _phase(y3, y4)


def _phase(x: float, y: float) -> float:
    t = math.atan2(y, x) % TWO_PI
    # a tiny negative angle rounds up to 2 pi
    return 0.0 if t == TWO_PI else t


def _snap(eta: float, d: float, n_leaves: int) -> int:
    """Position (0-based, ascending eta) of the symmetric leaf nearest to ``eta``."""
    h = n_leaves // 2
    i = math.floor((eta - QUARTER_PI) / minimal_leaf_separation(d) + 0.5)
    return min(max(i, -h), h) + h


def _torus_candidate(node: TorusNode, p: int, y: list[float], circles: int = 0) -> tuple[int, float]:
    """Nearest layout point on leaf ``p`` by phase rounding: ``(index, inner product)``.

    ``circles`` extra internal circles on each side of the rounded one are also
    searched unless the rounded candidate already lies within ``d/2``; displaced
    neighbours are often closer than the circle picked from ``xi2`` alone.
    """
    lay = node.layouts[p]
    y1, y2, y3, y4 = y
    if lay.mirrored:
        y1, y2, y3, y4 = y3, y4, y1, y2
    m, n = lay.m, lay.n_circles
    e = lay.base_eta
    c, s = math.cos(e), math.sin(e)
    xi1 = math.atan2(y2, y1)
    xi2 = math.atan2(y4, y3)
    k0 = math.floor(xi2 * n / TWO_PI + 0.5)

    def at(k):
        k %= n
        shift = k * math.pi / m
        j = math.floor((xi1 - shift) * m / TWO_PI + 0.5) % m
        p1 = j * TWO_PI / m + shift
        p2 = k * TWO_PI / n
        inner = c * (y1 * math.cos(p1) + y2 * math.sin(p1)) + s * (y3 * math.cos(p2) + y4 * math.sin(p2))
        return node.prefix[p] + k * m + j, inner

    best = at(k0)
    if circles == 0 or _residual(best[1]) < 0.5 * node.dmin:
        return best
    for dk in range(-min(circles, n // 2), min(circles, (n - 1) // 2) + 1):
        if dk != 0:
            cand = at(k0 + dk)
            if cand[1] > best[1]:
                best = cand
    return best


def _residual(inner: float) -> float:
    return math.sqrt(max(0.0, 2.0 - 2.0 * inner))


def _decode_node(node, y: list[float], breadth: int, refine: bool) -> tuple[int, float]:
    """Decode unit vector ``y``; returns ``(index, inner product with the codeword)``."""
    if isinstance(node, TorusNode):
        n = len(node.layouts)
        p = _snap(angles_from_point(y)[0], node.dmin, n)
        extra = 1 if refine else 0
        best = _torus_candidate(node, p, y, extra)
        if refine:
            half = 0.5 * node.dmin
            for s in range(1, breadth + 1):
                if _residual(best[1]) < half:
                    break
                for q in (p - s, p + s):
                    if 0 <= q < n:
                        cand = _torus_candidate(node, q, y, extra)
                        if cand[1] > best[1]:
                            best = cand
        return best
    if isinstance(node, FoliationNode):
        h = node.dim // 2
        u, v = y[:h], y[h:]
        r1 = math.sqrt(math.fsum(x * x for x in u))
        r2 = math.sqrt(math.fsum(x * x for x in v))
        n = len(node.leaves)
        p = _snap(math.atan2(r2, r1), node.dmin, n)
        u = [x / r1 for x in u] if r1 > 0.0 else None
        v = [x / r2 for x in v] if r2 > 0.0 else None
        best = _leaf_candidate(node, p, u, v, r1, r2, breadth, refine)
        if refine:
            half = 0.5 * node.dmin
            for s in range(1, breadth + 1):
                if _residual(best[1]) < half:
                    break
                for q in (p - s, p + s):
                    if 0 <= q < n:
                        cand = _leaf_candidate(node, q, u, v, r1, r2, breadth, refine)
                        if cand[1] > best[1]:
                            best = cand
        return best
    if isinstance(node, PointSetNode):
        if len(node.points) == 1:
            return 0, float(node.points[0] @ np.asarray(y))
        scores = node.points @ np.asarray(y)
        a = int(np.argmax(scores))
        return a, float(scores[a])
    raise TypeError(f"cannot decode with {type(node).__name__}")


def _leaf_candidate(node: FoliationNode, p, u, v, r1, r2, breadth, refine) -> tuple[int, float]:
    leaf = node.leaves[p]
    a1, g1 = _decode_node(leaf.first, u, breadth, refine) if u is not None else (0, 0.0)
    a2, g2 = _decode_node(leaf.second, v, breadth, refine) if v is not None else (0, 0.0)
    inner = math.cos(leaf.eta) * r1 * g1 + math.sin(leaf.eta) * r2 * g2
    return node.prefix[p] + a2 * leaf.first.size + a1, inner


def _unit(y, dim: int) -> list[float]:
    y = [float(v) for v in y]
    if len(y) != dim:
        raise DomainError(f"expected a vector of length {dim}, got {len(y)}")
    big = max(map(abs, y))
    if big == 0.0 or not math.isfinite(big):
        raise DomainError("cannot decode a zero or non-finite vector")
    # rescale first so tiny vectors do not underflow when squared
    y = [v / big for v in y]
    r = math.sqrt(math.fsum(v * v for v in y))
    return [v / r for v in y]


def _check_standard(tables: CodeTables):
    if tables.spec.variant != "standard":
        raise DomainError("the foliation decoder is defined for the standard construction")


def flat_tables(tables: CodeTables):
    """Compiled tables for ``tables``, cached on the object; ``None`` if the code does not fit."""
    flat = getattr(tables, "_flat", False)
    if flat is False:
        try:
            flat = FlatTables(tables)
        except (OverflowError, TypeError):
            flat = None
        tables._flat = flat
    return flat


def decode_index(y, tables: CodeTables, cfg: DecodeConfig = UNREFINED, compiled: bool = True) -> int:
    """Index of the decoded codeword (no codeword reconstruction).

    The compiled kernel is used when available; ``compiled=False`` forces the
    pure Python reference, which returns identical indices.
    """
    _check_standard(tables)
    flat = flat_tables(tables) if compiled else None
    if flat is not None:
        v = np.asarray(y, dtype=float)
        a = flat.decode(v, cfg.breadth, cfg.refine) if v.ndim == 1 else -1
        if a >= 0:
            return a
        _unit(v.ravel(), tables.spec.dim)  # raises the matching error
    return _decode_node(tables.root, _unit(y, tables.spec.dim), cfg.breadth, cfg.refine)[0]


def decode_batch(ys, tables: CodeTables, cfg: DecodeConfig = UNREFINED) -> np.ndarray:
    """Indices for the rows of ``ys`` (nonzero rows, any scale)."""
    _check_standard(tables)
    ys = np.asarray(ys, dtype=float)
    if ys.ndim != 2 or ys.shape[1] != tables.spec.dim:
        raise DomainError(f"expected an array of shape (N, {tables.spec.dim})")
    flat = flat_tables(tables)
    if flat is not None:
        out = flat.decode_batch(ys, cfg.breadth, cfg.refine)
        if out.size and out.min() < 0:
            raise DomainError("cannot decode a zero or non-finite vector")
        return out
    return np.array([decode_index(y, tables, cfg) for y in ys], dtype=object)


def decode(y, tables: CodeTables, cfg: DecodeConfig = UNREFINED, compiled: bool = True) -> DecodeResult:
    """Decode ``y`` (any nonzero scale) against a standard code."""
    _check_standard(tables)
    u = _unit(y, tables.spec.dim)
    a = decode_index(u, tables, cfg, compiled)
    x = np.array(tables.root.point(a))
    return DecodeResult(a, x, float(np.linalg.norm(np.asarray(u) - x)))


def decode4(y, d: float, cfg: DecodeConfig = UNREFINED, floor_tol: float = 0.0) -> DecodeResult:
    """Decode a vector of R^4 against the standard code ``C(4, d)``."""
    return decode(y, build_tables(CodeSpec(4, d, floor_tol=floor_tol)), cfg)


def decode_ml(codebook: np.ndarray, y) -> int:
    """Index of the codeword with the largest inner product with ``y`` (lowest index on ties)."""
    return int(np.argmax(codebook @ np.asarray(y, dtype=float)))


def decode_ml_batch(codebook: np.ndarray, ys: np.ndarray) -> np.ndarray:
    return np.argmax(np.asarray(ys) @ codebook.T, axis=1)
