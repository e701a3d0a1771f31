"""Compiled suboptimal decoder over flattened leaf tables.

Mirrors :func:`hopfcode.decoder._decode_node` step for step; the pure Python
version remains the reference.  Only standard codes whose cardinality fits in
a signed 64-bit integer are flattened.

Tables are packed into four arrays so that a call dispatches cheaply:

``ni`` (nodes x 4, int)
    kind, dim, first leaf row, leaf count
``nf`` (nodes x 2, float)
    half the minimum distance, leaf separation
``li`` (leaves x 7, int)
    m, n, mirrored, prefix, first child, second child, first child size
``lf`` (leaves x 3, float)
    eta, cos eta, sin eta
"""
from __future__ import annotations

import math

import numba
import numpy as np

from .foliation import QUARTER_PI, minimal_leaf_separation
from .schf import CodeTables, PointSetNode, TorusNode

KIND_POINT, KIND_TORUS, KIND_FOLIATION = 0, 1, 2
INT64_MAX = 2**63 - 1
TWO_PI = 2.0 * math.pi


class FlatTables:
    """Packed node and leaf arrays of a standard code, indexed by node id."""

    def __init__(self, tables: CodeTables):
        if tables.spec.variant != "standard":
            raise TypeError("only standard codes can be flattened")
        if tables.size > INT64_MAX:
            raise OverflowError("code too large for 64-bit indices")
        ni, nf, li, lf = [], [], [], []
        for nd in tables.nodes:
            if isinstance(nd, PointSetNode):
                if len(nd.points) != 1:
                    raise TypeError("only single-point leaves are supported")
                ni.append((KIND_POINT, nd.dim, len(li), 0))
                nf.append((0.5 * nd.dmin, 0.0))
                continue
            if isinstance(nd, TorusNode):
                ni.append((KIND_TORUS, 4, len(li), len(nd.layouts)))
                for p, lay in enumerate(nd.layouts):
                    e = lay.base_eta
                    li.append((lay.m, lay.n_circles, int(lay.mirrored), nd.prefix[p], -1, -1, 0))
                    lf.append((e, math.cos(e), math.sin(e)))
            else:
                ni.append((KIND_FOLIATION, nd.dim, len(li), len(nd.leaves)))
                for p, leaf in enumerate(nd.leaves):
                    e = leaf.eta
                    li.append((0, 0, 0, nd.prefix[p], tables.node_id(leaf.first),
                               tables.node_id(leaf.second), leaf.first.size))
                    lf.append((e, math.cos(e), math.sin(e)))
            nf.append((0.5 * nd.dmin, minimal_leaf_separation(nd.dmin)))
        self.ni = np.array(ni, dtype=np.int64).reshape(-1, 4)
        self.nf = np.array(nf, dtype=float).reshape(-1, 2)
        self.li = np.array(li, dtype=np.int64).reshape(-1, 7)
        self.lf = np.array(lf, dtype=float).reshape(-1, 3)

    def decode(self, y: np.ndarray, breadth: int, refine: bool) -> int:
        """Index for a 1-d float64 array ``y``; negative on invalid input (see ``_decode_one``)."""
        return _decode_one(y, breadth, refine, self.ni, self.nf, self.li, self.lf)

    def decode_batch(self, ys: np.ndarray, breadth: int, refine: bool) -> np.ndarray:
        """Indices for the rows of ``ys``, negative where a row is invalid."""
        ys = np.ascontiguousarray(ys, dtype=float)
        return _decode_many(ys, breadth, refine, self.ni, self.nf, self.li, self.lf)


@numba.njit(cache=True)
def _circle(y1, y2, y3, y4, xi1, k, q, li, lf):
    m, n = li[q, 0], li[q, 1]
    k %= n
    shift = k * math.pi / m
    j = math.floor((xi1 - shift) * m / TWO_PI + 0.5) % m
    p1 = j * TWO_PI / m + shift
    p2 = k * TWO_PI / n
    inner = lf[q, 1] * (y1 * math.cos(p1) + y2 * math.sin(p1)) + lf[q, 2] * (y3 * math.cos(p2) + y4 * math.sin(p2))
    return li[q, 3] + k * m + j, inner


@numba.njit(cache=True)
def _torus(y, q, circles, half, li, lf):
    y1, y2, y3, y4 = y[0], y[1], y[2], y[3]
    if li[q, 2]:
        y1, y2, y3, y4 = y3, y4, y1, y2
    n = li[q, 1]
    xi1 = math.atan2(y2, y1)
    k0 = math.floor(math.atan2(y4, y3) * n / TWO_PI + 0.5)
    best_a, best = _circle(y1, y2, y3, y4, xi1, k0, q, li, lf)
    if circles == 0 or _residual(best) < half:
        return best_a, best
    for dk in range(-min(circles, n // 2), min(circles, (n - 1) // 2) + 1):
        if dk != 0:
            a, g = _circle(y1, y2, y3, y4, xi1, k0 + dk, q, li, lf)
            if g > best:
                best_a, best = a, g
    return best_a, best


@numba.njit(cache=True)
def _residual(inner):
    return math.sqrt(max(0.0, 2.0 - 2.0 * inner))


@numba.njit(cache=True)
def _snap(angle, step, count):
    h = count // 2
    i = math.floor((angle - QUARTER_PI) / step + 0.5)
    return min(max(i, -h), h) + h


# recursive kernels are not cached: numba's on-disk cache mishandles self-recursion
@numba.njit
def _node_dec(node, y, breadth, refine, ni, nf, li, lf):
    kind = ni[node, 0]
    if kind == KIND_POINT:
        return np.int64(0), y[0]
    base, count = ni[node, 2], ni[node, 3]
    half, step = nf[node, 0], nf[node, 1]
    if kind == KIND_TORUS:
        r = math.sqrt(y[0] * y[0] + y[1] * y[1])
        t = math.sqrt(y[2] * y[2] + y[3] * y[3])
        p = _snap(math.atan2(t, r), step, count)
        extra = 1 if refine else 0
        best_a, best = _torus(y, base + p, extra, half, li, lf)
        if refine:
            for s in range(1, breadth + 1):
                if _residual(best) < half:
                    break
                for q in (p - s, p + s):
                    if 0 <= q < count:
                        a, g = _torus(y, base + q, extra, half, li, lf)
                        if g > best:
                            best_a, best = a, g
        return np.int64(best_a), best

    h = ni[node, 1] // 2
    r1 = 0.0
    r2 = 0.0
    for i in range(h):
        r1 += y[i] * y[i]
        r2 += y[h + i] * y[h + i]
    r1 = math.sqrt(r1)
    r2 = math.sqrt(r2)
    u = y[:h] / r1 if r1 > 0.0 else y[:h]
    v = y[h:] / r2 if r2 > 0.0 else y[h:]
    p = _snap(math.atan2(r2, r1), step, count)
    best_a = np.int64(-1)
    best = -np.inf
    for ring in range(breadth + 1 if refine else 1):
        if ring > 0 and _residual(best) < half:
            break
        for q in (p - ring, p + ring):
            if q < 0 or q >= count or (ring == 0 and best_a >= 0):
                continue
            leaf = base + q
            a1 = np.int64(0)
            g1 = 0.0
            a2 = np.int64(0)
            g2 = 0.0
            if r1 > 0.0:
                a1, g1 = _node_dec(li[leaf, 4], u, breadth, refine, ni, nf, li, lf)
            if r2 > 0.0:
                a2, g2 = _node_dec(li[leaf, 5], v, breadth, refine, ni, nf, li, lf)
            g = lf[leaf, 1] * r1 * g1 + lf[leaf, 2] * r2 * g2
            if best_a < 0 or g > best:
                best = g
                best_a = li[leaf, 3] + a2 * li[leaf, 6] + a1
    return best_a, best


@numba.njit
def _decode_one(y, breadth, refine, ni, nf, li, lf):
    # -1 flags a wrong length, -2 a zero or non-finite vector
    if y.shape[0] != ni[0, 1]:
        return -1
    big = np.max(np.abs(y))
    if big == 0.0 or not math.isfinite(big):
        return -2
    u = y / big
    a, _ = _node_dec(0, u / math.sqrt(np.sum(u * u)), breadth, refine, ni, nf, li, lf)
    return a


@numba.njit(nogil=True)
def _decode_many(ys, breadth, refine, ni, nf, li, lf):
    out = np.empty(ys.shape[0], np.int64)
    for t in range(ys.shape[0]):
        out[t] = _decode_one(ys[t], breadth, refine, ni, nf, li, lf)
    return out
