"""Spherical codes by Hopf foliations in dimensions 2^k.

A code in ``R^{2n}`` is a union of products ``cos(eta) C1 x sin(eta) C2`` over
a family of leaf angles ``eta``, where ``C1`` and ``C2`` are codes in ``R^n``
built recursively for the scaled distances ``d / cos(eta)`` and
``d / sin(eta)``.  The recursion bottoms out in ``R^4``, where each leaf is a
flat torus filled by :mod:`hopfcode.torus4`.

The construction is stored as a DAG of nodes, one per distinct
``(dim, distance)`` pair; a node's leaf rows are what an encoder needs to map
an integer index to a codeword without materializing the codebook.

Index layout (shared by encoder and decoder):

* leaves own consecutive index ranges in ascending ``eta`` order;
* inside a product leaf, ``a = a2 * M1 + a1`` (``a1`` varies fastest);
* inside a torus leaf, ``a = k * m + j`` (circle-major).
"""
from __future__ import annotations

import bisect
import csv
import io
import itertools
import json
import math
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import DomainError, ResourceError
from .foliation import (
    FROM_HALF_PI,
    FROM_ZERO,
    QUARTER_PI,
    SYMMETRIC,
    LeafScheme,
    check_distance,
    leaf_angles,
    minimal_leaf_separation,
    symmetric_leaf_indices,
)
from .torus4 import DEGENERATE_TOL, TorusLayout, diagonal_circle_count, torus_layout, torus_points

DEFAULT_CAP = 10**7
DIST_TOL = 1e-12
VARIANTS = ("standard", "modified")


@dataclass(frozen=True)
class CodeSpec:
    """Dimension, minimum distance and construction variant of a code.

    ``floor_tol`` is handed to every floor in the construction; the default 0
    is a plain floor.  A small positive value such as ``1e-9`` snaps quotients
    that land just below an integer, as exact arithmetic would.
    """

    dim: int
    dmin: float
    variant: str = "standard"
    floor_tol: float = 0.0

    def __post_init__(self):
        dim = self.dim
        if not isinstance(dim, (int, np.integer)) or dim < 4 or dim & (dim - 1):
            raise DomainError(f"dimension must be a power of two >= 4, got {dim!r}")
        check_distance(self.dmin)
        if self.variant not in VARIANTS:
            raise DomainError(f"variant must be one of {VARIANTS}, got {self.variant!r}")
        if not 0.0 <= self.floor_tol < 0.5:
            raise DomainError("floor_tol must lie in [0, 0.5)")


@dataclass(frozen=True)
class Codeword:
    index: int
    coords: np.ndarray


@dataclass(frozen=True)
class LeafRow:
    """One row of a leaf table: ``(i, eta, M1, M2)``; at dim 4, ``M1 = m`` and ``M2 = n``."""

    i: int
    eta: float
    M1: int
    M2: int

    @property
    def size(self) -> int:
        return self.M1 * self.M2


# --------------------------------------------------------------------------
# nodes


class _Node:
    dim: int
    dmin: float

    @property
    def size(self) -> int:
        return self.prefix[-1]

    def locate(self, a: int) -> tuple[int, int]:
        """Leaf position owning index ``a`` and the offset inside that leaf."""
        if not 0 <= a < self.size:
            raise IndexError(f"index out of range [0,{self.size})")
        p = bisect.bisect_right(self.prefix, a) - 1
        return p, a - self.prefix[p]


class PointSetNode(_Node):
    """An explicitly listed code: a single point, or an ad hoc special code."""

    def __init__(self, points: np.ndarray, dmin: float, label: str):
        self.points = np.asarray(points, dtype=float)
        self.dim = self.points.shape[1]
        self.dmin = dmin
        self.label = label
        self.prefix = [0, len(self.points)]

    def point(self, a: int) -> list[float]:
        self.locate(a)
        return self.points[a].tolist()

    def all_points(self) -> np.ndarray:
        return self.points

    def rows(self) -> list[LeafRow]:
        return []


def single_point(dim: int, dmin: float) -> PointSetNode:
    """One-point code: the first canonical basis vector."""
    e = np.zeros((1, dim))
    e[0, 0] = 1.0
    return PointSetNode(e, dmin, "single")


class TorusNode(_Node):
    """A code in R^4: one torus layout per leaf."""

    dim = 4

    def __init__(self, dmin: float, leaves: Sequence[tuple[int, TorusLayout]], symmetric: bool):
        self.dmin = dmin
        self.indices = tuple(i for i, _ in leaves)
        self.layouts = tuple(lay for _, lay in leaves)
        self.symmetric = symmetric
        self.prefix = [0, *itertools.accumulate(lay.size for lay in self.layouts)]

    def point(self, a: int) -> list[float]:
        p, r = self.locate(a)
        return list(self.layouts[p].point(r))

    def all_points(self) -> np.ndarray:
        return np.concatenate([torus_points(lay) for lay in self.layouts])

    def rows(self) -> list[LeafRow]:
        return [LeafRow(i, lay.eta, lay.m, lay.n_circles) for i, lay in zip(self.indices, self.layouts)]


@dataclass(frozen=True)
class ProductLeaf:
    i: int
    eta: float
    first: "Node"
    second: "Node"

    @property
    def size(self) -> int:
        return self.first.size * self.second.size


class FoliationNode(_Node):
    """A code in R^{2n} assembled from product codes on leaves."""

    def __init__(self, dim: int, dmin: float, leaves: Sequence[ProductLeaf], symmetric: bool):
        self.dim = dim
        self.dmin = dmin
        self.leaves = tuple(leaves)
        self.symmetric = symmetric
        self.prefix = [0, *itertools.accumulate(leaf.size for leaf in self.leaves)]

    def point(self, a: int) -> list[float]:
        eta, first, second, a1, a2 = self.split(a)
        c, s = math.cos(eta), math.sin(eta)
        return [c * x for x in first.point(a1)] + [s * x for x in second.point(a2)]

    def split(self, a: int):
        p, r = self.locate(a)
        leaf = self.leaves[p]
        m1 = leaf.first.size
        return leaf.eta, leaf.first, leaf.second, r % m1, r // m1

    def all_points(self) -> np.ndarray:
        blocks = []
        for leaf in self.leaves:
            p1 = leaf.first.all_points()
            p2 = leaf.second.all_points()
            blocks.append(np.hstack([
                math.cos(leaf.eta) * np.tile(p1, (len(p2), 1)),
                math.sin(leaf.eta) * np.repeat(p2, len(p1), axis=0),
            ]))
        return np.concatenate(blocks)

    def rows(self) -> list[LeafRow]:
        return [LeafRow(lf.i, lf.eta, lf.first.size, lf.second.size) for lf in self.leaves]


Node = Union[PointSetNode, TorusNode, FoliationNode]


def sigma_split(node: FoliationNode, a: int) -> tuple[float, int, int]:
    """Map index ``a`` of a product node to ``(eta, a1, a2)``."""
    eta, _, _, a1, a2 = node.split(a)
    return eta, a1, a2


# --------------------------------------------------------------------------
# special codes


def _simplex(n_points: int) -> np.ndarray:
    """Regular simplex with ``n_points`` vertices on the unit sphere of R^{n_points-1}."""
    return _in_hyperplane(np.eye(n_points))


def _in_hyperplane(vectors: np.ndarray) -> np.ndarray:
    """Center rows, express them in a basis of their span and normalize."""
    v = vectors - vectors.mean(axis=0)
    _, _, vt = np.linalg.svd(v)
    coords = v @ vt[: v.shape[1] - 1].T
    return coords / np.linalg.norm(coords, axis=1, keepdims=True)


def _pad(points: np.ndarray, dim: int) -> np.ndarray:
    out = np.zeros((len(points), dim))
    out[:, : points.shape[1]] = points
    return out


def biorthogonal(dim: int) -> np.ndarray:
    """The ``2 dim`` points ``+-e_i``; minimum distance sqrt(2)."""
    eye = np.eye(dim)
    return np.concatenate([eye, -eye])


def cell24() -> np.ndarray:
    """The 24 normalized roots of D4, all sign/position choices of (+-1, +-1, 0, 0)/sqrt(2)."""
    pts = []
    for i, j in itertools.combinations(range(4), 2):
        for si, sj in itertools.product((1.0, -1.0), repeat=2):
            v = [0.0] * 4
            v[i], v[j] = si, sj
            pts.append(v)
    return np.array(pts) / math.sqrt(2.0)


def _rectified_simplex() -> np.ndarray:
    """10 points in R^4: midpoints of the edges of a regular 4-simplex; cosine 1/6."""
    eye = np.eye(5)
    return _in_hyperplane(np.array([eye[i] + eye[j] for i, j in itertools.combinations(range(5), 2)]))


@lru_cache(maxsize=None)
def adhoc_catalog4() -> tuple[tuple[str, float, np.ndarray], ...]:
    """Known optimal codes in R^4 as ``(label, minimum distance, points)``."""
    codes = [
        ("antipodal", 2.0, _pad(np.array([[1.0], [-1.0]]), 4)),
        ("triangle", math.sqrt(3.0), _pad(_simplex(3), 4)),
        ("simplex-4", math.sqrt(8.0 / 3.0), _pad(_simplex(4), 4)),
        ("simplex-5", math.sqrt(5.0 / 2.0), _simplex(5)),
        ("cross-polytope", math.sqrt(2.0), biorthogonal(4)),
        ("rectified-simplex", math.sqrt(5.0 / 3.0), _rectified_simplex()),
        ("24-cell", 1.0, cell24()),
    ]
    return tuple(codes)


def adhoc_candidates(dim: int, d: float) -> list[tuple[str, np.ndarray]]:
    """Special codes of dimension ``dim`` with minimum distance ``>= d``."""
    out = []
    if d <= math.sqrt(2.0) + DIST_TOL:
        out.append(("biorthogonal", biorthogonal(dim)))
    if dim == 4:
        out.extend((label, pts) for label, dist, pts in adhoc_catalog4() if dist >= d - DIST_TOL)
    return out


def adhoc_lookup(dim: int, d: float, floor_tol: float = 0.0) -> np.ndarray | None:
    """Largest special code for ``(dim, d)`` if it beats the standard construction."""
    d = check_distance(d)
    best = max(adhoc_candidates(dim, d), key=lambda c: len(c[1]), default=None)
    if best is None or len(best[1]) <= cardinality(CodeSpec(dim, d, floor_tol=floor_tol)):
        return None
    return best[1]


# --------------------------------------------------------------------------
# construction


class _Builder:
    def __init__(self, variant: str, floor_tol: float):
        self.variant = variant
        self.floor_tol = floor_tol
        self.cache: dict[tuple[int, float], Node] = {}

    def node(self, dim: int, d: float) -> Node:
        key = (dim, d)
        if key not in self.cache:
            if d > 2.0:
                self.cache[key] = single_point(dim, d)
            elif self.variant == "standard":
                self.cache[key] = self._standard(dim, d)
            else:
                self.cache[key] = self._modified(dim, d)
        return self.cache[key]

    def _child_distances(self, d: float, eta: float) -> tuple[float, float]:
        c, s = math.cos(eta), math.sin(eta)
        return (d / c if c > DEGENERATE_TOL else math.inf, d / s if s > DEGENERATE_TOL else math.inf)

    def _standard(self, dim: int, d: float) -> Node:
        step = minimal_leaf_separation(d)
        idx = symmetric_leaf_indices(d, self.floor_tol)
        if dim == 4:
            leaves = [
                (i, torus_layout(d, QUARTER_PI + i * step, self.floor_tol, mirrored=i < 0))
                for i in idx
            ]
            return TorusNode(d, leaves, symmetric=True)
        leaves = []
        for i in idx:
            # leaves below pi/4 reuse the swapped sub-codes of their mirror image
            d1, d2 = self._child_distances(d, QUARTER_PI + abs(i) * step)
            if i < 0:
                d1, d2 = d2, d1
            eta = QUARTER_PI + i * step
            leaves.append(ProductLeaf(i, eta, self.node(dim // 2, d1), self.node(dim // 2, d2)))
        return FoliationNode(dim, d, leaves, symmetric=True)

    def _schemes(self, d: float) -> list[LeafScheme]:
        return [SYMMETRIC, FROM_ZERO, FROM_HALF_PI, LeafScheme.centered(d, self.floor_tol)]

    def _modified(self, dim: int, d: float) -> Node:
        candidates: list[Node] = []
        if dim == 4:
            fiber = diagonal_circle_count(d, self.floor_tol)
            for scheme in self._schemes(d):
                leaves = []
                for k, eta in enumerate(leaf_angles(d, scheme, self.floor_tol)):
                    options = [
                        torus_layout(d, eta, self.floor_tol),
                        torus_layout(d, eta, self.floor_tol, mirrored=True),
                        TorusLayout(eta, fiber, 1, kind="fiber"),
                    ]
                    leaves.append((k, max(options, key=lambda lay: lay.size)))
                candidates.append(TorusNode(d, leaves, symmetric=False))
        else:
            for scheme in self._schemes(d):
                leaves = []
                for k, eta in enumerate(leaf_angles(d, scheme, self.floor_tol)):
                    d1, d2 = self._child_distances(d, eta)
                    leaves.append(ProductLeaf(k, eta, self.node(dim // 2, d1), self.node(dim // 2, d2)))
                candidates.append(FoliationNode(dim, d, leaves, symmetric=False))
        candidates.extend(PointSetNode(pts, d, label) for label, pts in adhoc_candidates(dim, d))
        # first maximum wins, so foliated codes are preferred over ad hoc ones on ties
        return max(candidates, key=lambda nd: nd.size)


@dataclass
class CodeTables:
    """Leaf tables of a code, sufficient to encode any index.

    ``nodes`` lists every distinct sub-code in depth-first order, root first.
    Sub-codes are shared between leaves whenever their scaled distances
    coincide.
    """

    spec: CodeSpec
    root: Node
    nodes: list = field(default_factory=list)

    def __post_init__(self):
        if not self.nodes:
            self.nodes = _collect(self.root)
        self._ids = {id(nd): k for k, nd in enumerate(self.nodes)}

    @property
    def size(self) -> int:
        return self.root.size

    M = size

    @property
    def tree_nodes(self) -> int:
        """Nodes of the binary decomposition tree, ``dim/2 - 1``."""
        return self.spec.dim // 2 - 1

    @property
    def n_rows(self) -> int:
        return sum(len(nd.rows()) for nd in self.nodes)

    def node_id(self, node: Node) -> int:
        return self._ids[id(node)]

    def to_dict(self) -> dict:
        return {
            "spec": {
                "dim": self.spec.dim,
                "dmin": _num(self.spec.dmin),
                "variant": self.spec.variant,
                "floor_tol": _num(self.spec.floor_tol),
            },
            "M": str(self.size),
            "nodes": [self._node_dict(k, nd) for k, nd in enumerate(self.nodes)],
        }

    def _node_dict(self, k: int, nd: Node) -> dict:
        out = {"id": k, "dim": nd.dim, "dmin": _num(nd.dmin), "M": str(nd.size)}
        if isinstance(nd, PointSetNode):
            out.update(kind="points", label=nd.label, points=[[_num(x) for x in row] for row in nd.points])
        elif isinstance(nd, TorusNode):
            out.update(kind="torus", symmetric=nd.symmetric, rows=[
                {"i": i, "eta": _num(lay.eta), "M1": lay.m, "M2": lay.n_circles,
                 "mirrored": lay.mirrored, "layout": lay.kind}
                for i, lay in zip(nd.indices, nd.layouts)
            ])
        else:
            out.update(kind="foliation", symmetric=nd.symmetric, rows=[
                {"i": lf.i, "eta": _num(lf.eta), "M1": lf.first.size, "M2": lf.second.size,
                 "first": self.node_id(lf.first), "second": self.node_id(lf.second)}
                for lf in nd.leaves
            ])
        return out

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, data: dict) -> "CodeTables":
        s = data["spec"]
        spec = CodeSpec(int(s["dim"]), float(s["dmin"]), s["variant"], float(s.get("floor_tol", 0.0)))
        raw = {int(nd["id"]): nd for nd in data["nodes"]}
        built: dict[int, Node] = {}

        def make(k: int) -> Node:
            if k in built:
                return built[k]
            nd = raw[k]
            dmin = float(nd["dmin"])
            if nd["kind"] == "points":
                node = PointSetNode(np.array(nd["points"], dtype=float), dmin, nd["label"])
            elif nd["kind"] == "torus":
                node = TorusNode(dmin, [
                    (r["i"], TorusLayout(float(r["eta"]), r["M1"], r["M2"], r["mirrored"], r["layout"]))
                    for r in nd["rows"]
                ], nd["symmetric"])
            else:
                node = FoliationNode(nd["dim"], dmin, [
                    ProductLeaf(r["i"], float(r["eta"]), make(r["first"]), make(r["second"]))
                    for r in nd["rows"]
                ], nd["symmetric"])
            if node.size != int(nd["M"]):
                raise ValueError(f"node {k}: stored M={nd['M']} but rows give {node.size}")
            built[k] = node
            return node

        tables = cls(spec, make(0), [make(k) for k in sorted(raw)])
        if tables.size != int(data["M"]):
            raise ValueError("stored total M does not match the leaf tables")
        return tables

    @classmethod
    def from_json(cls, text: str) -> "CodeTables":
        return cls.from_dict(json.loads(text))


def _num(x: float) -> str:
    return f"{x:.17g}"


def _collect(root: Node) -> list:
    seen: dict[int, Node] = {}

    def visit(nd):
        if id(nd) in seen:
            return
        seen[id(nd)] = nd
        if isinstance(nd, FoliationNode):
            for lf in nd.leaves:
                visit(lf.first)
                visit(lf.second)

    visit(root)
    return list(seen.values())


def build_tables(spec: CodeSpec) -> CodeTables:
    """Construct all leaf tables for ``spec``."""
    builder = _Builder(spec.variant, spec.floor_tol)
    return CodeTables(spec, builder.node(spec.dim, float(spec.dmin)))


# --------------------------------------------------------------------------
# cardinality (evaluated straight from the recursion, without tables)


@lru_cache(maxsize=None)
def _card(dim: int, d: float, floor_tol: float) -> int:
    if d > 2.0:
        return 1
    step = minimal_leaf_separation(d)
    h = symmetric_leaf_indices(d, floor_tol).stop - 1
    if dim == 4:
        sizes = [torus_layout(d, QUARTER_PI + i * step, floor_tol).size for i in range(h + 1)]
        return sizes[0] + 2 * sum(sizes[1:])
    # both are sqrt(2) d in exact arithmetic, but the floats differ by an ulp;
    # use the same quotients as every other leaf so the floors agree with the tables
    c0, s0 = math.cos(QUARTER_PI), math.sin(QUARTER_PI)
    total = _card(dim // 2, d / c0, floor_tol) * _card(dim // 2, d / s0, floor_tol)
    for i in range(1, h + 1):
        eta = QUARTER_PI + i * step
        c, s = math.cos(eta), math.sin(eta)
        m1 = _card(dim // 2, d / c, floor_tol) if c > DEGENERATE_TOL else 1
        total += 2 * m1 * _card(dim // 2, d / s, floor_tol)
    return total


def cardinality(spec: CodeSpec) -> int:
    """Number of codewords of the standard construction."""
    if spec.variant != "standard":
        return cardinality_modified(spec)
    return _card(spec.dim, float(spec.dmin), spec.floor_tol)


def cardinality_modified(spec: CodeSpec) -> int:
    """Number of codewords when leaf schemes, fibres and special codes are optimized."""
    return build_tables(CodeSpec(spec.dim, spec.dmin, "modified", spec.floor_tol)).size


# --------------------------------------------------------------------------
# encoding


def encode(tables: CodeTables, a: int) -> Codeword:
    """Codeword with index ``a``."""
    a = int(a)
    if not 0 <= a < tables.size:
        raise IndexError(f"index out of range [0,{tables.size})")
    return Codeword(a, np.array(tables.root.point(a)))


def codebook(tables: CodeTables, cap: int = DEFAULT_CAP) -> np.ndarray:
    """All codewords as an ``(M, dim)`` array, row ``a`` holding codeword ``a``."""
    if tables.size > cap:
        raise ResourceError(f"code has {tables.size} points, above the enumeration cap {cap}")
    return tables.root.all_points()


def enumerate_codewords(tables: CodeTables, cap: int = DEFAULT_CAP) -> list[Codeword]:
    return [Codeword(a, row) for a, row in enumerate(codebook(tables, cap))]


def write_codebook_csv(tables: CodeTables, stream: io.TextIOBase, cap: int = DEFAULT_CAP) -> None:
    """CSV with columns ``index, x1..x_dim`` at 17 significant digits."""
    pts = codebook(tables, cap)
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(["index", *(f"x{k + 1}" for k in range(tables.spec.dim))])
    for a, row in enumerate(pts):
        writer.writerow([a, *(_num(x) for x in row)])


def read_codebook_csv(stream: Iterable[str]) -> np.ndarray:
    rows = list(csv.reader(stream))
    return np.array([[float(x) for x in r[1:]] for r in rows[1:]])
