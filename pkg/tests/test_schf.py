import io
import math

import numpy as np
import pytest
from conftest import min_distance
from hypothesis import given
from hypothesis import strategies as st
from scipy.spatial import cKDTree

from hopfcode.errors import DomainError, ResourceError
from hopfcode.schf import (
    CodeSpec,
    CodeTables,
    FoliationNode,
    PointSetNode,
    adhoc_catalog4,
    adhoc_lookup,
    biorthogonal,
    build_tables,
    cardinality,
    cardinality_modified,
    cell24,
    codebook,
    encode,
    enumerate_codewords,
    read_codebook_csv,
    sigma_split,
    write_codebook_csv,
)

SMALL = [(4, 1.0), (4, 0.7), (4, 0.5), (4, 0.3), (8, 1.0), (8, 0.7), (8, 0.5), (16, 0.7)]


def card_oracle(dim, d):
    """Cardinality recursion written out from scratch with plain floors."""
    if d > 2:
        return 1
    step = 2 * math.asin(d / 2)
    h = math.floor(math.pi / (4 * math.asin(d / 2))) // 2
    total = 0
    for i in range(-h, h + 1):
        eta = math.pi / 4 + abs(i) * step
        c, s = math.cos(eta), math.sin(eta)
        if dim == 4:
            if c < 1e-12:
                m, n = 1, math.floor(math.pi / math.asin(d / 2))
            else:
                m = math.floor(math.pi / math.asin(d / (2 * c))) if d <= 2 * c else 1
                rad = d * d / 4 / s**2 - (c / s) ** 2 * math.sin(math.pi / (2 * m)) ** 2
                n1 = math.floor(math.pi / math.asin(math.sqrt(rad))) if 0 < rad <= 1 else 1
                n2 = math.floor(2 * math.pi / math.asin(d / (2 * s))) if d <= 2 * s else 1
                n = max(2 * (min(n1, n2) // 2), 1)
            total += m * n
        else:
            first = card_oracle(dim // 2, d / c) if c > 1e-12 else 1
            total += first * card_oracle(dim // 2, d / s)
    return total


@pytest.mark.parametrize("dim,d,M", [(4, 1.0, 16), (4, 0.7, 52), (4, 0.5, 152), (8, 0.7, 360), (8, 0.5, 2608)])
def test_cardinality_values(dim, d, M):
    assert cardinality(CodeSpec(dim, d)) == M
    assert build_tables(CodeSpec(dim, d)).size == M


def test_snapped_floor_gains_points_at_tight_distances():
    assert cardinality(CodeSpec(8, 0.5, floor_tol=1e-9)) == 2920


@given(st.sampled_from([4, 8, 16]), st.floats(min_value=0.08, max_value=2.0))
def test_cardinality_matches_oracle(dim, d):
    if dim == 16:
        d = max(d, 0.3)
    assert cardinality(CodeSpec(dim, d)) == card_oracle(dim, d)


@given(st.sampled_from([4, 8]), st.floats(min_value=0.2, max_value=2.0))
def test_tables_agree_with_recursion(dim, d):
    tables = build_tables(CodeSpec(dim, d))
    assert tables.size == cardinality(tables.spec)
    for node in tables.nodes:
        if isinstance(node, PointSetNode):
            continue
        assert node.size == sum(r.size for r in node.rows())


@pytest.mark.parametrize("dim,d", SMALL)
def test_minimum_distance_and_norms(dim, d):
    pts = codebook(build_tables(CodeSpec(dim, d)))
    np.testing.assert_allclose(np.linalg.norm(pts, axis=1), 1.0, atol=1e-12)
    assert min_distance(pts) >= d - 1e-9


@pytest.mark.parametrize("dim,d", [(4, 1.0), (4, 0.5), (8, 0.5)])
def test_encode_matches_enumeration(dim, d):
    tables = build_tables(CodeSpec(dim, d))
    pts = codebook(tables)
    for a in range(tables.size):
        np.testing.assert_allclose(encode(tables, a).coords, pts[a], atol=1e-15)
    assert len(np.unique(pts.round(12), axis=0)) == tables.size


def test_first_codeword_and_range():
    tables = build_tables(CodeSpec(4, 1.0))
    np.testing.assert_allclose(encode(tables, 0).coords, [math.sqrt(0.5), 0, math.sqrt(0.5), 0], atol=1e-15)
    with pytest.raises(IndexError, match=r"index out of range \[0,16\)"):
        encode(tables, 16)
    with pytest.raises(IndexError):
        encode(tables, -1)
    assert len(enumerate_codewords(tables)) == 16


def test_table_shapes():
    t4 = build_tables(CodeSpec(4, 1.0))
    assert [(r.i, r.M1, r.M2) for r in t4.root.rows()] == [(0, 4, 4)]
    assert t4.root.rows()[0].eta == pytest.approx(math.pi / 4)
    t8 = build_tables(CodeSpec(8, 0.5))
    assert [r.i for r in t8.root.rows()] == [-1, 0, 1]
    assert build_tables(CodeSpec(16, 0.7)).tree_nodes == 7


def test_rows_ascend_and_are_separated():
    for dim, d in SMALL:
        for node in build_tables(CodeSpec(dim, d)).nodes:
            etas = [r.eta for r in node.rows()]
            assert etas == sorted(etas)
            for a, b in zip(etas, etas[1:]):
                assert 2 * math.sin((b - a) / 2) >= node.dmin - 1e-12


def test_sigma_split_bounds():
    tables = build_tables(CodeSpec(8, 0.5))
    root = tables.root
    assert isinstance(root, FoliationNode)
    eta, a1, a2 = sigma_split(root, 0)
    assert (a1, a2) == (0, 0) and eta == root.leaves[0].eta
    last = root.leaves[-1]
    eta, a1, a2 = sigma_split(root, tables.size - 1)
    assert eta == last.eta and a2 == last.second.size - 1 and a1 == last.first.size - 1
    with pytest.raises(IndexError):
        sigma_split(root, tables.size)


def test_sigma_split_follows_enumeration_order():
    tables = build_tables(CodeSpec(8, 0.5))
    pts = codebook(tables)
    for a in (0, 79, 80, 81, 1000, 2607):
        eta, a1, a2 = sigma_split(tables.root, a)
        p, _ = tables.root.locate(a)
        leaf = tables.root.leaves[p]
        x = np.concatenate([math.cos(eta) * leaf.first.all_points()[a1],
                            math.sin(eta) * leaf.second.all_points()[a2]])
        np.testing.assert_allclose(x, pts[a], atol=1e-15)


@pytest.mark.parametrize("dim,d", [(8, 0.9), (8, 0.7), (8, 0.6), (8, 0.5), (16, 0.7)])
def test_block_swap_closure(dim, d):
    pts = codebook(build_tables(CodeSpec(dim, d, floor_tol=1e-9)))
    h = dim // 2
    swapped = np.hstack([pts[:, h:], pts[:, :h]])
    assert cKDTree(pts).query(swapped)[0].max() < 1e-12


@given(st.sampled_from([4, 8]), st.floats(min_value=0.25, max_value=2.0), st.floats(min_value=0.25, max_value=2.0))
def test_monotone_in_distance(dim, d1, d2):
    lo, hi = sorted((d1, d2))
    assert cardinality(CodeSpec(dim, lo, floor_tol=1e-9)) >= cardinality(CodeSpec(dim, hi, floor_tol=1e-9))


def test_antipodal_distance_gives_single_point():
    for dim in (4, 8, 16):
        pts = codebook(build_tables(CodeSpec(dim, 2.0)))
        assert len(pts) == 1
        h = dim // 2
        np.testing.assert_allclose(pts[0], math.sqrt(0.5) * (np.eye(dim)[0] + np.eye(dim)[h]), atol=1e-15)


def test_children_beyond_diameter_are_basis_points():
    # at d = 1.9 in dim 8 the centre leaf scales d past 2, so children hold e0 only
    tables = build_tables(CodeSpec(8, 1.9))
    for leaf in tables.root.leaves:
        for child in (leaf.first, leaf.second):
            if isinstance(child, PointSetNode):
                np.testing.assert_array_equal(child.points, np.eye(4)[:1])


def test_spec_validation():
    for bad in [dict(dim=6, dmin=0.5), dict(dim=2, dmin=0.5), dict(dim=4, dmin=0.0),
                dict(dim=4, dmin=2.5), dict(dim=4, dmin=0.5, variant="other")]:
        with pytest.raises(DomainError):
            CodeSpec(**bad)


def test_huge_cardinalities_are_exact_integers():
    M = cardinality(CodeSpec(64, 0.1))
    assert isinstance(M, int) and M > 2**64


def test_codebook_cap():
    with pytest.raises(ResourceError):
        codebook(build_tables(CodeSpec(8, 0.5)), cap=100)


def test_json_round_trip():
    for spec in [CodeSpec(4, 0.5), CodeSpec(8, 0.5), CodeSpec(4, 0.5, "modified"), CodeSpec(8, 0.7, "modified")]:
        tables = build_tables(spec)
        text = tables.to_json()
        back = CodeTables.from_json(text)
        assert back.spec == spec and back.size == tables.size
        np.testing.assert_array_equal(codebook(back), codebook(tables))
        assert back.to_json() == text


def test_json_shape():
    import json

    doc = json.loads(build_tables(CodeSpec(8, 0.5)).to_json())
    assert doc["M"] == "2608"
    row = doc["nodes"][0]["rows"][0]
    assert {"i", "eta", "M1", "M2"} <= row.keys()
    assert float(row["eta"]) == pytest.approx(math.pi / 4 - 2 * math.asin(0.25), rel=1e-15)


def test_csv_round_trip():
    tables = build_tables(CodeSpec(4, 0.5))
    buf = io.StringIO()
    write_codebook_csv(tables, buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == "index,x1,x2,x3,x4"
    assert len(lines) == 153
    np.testing.assert_array_equal(read_codebook_csv(io.StringIO(buf.getvalue())), codebook(tables))


# special codes and the modified construction


def test_cell24():
    pts = cell24()
    assert len(pts) == 24
    assert min_distance(pts) == pytest.approx(1.0)
    np.testing.assert_allclose(np.linalg.norm(pts, axis=1), 1.0)


def test_catalog_distances():
    for label, dist, pts in adhoc_catalog4():
        assert pts.shape[1] == 4
        np.testing.assert_allclose(np.linalg.norm(pts, axis=1), 1.0, atol=1e-12)
        assert min_distance(pts) == pytest.approx(dist, rel=1e-12), label
    assert sorted(len(p) for _, _, p in adhoc_catalog4()) == [2, 3, 4, 5, 8, 10, 24]


def test_adhoc_lookup():
    assert len(adhoc_lookup(4, 1.0)) == 24
    assert len(adhoc_lookup(8, math.sqrt(2))) == 16
    assert len(adhoc_lookup(4, 2.0)) == 2
    assert adhoc_lookup(4, 0.3) is None
    assert min_distance(biorthogonal(8)) == pytest.approx(math.sqrt(2))


@pytest.mark.parametrize("dim,d,M", [(4, 1.0, 24), (4, 0.5, 168), (4, 0.7, 56), (8, 0.7, 688), (8, 0.5, 4944)])
def test_modified_values(dim, d, M):
    assert cardinality_modified(CodeSpec(dim, d)) == M


@pytest.mark.parametrize("dim,d", [(4, 1.0), (4, 0.7), (4, 0.5), (4, 0.3), (8, 1.0), (8, 0.7), (8, 0.5)])
def test_modified_is_a_packing(dim, d):
    pts = codebook(build_tables(CodeSpec(dim, d, "modified")))
    np.testing.assert_allclose(np.linalg.norm(pts, axis=1), 1.0, atol=1e-12)
    assert min_distance(pts) >= d - 1e-9


@given(st.floats(min_value=0.15, max_value=2.0))
def test_modified_never_loses(d):
    assert cardinality_modified(CodeSpec(4, d)) >= cardinality(CodeSpec(4, d))
