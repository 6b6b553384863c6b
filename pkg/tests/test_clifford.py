import numpy as np
import pytest

from blockfusion import algebra as al
from blockfusion import blocks as bl
from blockfusion import clifford as cl
from blockfusion import fusion as fu
from blockfusion import gfp
from blockfusion import permgroups as pg


@pytest.fixture(scope="module")
def s3_chain():
    # S3 over its normal C3 at p = 3, P = C3 (the defect group)
    s3 = pg.enumerate_group(
        (pg.parse_cycles("(0 1)", 3), pg.parse_cycles("(0 1 2)", 3)), 3)
    c3 = pg.enumerate_group((pg.parse_cycles("(0 1 2)", 3),), 3)
    kg = bl.GroupAlgebra(s3, 3)
    b = bl.blocks(kg, c3)[0]
    ext = bl.block_extension(kg, c3, b)
    data = bl.points_at(kg, c3, b, c3)
    (pt,) = data.points
    cd, e_data, fg, theta = fu.fusion_report(ext, data, pt, s3)
    ecd = cl.build_E(ext, data, pt, e_data)
    fcd = cl.build_F(ext, data, cd, fg)
    return s3, c3, kg, b, ext, data, pt, cd, e_data, fg, theta, ecd, fcd


@pytest.fixture(scope="module")
def s4_chain():
    # S4 over A4 at p = 2, P = the Klein four group (the defect group)
    s4 = pg.enumerate_group(
        (pg.parse_cycles("(0 1)", 4), pg.parse_cycles("(0 1 2 3)", 4)), 4)
    a4 = pg.enumerate_group(
        (pg.parse_cycles("(0 1 2)", 4), pg.parse_cycles("(1 2 3)", 4)), 4)
    v4 = pg.enumerate_group(
        (pg.parse_cycles("(0 1)(2 3)", 4), pg.parse_cycles("(0 2)(1 3)", 4)), 4)
    kg = bl.GroupAlgebra(s4, 2)
    b = bl.blocks(kg, a4)[0]
    ext = bl.block_extension(kg, a4, b)
    data = bl.points_at(kg, a4, b, v4)
    pt = next(p for p in data.points if p.local)
    cd, e_data, fg, theta = fu.fusion_report(ext, data, pt, s4)
    ecd = cl.build_E(ext, data, pt, e_data)
    fcd = cl.build_F(ext, data, cd, fg)
    return s4, a4, kg, b, ext, data, pt, cd, e_data, fg, theta, ecd, fcd


def _theta_degree_map(e_data, theta, fcd):
    # degree d of the endomorphism side -> the matching fusion pair index
    reps = e_data.quot.reps
    return [fcd.pairs.index(theta.pair_of_rep[reps[d]]) for d in range(len(reps))]


def test_end_side_dimension_counts(s3_chain):
    *_, data, pt, cd, e_data, fg, theta, ecd, fcd = s3_chain[5:]
    # one copy of iB^Pi per element of the stabilizer quotient
    ibpi = cd.span
    assert ecd.dim == e_data.quot.order * 3
    dims = [int((ecd.graded.deg == d).sum()) for d in range(e_data.quot.order)]
    assert dims == [3, 3]


def test_end_side_identity_component_is_the_corner_fixed_part(s3_chain):
    kg, b, ext, data, pt, cd = s3_chain[2:8]
    ecd = s3_chain[11]
    # evaluation at i carries degree-zero homs onto i B^P i
    p = kg.p
    ci = gfp.coords_in_rows(ecd.v_rows, ecd.base.coords(pt.idem), p).ravel()
    imgs = np.array([np.mod(h @ ci, p) for h in ecd.hom_bases[0]])
    imgs = imgs @ ecd.v_rows % p  # back to B^P coordinates
    ibpi = gfp.row_basis(np.array([
        ecd.base.coords(kg.mul(kg.mul(pt.idem, r), pt.idem))
        for r in ecd.base.rows]), p)
    assert gfp.rank(np.vstack([imgs, ibpi]), p) == ibpi.shape[0]
    assert gfp.rank(imgs, p) == ibpi.shape[0]


def test_corner_side_components_have_equal_size(s3_chain):
    fg, theta, ecd, fcd = s3_chain[9:13]
    dims = [c.shape[0] for c in fcd.chunk_rows]
    assert len(set(dims)) == 1
    assert fcd.graded.alg.dim == sum(dims)
    assert fcd.pairs == fg.pairs


def test_corner_side_components_overlap_downstairs(s4_chain):
    # the component images are NOT independent inside the corner, which
    # is why the sum is kept formal: here 6 components of size 6 only
    # span 24 dimensions downstairs
    fcd = s4_chain[12]
    stacked = np.vstack(fcd.chunk_rows)
    assert stacked.shape[0] == 36
    assert gfp.rank(stacked, 2) == 24


def test_comparison_iso_small(s3_chain):
    ext, data, pt = s3_chain[4:7]
    theta, ecd, fcd = s3_chain[10:13]
    m = cl.psi_iso(ext, pt, ecd, fcd, theta)
    assert m.shape == (6, 6)
    assert gfp.rank(m, ext.kg.p) == 6


def test_comparison_iso_klein_four(s4_chain):
    ext, data, pt = s4_chain[4:7]
    theta, ecd, fcd = s4_chain[10:13]
    assert ecd.dim == 36
    m = cl.psi_iso(ext, pt, ecd, fcd, theta)
    assert gfp.rank(m, 2) == 36


def test_residuals_are_crossed_products_of_rank_one(s3_chain):
    e_data, fg, theta, ecd, fcd = s3_chain[8:13]
    re = cl.residual(ecd)
    rf = cl.residual(fcd)
    for r in (re, rf):
        assert r.graded.alg.dim == len(fg.pairs)
        assert sorted(r.graded.deg.tolist()) == list(range(len(fg.pairs)))


def test_residual_of_end_side_matches_residual_of_corner_side(s3_chain):
    e_data, fg, theta, ecd, fcd = s3_chain[8:13]
    re = cl.residual(ecd)
    rf = cl.residual(fcd)
    gm = _theta_degree_map(e_data, theta, fcd)
    assert cl.residuals_match(re, rf, group_map=gm)


def test_residual_matches_the_local_block_construction(s3_chain):
    kg, b, ext, data, pt = s3_chain[2:7]
    c3 = s3_chain[1]
    e_data, fg, theta, ecd = s3_chain[8:12]
    lbd = bl.local_block_data(kg, c3, b, data, pt)
    lres = cl.local_residual(ext, data, pt, e_data, lbd)
    assert cl.residuals_match(cl.residual(ecd), lres)


def test_residual_chain_klein_four(s4_chain):
    a4 = s4_chain[1]
    kg, b, ext, data, pt = s4_chain[2:7]
    e_data, fg, theta, ecd, fcd = s4_chain[8:13]
    re = cl.residual(ecd)
    rf = cl.residual(fcd)
    assert re.graded.alg.dim == 6
    gm = _theta_degree_map(e_data, theta, fcd)
    assert cl.residuals_match(re, rf, group_map=gm)
    lbd = bl.local_block_data(kg, a4, b, data, pt)
    lres = cl.local_residual(ext, data, pt, e_data, lbd)
    assert cl.residuals_match(re, lres)


def test_truncation_by_the_unit_changes_nothing(s3_chain):
    kg, b, ext, data, pt, cd = s3_chain[2:8]
    e_data, fg, theta, ecd, fcd = s3_chain[8:13]
    et = cl.embed_truncate(ext, data, pt, e_data, cd, fg, theta, ecd, fcd, b)
    assert et.diagram_commutes
    assert et.e_primed is not None
    assert et.base_primed.alg.dim == data.span.alg.dim


def test_truncation_by_a_proper_idempotent():
    # kS4 at p = 2 over the trivial subgroup: the unit of B splits as
    # three orthogonal primitives, so a point admits a truncating
    # idempotent strictly between i and 1
    s4 = pg.enumerate_group(
        (pg.parse_cycles("(0 1)", 4), pg.parse_cycles("(0 1 2 3)", 4)), 4)
    one = pg.from_elements([pg.identity_perm(4)], 4)
    kg = bl.GroupAlgebra(s4, 2)
    (b,) = bl.blocks(kg, s4)
    ext = bl.block_extension(kg, s4, b)
    data = bl.points_at(kg, s4, b, one)
    bp = data.span
    pt = data.points[0]
    rest = (bp.alg.unit % 2 - bp.coords(pt.idem)) % 2
    parts = al.primitive_summands(bp.alg, rest)
    assert len(parts) == 2
    e = np.mod(((bp.coords(pt.idem) + parts[0]) % 2) @ bp.rows, 2)
    assert not (e == b % 2).all() and not (e == pt.idem).all()
    cd, e_data, fg, theta = fu.fusion_report(ext, data, pt, s4)
    ecd = cl.build_E(ext, data, pt, e_data)
    fcd = cl.build_F(ext, data, cd, fg)
    et = cl.embed_truncate(ext, data, pt, e_data, cd, fg, theta, ecd, fcd, e)
    assert et.diagram_commutes
    assert et.e_primed is not None
    assert et.base_primed.alg.dim < data.span.alg.dim


def test_diagonal_subgroup_of_a_product_scenario(s3_chain):
    s3 = s3_chain[0]
    ext, data, pt = s3_chain[4:7]
    report = cl.diagonal_tensor_check(ext, data, pt, ext, data, pt, s3, s3)
    assert report["common_pairs"] == 2
    assert report["isomorphic"]
    assert report["tensor_dims"] == report["diagonal_dims"]
