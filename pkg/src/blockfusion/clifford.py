"""Clifford-extension algebras attached to a local pointed group.

Two graded algebras are constructed independently and compared:

* the endomorphism side: the opposite endomorphism algebra of the induced
  module (B^P * E) (x) B^P i, computed degreewise through twisted hom
  spaces and verified against the crossed product B^P * E it lives over;
* the corner side: the span, inside the corner iAi, of the homogeneous
  elements intertwining the two structural P-actions, graded by the
  fusion pairs.

The bridge between them sends a degreewise hom to right multiplication
by its value at i, transported along the normalizer witnesses.  Residual
versions divide out the graded radical, and the local variant rebuilds
the endomorphism side over the simple quotient of the block of the
Brauer construction.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import gfp, permgroups
from .algebra import (
    Algebra,
    Inconclusive,
    Module,
    SpanAlgebra,
    hom_space,
    module_iso,
    primitive_summands,
)
from .blocks import (
    BlockExtension,
    GroupAlgebra,
    LocalBlockData,
    Point,
    PointedGroupData,
    block_extension,
    points_at,
)
from .fusion import (
    CornerData,
    EFusionData,
    FusionGroup,
    ThetaData,
    fusion_report,
    pair_table,
)
from .graded import (
    FactorSetData,
    GradedAlgebra,
    crossed_product,
    factor_set,
    factor_sets_equivalent,
    graded_from_chunks,
    graded_iso_search,
    graded_radical_quotient,
)
from .permgroups import GroupTable, PermGroup, pinv, pmul

TENSOR_DIM_CAP = 64


@dataclass
class CliffordExtensionData:
    """A crossed product over E (endomorphism side) or over the fusion
    pair group (corner side), with the data needed to map between them."""

    graded: GradedAlgebra
    kind: str  # "end" | "corner" | "end-bar" | "corner-bar" | "end-bar-local"
    factor_data: FactorSetData | None = None
    # endomorphism-side extras
    quot: permgroups.QuotientSetup | None = None
    over: GradedAlgebra | None = None  # the crossed product acted through
    hom_bases: list | None = None  # per degree, matrices on the module basis
    v_rows: np.ndarray | None = None  # module basis, coefficient-algebra coords
    v_ambient: np.ndarray | None = None  # same rows in ambient kG coords
    base: SpanAlgebra | None = None  # coefficient algebra span
    # corner-side extras
    pairs: list | None = None
    corner: CornerData | None = None
    chunk_rows: list | None = None  # per pair, basis rows in corner coords
    # residual bookkeeping
    proj: np.ndarray | None = None
    section: np.ndarray | None = None

    @property
    def dim(self) -> int:
        return self.graded.alg.dim


def _conj_matrix(kg: GroupAlgebra, g, span: SpanAlgebra) -> np.ndarray:
    """Matrix (acting on coordinate columns) of x -> g x g^-1 on a span."""
    cols = [span.coords(kg.conj_vec(g, r)) for r in span.rows]
    return np.array(cols, dtype=np.int64).T


def _left_mult_in_rows(rows, mul, x, p):
    """Matrix (on columns) of left multiplication by x on a row span."""
    cols = []
    for r in rows:
        c = gfp.coords_in_rows(rows, mul(x, r), p)
        assert c is not None, "span is not stable under left multiplication"
        cols.append(c.ravel())
    return np.array(cols, dtype=np.int64).T


def _rep_defects(quot: permgroups.QuotientSetup):
    """All c with r_d r_e = c r_{de} over representative pairs."""
    out = {}
    for d in range(quot.order):
        for e in range(quot.order):
            de = quot.group.mul(d, e)
            c = pmul(pmul(quot.reps[d], quot.reps[e]), pinv(quot.reps[de]))
            out[c] = None
    return list(out)


def _end_crossed(balg: Algebra, quot: permgroups.QuotientSetup, action: dict,
                 interior: dict, v_rows, kind: str,
                 base: SpanAlgebra | None = None,
                 v_ambient=None) -> CliffordExtensionData:
    """Opposite endomorphism algebra of (balg * E) (x)_balg V, degreewise."""
    p = balg.p
    n = quot.order
    assert quot.reps[0] == permgroups.identity_perm(len(quot.reps[0]))
    over = crossed_product(balg, quot, action, interior)
    v_rows = gfp.row_basis(v_rows, p)
    nv = v_rows.shape[0]
    eye_b = np.eye(balg.dim, dtype=np.int64)
    mats_v = np.zeros((balg.dim, nv, nv), dtype=np.int64)
    for k in range(balg.dim):
        mats_v[k] = _left_mult_in_rows(v_rows, balg.mul, eye_b[k], p)
    vmod = Module(balg, mats_v)
    vmod.check()
    sigma_inv = {d: gfp.inverse(action[quot.reps[d]], p) for d in range(n)}

    def left_on_v(coeff):
        return np.tensordot(coeff, mats_v, axes=1) % p

    hom_bases = []
    for d in range(n):
        mats_w = np.array([left_on_v(sigma_inv[d][:, k]) for k in range(balg.dim)])
        wmod = Module(balg, mats_w)
        homs = hom_space(vmod, wmod)
        if module_iso(vmod, wmod) is None:
            raise ValueError("module is not invariant under the grading action")
        hom_bases.append(homs)
    dims = [len(h) for h in hom_bases]
    assert all(x == dims[0] for x in dims), "hom components of unequal size"

    # the induced module: basis (f, j) for u_f (x) v_j
    dim_m = n * nv
    act_m = np.zeros((over.alg.dim, dim_m, dim_m), dtype=np.int64)
    for d in range(n):
        for f in range(n):
            df = quot.group.mul(d, f)
            c = pmul(pmul(quot.reps[d], quot.reps[f]), pinv(quot.reps[df]))
            for k in range(balg.dim):
                coeff = (sigma_inv[df] @ balg.mul(eye_b[k], interior[c])) % p
                act_m[d * balg.dim + k,
                      df * nv:(df + 1) * nv, f * nv:(f + 1) * nv] = left_on_v(coeff)
    Module(over.alg, act_m).check()

    def full_endo(d, t):
        out = np.zeros((dim_m, dim_m), dtype=np.int64)
        for f in range(n):
            fd = quot.group.mul(f, d)
            c = pmul(pmul(quot.reps[f], quot.reps[d]), pinv(quot.reps[fd]))
            coeff = (sigma_inv[fd] @ interior[c]) % p
            out[fd * nv:(fd + 1) * nv, f * nv:(f + 1) * nv] = (left_on_v(coeff) @ t) % p
        return out

    basis = [(d, t) for d in range(n) for t in hom_bases[d]]
    fulls = [full_endo(d, t) for d, t in basis]
    for m in fulls:  # commuting with the crossed-product action
        for a in act_m:
            assert ((m @ a - a @ m) % p == 0).all(), "endomorphism is not linear"
    deg = np.array([d for d, _ in basis], dtype=np.int64)
    flat = {d: np.array([t.ravel() for t in hom_bases[d]]) for d in range(n)}
    dim = len(basis)
    sc = np.zeros((dim, dim, dim), dtype=np.int64)
    offsets = np.cumsum([0] + dims)
    for i, (di, _) in enumerate(basis):
        for j, (dj, _) in enumerate(basis):
            dij = quot.group.mul(di, dj)
            prod = (fulls[j] @ fulls[i]) % p  # opposite composition
            blockv = prod[dij * nv:(dij + 1) * nv, 0:nv]
            rest = prod[:, 0:nv].copy()
            rest[dij * nv:(dij + 1) * nv] = 0
            assert not rest.any(), "product left the expected degree"
            c = gfp.coords_in_rows(flat[dij], blockv.ravel(), p)
            assert c is not None, "product is not in the hom span"
            sc[i, j, offsets[dij]:offsets[dij + 1]] = c.ravel()
    unit = np.zeros(dim, dtype=np.int64)
    uc = gfp.coords_in_rows(flat[0], np.eye(nv, dtype=np.int64).ravel(), p)
    assert uc is not None, "identity map is missing from the degree-1 homs"
    unit[offsets[0]:offsets[1]] = uc.ravel()
    g = GradedAlgebra(alg=Algebra(p, sc, unit, check=True), group=quot.group, deg=deg)
    g.validate()
    assert g.is_crossed_product()
    return CliffordExtensionData(
        graded=g, kind=kind, quot=quot, over=over, hom_bases=hom_bases,
        v_rows=v_rows, v_ambient=v_ambient, base=base,
    )


def build_E(ext: BlockExtension, data: PointedGroupData, pt: Point,
            e_data: EFusionData) -> CliffordExtensionData:
    """Endomorphism-side extension over B^P * E acting on B^P i."""
    kg = ext.kg
    bp = data.span
    quot = e_data.quot
    action = {r: _conj_matrix(kg, r, bp) for r in quot.reps}
    interior = {}
    for c in _rep_defects(quot):
        interior[c] = bp.coords(kg.mul(kg.vec_of(c), ext.b))
        if c not in action:  # defects need not be chosen representatives
            action[c] = _conj_matrix(kg, c, bp)
    v_amb = gfp.row_basis(
        np.array([kg.mul(r, pt.idem) for r in bp.rows]), kg.p)
    v_inner = np.array([bp.coords(r) for r in v_amb])
    return _end_crossed(bp.alg, quot, action, interior, v_inner,
                        kind="end", base=bp, v_ambient=v_amb)


def build_F(ext: BlockExtension, data: PointedGroupData, cd: CornerData,
            fg: FusionGroup) -> CliffordExtensionData:
    """Corner-side extension: the formal sum, over the fusion pairs, of
    the intertwining spans in iAi, with multiplication induced from the
    corner.  The component images may overlap inside iAi, so the sum is
    kept formal and only the multiplication is computed downstairs."""
    kg = ext.kg
    p = kg.p
    alg = cd.graded.alg
    chunks = []
    for phi, gbar in fg.pairs:
        comp = cd.graded.component_rows(gbar)
        constraints = []
        for k, u in enumerate(cd.P.elements):
            pu = cd.P.elements[phi[k]]
            m = (alg.right_mult(cd.p_images[u])
                 - alg.left_mult(cd.p_images[pu])) % p
            constraints.append((m @ comp.T) % p)
        system = np.vstack(constraints)
        sols = gfp.nullspace(system, p).T
        rows = np.mod(sols @ comp, p) if sols.shape[0] else \
            np.zeros((0, alg.dim), dtype=np.int64)
        chunks.append(gfp.row_basis(rows, p))
    dims = [c.shape[0] for c in chunks]
    assert all(d == dims[0] for d in dims), "pair components of unequal size"
    # the identity-pair component is i B^P i
    ident = fg.pairs.index((tuple(range(cd.P.order)), 0))
    ibpi = gfp.row_basis(np.array([
        cd.span.coords(kg.mul(kg.mul(cd.idem, r), cd.idem))
        for r in data.span.rows
    ]), p)
    assert chunks[ident].shape == ibpi.shape
    assert gfp.rank(np.vstack([chunks[ident], ibpi]), p) == ibpi.shape[0]
    offsets = np.cumsum([0] + dims)
    dim = int(offsets[-1])
    sc = np.zeros((dim, dim, dim), dtype=np.int64)
    for k in range(len(chunks)):
        for l in range(len(chunks)):
            kl = fg.table.mul(k, l)
            for a in range(dims[k]):
                for b in range(dims[l]):
                    prod = alg.mul(chunks[k][a], chunks[l][b])
                    c = gfp.coords_in_rows(chunks[kl], prod, p)
                    assert c is not None, "product left its pair component"
                    sc[offsets[k] + a, offsets[l] + b,
                       offsets[kl]:offsets[kl + 1]] = c.ravel()
    unit = np.zeros(dim, dtype=np.int64)
    uc = gfp.coords_in_rows(chunks[ident], alg.unit % p, p)
    assert uc is not None
    unit[offsets[ident]:offsets[ident + 1]] = uc.ravel()
    deg = np.repeat(np.arange(len(chunks)), dims[0])
    g = GradedAlgebra(alg=Algebra(p, sc, unit, check=True), group=fg.table,
                      deg=deg)
    g.validate()
    # the fusion witnesses are homogeneous units, one per pair
    for k, pair in enumerate(fg.pairs):
        w = gfp.coords_in_rows(chunks[k], fg.witnesses[pair], p)
        assert w is not None, "fusion witness escapes its component"
        v = np.zeros(dim, dtype=np.int64)
        v[offsets[k]:offsets[k + 1]] = w.ravel()
        assert g.alg.is_unit_element(v), "fusion witness is not invertible"
    return CliffordExtensionData(
        graded=g, kind="corner", pairs=fg.pairs, corner=cd, chunk_rows=chunks,
    )


def psi_iso(ext: BlockExtension, pt: Point, ecd: CliffordExtensionData,
            fcd: CliffordExtensionData, theta: ThetaData) -> np.ndarray:
    """The graded isomorphism endomorphism side -> corner side: a
    degreewise hom goes to right multiplication by its value at i,
    pushed into the corner along the matching normalizer witness.

    Returns the matrix (rows = images of the endomorphism-side basis in
    corner-side coordinates); bijectivity, unit preservation, degree
    transport and multiplicativity are all verified.
    """
    kg = ext.kg
    p = kg.p
    quot = ecd.quot
    ci = gfp.coords_in_rows(ecd.v_ambient, pt.idem, p)
    assert ci is not None
    ci = ci.ravel()
    pair_index = {pair: k for k, pair in enumerate(fcd.pairs)}
    dims = [c.shape[0] for c in fcd.chunk_rows]
    offsets = np.cumsum([0] + dims)
    rows = []
    for d in range(quot.order):
        g = quot.reps[d]
        target = pair_index[theta.pair_of_rep[g]]
        for t in ecd.hom_bases[d]:
            w_amb = np.mod((t @ ci) @ ecd.v_ambient, p)
            amb = kg.mul(kg.vec_of(g), w_amb)
            corner_coords = fcd.corner.span.coords(amb)
            c = gfp.coords_in_rows(fcd.chunk_rows[target], corner_coords, p)
            assert c is not None, "image misses the matching pair component"
            fc = np.zeros(fcd.dim, dtype=np.int64)
            fc[offsets[target]:offsets[target + 1]] = c.ravel()
            rows.append(fc)
    psi = np.array(rows, dtype=np.int64)
    assert gfp.is_invertible(psi, p), "the comparison map is not bijective"
    ea, fa = ecd.graded.alg, fcd.graded.alg

    def apply(v):
        return np.mod(np.asarray(v, dtype=np.int64) @ psi, p)

    assert (apply(ea.unit) == fa.unit % p).all()
    eye = np.eye(ea.dim, dtype=np.int64)
    for i in range(ea.dim):
        for j in range(ea.dim):
            lhs = apply(ea.mul(eye[i], eye[j]))
            rhs = fa.mul(apply(eye[i]), apply(eye[j]))
            assert (lhs == rhs).all(), "comparison map is not multiplicative"
    return psi


def residual(cd: CliffordExtensionData) -> CliffordExtensionData:
    """The quotient by the graded radical, with its factor set."""
    quo, proj, section = graded_radical_quotient(cd.graded)
    fs = factor_set(quo)
    return CliffordExtensionData(
        graded=quo, kind=cd.kind + "-bar", factor_data=fs, quot=cd.quot,
        pairs=cd.pairs, proj=proj, section=section,
    )


def local_residual(ext: BlockExtension, data: PointedGroupData, pt: Point,
                   e_data: EFusionData,
                   lbd: LocalBlockData) -> CliffordExtensionData:
    """Endomorphism-side residual rebuilt over the simple quotient of the
    block of the Brauer construction, acting on its unique simple module."""
    kg = ext.kg
    p = kg.p
    span = lbd.block_span
    quot = e_data.quot
    inner_max = (np.array([span.coords(r) for r in lbd.max_ideal_rows])
                 if lbd.max_ideal_rows.shape[0]
                 else np.zeros((0, span.alg.dim), dtype=np.int64))
    ssq = span.alg.quotient_by_ideal(inner_max)
    keys = list(quot.reps) + [c for c in _rep_defects(quot)
                              if c not in quot.reps]
    action = {}
    for g in keys:
        assert (kg.conj_vec(g, lbd.b_gamma) == lbd.b_gamma).all(), \
            "stabilizer does not fix the local block"
        if lbd.max_ideal_rows.shape[0]:
            for r in lbd.max_ideal_rows:
                c = gfp.coords_in_rows(lbd.max_ideal_rows, kg.conj_vec(g, r), p)
                assert c is not None, "action does not preserve the radical"
        m = _conj_matrix(kg, g, span)
        action[g] = np.array(
            [ssq.project(m @ ssq.section[k]) for k in range(ssq.alg.dim)],
            dtype=np.int64).T
    interior = {}
    for c in _rep_defects(quot):
        interior[c] = ssq.project(span.coords(kg.mul(kg.vec_of(c), lbd.b_gamma)))
    q = ssq.alg
    comps = q.simple_components()
    assert len(comps) == 1
    f = comps[0].primitive_bar
    v_rows = gfp.row_basis(
        np.array([q.mul(e, f) for e in np.eye(q.dim, dtype=np.int64)]), p)
    out = _end_crossed(q, quot, action, interior, v_rows, kind="end-bar-local")
    out.factor_data = factor_set(out.graded)
    return out


def residuals_match(c1: CliffordExtensionData, c2: CliffordExtensionData,
                    group_map=None) -> bool:
    """Graded isomorphism test for two residual extensions over matched
    grading groups: factor-set equivalence over field 1-components, with
    the exhaustive graded search as fallback."""
    f1 = c1.factor_data if c1.factor_data is not None else factor_set(c1.graded)
    f2 = c2.factor_data if c2.factor_data is not None else factor_set(c2.graded)
    try:
        return factor_sets_equivalent(f1, f2, group_map=group_map)
    except Inconclusive:
        iso = graded_iso_search(c1.graded, c2.graded, group_map=group_map)
        return iso is not None


# -- corner truncation by a compatible idempotent -------------------------------


@dataclass
class EmbedTruncation:
    e: np.ndarray  # the truncating idempotent, ambient coords
    base_primed: SpanAlgebra  # e B^P e
    f_primed: CliffordExtensionData
    e_primed: CliffordExtensionData | None
    e_map: np.ndarray | None  # endomorphism-side basis -> primed coords
    f_map: np.ndarray  # corner-side basis -> primed coords
    diagram_commutes: bool


def embed_truncate(ext: BlockExtension, data: PointedGroupData, pt: Point,
                   e_data: EFusionData, cd: CornerData, fg: FusionGroup,
                   theta: ThetaData, ecd: CliffordExtensionData,
                   fcd: CliffordExtensionData, e) -> EmbedTruncation:
    """Truncate by an idempotent e of B^P with e i = i e = i and rebuild
    the primed extensions inside eAe, with the comparison isomorphisms.

    The corner of eAe at i equals iAi, so the corner side transports by
    the identity on corner coordinates; the endomorphism side transports
    by cutting each hom with e.  The two transports are checked to
    commute with the comparison maps on every basis element.
    """
    kg = ext.kg
    p = kg.p
    i = pt.idem
    bp = data.span
    e = np.mod(np.asarray(e, dtype=np.int64).ravel(), p)
    bp.coords(e)  # must lie in B^P
    assert (kg.mul(e, e) == e).all(), "truncating element is not idempotent"
    assert (kg.mul(e, i) == i).all() and (kg.mul(i, e) == i).all(), \
        "idempotent does not dominate the point"
    # the corner of eAe at i is iAi, degree by degree
    for d in range(ext.quot.order):
        rows = np.array([kg.mul(kg.mul(e, r), e) for r in ext.component_rows(d)])
        cut = gfp.row_basis(
            np.array([kg.mul(kg.mul(i, r), i) for r in rows]), p)
        full = gfp.row_basis(np.array(
            [kg.mul(kg.mul(i, r), i) for r in ext.component_rows(d)]), p)
        assert cut.shape == full.shape
        assert gfp.rank(np.vstack([cut, full]), p) == full.shape[0]
    rows_bp = gfp.row_basis(
        np.array([kg.mul(kg.mul(e, r), e) for r in bp.rows]), p)
    base_primed = kg.span(rows_bp, e)
    # primed corner side: same solution spaces, seen from the primed data
    f_primed = build_F(ext, data, cd, fg)
    f_map = np.eye(fcd.dim, dtype=np.int64)
    _check_graded_map(fcd.graded, f_primed.graded, f_map)

    stable = all((kg.conj_vec(g, e) == e).all() for g in e_data.quot.reps)
    e_primed = None
    e_map = None
    commutes = False
    if stable:
        quot = e_data.quot
        action = {r: _conj_matrix(kg, r, base_primed) for r in quot.reps}
        interior = {}
        for c in _rep_defects(quot):
            vc = kg.mul(kg.mul(e, kg.mul(kg.vec_of(c), ext.b)), e)
            interior[c] = base_primed.coords(vc)
        v_amb = gfp.row_basis(np.array([kg.mul(r, i) for r in rows_bp]), p)
        e_primed = _end_crossed(
            base_primed.alg, quot, action, interior,
            np.array([base_primed.coords(r) for r in v_amb]),
            kind="end", base=base_primed, v_ambient=v_amb)
        e_map = _truncate_hom_map(kg, ecd, e_primed, e)
        _check_graded_map(ecd.graded, e_primed.graded, e_map)
        psi = psi_iso(ext, pt, ecd, fcd, theta)
        psi_primed = psi_iso(ext, pt, e_primed, f_primed, theta)
        lhs = np.mod(e_map @ psi_primed, p)
        rhs = np.mod(psi @ f_map, p)
        commutes = (lhs == rhs).all()
        assert commutes, "truncation does not commute with the comparison maps"
    return EmbedTruncation(
        e=e, base_primed=base_primed, f_primed=f_primed, e_primed=e_primed,
        e_map=e_map, f_map=f_map, diagram_commutes=bool(commutes),
    )


def _truncate_hom_map(kg: GroupAlgebra, ecd: CliffordExtensionData,
                      e_primed: CliffordExtensionData, e) -> np.ndarray:
    """Cut each degreewise hom with the idempotent: ambient conjugation
    of the module bases realizes t -> e t e on the primed module."""
    p = kg.p
    rows = []
    for d in range(ecd.quot.order):
        flat_primed = np.array([t.ravel() for t in e_primed.hom_bases[d]])
        for t in ecd.hom_bases[d]:
            cols = []
            for r in e_primed.v_ambient:
                c = gfp.coords_in_rows(ecd.v_ambient, r, p)
                assert c is not None  # e B^P i inside B^P i
                img = np.mod((t @ c.ravel()) @ ecd.v_ambient, p)
                img = kg.mul(e, img)
                c2 = gfp.coords_in_rows(e_primed.v_ambient, img, p)
                assert c2 is not None
                cols.append(c2.ravel())
            tp = np.array(cols, dtype=np.int64).T
            coords = gfp.coords_in_rows(flat_primed, tp.ravel(), p)
            assert coords is not None, "cut hom left the primed hom span"
            out = np.zeros(e_primed.dim, dtype=np.int64)
            idx = np.nonzero(e_primed.graded.deg == d)[0]
            out[idx] = coords.ravel()
            rows.append(out)
    return np.array(rows, dtype=np.int64)


def _check_graded_map(g1: GradedAlgebra, g2: GradedAlgebra, m) -> None:
    """Verify a coordinate matrix is a degree-preserving algebra iso."""
    p = g1.p
    assert gfp.is_invertible(m, p)
    a1, a2 = g1.alg, g2.alg

    def apply(v):
        return np.mod(np.asarray(v, dtype=np.int64) @ m, p)

    assert (apply(a1.unit) == a2.unit % p).all()
    eye = np.eye(a1.dim, dtype=np.int64)
    for i in range(a1.dim):
        img = apply(eye[i])
        if img.any():
            assert g2.degree_of(img) == int(g1.deg[i]), "map breaks the grading"
        for j in range(a1.dim):
            lhs = apply(a1.mul(eye[i], eye[j]))
            rhs = a2.mul(apply(eye[i]), apply(eye[j]))
            assert (lhs == rhs).all(), "map is not multiplicative"


# -- diagonal tensor comparison --------------------------------------------------


def _shifted_perm(g, g2, n1, n2):
    return tuple(g) + tuple(x + n1 for x in g2)


def graded_restrict(g: GradedAlgebra, degrees: list, table: GroupTable):
    """The sum of the listed degree components as a graded algebra over
    the induced subgroup table (degrees[k] in g matches k in the table)."""
    chunks = [g.component_rows(d) for d in degrees]
    return graded_from_chunks(g.alg.mul, g.alg.unit, chunks, table, g.p)


def graded_tensor_diagonal(g1: GradedAlgebra, g2: GradedAlgebra,
                           match: list, table: GroupTable) -> GradedAlgebra:
    """Degreewise tensor product: component k is g1's match[k][0]
    component tensored with g2's match[k][1] component."""
    p = g1.p
    idx1 = [g1.component_indices(a) for a, _ in match]
    idx2 = [g2.component_indices(b) for _, b in match]
    sizes = [len(a) * len(b) for a, b in zip(idx1, idx2)]
    offsets = np.cumsum([0] + sizes)
    dim = offsets[-1]
    basis = []
    deg = []
    for k in range(len(match)):
        for a in idx1[k]:
            for b in idx2[k]:
                basis.append((k, a, b))
                deg.append(k)
    pos = {t: i for i, t in enumerate(basis)}
    eye1 = np.eye(g1.alg.dim, dtype=np.int64)
    eye2 = np.eye(g2.alg.dim, dtype=np.int64)
    sc = np.zeros((dim, dim, dim), dtype=np.int64)
    for i, (k, a, b) in enumerate(basis):
        for j, (l, c, d) in enumerate(basis):
            kl = table.mul(k, l)
            v1 = g1.alg.mul(eye1[a], eye1[c])
            v2 = g2.alg.mul(eye2[b], eye2[d])
            for a2 in idx1[kl]:
                if not v1[a2]:
                    continue
                for b2 in idx2[kl]:
                    if v2[b2]:
                        sc[i, j, pos[(kl, a2, b2)]] = (v1[a2] * v2[b2]) % p
    unit = np.zeros(dim, dtype=np.int64)
    u1, u2 = g1.alg.unit % p, g2.alg.unit % p
    ident = next(k for k in range(len(match)) if table.mul(k, k) == k
                 and all(table.mul(k, x) == x for x in range(len(match))))
    for a in idx1[ident]:
        for b in idx2[ident]:
            if u1[a] and u2[b]:
                unit[pos[(ident, a, b)]] = (u1[a] * u2[b]) % p
    g = GradedAlgebra(alg=Algebra(p, sc, unit, check=True), group=table,
                      deg=np.array(deg, dtype=np.int64))
    g.validate()
    return g


def diagonal_tensor_check(ext1: BlockExtension, data1: PointedGroupData,
                          pt1: Point, ext2: BlockExtension,
                          data2: PointedGroupData, pt2: Point,
                          within1: PermGroup, within2: PermGroup,
                          gbar_map=None, dim_cap: int = TENSOR_DIM_CAP) -> dict:
    """Compare the residual corner extension of the diagonal tensor
    scenario with the diagonal tensor of the two residual extensions,
    over the common fusion pairs.

    Both factors must carry the same subgroup P (same permutation
    domain); gbar_map identifies the second grading group inside the
    first (identity on indices by default).
    """
    kg1, kg2 = ext1.kg, ext2.kg
    p = kg1.p
    assert kg2.p == p
    assert data1.P.elements == data2.P.elements, "factors must share P"
    n1, n2 = within1.degree, within2.degree
    if gbar_map is None:
        gbar_map = {d: d for d in range(ext2.quot.order)}
    # the matched-degree product group and its normal base
    pairs = [
        (g, h)
        for g in within1.elements for h in within2.elements
        if ext1.quot.omega_of(g) == gbar_map[ext2.quot.omega_of(h)]
    ]
    gdd = permgroups.from_elements(
        [_shifted_perm(g, h, n1, n2) for g, h in pairs], n1 + n2)
    hdd = permgroups.from_elements(
        [_shifted_perm(g, h, n1, n2) for g in ext1.sub.elements
         for h in ext2.sub.elements], n1 + n2)
    kgdd = GroupAlgebra(gdd, p)
    bdd = np.zeros(kgdd.n, dtype=np.int64)
    for a in np.nonzero(ext1.b)[0]:
        for b in np.nonzero(ext2.b)[0]:
            g = _shifted_perm(kg1.grp.elements[a], kg2.grp.elements[b], n1, n2)
            bdd[kgdd.index(g)] = (ext1.b[a] * ext2.b[b]) % p
    extdd = block_extension(kgdd, hdd, bdd)
    dp = permgroups.from_elements(
        [_shifted_perm(u, u, n1, n2) for u in data1.P.elements], n1 + n2)
    datadd = points_at(kgdd, hdd, bdd, dp)
    # locate the product point through the Brauer images of i (x) i'
    idd = np.zeros(kgdd.n, dtype=np.int64)
    for a in np.nonzero(pt1.idem)[0]:
        for b in np.nonzero(pt2.idem)[0]:
            g = _shifted_perm(kg1.grp.elements[a], kg2.grp.elements[b], n1, n2)
            idd[kgdd.index(g)] = (pt1.idem[a] * pt2.idem[b]) % p
    assert (kgdd.mul(idd, idd) == idd).all()
    summands = primitive_summands(datadd.span.alg, datadd.span.coords(idd))
    target = None
    for s in summands:
        amb = datadd.span.lift(s)
        if datadd.br.apply(amb).any():
            ptdd = datadd.point_of(amb)
            assert target is None or target is ptdd, \
                "summands with nonzero Brauer image fall in different points"
            target = ptdd
    assert target is not None and target.local
    # fusion data on all three scenarios
    cd1, e1, f1, th1 = fusion_report(ext1, data1, pt1, within1)
    cd2, e2, f2, th2 = fusion_report(ext2, data2, pt2, within2)
    cddd, edd, fdd, thdd = fusion_report(extdd, datadd, target, gdd)
    fbar1 = residual(build_F(ext1, data1, cd1, f1))
    fbar2 = residual(build_F(ext2, data2, cd2, f2))
    fbardd = residual(build_F(extdd, datadd, cddd, fdd))
    # the common pairs: transport the second fusion group onto the first
    common = []
    second = {}
    for phi, g in f1.pairs:
        for phi2, g2 in f2.pairs:
            if phi2 == phi and gbar_map[g2] == g:
                common.append((phi, g))
                second[(phi, g)] = (phi2, g2)
    common.sort()
    ktable = pair_table(common, ext1.quot.group)
    # translate the diagonal grading group back to the first factor's
    dd_deg = {
        d: ext1.quot.omega_of(tuple(extdd.quot.reps[d][:n1]))
        for d in range(extdd.quot.order)
    }
    ddd_pairs = [
        next(k for k, (phi2, g2) in enumerate(fdd.pairs)
             if phi2 == phi and dd_deg[g2] == g)
        for phi, g in common
    ]
    restdd, _ = graded_restrict(fbardd.graded, ddd_pairs, ktable)
    rest1, _ = graded_restrict(
        fbar1.graded, [f1.pairs.index(c) for c in common], ktable)
    rest2, _ = graded_restrict(
        fbar2.graded, [f2.pairs.index(second[c]) for c in common], ktable)
    tensor = graded_tensor_diagonal(
        rest1, rest2, [(k, k) for k in range(len(common))], ktable)
    if max(tensor.alg.dim, restdd.alg.dim) > dim_cap:
        raise Inconclusive("tensor comparison exceeds the dimension cap")
    iso = graded_iso_search(restdd, tensor)
    report = {
        "common_pairs": len(common),
        "tensor_dims": tensor.component_dims(),
        "diagonal_dims": restdd.component_dims(),
        "isomorphic": iso is not None,
    }
    assert iso is not None, "diagonal tensor comparison failed"
    return report
