"""Group algebras over GF(p) and their block theory.

Everything lives in the coordinates of one ambient group algebra kG;
subalgebras (kH, its center, fixed subalgebras B^P, Brauer quotients)
are row spans inside it.  Multiplication uses the group's product table
directly, so large ambient groups never materialize full structure
constants; Algebra objects are only built for the small spans.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import gfp, permgroups
from .algebra import (
    Algebra,
    SpanAlgebra,
    lift_idempotent,
    nilradical_commutative,
    primitive_idempotent_in,
    primitive_summands,
    quotient_algebra,
    same_point,
    span_algebra,
    split_commutative_semisimple,
)
from .permgroups import PermGroup, pconj, pinv, pmul


class GroupAlgebra:
    """kG with convolution multiplication from the group product table."""

    def __init__(self, grp: PermGroup, p: int):
        self.grp = grp
        self.p = int(p)
        self.n = grp.order
        elems = grp.elements
        idx = {g: i for i, g in enumerate(elems)}
        self.mtable = np.array(
            [[idx[pmul(a, b)] for b in elems] for a in elems], dtype=np.int64
        )
        self.inv_idx = np.array([idx[pinv(g)] for g in elems], dtype=np.int64)
        self._index = idx
        self._conj_cache: dict = {}
        self._alg: Algebra | None = None

    def index(self, g) -> int:
        return self._index[g]

    def vec_of(self, g) -> np.ndarray:
        v = np.zeros(self.n, dtype=np.int64)
        v[self._index[g]] = 1
        return v

    def sum_over(self, elements) -> np.ndarray:
        v = np.zeros(self.n, dtype=np.int64)
        for g in elements:
            v[self._index[g]] += 1
        return v % self.p

    def mul(self, x, y) -> np.ndarray:
        x = np.mod(np.asarray(x, dtype=np.int64).ravel(), self.p)
        y = np.mod(np.asarray(y, dtype=np.int64).ravel(), self.p)
        out = np.zeros(self.n, dtype=np.int64)
        for i in np.nonzero(x)[0]:
            np.add.at(out, self.mtable[i], x[i] * y)
        return out % self.p

    @property
    def unit(self) -> np.ndarray:
        return self.vec_of(self.grp.elements[0])

    def conj_perm(self, s) -> np.ndarray:
        """Index array c with c[i] = index of s * g_i * s^(-1)."""
        if s not in self._conj_cache:
            self._conj_cache[s] = np.array(
                [self._index[pconj(s, g)] for g in self.grp.elements], dtype=np.int64
            )
        return self._conj_cache[s]

    def conj_vec(self, s, v) -> np.ndarray:
        out = np.zeros(self.n, dtype=np.int64)
        out[self.conj_perm(s)] = np.asarray(v, dtype=np.int64).ravel()
        return out % self.p

    def augmentation(self, v) -> int:
        return int(np.asarray(v, dtype=np.int64).sum()) % self.p

    def algebra(self) -> Algebra:
        """Full structure constants; only sensible for small groups."""
        if self._alg is None:
            sc = np.zeros((self.n, self.n, self.n), dtype=np.int64)
            for i in range(self.n):
                for j in range(self.n):
                    sc[i, j, self.mtable[i, j]] = 1
            self._alg = Algebra(self.p, sc, self.unit, check=False)
        return self._alg

    def span(self, rows, unit_vec=None) -> SpanAlgebra:
        unit_vec = self.unit if unit_vec is None else unit_vec
        return span_algebra(rows, self.mul, unit_vec, self.p)


def conjugacy_classes(sub: PermGroup, within=None):
    """Classes of `within` (default: sub) under conjugation by sub."""
    targets = list(within if within is not None else sub.elements)
    seen = set()
    classes = []
    for g in targets:
        if g in seen:
            continue
        orbit = {pconj(s, g) for s in sub.elements}
        seen |= orbit
        classes.append(sorted(orbit))
    return classes


def center_span(kg: GroupAlgebra, sub: PermGroup) -> SpanAlgebra:
    """Z(k[sub]) inside kG, spanned by class sums."""
    rows = np.array([kg.sum_over(c) for c in conjugacy_classes(sub)])
    return kg.span(rows)


def blocks(kg: GroupAlgebra, sub: PermGroup):
    """Primitive central idempotents of k[sub], as vectors in kG coords."""
    z = center_span(kg, sub)
    nil = nilradical_commutative(z.alg)
    quo = quotient_algebra(z.alg, nil)
    out = []
    for ebar in split_commutative_semisimple(quo.alg):
        e = lift_idempotent(z.alg, quo.lift(ebar), nil)
        out.append(z.lift(e))
    out.sort(key=lambda v: v.tolist())
    total = np.zeros(kg.n, dtype=np.int64)
    for i, b in enumerate(out):
        assert (kg.mul(b, b) == b).all()
        total = (total + b) % kg.p
        for c in out[i + 1:]:
            assert not kg.mul(b, c).any()
    assert (total == kg.unit).all()
    return out


def block_ideal_dim(kg: GroupAlgebra, sub: PermGroup, b) -> int:
    rows = np.array([kg.mul(kg.vec_of(h), b) for h in sub.elements])
    return int(gfp.rank(rows, kg.p))


def is_principal_block(kg: GroupAlgebra, b) -> bool:
    # the principal block acts as identity on the trivial module
    return kg.augmentation(b) % kg.p == 1


def invariant_blocks(kg: GroupAlgebra, sub: PermGroup):
    """Primitive idempotents of Z(k[sub])^G: orbit sums of blocks of k[sub]."""
    blist = blocks(kg, sub)
    remaining = list(range(len(blist)))
    out = []
    while remaining:
        seed_idx = remaining[0]
        orbit = {seed_idx}
        frontier = [seed_idx]
        while frontier:
            i = frontier.pop()
            for s in kg.grp.generators:
                moved = kg.conj_vec(s, blist[i])
                for j in remaining:
                    if j not in orbit and (blist[j] == moved).all():
                        orbit.add(j)
                        frontier.append(j)
        total = np.zeros(kg.n, dtype=np.int64)
        for i in orbit:
            total = (total + blist[i]) % kg.p
        for s in kg.grp.elements:
            assert (kg.conj_vec(s, total) == total).all()
        out.append(total)
        remaining = [i for i in remaining if i not in orbit]
    out.sort(key=lambda v: v.tolist())
    return out


# -- graded block extensions ---------------------------------------------------


@dataclass
class BlockExtension:
    """A = kG * b with its grading by the cosets of a normal subgroup."""

    kg: GroupAlgebra
    sub: PermGroup  # the normal subgroup H
    b: np.ndarray  # G-invariant central idempotent of kH, in kG coords
    quot: permgroups.QuotientSetup
    rows: np.ndarray  # homogeneous basis of A, rows in kG coords
    degrees: np.ndarray  # index into quot.group labels, per row

    @property
    def dim(self) -> int:
        return self.rows.shape[0]

    def component_rows(self, dbar: int) -> np.ndarray:
        return self.rows[self.degrees == dbar]

    def identity_component(self) -> SpanAlgebra:
        return self.kg.span(self.component_rows(0), self.b)

    def span_all(self) -> SpanAlgebra:
        return self.kg.span(self.rows, self.b)

    def degree_of(self, v) -> int | None:
        """Degree of a homogeneous vector; None if not homogeneous."""
        hits = [
            d
            for d in range(self.quot.group.order)
            if gfp.in_rowspace(self.component_rows(d), v, self.kg.p)
        ]
        if np.asarray(v).any():
            return hits[0] if len(hits) == 1 else None
        return 0


def block_extension(kg: GroupAlgebra, sub: PermGroup, b) -> BlockExtension:
    p = kg.p
    b = np.mod(np.asarray(b, dtype=np.int64).ravel(), p)
    for s in kg.grp.generators:
        assert (kg.conj_vec(s, b) == b).all(), "idempotent is not G-invariant"
    for h in sub.elements:
        hv = kg.vec_of(h)
        assert (kg.mul(hv, b) == kg.mul(b, hv)).all(), "idempotent not central in kH"
    quot = permgroups.quotient(kg.grp, sub)
    row_chunks = []
    degs = []
    dims = []
    for d, rep in enumerate(quot.reps):
        coset = [pmul(h, rep) for h in sub.elements]
        chunk = gfp.row_basis(
            np.array([kg.mul(kg.vec_of(x), b) for x in coset]), p
        )
        row_chunks.append(chunk)
        degs.extend([d] * chunk.shape[0])
        dims.append(chunk.shape[0])
    assert len(set(dims)) == 1, "graded components have unequal dimensions"
    ext = BlockExtension(
        kg=kg,
        sub=sub,
        b=b,
        quot=quot,
        rows=np.vstack(row_chunks),
        degrees=np.array(degs, dtype=np.int64),
    )
    _verify_crossed(ext)
    return ext


def _verify_crossed(ext: BlockExtension) -> None:
    """Each component contains an invertible element of A (crossed product)."""
    kg, p = ext.kg, ext.kg.p
    aspan = None
    for d, rep in enumerate(ext.quot.reps):
        u = kg.mul(kg.vec_of(rep), ext.b)
        uinv = kg.mul(kg.vec_of(pinv(rep)), ext.b)
        assert (kg.mul(u, uinv) == ext.b).all() and (kg.mul(uinv, u) == ext.b).all()
        assert gfp.in_rowspace(ext.component_rows(d), u, p)
    del aspan


# -- fixed points, traces, and the Brauer map ---------------------------------


def orbit_sums(kg: GroupAlgebra, sub: PermGroup, P: PermGroup) -> np.ndarray:
    """Row basis of (k[sub])^P: sums over P-conjugation orbits on sub."""
    seen = set()
    rows = []
    for h in sub.elements:
        if h in seen:
            continue
        orbit = {pconj(u, h) for u in P.elements}
        assert orbit <= set(sub.elements), "P does not normalize the subgroup"
        seen |= orbit
        rows.append(kg.sum_over(orbit))
    return gfp.row_basis(np.array(rows), kg.p)


def fixed_subalgebra(kg: GroupAlgebra, sub: PermGroup, b, P: PermGroup) -> SpanAlgebra:
    """B^P where B = k[sub] * b, as a span inside kG."""
    base = orbit_sums(kg, sub, P)
    rows = np.array([kg.mul(r, b) for r in base])
    return kg.span(rows, b)


def relative_trace(kg: GroupAlgebra, P: PermGroup, Q: PermGroup, x) -> np.ndarray:
    """tr^P_Q(x) = sum over u in [P/Q] of u x u^(-1)."""
    assert Q.is_subgroup_of(P)
    qset = Q.element_set()
    reps = []
    seen = set()
    for g in P.elements:
        if g in seen:
            continue
        coset = {pmul(g, q) for q in qset}
        seen |= coset
        reps.append(g)
    out = np.zeros(kg.n, dtype=np.int64)
    for u in reps:
        out = (out + kg.conj_vec(u, x)) % kg.p
    return out


@dataclass
class BrauerData:
    """The Brauer construction at P: projection to C_H(P) coordinates."""

    kg: GroupAlgebra
    centralizer: PermGroup
    mask: np.ndarray  # 0/1 over kG basis, support on C_H(P)
    brb: np.ndarray  # image of the block idempotent
    target: SpanAlgebra | None  # B(P) = k[C_H(P)] * Br(b); None when Br(b)=0

    def apply(self, v) -> np.ndarray:
        return np.mod(np.asarray(v, dtype=np.int64).ravel() * self.mask, self.kg.p)


def brauer(kg: GroupAlgebra, sub: PermGroup, b, P: PermGroup) -> BrauerData:
    c = permgroups.centralizer(sub, P)
    mask = np.zeros(kg.n, dtype=np.int64)
    for g in c.elements:
        mask[kg.index(g)] = 1
    brb = np.mod(np.asarray(b, dtype=np.int64).ravel() * mask, kg.p)
    target = None
    if brb.any():
        rows = np.array([kg.mul(kg.vec_of(g), brb) for g in c.elements])
        target = kg.span(rows, brb)
        assert (kg.mul(brb, brb) == brb).all()
    return BrauerData(kg=kg, centralizer=c, mask=mask, brb=brb, target=target)


def verify_brauer_hom(kg, sub, b, P, br: BrauerData) -> None:
    """Multiplicativity on B^P and vanishing on proper relative traces."""
    bp = fixed_subalgebra(kg, sub, b, P)
    for x in bp.rows:
        for y in bp.rows:
            lhs = br.apply(kg.mul(x, y))
            rhs = kg.mul(br.apply(x), br.apply(y))
            assert (lhs == rhs).all(), "Brauer map is not multiplicative"
    if P.order == 1:
        return
    maximals = [
        q for q in permgroups.p_subgroups(P, kg.p) if q.order < P.order
    ]
    seen_orders = {q.order for q in maximals}
    top = max(seen_orders) if seen_orders else 1
    for q in maximals:
        if q.order != top:
            continue
        bq = fixed_subalgebra(kg, sub, b, q)
        for x in bq.rows:
            tr = relative_trace(kg, P, q, x)
            assert not br.apply(tr).any(), "Brauer map misses a relative trace"


# -- points and pointed groups -------------------------------------------------


@dataclass
class Point:
    index: int
    idem: np.ndarray  # ambient kG coords; primitive in B^P
    local: bool
    multiplicity: int  # matrix size of the simple component of B^P


@dataclass
class PointedGroupData:
    P: PermGroup
    span: SpanAlgebra  # B^P
    br: BrauerData
    points: list

    def point_of(self, idem) -> Point:
        """Which point a primitive idempotent of B^P belongs to."""
        c = self.span.coords(idem)
        for pt in self.points:
            if same_point(self.span.alg, c, self.span.coords(pt.idem)):
                return pt
        raise ValueError("idempotent does not match any point")


def points_at(kg: GroupAlgebra, sub: PermGroup, b, P: PermGroup) -> PointedGroupData:
    span = fixed_subalgebra(kg, sub, b, P)
    br = brauer(kg, sub, b, P)
    pts = []
    for comp in span.alg.simple_components():
        inner = primitive_idempotent_in(span.alg, comp)
        idem = span.lift(inner)
        local = bool(br.apply(idem).any())
        pts.append(
            Point(
                index=comp.index,
                idem=idem,
                local=local,
                multiplicity=comp.matrix_size,
            )
        )
    return PointedGroupData(P=P, span=span, br=br, points=pts)


def pointed_group_contains(
    kg: GroupAlgebra,
    large: PointedGroupData,
    gamma: Point,
    small: PointedGroupData,
    delta: Point,
) -> bool:
    """(Q, delta) <= (P, gamma): Q <= P and some summand of i_gamma in B^Q
    lies in delta."""
    if not small.P.is_subgroup_of(large.P):
        return False
    bq = small.span
    c = bq.coords(gamma.idem)
    target = bq.coords(delta.idem)
    for s in primitive_summands(bq.alg, c):
        if same_point(bq.alg, s, target):
            return True
    return False


def local_pointed_groups(kg: GroupAlgebra, sub: PermGroup, b, within: PermGroup,
                         subgroup_cap: int = 512):
    """All local pointed groups (P, gamma) with P a p-subgroup of `within`."""
    out = []
    for P in permgroups.p_subgroups(within, kg.p, cap=subgroup_cap):
        data = points_at(kg, sub, b, P)
        for pt in data.points:
            if pt.local:
                out.append((data, pt))
    return out


def defect_pointed_groups(kg: GroupAlgebra, sub: PermGroup, b, within: PermGroup,
                          subgroup_cap: int = 512):
    """Maximal local pointed groups of the block."""
    locs = local_pointed_groups(kg, sub, b, within, subgroup_cap)
    out = []
    for data, pt in locs:
        maximal = True
        for data2, pt2 in locs:
            if data2.P.order <= data.P.order:
                continue
            if pointed_group_contains(kg, data2, pt2, data, pt):
                maximal = False
                break
        if maximal:
            out.append((data, pt))
    return out


def stabilizer_of_point(
    kg: GroupAlgebra, sub: PermGroup, data: PointedGroupData, pt: Point,
    within: PermGroup,
) -> PermGroup:
    """N_G(P_gamma): normalizer elements fixing the point gamma of B^P."""
    ng = permgroups.normalizer(within, data.P)
    keep = []
    inner = data.span.alg
    target = data.span.coords(pt.idem)
    for g in ng.elements:
        moved = kg.conj_vec(g, pt.idem)
        if same_point(inner, data.span.coords(moved), target):
            keep.append(g)
    return permgroups.from_elements(keep, degree=within.degree)


@dataclass
class LocalBlockData:
    """The block of k[C_H(P)]Br(b) attached to a local point."""

    b_gamma: np.ndarray  # ambient kG coords
    block_span: SpanAlgebra  # B(P) * b_gamma
    max_ideal_rows: np.ndarray  # maximal ideal attached to the point, ambient coords
    simple_dim: int


def local_block_data(kg: GroupAlgebra, sub: PermGroup, b,
                     data: PointedGroupData, pt: Point) -> LocalBlockData:
    assert pt.local, "only local points determine a block of B(P)"
    br = data.br
    c = br.centralizer
    bri = br.apply(pt.idem)
    cands = []
    for blk in blocks(kg, c):
        blk = kg.mul(blk, br.brb)
        if blk.any() and kg.mul(blk, bri).any():
            cands.append(blk)
    assert len(cands) == 1, "Br(i) must land in a single block of B(P)"
    b_gamma = cands[0]
    rows = np.array([kg.mul(kg.vec_of(g), b_gamma) for g in c.elements])
    span = kg.span(rows, b_gamma)
    rad_inner = span.alg.radical_rows()
    # Br(i) is primitive in B(P), so it picks exactly one simple component
    # of the block; the maximal ideal is the radical plus the others
    ssq = span.alg.semisimple_quotient()
    comps = span.alg.simple_components()
    xbar = ssq.project(span.coords(kg.mul(bri, b_gamma)))
    hits = [cp for cp in comps
            if ssq.alg.mul(cp.central_idempotent, xbar).any()]
    assert len(hits) == 1, "Br(i) must hit a single simple component"
    chunks = [rad_inner] if rad_inner.shape[0] else []
    for cp in comps:
        if cp.index == hits[0].index:
            continue
        ideal = gfp.row_basis(np.array([
            ssq.alg.mul(cp.central_idempotent, e)
            for e in np.eye(ssq.alg.dim, dtype=np.int64)]), kg.p)
        chunks.append(np.array([ssq.lift(v) for v in ideal]))
    inner_max = (gfp.row_basis(np.vstack(chunks), kg.p) if chunks
                 else np.zeros((0, span.alg.dim), dtype=np.int64))
    max_rows = (
        np.mod(inner_max @ span.rows, kg.p)
        if inner_max.shape[0]
        else np.zeros((0, kg.n), dtype=np.int64)
    )
    return LocalBlockData(
        b_gamma=b_gamma,
        block_span=span,
        max_ideal_rows=max_rows,
        simple_dim=span.alg.dim - inner_max.shape[0],
    )


def extended_brauer_extension(kg_parent: GroupAlgebra, sub: PermGroup,
                              data: PointedGroupData, pt: Point,
                              stabilizer: PermGroup,
                              lbd: LocalBlockData) -> tuple:
    """k[N_G(Q_delta)] * b_delta graded by N_G(Q_delta) / (Q * C_H(Q)).

    Returns (GroupAlgebra of the stabilizer, BlockExtension).
    """
    q = data.P
    c = data.br.centralizer
    base = permgroups.from_elements(
        [pmul(a, x) for a in q.elements for x in c.elements], degree=stabilizer.degree
    )
    kn = GroupAlgebra(stabilizer, kg_parent.p)
    b_delta = np.zeros(kn.n, dtype=np.int64)
    for g in c.elements:
        b_delta[kn.index(g)] = lbd.b_gamma[kg_parent.index(g)]
    ext = block_extension(kn, base, b_delta)
    return kn, ext
