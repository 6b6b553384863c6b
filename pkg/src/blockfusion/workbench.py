"""Scenario ingestion, the built-in catalog, end-to-end verification runs,
Morita-pair checks, and deterministic report emission.

A scenario names a group G with a normal subgroup H, a prime p, an
H-block, and a p-subgroup P; running it drives the whole pipeline: block
arithmetic, the graded extension, pointed groups, the Brauer map, the two
fusion groups with their comparison isomorphism, the two Clifford
extensions with theirs, and the residual comparisons.  Every passing
check records a witness that an independent verifier can replay.
"""

import json
import time
from dataclasses import dataclass, field

import numpy as np

from . import algebra as al
from . import blocks as bl
from . import clifford as cl
from . import fusion as fu
from . import gfp
from . import permgroups as pg

SCHEMA_VERSION = 1
DEFAULT_CAP_ORDER = 5000

_SCENARIO_FIELDS = {"schema", "name", "p", "degree", "gens_G", "gens_H",
                    "block", "P", "Q"}
_PAIR_FIELDS = {"schema", "name", "left", "right", "identification",
                "bimodule"}


# -- scenario ingestion ----------------------------------------------------------


@dataclass
class Scenario:
    name: str
    p: int
    degree: int
    gens_g: list  # generators of G, cycle strings
    gens_h: list  # generators of H, cycle strings
    block: object = "principal"  # index into the invariant blocks, or "principal"
    subgroup: object = "defect"  # generators of P, or "defect"
    q: list | None = None  # optional generators of a smaller Q

    def to_dict(self) -> dict:
        d = {"schema": SCHEMA_VERSION, "name": self.name, "p": self.p,
             "degree": self.degree, "gens_G": list(self.gens_g),
             "gens_H": list(self.gens_h), "block": self.block,
             "P": self.subgroup}
        if self.q is not None:
            d["Q"] = list(self.q)
        return d


def scenario_from_dict(d: dict) -> Scenario:
    unknown = set(d) - _SCENARIO_FIELDS
    if unknown:
        raise ValueError(f"unknown scenario fields: {sorted(unknown)}")
    if d.get("schema", SCHEMA_VERSION) != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema version {d['schema']}")
    for key in ("name", "p", "degree", "gens_G", "gens_H"):
        if key not in d:
            raise ValueError(f"scenario is missing {key!r}")
    block = d.get("block", "principal")
    if not (block == "principal" or isinstance(block, int)):
        raise ValueError("block selector must be an index or 'principal'")
    sel = d.get("P", "defect")
    if not (sel == "defect" or isinstance(sel, list)):
        raise ValueError("P selector must be generators or 'defect'")
    return Scenario(name=d["name"], p=int(d["p"]), degree=int(d["degree"]),
                    gens_g=list(d["gens_G"]), gens_h=list(d["gens_H"]),
                    block=block, subgroup=sel, q=d.get("Q"))


@dataclass
class MoritaScenario:
    name: str
    left: Scenario
    right: Scenario
    identification: object = "identity"  # or a relabeling permutation (cycles)
    bimodule: str = "identity"

    def to_dict(self) -> dict:
        return {"schema": SCHEMA_VERSION, "name": self.name,
                "left": self.left.to_dict(), "right": self.right.to_dict(),
                "identification": self.identification,
                "bimodule": self.bimodule}


def morita_from_dict(d: dict) -> MoritaScenario:
    unknown = set(d) - _PAIR_FIELDS
    if unknown:
        raise ValueError(f"unknown pair fields: {sorted(unknown)}")
    if d.get("schema", SCHEMA_VERSION) != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema version {d['schema']}")
    if d.get("bimodule", "identity") != "identity":
        raise ValueError("only identity bimodule descriptors are supported")
    return MoritaScenario(
        name=d["name"], left=scenario_from_dict(d["left"]),
        right=scenario_from_dict(d["right"]),
        identification=d.get("identification", "identity"),
        bimodule=d.get("bimodule", "identity"))


# -- reports ---------------------------------------------------------------------


@dataclass
class Check:
    name: str
    status: str  # pass | fail | inconclusive
    millis: int
    witness: dict | None = None


@dataclass
class Report:
    scenario: str = ""
    seed: int = 0
    checks: list = field(default_factory=list)
    invariants: dict = field(default_factory=dict)

    def passed(self) -> bool:
        return all(c.status == "pass" for c in self.checks)


def emit(report: Report, fmt: str = "json") -> bytes:
    """Deterministic serialization.  The canonical JSON form zeroes the
    timing fields so that repeated runs with one seed are byte-identical;
    measured times stay available on the Report and in the text table."""
    if fmt == "json":
        d = {"schema": SCHEMA_VERSION, "scenario": report.scenario,
             "seed": report.seed,
             "checks": [{"name": c.name, "status": c.status, "millis": 0,
                         **({"witness": c.witness} if c.witness else {})}
                        for c in report.checks],
             "invariants": report.invariants}
        return (json.dumps(d, sort_keys=True, separators=(",", ":")) +
                "\n").encode()
    if fmt == "text":
        lines = [f"scenario: {report.scenario} (seed {report.seed})"]
        for c in report.checks:
            lines.append(f"  {c.name:<24} {c.status:<12} {c.millis} ms")
        for k in sorted(report.invariants):
            lines.append(f"  {k} = {report.invariants[k]}")
        return ("\n".join(lines) + "\n").encode()
    raise ValueError(f"unknown format {fmt!r}")


def parse_report(data: bytes) -> Report:
    d = json.loads(data.decode())
    if d.get("schema") != SCHEMA_VERSION:
        raise ValueError("unsupported report schema")
    checks = [Check(name=c["name"], status=c["status"], millis=c["millis"],
                    witness=c.get("witness"))
              for c in d.get("checks", [])]
    return Report(scenario=d.get("scenario", ""), seed=d.get("seed", 0),
                  checks=checks, invariants=d.get("invariants", {}))


# -- scenario resolution ---------------------------------------------------------


def _parse_group(gens, degree: int, cap: int):
    perms = tuple(pg.parse_cycles(s, degree) for s in gens)
    if not perms:
        perms = (pg.identity_perm(degree),)
    return pg.enumerate_group(perms, degree, cap=cap)


@dataclass
class Resolved:
    g: pg.PermGroup
    h: pg.PermGroup
    kg: bl.GroupAlgebra
    all_blocks: list
    invariant: list
    b: np.ndarray
    ext: bl.BlockExtension
    data: bl.PointedGroupData | None = None
    pt: bl.Point | None = None


def resolve_scenario(s: Scenario, cap_order: int = DEFAULT_CAP_ORDER) -> Resolved:
    g = _parse_group(s.gens_g, s.degree, cap_order)
    h = _parse_group(s.gens_h, s.degree, cap_order)
    if not h.is_normal_in(g):
        raise ValueError("H is not normal in G")
    kg = bl.GroupAlgebra(g, s.p)
    blist = bl.blocks(kg, h)
    inv = bl.invariant_blocks(kg, h)
    if s.block == "principal":
        cands = [b for b in inv if bl.is_principal_block(kg, b)]
        if len(cands) != 1:
            raise ValueError("principal block selector did not resolve")
        b = cands[0]
    else:
        if not 0 <= int(s.block) < len(inv):
            raise ValueError("block index out of range")
        b = inv[int(s.block)]
    ext = bl.block_extension(kg, h, b)
    return Resolved(g=g, h=h, kg=kg, all_blocks=blist, invariant=inv, b=b,
                    ext=ext)


def resolve_subgroup(r: Resolved, s: Scenario, cap_order: int):
    """The pointed p-subgroup: explicit generators, or a defect group."""
    if s.subgroup == "defect":
        found = bl.defect_pointed_groups(r.kg, r.h, r.b, r.g,
                                         subgroup_cap=cap_order)
        if not found:
            raise ValueError("no defect pointed group found")
        # deterministic choice: largest subgroup, then lexicographic
        found.sort(key=lambda dp: (-dp[0].P.order, dp[0].P.elements))
        return found[0]
    P = _parse_group(s.subgroup, s.degree, cap_order)
    data = bl.points_at(r.kg, r.h, r.b, P)
    locals_ = [pt for pt in data.points if pt.local]
    if not locals_:
        raise ValueError("no local point at the requested subgroup")
    return data, locals_[0]


# -- the verification pipeline ---------------------------------------------------

_STAGES = ("blocks", "extension", "points", "brauer", "fusion", "clifford",
           "residuals", "local-residual")

# how far down the pipeline each CLI subcommand runs
STAGE_OF_COMMAND = {
    "blocks": "extension",
    "points": "brauer",
    "fusion": "fusion",
    "clifford": "local-residual",
    "verify": "local-residual",
}


class _StageFailed(Exception):
    pass


class _Runner:
    def __init__(self, report: Report):
        self.report = report

    def run(self, name: str, fn):
        t0 = time.perf_counter()
        try:
            witness = fn()
        except Exception as ex:  # recorded, later stages skipped
            ms = int((time.perf_counter() - t0) * 1000)
            self.report.checks.append(Check(name, "fail", ms,
                                            {"error": str(ex)}))
            raise _StageFailed from ex
        ms = int((time.perf_counter() - t0) * 1000)
        self.report.checks.append(Check(name, "pass", ms, witness))

    def skip_rest(self, names):
        for name in names:
            self.report.checks.append(
                Check(name, "inconclusive", 0, {"reason": "skipped"}))


def _ints(v) -> list:
    return [int(x) for x in np.asarray(v).ravel()]


def run_scenario(s: Scenario, seed: int = 0,
                 cap_order: int = DEFAULT_CAP_ORDER,
                 through: str = "local-residual") -> Report:
    """Execute the pipeline on one scenario, recording a witnessed check
    per stage; a failing stage is recorded and the rest are skipped."""
    report = Report(scenario=s.name, seed=seed)
    runner = _Runner(report)
    stages = _STAGES[:_STAGES.index(through) + 1]
    state = {}

    def stage_blocks():
        r = resolve_scenario(s, cap_order)
        state["r"] = r
        kg = r.kg
        total = np.zeros(kg.n, dtype=np.int64)
        for i, x in enumerate(r.all_blocks):
            assert (kg.mul(x, x) == x).all()
            for y in r.all_blocks[i + 1:]:
                assert not kg.mul(x, y).any()
            for hh in r.h.elements:
                hv = kg.vec_of(hh)
                assert (kg.mul(hv, x) == kg.mul(x, hv)).all()
            total = (total + x) % kg.p
        assert (total == kg.unit).all()
        dims = sorted(bl.block_ideal_dim(kg, r.h, x) for x in r.all_blocks)
        report.invariants["block_dims"] = dims
        report.invariants["n_blocks"] = len(r.all_blocks)
        report.invariants["n_invariant_blocks"] = len(r.invariant)
        return {"block_dims": dims, "chosen_block": _ints(r.b)}

    def stage_extension():
        r = state["r"]
        report.invariants["A_dim"] = int(r.ext.dim)
        report.invariants["quotient_order"] = int(r.ext.quot.order)
        return {"A_dim": int(r.ext.dim),
                "component_dim": int((r.ext.degrees == 0).sum()),
                "quotient_order": int(r.ext.quot.order)}

    def stage_points():
        r = state["r"]
        data, pt = resolve_subgroup(r, s, cap_order)
        state["data"], state["pt"] = data, pt
        report.invariants["P_order"] = int(data.P.order)
        report.invariants["n_points"] = len(data.points)
        report.invariants["n_local_points"] = sum(
            1 for q in data.points if q.local)
        return {"P_order": int(data.P.order),
                "n_points": len(data.points),
                "idempotent": _ints(pt.idem),
                "local": bool(pt.local)}

    def stage_brauer():
        r, data = state["r"], state["data"]
        bl.verify_brauer_hom(r.kg, r.h, r.b, data.P, data.br)
        bp_dim = int(data.span.alg.dim)
        tgt = data.br.target
        return {"fixed_dim": bp_dim,
                "brauer_dim": int(tgt.alg.dim) if tgt is not None else 0}

    def stage_fusion():
        r, data, pt = state["r"], state["data"], state["pt"]
        cd, e_data, fg, theta = fu.fusion_report(r.ext, data, pt, r.g)
        state.update(cd=cd, e_data=e_data, fg=fg, theta=theta)
        report.invariants["|E|"] = int(e_data.quot.order)
        report.invariants["|F|"] = int(fg.order)
        return {"|E|": int(e_data.quot.order), "|F|": int(fg.order),
                "pair_degrees": sorted(int(g) for _, g in fg.pairs)}

    def stage_clifford():
        r, data, pt = state["r"], state["data"], state["pt"]
        ecd = cl.build_E(r.ext, data, pt, state["e_data"])
        fcd = cl.build_F(r.ext, data, state["cd"], state["fg"])
        psi = cl.psi_iso(r.ext, pt, ecd, fcd, state["theta"])
        state.update(ecd=ecd, fcd=fcd)
        report.invariants["clifford_dim"] = int(ecd.dim)
        return {"end_dim": int(ecd.dim),
                "corner_dim": int(fcd.graded.alg.dim),
                "psi": [_ints(row) for row in psi]}

    def stage_residuals():
        e_data, theta, fcd = state["e_data"], state["theta"], state["fcd"]
        re = cl.residual(state["ecd"])
        rf = cl.residual(fcd)
        state["re"] = re
        reps = e_data.quot.reps
        gm = [fcd.pairs.index(theta.pair_of_rep[reps[d]])
              for d in range(len(reps))]
        assert cl.residuals_match(re, rf, group_map=gm), \
            "residual extensions are not equivalent"
        report.invariants["residual_dim"] = int(re.graded.alg.dim)
        return {"degree_map": gm,
                "residual_dims": [int(re.graded.alg.dim),
                                  int(rf.graded.alg.dim)]}

    def stage_local_residual():
        r, data, pt = state["r"], state["data"], state["pt"]
        lbd = bl.local_block_data(r.kg, r.h, r.b, data, pt)
        lres = cl.local_residual(r.ext, data, pt, state["e_data"], lbd)
        assert cl.residuals_match(state["re"], lres), \
            "residual does not match the local construction"
        return {"local_block_dim": int(lbd.block_span.alg.dim),
                "simple_dim": int(lbd.simple_dim)}

    fns = {"blocks": stage_blocks, "extension": stage_extension,
           "points": stage_points, "brauer": stage_brauer,
           "fusion": stage_fusion, "clifford": stage_clifford,
           "residuals": stage_residuals,
           "local-residual": stage_local_residual}
    for k, name in enumerate(stages):
        try:
            runner.run(name, fns[name])
        except _StageFailed:
            runner.skip_rest(stages[k + 1:])
            break
    return report


# -- Morita pairs ----------------------------------------------------------------


def _relabeled(perm, elements):
    return [pg.pconj(perm, x) for x in elements]


def _transport_vec(kg_l: bl.GroupAlgebra, kg_r: bl.GroupAlgebra, perm, v):
    out = np.zeros(kg_r.n, dtype=np.int64)
    for k, g in enumerate(kg_l.grp.elements):
        out[kg_r.index(pg.pconj(perm, g))] = v[k]
    return out


def verify_morita(ms: MoritaScenario, seed: int = 0,
                  cap_order: int = DEFAULT_CAP_ORDER) -> Report:
    """Check the conclusions of a supplied graded equivalence: matching
    fusion groups at corresponding local pointed subgroups, equivalent
    residual extensions, and matching graded local algebra dimensions."""
    report = Report(scenario=ms.name, seed=seed)
    runner = _Runner(report)
    state = {}
    names = ("identification", "fusion-iso", "residual-equivalence",
             "local-algebra-dims")

    def stage_identify():
        left = resolve_scenario(ms.left, cap_order)
        right = resolve_scenario(ms.right, cap_order)
        if ms.identification == "identity":
            perm = pg.identity_perm(ms.left.degree)
        else:
            perm = pg.parse_cycles(ms.identification, ms.left.degree)
        assert sorted(_relabeled(perm, left.g.elements)) == \
            sorted(right.g.elements), "identification does not map G onto G'"
        assert sorted(_relabeled(perm, left.h.elements)) == \
            sorted(right.h.elements), "identification does not map H onto H'"
        bt = _transport_vec(left.kg, right.kg, perm, left.b)
        assert (bt == right.b).all(), "identification does not carry b to b'"
        # the pointed subgroup on the left, its image on the right
        sub = ms.left if ms.left.q is None else Scenario(
            name=ms.left.name, p=ms.left.p, degree=ms.left.degree,
            gens_g=ms.left.gens_g, gens_h=ms.left.gens_h,
            block=ms.left.block, subgroup=ms.left.q)
        data_l, pt_l = resolve_subgroup(left, sub, cap_order)
        q_r = pg.from_elements(_relabeled(perm, data_l.P.elements),
                               ms.left.degree)
        data_r = bl.points_at(right.kg, right.h, right.b, q_r)
        it = _transport_vec(left.kg, right.kg, perm, pt_l.idem)
        matches = [q for q in data_r.points if al.same_point(
            data_r.span.alg, data_r.span.coords(it),
            data_r.span.coords(q.idem))]
        assert len(matches) == 1, \
            "identification does not map the point to a point"
        pt_r = matches[0]
        assert pt_r.local, "transported point is not local"
        state.update(left=left, right=right, perm=perm, data_l=data_l,
                     pt_l=pt_l, data_r=data_r, pt_r=pt_r)
        return {"relabeling": list(perm), "Q_order": int(data_l.P.order)}

    def stage_fusion_iso():
        left, right, perm = state["left"], state["right"], state["perm"]
        out_l = fu.fusion_report(left.ext, state["data_l"], state["pt_l"],
                                 left.g)
        out_r = fu.fusion_report(right.ext, state["data_r"], state["pt_r"],
                                 right.g)
        state["out_l"], state["out_r"] = out_l, out_r
        fg_l, fg_r = out_l[2], out_r[2]
        assert fg_l.order == fg_r.order, "fusion groups differ in order"
        # transport each pair (phi, gbar) through the relabeling
        q_l = state["data_l"].P
        q_r = state["data_r"].P
        inv = pg.pinv(perm)
        pair_map = []
        for phi, gbar in fg_l.pairs:
            phi_r = tuple(
                q_r.elements.index(pg.pconj(perm, q_l.elements[
                    phi[q_l.elements.index(pg.pconj(inv, u))]]))
                for u in q_r.elements)
            gbar_rep = left.ext.quot.reps[gbar]
            gbar_r = right.ext.quot.omega_of(pg.pconj(perm, gbar_rep))
            pair_map.append(fg_r.pairs.index((phi_r, gbar_r)))
        assert sorted(pair_map) == list(range(fg_r.order))
        # the bijection respects the two multiplication tables
        for i in range(fg_l.order):
            for j in range(fg_l.order):
                assert pair_map[fg_l.table.mul(i, j)] == \
                    fg_r.table.mul(pair_map[i], pair_map[j])
        state["pair_map"] = pair_map
        report.invariants["|F|"] = int(fg_l.order)
        return {"|F|": int(fg_l.order), "pair_map": pair_map}

    def stage_residuals():
        left, right = state["left"], state["right"]
        cd_l, e_l, fg_l, _ = state["out_l"]
        cd_r, e_r, fg_r, _ = state["out_r"]
        rf_l = cl.residual(cl.build_F(left.ext, state["data_l"], cd_l, fg_l))
        rf_r = cl.residual(cl.build_F(right.ext, state["data_r"], cd_r, fg_r))
        assert cl.residuals_match(rf_l, rf_r, group_map=state["pair_map"]), \
            "residual extensions are not equivalent"
        return {"residual_dims": [int(rf_l.graded.alg.dim),
                                  int(rf_r.graded.alg.dim)]}

    def stage_local_dims():
        left, right = state["left"], state["right"]
        dims = []
        for side, data, pt in (
                (left, state["data_l"], state["pt_l"]),
                (right, state["data_r"], state["pt_r"])):
            lbd = bl.local_block_data(side.kg, side.h, side.b, data, pt)
            stab = bl.stabilizer_of_point(side.kg, side.h, data, pt, side.g)
            _, lext = bl.extended_brauer_extension(
                side.kg, side.h, data, pt, stab, lbd)
            per_degree = [int((lext.degrees == d).sum())
                          for d in range(lext.quot.order)]
            dims.append(per_degree)
        assert dims[0] == dims[1], \
            "graded local algebras differ in dimension"
        report.invariants["local_degree_dims"] = dims[0]
        return {"per_degree_dims": dims[0]}

    fns = {"identification": stage_identify, "fusion-iso": stage_fusion_iso,
           "residual-equivalence": stage_residuals,
           "local-algebra-dims": stage_local_dims}
    for k, name in enumerate(names):
        try:
            runner.run(name, fns[name])
        except _StageFailed:
            runner.skip_rest(names[k + 1:])
            break
    return report


# -- the built-in catalog --------------------------------------------------------


def catalog() -> list:
    """The built-in scenarios, smallest first."""
    sc0 = Scenario(name="SC0-C2-over-C2", p=2, degree=2,
                   gens_g=["(0 1)"], gens_h=["(0 1)"])
    sc1 = Scenario(name="SC1-S3-over-C3", p=3, degree=3,
                   gens_g=["(0 1)", "(0 1 2)"], gens_h=["(0 1 2)"])
    sc2 = Scenario(name="SC2-S4-over-A4", p=2, degree=4,
                   gens_g=["(0 1)", "(0 1 2 3)"],
                   gens_h=["(0 1 2)", "(1 2 3)"],
                   subgroup=["(0 1)(2 3)", "(0 2)(1 3)"],
                   q=["(0 1)(2 3)"])
    sc3 = Scenario(name="SC3-S3-classical", p=3, degree=3,
                   gens_g=["(0 1)", "(0 1 2)"], gens_h=["(0 1)", "(0 1 2)"])
    # the dihedral group of order 8 in its degree-4 representation: the
    # nonabelian-P entry, sized so the homogeneous unit scan stays exhaustive
    sc4 = Scenario(name="SC4-D8-in-S4-classical", p=2, degree=4,
                   gens_g=["(0 1 2 3)", "(0 2)"],
                   gens_h=["(0 1 2 3)", "(0 2)"])
    return [sc0, sc1, sc2, sc3, sc4]


def morita_catalog() -> list:
    """Identity pairs for every scenario, plus relabeling-transport
    pairs for the two mixed-quotient entries."""
    out = [MoritaScenario(name=s.name + "-identity", left=s, right=s)
           for s in catalog()]
    by_name = {s.name: s for s in catalog()}
    sc1 = by_name["SC1-S3-over-C3"]
    out.append(MoritaScenario(name="SC1-relabeled", left=sc1, right=sc1,
                              identification="(0 1 2)"))
    sc2 = by_name["SC2-S4-over-A4"]
    sc2r = Scenario(name="SC2-relabeled-right", p=2, degree=4,
                    gens_g=["(0 1)", "(0 1 2 3)"],
                    gens_h=["(0 1 2)", "(1 2 3)"],
                    subgroup=["(0 1)(2 3)", "(0 2)(1 3)"],
                    q=["(0 2)(1 3)"])
    out.append(MoritaScenario(name="SC2-relabeled", left=sc2, right=sc2r,
                              identification="(1 2)"))
    return out


def run_catalog(seed: int = 0, cap_order: int = DEFAULT_CAP_ORDER) -> list:
    reports = [run_scenario(s, seed=seed, cap_order=cap_order)
               for s in catalog()]
    reports += [verify_morita(ms, seed=seed, cap_order=cap_order)
                for ms in morita_catalog()]
    return reports


def emit_many(reports: list, fmt: str = "json") -> bytes:
    if fmt == "json":
        payload = {"schema": SCHEMA_VERSION,
                   "reports": [json.loads(emit(r).decode())
                               for r in reports]}
        return (json.dumps(payload, sort_keys=True,
                           separators=(",", ":")) + "\n").encode()
    if fmt == "text":
        return b"".join(emit(r, "text") for r in reports)
    raise ValueError(f"unknown format {fmt!r}")
