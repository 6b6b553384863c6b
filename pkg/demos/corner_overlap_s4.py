"""Why the corner-side Clifford extension is a *formal* direct sum.

On S4 over A4 at p = 2, with P the Klein four group, each fusion pair
(phi, gbar) has a 6-dimensional space of twisted intertwiners inside the
corner iAi -- but those six spaces overlap: the element z = sum over A4
intertwines several different pairs at once.  Stacking them would lose
dimensions, so the extension keeps one summand per pair and only the
multiplication happens downstairs.
"""

import numpy as np

from blockfusion import blocks as bl
from blockfusion import clifford as cl
from blockfusion import fusion as fu
from blockfusion import gfp
from blockfusion import permgroups as pg

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
print("fusion pairs:", len(fg.pairs), "(order of E:", e_data.quot.order, ")")

fcd = cl.build_F(ext, data, cd, fg)
dims = [c.shape[0] for c in fcd.chunk_rows]
stacked = np.vstack(fcd.chunk_rows)
print("component dims:", dims, "-> formal total", sum(dims))
print("rank of the stacked components inside iAi:",
      gfp.rank(stacked, 2))

# the overlap witness: the sum over A4 lies in several components
z = cd.span.coords(kg.mul(kg.mul(pt.idem, kg.sum_over(a4.elements)), pt.idem))
hits = [k for k, rows in enumerate(fcd.chunk_rows)
        if gfp.coords_in_rows(rows, z, 2) is not None]
print("the A4-sum element lies in", len(hits), "components:", hits)

ecd = cl.build_E(ext, data, pt, e_data)
psi = cl.psi_iso(ext, pt, ecd, fcd, theta)
print("formal sum is still isomorphic to the endomorphism side:",
      gfp.rank(psi, 2) == ecd.dim)
