"""End-to-end tour on the smallest interesting example: G = S3 with its
normal C3 at p = 3.  The quotient has order 2, the block extension
A = kS3 is a crossed product of kC3 by C2, and everything downstream
(points, Brauer map, the two fusion groups, the two Clifford
extensions) is small enough to print in full.
"""

import numpy as np

from blockfusion import blocks as bl
from blockfusion import clifford as cl
from blockfusion import fusion as fu
from blockfusion import permgroups as pg

s3 = pg.enumerate_group(
    (pg.parse_cycles("(0 1)", 3), pg.parse_cycles("(0 1 2)", 3)), 3)
c3 = pg.enumerate_group((pg.parse_cycles("(0 1 2)", 3),), 3)
kg = bl.GroupAlgebra(s3, 3)

print("== blocks of kC3 inside kS3, p = 3 ==")
blist = bl.blocks(kg, c3)
print(f"{len(blist)} block(s); dims:",
      [bl.block_ideal_dim(kg, c3, b) for b in blist])
b = blist[0]

print("\n== the graded extension A = kS3 b ==")
ext = bl.block_extension(kg, c3, b)
print("A dim:", ext.dim, "| quotient order:", ext.quot.order,
      "| identity component dim:", int((ext.degrees == 0).sum()))

print("\n== points of B^P at P = C3 ==")
data = bl.points_at(kg, c3, b, c3)
for pt in data.points:
    print("point idempotent:", pt.idem, "local:", pt.local)
(pt,) = data.points

print("\n== the two fusion groups and their comparison ==")
cd, e_data, fg, theta = fu.fusion_report(ext, data, pt, s3)
print("|E| =", e_data.quot.order, " |F| =", fg.order)
for (phi, gbar), w in sorted(fg.witnesses.items()):
    print(f"pair phi={phi} degree={gbar}  witness={w}")

print("\n== Clifford extensions ==")
ecd = cl.build_E(ext, data, pt, e_data)
fcd = cl.build_F(ext, data, cd, fg)
print("endomorphism side dim:", ecd.dim,
      "| corner side dim:", fcd.graded.alg.dim)
psi = cl.psi_iso(ext, pt, ecd, fcd, theta)
print("comparison isomorphism:")
print(np.array(psi))

print("\n== residuals ==")
re, rf = cl.residual(ecd), cl.residual(fcd)
gm = [fcd.pairs.index(theta.pair_of_rep[e_data.quot.reps[d]])
      for d in range(e_data.quot.order)]
print("residual dims:", re.graded.alg.dim, rf.graded.alg.dim,
      "| equivalent:", cl.residuals_match(re, rf, group_map=gm))
lbd = bl.local_block_data(kg, c3, b, data, pt)
lres = cl.local_residual(ext, data, pt, e_data, lbd)
print("matches the local construction:", cl.residuals_match(re, lres))
