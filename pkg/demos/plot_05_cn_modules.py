"""
The three-parameter C_n family
==============================

Build the module attached to each bipartition, check the defining
relations, test the discrete-series condition and restrict to the finite
Weyl group at v = 1.
"""

from hecke.cnfamily import (bipartitions, build_module, fdeg_C, graded_central_character, is_discrete_series,
                            limiting_sign, restrict_to_weyl)
from hecke.weylgrp import ordinary_pairing

n = 3
for bp in bipartitions(n):
    mod = build_module(bp, 1000, 2, 2)
    res = restrict_to_weyl(bp)
    print(f"{str(bp):>8}  dim {mod.dim}  relations {all(mod.relation_report.values())}"
          f"  ds {is_discrete_series(mod)}  eps {limiting_sign(bp):+d}"
          f"  <chi,chi> {ordinary_pairing(res.character, res.character)}  compact {res.compact_part}")

###############################################################################
# Graded central characters and formal degrees at a sample point

for bp in bipartitions(2):
    cc = ", ".join(str(c) for c in graded_central_character(bp))
    val = fdeg_C(bp, 3, 7)
    print(f"{str(bp):>6}  c = ({cc})  fdeg(m+=3, m-=7) = {float(val.value):.6g}")
