"""
Generic residual points of G2
=============================

Enumerate the pseudo-Levi subsystems of G2, the residual orbits on each,
and the elliptic class count that has to match the number of orbits.
"""

from hecke.residual import all_generic_residual_points, residual_index
from hecke.rootdata import build_root_system
from hecke.weylgrp import elliptic_summary

rs = build_root_system("G2")
print(rs, "simple gram", [[int(x) for x in row] for row in rs.gram])

# one block per pseudo-Levi: kac point, then the orbit representatives
for sub, points in all_generic_residual_points("G2"):
    print(f"\n{sub.type_tag}  kac point {[str(x) for x in sub.kac_point]}")
    for p in points:
        idx = residual_index(p)
        print(f"   {p.coords_str():<24} matches {idx.matches}, zeros {idx.zeros}")

###############################################################################
# The number of orbits equals the number of elliptic classes summed over the
# pseudo-Levi subgroups.

summary = elliptic_summary(rs, per_subsystem=True)
print("\nelliptic classes:", summary["per_subsystem"], "total", summary["ledger_total"])
