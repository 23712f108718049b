"""
Formal degrees at equal parameters
==================================

Specialise every residual point to k1 = k2 = 1 and write the mass as a
product of cyclotomic polynomials in q.
"""

from hecke.massfn import is_residual_at_equal_parameters, reeder_m
from hecke.tables import match_rows

for name in ("g2", "f4"):
    print(f"\n== {name.upper()}")
    for row, p in match_rows(name, apply_errata=True):
        if not is_residual_at_equal_parameters(p):
            print(f"{row.label:>4}  (not residual at equal parameters)")
            continue
        r = reeder_m(p)
        vals = ", ".join(f"{float(r(q)):.4g}" for q in (2, 3, 5))
        print(f"{row.label:>4}  {r.pretty():<60} R(0)={r.R_at_zero()}  q=2,3,5: {vals}")
