"""
Mass functions on singular parameters
=====================================

At k1 = k2 the subregular G2 point has vanishing factors in both the
numerator and the denominator.  The regularized value walks off the
hyperplane along a generic direction and takes the limit; two different
directions give the same number.
"""

from fractions import Fraction

import mpmath

from hecke.massfn import choose_directions, evaluate_along, evaluate_regularized, mass_function, vanishing_factors
from hecke.tables import match_rows

points = {row.label: p for row, p in match_rows("g2", apply_errata=True)}
p = points["b2"]
m = mass_function(p)
at = {"k1": 1, "k2": 1}

for f in vanishing_factors(m, at):
    print(f"{f.side}: exponent {f.expo} vanishes")

d1, d2 = choose_directions([f.expo for f in vanishing_factors(m, at)], m.symbols, 2)
for d in (d1, d2):
    val, order = evaluate_along(m, at, dict(d))
    print({k: str(x) for k, x in dict(d).items()}, "order", order, "value", mpmath.nstr(mpmath.re(val), 25))

reg = evaluate_regularized(m, at)
print("regularized sign", reg.sign)

###############################################################################
# Sweep k2 across the wall at fixed k1 = 1 and watch the sign.

for k2 in ("1/2", "3/4", "1", "5/4", "3/2", "2"):
    r = evaluate_regularized(m, {"k1": 1, "k2": Fraction(k2)})
    print(f"k2 = {k2:>4}: sign {r.sign:+d}, order {r.vanishing_order}")
