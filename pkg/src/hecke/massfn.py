"""Mass functions of generic residual points, their signs, and the equal-parameter formal degree.

Conventions.  For a residual point ``r = s c`` with ``c = v^xi``::

    m(r) = prod'_{alpha} (alpha(r)^-1 - 1) / prod'_{alpha} (v^-k(alpha) alpha(r)^-1 - 1)

over all roots of the parent system, where ``alpha(s) = exp(2 pi i alpha(x))``
for the Kac coweight ``x`` and ``k(alpha)`` is the parent parameter label.
``prod'`` drops factors that vanish identically in the parameters.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Mapping

import mpmath
import numpy as np
import sympy

from .linform import LinForm, frac, frac_str
from .residual import GenericResidualPoint, residual_index
from .rootdata import RootSystem, act_on_coweight

PRECISION_DIGITS = int(os.environ.get("HECKE_PRECISION_DIGITS", "50"))
REAL_TOL_DIGITS = 30
DEFAULT_V = 2
MAX_CYCLOTOMIC = 60


@dataclass(frozen=True)
class MassFactor:
    """The factor ``(exp(2 pi i unit) * v^expo - 1)``; ``unit`` is taken mod 1."""

    unit: Fraction
    expo: LinForm
    side: str  # "num" | "den"

    def identically_zero(self) -> bool:
        return self.unit == 0 and self.expo.is_zero()

    def vanishes_at(self, at) -> bool:
        return self.unit == 0 and self.expo.evaluate(at) == 0


@dataclass(eq=False)
class MassFunction:
    factors: list
    prefactor: LinForm = field(default_factory=LinForm)
    source_point: object = None
    sign: int = 1  # overall constant sign

    @property
    def numerator(self) -> list:
        return [f for f in self.factors if f.side == "num"]

    @property
    def denominator(self) -> list:
        return [f for f in self.factors if f.side == "den"]

    @property
    def symbols(self) -> tuple:
        syms = {s for f in self.factors for s in f.expo.symbols} | set(self.prefactor.symbols)
        return tuple(sorted(syms))

    def signature(self) -> tuple:
        """Sorted factor multiset; equal signatures mean equal functions."""
        key = lambda f: (f.side, f.unit, str(f.expo))
        return tuple((f.side, f.unit, f.expo) for f in sorted(self.factors, key=key))


@dataclass(frozen=True)
class RegularizedValue:
    value: object  # mpmath real
    vanishing_order: int
    direction_used: tuple

    @property
    def sign(self) -> int:
        if self.vanishing_order > 0 or self.value == 0:
            return 0
        return 1 if self.value > 0 else -1


def _unit(x) -> Fraction:
    x = frac(x)
    return x - (x.numerator // x.denominator)


def mass_function_from(rs: RootSystem, kac: tuple, coords: tuple, source=None) -> MassFunction:
    """Mass function of ``r = exp(2 pi i kac) v^xi`` given coweight coordinates of both."""
    coords = tuple(LinForm.coerce(a) for a in coords)
    factors = []
    for i in range(len(rs.roots)):
        u = _unit(-sum((frac(rs.coeffs[i][j]) * frac(kac[j]) for j in range(rs.rank)), Fraction(0)))
        xi = LinForm.coerce(rs.value(i, coords))
        for side, expo in (("num", -xi), ("den", -xi - rs.k_form(i))):
            f = MassFactor(u, expo, side)
            if not f.identically_zero():
                factors.append(f)
    return MassFunction(factors, LinForm(), source)


def mass_function(p: GenericResidualPoint) -> MassFunction:
    sub = p.subsystem
    return mass_function_from(p.parent, tuple(sub.kac_point), p.coweight_coords, p)


def conjugate_mass_function(p: GenericResidualPoint, M) -> MassFunction:
    """Mass function of ``w r`` for the Weyl matrix ``M`` (conjugates ``s`` and ``c``)."""
    kac = act_on_coweight(M, tuple(LinForm.coerce(x) for x in p.subsystem.kac_point))
    kac = tuple(x.constant for x in kac)
    return mass_function_from(p.parent, kac, act_on_coweight(M, p.coweight_coords), p)


# ----------------------------------------------------------------------------
# directions
# ----------------------------------------------------------------------------

def _direction_candidates(symbols):
    """Deterministic small integer directions, most generic-looking first."""
    n = len(symbols)
    if n == 0:
        return
    for bound in range(1, 8):
        for vec in itertools.product(range(-bound, bound + 1), repeat=n):
            if max(abs(x) for x in vec) != bound:
                continue
            if all(x == 0 for x in vec):
                continue
            yield dict(zip(symbols, (Fraction(x) for x in vec)))


def _admissible(forms, direction) -> bool:
    return all(f.derivative(direction) != 0 for f in forms)


def choose_directions(forms, symbols, count=2) -> list:
    """First ``count`` admissible directions for the vanishing ``forms``."""
    out = []
    for d in _direction_candidates(symbols):
        if _admissible(forms, d):
            out.append(d)
            if len(out) == count:
                return out
    if not forms:
        return [dict.fromkeys(symbols, Fraction(1))] * count
    raise ValueError("no admissible regularization direction found")


# ----------------------------------------------------------------------------
# numeric evaluation
# ----------------------------------------------------------------------------

def _factor_value(f: MassFactor, at, v):
    e = mpmath.mpf(f.expo.evaluate(at).numerator) / f.expo.evaluate(at).denominator
    z = mpmath.expjpi(2 * mpmath.mpf(f.unit.numerator) / f.unit.denominator) if f.unit else 1
    return z * mpmath.power(v, e) - 1


def _evaluate_along(m: MassFunction, at, v, direction):
    val = mpmath.mpc(1)
    order = 0
    lnv = mpmath.log(v)
    for f in m.factors:
        if f.vanishes_at(at):
            d = f.expo.derivative(direction)
            if d == 0:
                raise ValueError(f"direction {direction} is not generic for factor {f}")
            term = mpmath.mpf(d.numerator) / d.denominator * lnv
            order += 1 if f.side == "num" else -1
        else:
            term = _factor_value(f, at, v)
        val = val * term if f.side == "num" else val / term
    pre = m.prefactor.evaluate(at)
    val *= mpmath.power(v, mpmath.mpf(pre.numerator) / pre.denominator) * m.sign
    return val, order


def evaluate_along(m: MassFunction, at: Mapping, direction: Mapping, v=DEFAULT_V):
    """``(value, vanishing_order)`` using first-order terms along one direction."""
    at = {s: frac(x) for s, x in at.items()}
    direction = {s: frac(x) for s, x in direction.items()}
    with mpmath.workdps(PRECISION_DIGITS):
        vv = mpmath.mpf(frac(v).numerator) / frac(v).denominator
        return _evaluate_along(m, at, vv, direction)


def vanishing_factors(m: MassFunction, at: Mapping) -> list:
    at = {s: frac(x) for s, x in at.items()}
    return [f for f in m.factors if f.vanishes_at(at)]


def evaluate_regularized(m: MassFunction, at: Mapping, v=DEFAULT_V, direction=None) -> RegularizedValue:
    """Value (or first-order limit) of ``m`` at the parameter point ``at``.

    Vanishing factors are replaced by their first-order term along a
    direction; two admissible directions must agree.
    """
    at = {s: frac(x) for s, x in at.items()}
    missing = set(m.symbols) - set(at)
    if missing:
        raise KeyError(f"unassigned parameter symbol(s) {sorted(missing)}")
    vanishing = [f.expo for f in m.factors if f.vanishes_at(at)]
    syms = m.symbols
    with mpmath.workdps(PRECISION_DIGITS):
        vv = mpmath.mpf(frac(v).numerator) / frac(v).denominator
        if direction is not None:
            direction = {s: frac(x) for s, x in direction.items()}
            if not _admissible(vanishing, direction):
                raise ValueError("supplied direction is not generic for the vanishing factors")
            dirs = [direction] + [d for d in choose_directions(vanishing, syms, 2) if d != direction][:1]
        else:
            dirs = choose_directions(vanishing, syms, 2)
        results = [_evaluate_along(m, at, vv, d) for d in dirs]
        val, order = results[0]
        if order < 0:
            raise ArithmeticError(f"mass function has a pole of order {-order} at {at}")
        tol = mpmath.mpf(10) ** (-REAL_TOL_DIGITS)
        scale = max(abs(val), mpmath.mpf(1))
        if abs(mpmath.im(val)) > tol * scale:
            raise ArithmeticError(f"mass function is not real at {at}: {val}")
        if order > 0:
            return RegularizedValue(mpmath.mpf(0), order, tuple(dirs[0].items()))
        for other, _ in results[1:]:
            if abs(other - val) > tol * scale:
                raise ArithmeticError("regularized value depends on the direction (point is singular)")
        return RegularizedValue(mpmath.re(val), order, tuple(dirs[0].items()))


# ----------------------------------------------------------------------------
# graded sign
# ----------------------------------------------------------------------------

def graded_factors(p: GenericResidualPoint):
    """Numerator forms ``alpha(c)`` and denominator forms ``alpha(c) - k_s(alpha)`` over R_s."""
    sub = p.subsystem
    num, den = [], []
    for i in sub.root_indices:
        x = p.value(i)
        if not x.is_zero():
            num.append(x)
        y = x - sub.induced_k[i]
        if not y.is_zero():
            den.append(y)
    return num, den


def _sgn(x) -> int:
    return (x > 0) - (x < 0)


def _graded_sign_along(num, den, at, direction):
    s, order = 1, 0
    for side, forms in ((1, num), (-1, den)):
        for f in forms:
            val = f.evaluate(at)
            if val == 0:
                val = f.derivative(direction)
                if val == 0:
                    raise ValueError("direction is not generic")
                order += side
            s *= _sgn(val)
    return s, order


def ratio_sign(num, den, at: Mapping) -> int:
    """Exact sign of ``prod num / prod den`` (LinForms) at ``at``, regularized.

    Vanishing forms are replaced by their derivative along deterministic
    generic directions; 0 means a net zero, a net pole is an error.
    """
    at = {s: frac(x) for s, x in at.items()}
    syms = sorted({s for f in list(num) + list(den) for s in f.symbols})
    missing = set(syms) - set(at)
    if missing:
        raise KeyError(f"unassigned parameter symbol(s) {sorted(missing)}")
    vanishing = [f for f in list(num) + list(den) if f.evaluate(at) == 0]
    dirs = choose_directions(vanishing, syms, 2)
    signs = [_graded_sign_along(num, den, at, d) for d in dirs]
    s, order = signs[0]
    if order > 0:
        return 0
    if order < 0:
        raise ArithmeticError(f"graded mass has a pole at {at}")
    if any(t != signs[0] for t in signs):
        raise ArithmeticError("graded sign depends on the direction (point is singular)")
    return s


def sign_graded(p: GenericResidualPoint, at: Mapping) -> int:
    """Exact sign of ``prod' alpha(c) / prod' (alpha(c) - k_s(alpha))`` over ``R_s``."""
    num, den = graded_factors(p)
    return ratio_sign(num, den, at)


def negative_factor_count(p: GenericResidualPoint, at: Mapping) -> int:
    """Number of negative nonzero factors in the unregularized graded expression."""
    num, den = graded_factors(p)
    return sum(1 for f in num + den if f.evaluate(at) < 0)


def singular_locus(m: MassFunction) -> list:
    """Primitive hyperplanes ``L = 0`` on which ``m`` vanishes (net order > 0)."""
    net = {}
    for f in m.factors:
        if f.unit != 0 or f.expo.is_constant():
            continue  # never vanishes for real parameters
        key = f.expo.primitive()
        net[key] = net.get(key, 0) + (1 if f.side == "num" else -1)
    out = [h for h, n in net.items() if n > 0]
    return sorted(out, key=str)


# ----------------------------------------------------------------------------
# formal degree at equal parameters
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class ReederResult:
    """``m_v(tau) = const * q^qpow * prod_n Phi_n(q)^e_n`` with ``Phi_1`` written as ``1 - q``.

    Exponents live in ``x = q^(1/den)``; ``den`` is 1 unless half-integer
    exponents occur.  ``cyclotomic`` maps ``n -> e_n`` in the variable ``x``.
    """

    numerator: tuple  # integer coefficients in x, lowest degree first
    denominator: tuple
    den: int
    const: Fraction
    qpow: Fraction
    cyclotomic: dict

    def __call__(self, q):
        with mpmath.workdps(PRECISION_DIGITS):
            x = mpmath.root(mpmath.mpf(frac(q).numerator) / frac(q).denominator, self.den)
            num = mpmath.polyval(list(reversed(self.numerator)), x)
            den = mpmath.polyval(list(reversed(self.denominator)), x)
            return num / den

    def exact(self, q) -> Fraction:
        if self.den != 1:
            raise ValueError("exact evaluation needs integral q-exponents")
        q = frac(q)
        num = sum(Fraction(c) * q**i for i, c in enumerate(self.numerator))
        den = sum(Fraction(c) * q**i for i, c in enumerate(self.denominator))
        return num / den

    def R_at_zero(self) -> Fraction:
        """``m / q^qpow`` at ``q = 0``: ratio of the lowest nonzero coefficients."""
        lo = lambda cs: next(c for c in cs if c)
        return Fraction(lo(self.numerator), lo(self.denominator))

    def to_json(self) -> dict:
        return {
            "variable": "q" if self.den == 1 else f"q^(1/{self.den})",
            "numerator": [str(c) for c in self.numerator],
            "denominator": [str(c) for c in self.denominator],
            "const": frac_str(self.const),
            "q_power": frac_str(self.qpow),
            "cyclotomic_exponents": {str(n): e for n, e in sorted(self.cyclotomic.items())},
        }

    def pretty(self) -> str:
        var = "q" if self.den == 1 else f"q^(1/{self.den})"
        parts = [frac_str(self.const)]
        if self.qpow:
            parts.append(f"q^{frac_str(self.qpow)}")
        for n, e in sorted(self.cyclotomic.items()):
            base = f"(1-{var})" if n == 1 else f"Phi{n}({var})"
            parts.append(base if e == 1 else f"{base}^{e}")
        return " * ".join(parts)


def _mul_binomial(P: dict, unit: int, e: int, N: int) -> dict:
    """``P * (zeta^unit x^e - 1)`` in Z[C_N][x]; ``P`` maps (deg, j) -> int."""
    out = {}
    for (d, j), c in P.items():
        k = (d + e, (j + unit) % N)
        out[k] = out.get(k, 0) + c
        out[(d, j)] = out.get((d, j), 0) - c
    return {k: c for k, c in out.items() if c}


def _to_rational_poly(P: dict, N: int) -> sympy.Poly:
    """Reduce group-ring coefficients modulo Phi_N and require rationality."""
    z, x = sympy.symbols("zeta x")
    phi = sympy.Poly(sympy.cyclotomic_poly(N, z), z)
    byd = {}
    for (d, j), c in P.items():
        byd.setdefault(d, {})
        byd[d][j] = byd[d].get(j, 0) + c
    coeffs = {}
    for d, row in byd.items():
        poly = sympy.Poly(sum(c * z**j for j, c in row.items()), z)
        r = poly.rem(phi)
        if r.degree() > 0:
            raise ArithmeticError("equal-parameter product is not rational")
        val = r.as_expr()
        if val != 0:
            coeffs[d] = sympy.Integer(val)
    return sympy.Poly(sum(c * x**d for d, c in coeffs.items()) if coeffs else 0, x, domain="QQ")


def _cyclotomic_split(P: sympy.Poly, x) -> tuple:
    """``P = c x^a prod Phi_n^e_n`` by trial division with ``n <= MAX_CYCLOTOMIC``."""
    exps = {}
    a = 0
    while not P.is_zero and P.eval(0) == 0:
        P = sympy.Poly(sympy.cancel(P.as_expr() / x), x, domain="QQ")
        a += 1
    for n in range(1, MAX_CYCLOTOMIC + 1):
        phi = sympy.Poly(sympy.cyclotomic_poly(n, x), x, domain="QQ")
        while P.degree() >= phi.degree():
            q, r = P.div(phi)
            if not r.is_zero:
                break
            P = q
            exps[n] = exps.get(n, 0) + 1
    if P.degree() != 0:
        raise ArithmeticError(f"non-cyclotomic residue {P.as_expr()}")
    return Fraction(str(P.LC())), a, exps


def reeder_m(p: GenericResidualPoint, check_residual: bool = True) -> ReederResult:
    """Exact ``q^{|R|/2} prod'(alpha(tau)-1) / prod'(q alpha(tau)-1)`` at equal parameters."""
    rs = p.parent
    ones = _equal_parameters(p)
    if check_residual:
        idx = residual_index(p, ones)
        if idx.excess != p.subsystem.rank:
            raise ValueError("point is not residual at equal parameters")
    xi1 = p.specialize(ones)
    kac = tuple(frac(x) for x in p.subsystem.kac_point)
    vals, units = [], []
    for i in range(len(rs.roots)):
        vals.append(sum((frac(rs.coeffs[i][j]) * xi1[j] for j in range(rs.rank)), Fraction(0)))
        units.append(_unit(sum((frac(rs.coeffs[i][j]) * kac[j] for j in range(rs.rank)), Fraction(0))))
    den = lcm(1, *(v.denominator for v in vals))
    N = lcm(1, *(u.denominator for u in units))
    num_P, den_P = {(0, 0): 1}, {(0, 0): 1}
    shift_num = shift_den = 0  # x-power pulled out of negative exponents
    for v_, u in zip(vals, units):
        j = int(u * N)
        for is_num, e in ((True, int(v_ * den)), (False, int(v_ * den) + den)):
            if j == 0 and e == 0:
                continue  # identically zero factor
            if e >= 0:
                if is_num:
                    num_P = _mul_binomial(num_P, j, e, N)
                else:
                    den_P = _mul_binomial(den_P, j, e, N)
            else:
                # zeta x^e - 1 = x^e (zeta - x^-e) = -x^e (x^-e - zeta)
                if is_num:
                    num_P = {(d, jj): -c for (d, jj), c in _mul_binomial(num_P, (-j) % N, -e, N).items()}
                    num_P = {(d, (jj + j) % N): c for (d, jj), c in num_P.items()}
                    shift_num += e
                else:
                    den_P = {(d, jj): -c for (d, jj), c in _mul_binomial(den_P, (-j) % N, -e, N).items()}
                    den_P = {(d, (jj + j) % N): c for (d, jj), c in den_P.items()}
                    shift_den += e
    x = sympy.Symbol("x")
    Pn = _to_rational_poly(num_P, N)
    Pd = _to_rational_poly(den_P, N)
    g = sympy.gcd(Pn, Pd)
    Pn, Pd = Pn.quo(g), Pd.quo(g)
    cn, an, en = _cyclotomic_split(Pn, x)
    cd, ad, ed = _cyclotomic_split(Pd, x)
    cyc = {n: en.get(n, 0) - ed.get(n, 0) for n in set(en) | set(ed)}
    cyc = {n: e for n, e in cyc.items() if e}
    # q^{|R|/2} = x^{den |R| / 2}
    xpow = Fraction(den * len(rs.roots), 2) + shift_num - shift_den + an - ad
    const = cn / cd
    if cyc.get(1, 0) % 2:
        const = -const  # Phi_1 = x - 1 = -(1 - x)
    # assemble integer coefficient lists for x^xpow * const * cyclotomics
    expr = sympy.Rational(const.numerator, const.denominator)
    numx, denx = sympy.Integer(1), sympy.Integer(1)
    for n, e in cyc.items():
        base = (1 - x) if n == 1 else sympy.cyclotomic_poly(n, x)
        if e > 0:
            numx *= base**e
        else:
            denx *= base ** (-e)
    if xpow >= 0:
        numx *= x ** int(xpow)
    else:
        denx *= x ** int(-xpow)
    if xpow.denominator != 1:
        raise ArithmeticError("fractional power of the variable q")
    numx = sympy.Poly(sympy.expand(expr * numx), x, domain="QQ")
    denx = sympy.Poly(sympy.expand(denx), x, domain="QQ")
    # clear denominators
    l = reduce(lcm, (sympy.Rational(c).q for c in numx.all_coeffs() + denx.all_coeffs()), 1)
    ncoef = tuple(int(sympy.Rational(c) * l) for c in reversed(numx.all_coeffs()))
    dcoef = tuple(int(sympy.Rational(c) * l) for c in reversed(denx.all_coeffs()))
    gg = reduce(gcd, ncoef + dcoef)
    ncoef = tuple(c // gg for c in ncoef)
    dcoef = tuple(c // gg for c in dcoef)
    return ReederResult(ncoef, dcoef, den, const, Fraction(int(xpow), den), cyc)


def _equal_parameters(p: GenericResidualPoint) -> dict:
    """Every parameter symbol of the point set to 1."""
    sub = p.subsystem
    syms = {s for i in sub.root_indices for s in sub.induced_k[i].symbols}
    syms |= {s for a in p.coweight_coords for s in a.symbols}
    return {s: 1 for s in syms}


def is_residual_at_equal_parameters(p: GenericResidualPoint) -> bool:
    return residual_index(p, _equal_parameters(p)).excess == p.subsystem.rank
