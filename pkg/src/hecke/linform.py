"""Affine-linear forms with rational coefficients over named parameters.

A :class:`LinForm` is ``constant + sum(coeff[sym] * sym)``.  It is the
common currency for residual-point coordinates, mass-function exponents
and parameter hyperplanes.
"""

from __future__ import annotations

import numbers
import re
from fractions import Fraction
from typing import Mapping, Union

Number = Union[int, Fraction]

# Display order of the known parameter symbols; unknown symbols sort after.
SYMBOL_ORDER = ("k1", "k2", "m+", "m-")


def _symkey(sym: str):
    try:
        return (SYMBOL_ORDER.index(sym), sym)
    except ValueError:
        return (len(SYMBOL_ORDER), sym)


def frac(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to ``Fraction``."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, numbers.Integral):
        return Fraction(int(x))
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"not an exact rational: {x!r}")


def frac_str(x: Fraction) -> str:
    x = frac(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class LinForm:
    """Immutable affine-linear form ``c + sum a_s * s``.

    Zero coefficients are never stored, so equality is structural.

    >>> k1, k2 = LinForm.var("k1"), LinForm.var("k2")
    >>> str(k1 - k2 / 2 + 3)
    'k1 - k2/2 + 3'
    """

    __slots__ = ("constant", "coeffs", "_hash")

    def __init__(self, constant: Number = 0, coeffs: Mapping[str, Number] | None = None):
        self.constant = frac(constant)
        items = {}
        for sym, c in (coeffs or {}).items():
            c = frac(c)
            if c:
                items[sym] = c
        self.coeffs = dict(sorted(items.items(), key=lambda kv: _symkey(kv[0])))
        self._hash = hash((self.constant, tuple(self.coeffs.items())))

    @classmethod
    def var(cls, sym: str) -> "LinForm":
        return cls(0, {sym: 1})

    @classmethod
    def const(cls, c: Number) -> "LinForm":
        return cls(c)

    @staticmethod
    def coerce(x) -> "LinForm":
        if isinstance(x, LinForm):
            return x
        return LinForm(frac(x))

    # -- algebra ---------------------------------------------------------
    def __add__(self, other):
        other = LinForm.coerce(other)
        coeffs = dict(self.coeffs)
        for s, c in other.coeffs.items():
            coeffs[s] = coeffs.get(s, 0) + c
        return LinForm(self.constant + other.constant, coeffs)

    __radd__ = __add__

    def __neg__(self):
        return LinForm(-self.constant, {s: -c for s, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-LinForm.coerce(other))

    def __rsub__(self, other):
        return LinForm.coerce(other) - self

    def __mul__(self, scalar):
        if isinstance(scalar, LinForm):
            if scalar.is_constant():
                scalar = scalar.constant
            elif self.is_constant():
                return scalar * self.constant
            else:
                raise TypeError("product of two non-constant LinForms is not linear")
        k = frac(scalar)
        return LinForm(self.constant * k, {s: c * k for s, c in self.coeffs.items()})

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self * (1 / frac(scalar))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LinForm(other)
        if not isinstance(other, LinForm):
            return NotImplemented
        return self.constant == other.constant and self.coeffs == other.coeffs

    def __hash__(self):
        return self._hash

    # -- queries ---------------------------------------------------------
    def is_zero(self) -> bool:
        return self.constant == 0 and not self.coeffs

    def is_constant(self) -> bool:
        return not self.coeffs

    @property
    def symbols(self) -> tuple[str, ...]:
        return tuple(self.coeffs)

    def coeff(self, sym: str) -> Fraction:
        return self.coeffs.get(sym, Fraction(0))

    def linear_part(self) -> "LinForm":
        return LinForm(0, self.coeffs)

    def evaluate(self, at: Mapping[str, Number]) -> Fraction:
        """Exact value at a parameter point; every symbol must be assigned."""
        total = self.constant
        for s, c in self.coeffs.items():
            if s not in at:
                raise KeyError(f"unassigned parameter symbol {s!r}")
            total += c * frac(at[s])
        return total

    def derivative(self, direction: Mapping[str, Number]) -> Fraction:
        """Directional derivative ``<linear part, direction>``."""
        return sum((c * frac(direction.get(s, 0)) for s, c in self.coeffs.items()), Fraction(0))

    def subs(self, values: Mapping[str, Number]) -> "LinForm":
        """Partial substitution of some symbols by rationals."""
        const = self.constant
        coeffs = {}
        for s, c in self.coeffs.items():
            if s in values:
                const += c * frac(values[s])
            else:
                coeffs[s] = c
        return LinForm(const, coeffs)

    def primitive(self) -> "LinForm":
        """Scale to coprime integer coefficients with positive leading term."""
        from math import gcd, lcm

        parts = [self.constant, *self.coeffs.values()]
        nz = [p for p in parts if p]
        if not nz:
            return self
        den = lcm(*(p.denominator for p in nz))
        ints = [int(p * den) for p in nz]
        g = 0
        for x in ints:
            g = gcd(g, x)
        lead = next(iter(self.coeffs.values()), self.constant)
        sign = 1 if lead > 0 else -1
        return self * Fraction(den * sign, g)

    # -- formatting ------------------------------------------------------
    def __str__(self):
        terms = []
        for s, c in self.coeffs.items():
            terms.append((c, s))
        if self.constant or not terms:
            terms.append((self.constant, ""))
        out = ""
        for i, (c, s) in enumerate(terms):
            neg = c < 0
            a = abs(c)
            if s:
                if a == 1:
                    body = s
                elif a.denominator == 1:
                    body = f"{a.numerator}{s}"
                elif a.numerator == 1:
                    body = f"{s}/{a.denominator}"
                else:
                    body = f"{a.numerator}{s}/{a.denominator}"
            else:
                body = frac_str(a)
            if i == 0:
                out = ("-" if neg else "") + body
            else:
                out += (" - " if neg else " + ") + body
        return out

    def __repr__(self):
        return f"LinForm({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "LinForm":
        """Inverse of ``str``: ``"k1/2 - k2 + 3"``, ``"-3k1/2"``, ``"m+ - 1"``."""
        src = text.replace(" ", "").replace("−", "-")
        if not src:
            raise ValueError("empty LinForm")
        pos, total = 0, cls()
        while pos < len(src):
            mt = _TERM.match(src, pos)
            if not mt or mt.end() == pos:
                raise ValueError(f"cannot parse LinForm {text!r} at {src[pos:]!r}")
            sign, num, sym, den = mt.groups()
            if num is None and sym is None:
                raise ValueError(f"cannot parse LinForm {text!r}")
            c = Fraction(num) if num else Fraction(1)
            if den:
                c /= int(den)
            if sign == "-":
                c = -c
            total = total + (cls.var(sym) * c if sym else cls(c))
            pos = mt.end()
        return total


# symbols like "m+" contain a sign, so known names are matched first
_TERM = re.compile(r"([+-]?)(\d+(?:/\d+)?)?(k1|k2|m\+|m-|[a-z]\w*)?(?:/(\d+))?")


def linvec(*items) -> tuple[LinForm, ...]:
    return tuple(LinForm.coerce(x) for x in items)
