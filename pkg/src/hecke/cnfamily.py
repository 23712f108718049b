"""The three-parameter C_n family: bipartitions, seminormal modules, signs, formal degrees.

Parameters ``(v0, v1, v2)`` sit on the affine node, the long chain and the
short end of the C_n affine diagram.  Modules are lifted from the finite
Hecke algebra through ``theta_j -> -v0^-1 N_{s_{eps_j}}``, so in the
tableau basis every ``theta_j`` is diagonal.

Tableaux are standard in the increasing sense (entry 1 in a corner box);
``theta_j`` reads the box of entry ``n - j + 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Mapping

import mpmath
import numpy as np

from .linform import LinForm, frac
from .massfn import PRECISION_DIGITS, MassFactor, MassFunction, RegularizedValue, evaluate_regularized, ratio_sign
from .rootdata import build_root_system
from .weylgrp import ClassFunction, enumerate_group

MAX_WEYL_N = 4


# ----------------------------------------------------------------------------
# bipartitions and tableaux
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class Bipartition:
    lam: tuple
    mu: tuple

    def __post_init__(self):
        for part in (self.lam, self.mu):
            if any(x <= 0 for x in part) or list(part) != sorted(part, reverse=True):
                raise ValueError(f"not a partition: {part}")

    @property
    def n(self) -> int:
        return sum(self.lam) + sum(self.mu)

    @classmethod
    def parse(cls, text: str) -> "Bipartition":
        """``"2,1|1"`` -> ((2, 1), (1,)); either side may be empty."""
        if "|" not in text:
            raise ValueError("bipartition syntax is 'lambda|mu'")
        left, right = text.split("|", 1)
        side = lambda s: tuple(int(x) for x in s.split(",") if x.strip())
        return cls(side(left), side(right))

    def __str__(self):
        return ",".join(map(str, self.lam)) + "|" + ",".join(map(str, self.mu))


def partitions(n: int, max_part: int | None = None):
    """Partitions of ``n`` in reverse lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def bipartitions(n: int) -> list:
    if n < 0:
        raise ValueError("n must be >= 0")
    out = []
    for a in range(n, -1, -1):
        for lam in partitions(a):
            for mu in partitions(n - a):
                out.append(Bipartition(lam, mu))
    return out


def _boxes(shape):
    return [(x, y) for x, row in enumerate(shape, start=1) for y in range(1, row + 1)]


@dataclass(frozen=True)
class Bitableau:
    """``filling[side]`` is a tuple of rows; side 0 is lambda, side 1 is mu."""

    filling: tuple

    def position(self, k: int):
        for side, rows in enumerate(self.filling):
            for x, row in enumerate(rows, start=1):
                for y, val in enumerate(row, start=1):
                    if val == k:
                        return side, x, y
        raise ValueError(f"entry {k} not in tableau")

    @property
    def n(self) -> int:
        return sum(len(r) for rows in self.filling for r in rows)

    def swap(self, a: int, b: int) -> "Bitableau":
        f = lambda v: b if v == a else a if v == b else v
        return Bitableau(tuple(tuple(tuple(f(v) for v in r) for r in rows) for rows in self.filling))

    def is_standard(self) -> bool:
        for rows in self.filling:
            for x, row in enumerate(rows):
                for y, v in enumerate(row):
                    if y and row[y - 1] >= v:
                        return False
                    if x and rows[x - 1][y] >= v:
                        return False
        return True


def standard_bitableaux(bp: Bipartition) -> list:
    """All standard fillings of shape (lambda, mu), in a fixed order."""
    shapes = (bp.lam, bp.mu)
    n = bp.n
    out = []

    def grow(cur, k):
        if k > n:
            out.append(Bitableau(tuple(tuple(tuple(r) for r in rows) for rows in cur)))
            return
        for side in (0, 1):
            rows, target = cur[side], shapes[side]
            for x in range(len(target)):
                rowlen = lambda r: len(rows[r]) if r < len(rows) else 0
                length = rowlen(x)
                if length >= target[x] or (x > 0 and rowlen(x - 1) <= length):
                    continue
                new = [list(r) for r in rows]
                if x == len(new):
                    new.append([])
                new[x].append(k)
                nxt = list(cur)
                nxt[side] = new
                grow(nxt, k + 1)

    grow([[], []], 1)
    return out


def content(t: Bitableau, k: int, params) -> Fraction:
    """``v1^{2(y-x)} v2`` on lambda, ``-v1^{2(y-x)} v2^-1`` on mu."""
    if not 1 <= k <= t.n:
        raise ValueError(f"entry {k} out of range 1..{t.n}")
    _, v1, v2 = (frac(p) for p in params)
    side, x, y = t.position(k)
    c = v1 ** (2 * (y - x))
    return c * v2 if side == 0 else -c / v2


def _diag_content(t: Bitableau, k: int) -> int:
    _, x, y = t.position(k)
    return y - x


# ----------------------------------------------------------------------------
# modules
# ----------------------------------------------------------------------------

def _zeros(d):
    return np.array([[Fraction(0)] * d for _ in range(d)], dtype=object)


def _eye(d):
    m = _zeros(d)
    for i in range(d):
        m[i, i] = Fraction(1)
    return m


class NonGenericParameters(ValueError):
    pass


@dataclass(eq=False)
class CnModule:
    bipartition: Bipartition
    basis: list
    theta: list
    gens: list
    params: tuple
    relation_report: dict = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def weights(self) -> list:
        """Theta eigenvalue string ``(t_1, ..., t_n)`` per basis tableau."""
        return [tuple(th[b, b] for th in self.theta) for b in range(self.dim)]


def _weight(t: Bitableau, j: int, n: int, params) -> Fraction:
    v0 = frac(params[0])
    return -content(t, n - j + 1, params) / v0


def _n_block(t_i, t_j, v):
    """Diagonal and off-diagonal coefficients of the type-A intertwiner."""
    z = t_j / t_i
    if z == 1:
        raise NonGenericParameters("weight collision")
    a = (v - 1 / v) / (1 - z)
    return a, 1 / v + a


def build_module(bp: Bipartition, v0, v1, v2, check: bool = True) -> CnModule:
    params = (frac(v0), frac(v1), frac(v2))
    if any(p == 0 for p in params):
        raise NonGenericParameters("parameters must be nonzero")
    n = bp.n
    basis = standard_bitableaux(bp)
    d = len(basis)
    index = {t: i for i, t in enumerate(basis)}
    weights = [[_weight(t, j, n, params) for j in range(1, n + 1)] for t in basis]
    if len({tuple(w) for w in weights}) != d:
        raise NonGenericParameters("two tableaux share a theta-weight string")
    theta = []
    for j in range(n):
        m = _zeros(d)
        for b in range(d):
            m[b, b] = weights[b][j]
        theta.append(m)
    gens = []
    V0, V1, V2 = params
    for i in range(1, n):
        k = n - i + 1
        m = _zeros(d)
        for b, t in enumerate(basis):
            ti, tj = weights[b][i - 1], weights[b][i]
            try:
                a, off = _n_block(ti, tj, V1)
            except NonGenericParameters as exc:
                raise NonGenericParameters(f"{exc} for N_{i} on {t}") from None
            m[b, b] = a
            s = t.swap(k - 1, k)
            if s.is_standard():
                m[index[s], b] = off
            elif a not in (V1, -1 / V1):
                raise NonGenericParameters(f"N_{i} eigenvalue {a} on {t} violates the quadratic")
        gens.append(m)
    # N_n solves the cross relation on each (one-dimensional) s_n-orbit of weights
    m = _zeros(d)
    for b in range(d):
        t = weights[b][n - 1]
        if t * t == 1:
            raise NonGenericParameters(f"theta_n weight {t} is self-inverse")
        m[b, b] = ((V2 - 1 / V2) * t + (V0 - 1 / V0)) / (t - 1 / t)
    gens.append(m)
    mod = CnModule(bp, basis, theta, gens, params)
    if check:
        report = verify_relations(mod)
        mod.relation_report = report
        bad = [k for k, ok in report.items() if not ok]
        if bad:
            raise ArithmeticError(f"relations fail for {bp}: {bad}")
    return mod


def _is_zero(m) -> bool:
    return all(x == 0 for x in m.flat)


def verify_relations(mod: CnModule) -> dict:
    """Exact check of every Bernstein-presentation relation; name -> bool."""
    n = mod.bipartition.n
    V0, V1, V2 = mod.params
    th, N = mod.theta, mod.gens
    I = _eye(mod.dim)
    out = {}
    for i in range(n):
        for j in range(i + 1, n):
            out[f"theta{i+1}theta{j+1}"] = _is_zero(th[i] @ th[j] - th[j] @ th[i])
    for i in range(1, n):
        ti, tj, Ni = th[i - 1], th[i], N[i - 1]
        out[f"bernstein{i}"] = _is_zero(ti @ Ni - Ni @ tj - (V1 - 1 / V1) * ti)
        out[f"bernstein{i}'"] = _is_zero(tj @ Ni - Ni @ ti + (V1 - 1 / V1) * ti)
        for j in range(1, n + 1):
            if j not in (i, i + 1):
                out[f"commute theta{j} N{i}"] = _is_zero(th[j - 1] @ Ni - Ni @ th[j - 1])
    tn, Nn = th[n - 1], N[n - 1]
    tn_inv = _zeros(mod.dim)
    for b in range(mod.dim):
        tn_inv[b, b] = 1 / tn[b, b]
    out["cross"] = _is_zero(tn @ Nn - Nn @ tn_inv - (V2 - 1 / V2) * tn - (V0 - 1 / V0) * I)
    for j in range(1, n):
        out[f"commute theta{j} N{n}"] = _is_zero(th[j - 1] @ Nn - Nn @ th[j - 1])
    for i in range(1, n + 1):
        v = V2 if i == n else V1
        out[f"quadratic{i}"] = _is_zero((N[i - 1] - v * I) @ (N[i - 1] + (1 / v) * I))
    out.update(_braid_checks(N, n))
    return out


def _braid_checks(N, n) -> dict:
    out = {}
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            A, B = N[i - 1], N[j - 1]
            if j - i >= 2:
                out[f"braid{i},{j}"] = _is_zero(A @ B - B @ A)
            elif j < n:
                out[f"braid{i},{j}"] = _is_zero(A @ B @ A - B @ A @ B)
            else:
                out[f"braid{i},{j}"] = _is_zero(A @ B @ A @ B - B @ A @ B @ A)
    return out


def is_discrete_series(mod: CnModule) -> bool:
    """All partial products ``theta_1 ... theta_j`` have eigenvalues inside the unit disc."""
    for w in mod.weights():
        prod = Fraction(1)
        for t in w:
            prod *= t
            if abs(prod) >= 1:
                return False
    return True


# ----------------------------------------------------------------------------
# central characters and signs
# ----------------------------------------------------------------------------

MP, MM = LinForm.var("m+"), LinForm.var("m-")


def central_character_string(bp: Bipartition) -> list:
    """``[(sign, exponent of v), ...]``: lambda boxes first, then mu boxes."""
    out = []
    for x, y in _boxes(bp.lam):
        out.append((-1, 2 * (y - x) + 2 * MM))
    for x, y in _boxes(bp.mu):
        out.append((1, 2 * (y - x) - 2 * MP))
    return out


def graded_central_character(bp: Bipartition) -> list:
    """``c_bar``: ``(y - x) + m-`` over lambda, ``(y - x) - m+`` over mu."""
    return [LinForm(y - x) + MM for x, y in _boxes(bp.lam)] + [LinForm(y - x) - MP for x, y in _boxes(bp.mu)]


def _block_forms(cbar: list, k: LinForm):
    """Numerator and denominator forms of the sign expression for one block."""
    num, den = [], []
    ell = len(cbar)
    for i in range(ell):
        for s in (1, -1):
            x = cbar[i] * s
            if not x.is_zero():
                num.append(x)
            y = x - k
            if not y.is_zero():
                den.append(y)
        for j in range(i + 1, ell):
            for si in (1, -1):
                for sj in (1, -1):
                    x = cbar[i] * si + cbar[j] * sj
                    if not x.is_zero():
                        num.append(x)
                    y = x - 1
                    if not y.is_zero():
                        den.append(y)
    return num, den


READINGS = ("block", "literal")


def epsilon_forms(bp: Bipartition, reading: str = "block"):
    """Forms whose ratio sign is ``eps(lambda, m-) eps(mu, -m+)``.

    ``block``: each block uses the short-root parameter that actually
    vanishes on it (``m-`` on lambda, ``m+`` on mu).  ``literal``: the
    mu block uses ``-m+`` as in a direct substitution ``m -> -m+``.
    """
    if reading not in READINGS:
        raise ValueError(f"reading must be one of {READINGS}")
    cb = graded_central_character(bp)
    lam, mu = cb[: sum(bp.lam)], cb[sum(bp.lam):]
    n1, d1 = _block_forms(lam, MM)
    n2, d2 = _block_forms(mu, MP if reading == "block" else -MP)
    return n1 + n2, d1 + d2


def epsilon_sign_C(bp: Bipartition, m_plus, m_minus, reading: str = "block") -> int:
    num, den = epsilon_forms(bp, reading)
    return ratio_sign(num, den, {"m+": frac(m_plus), "m-": frac(m_minus)})


def epsilon_singular_forms(bp: Bipartition, reading: str = "block") -> list:
    """Primitive forms in (m+, m-) on which the sign expression changes or vanishes."""
    num, den = epsilon_forms(bp, reading)
    out = {f.primitive() for f in num + den if not f.is_constant()}
    return sorted(out, key=str)


# ----------------------------------------------------------------------------
# formal degree
# ----------------------------------------------------------------------------

@lru_cache(maxsize=None)
def cn_root_system(n: int):
    return build_root_system("Cn-datum", n)


def mass_function_C(bp: Bipartition) -> MassFunction:
    """Factor structure of the C_n formal degree (without sign and d_b = 1).

    ``+1`` denominator factors are stored as ``(-unit * v^e - 1)``; the
    resulting ``-1`` per stored factor goes into the overall sign.
    """
    n = bp.n
    rs = cn_root_system(n)
    string = central_character_string(bp)
    half = Fraction(1, 2)
    factors = []

    flips = 0

    def add(unit, expo, side):
        f = MassFactor(unit % 1, expo, side)
        if not f.identically_zero():
            factors.append(f)
            return 1
        return 0

    for root in rs.roots:
        c = [int(x) for x in root]
        expo = LinForm()
        neg = 0
        for i, ci in enumerate(c):
            if ci:
                expo = expo + string[i][1] * ci
                if string[i][0] < 0 and ci % 2:
                    neg += 1
        u = Fraction(neg % 2, 2)  # alpha(r) = exp(2 pi i u) v^expo; inverse has the same unit
        add(u, -expo, "num")
        is_short = sum(abs(x) for x in c) == 1
        if not is_short:
            add(u, -expo - 2, "den")
        else:
            add(u, -expo - 2 * MP, "den")
            flips += add(u + half, -expo - 2 * MM, "den")
    return MassFunction(factors, LinForm(), bp, sign=(-1) ** flips)


def durfee(shape) -> int:
    """Number of boxes on the main diagonal."""
    return sum(1 for x, row in enumerate(shape, start=1) if row >= x)


def orientation_correction(bp: Bipartition) -> int:
    """Sign relating the graded expression to the displayed mass factors.

    On the lambda block every ``+-eps_i`` numerator pair of the mass is
    positive while ``alpha(c)`` pairs are negative (one ``-1`` per box), and
    each ``+1`` denominator factor is oriented opposite to
    ``alpha(c) - m``, which matters exactly where a pair loses one factor
    to the ``prod'`` rule (one per diagonal box).
    """
    return (-1) ** (sum(bp.lam) + durfee(bp.lam))


def mass_sign_C(bp: Bipartition, m_plus, m_minus, reading: str = "block") -> int:
    """Predicted sign of ``mass_function_C`` from the exact graded expression."""
    return epsilon_sign_C(bp, m_plus, m_minus, reading) * orientation_correction(bp)


def fdeg_C(bp: Bipartition, m_plus, m_minus, v=2) -> RegularizedValue:
    """Formal degree ``d_b * eps * mass`` at ``(m+, m-)`` with ``d_b = 1``.

    ``eps`` is the graded sign corrected by :func:`orientation_correction`,
    so the result is positive wherever the point is regular.
    """
    at = {"m+": frac(m_plus), "m-": frac(m_minus)}
    if bp.n == 0:
        return RegularizedValue(mpmath.mpf(1), 0, ())
    m = mass_function_C(bp)
    val = evaluate_regularized(m, at, v)
    eps = mass_sign_C(bp, m_plus, m_minus)
    with mpmath.workdps(PRECISION_DIGITS):
        value = val.value * eps
    return RegularizedValue(value, val.vanishing_order, val.direction_used)


def limiting_sign(bp: Bipartition, reading: str = "block", scales=(10, 100, 1000)) -> int:
    """``eps(lambda, mu)``: the sign in the chamber ``m- >> m+ >> 0``."""
    signs = {epsilon_sign_C(bp, Fraction(s), Fraction(s * s), reading) for s in scales}
    if len(signs) != 1:
        raise ArithmeticError(f"sign does not stabilize for {bp}: {signs}")
    return signs.pop()


# ----------------------------------------------------------------------------
# restriction to the finite Weyl group
# ----------------------------------------------------------------------------

def weyl_generator_matrices(bp: Bipartition) -> list:
    """Module generators at ``v0 = v1 = v2 = 1`` (seminormal limit)."""
    n = bp.n
    basis = standard_bitableaux(bp)
    index = {t: i for i, t in enumerate(basis)}
    d = len(basis)
    gens = []
    for i in range(1, n):
        k = n - i + 1
        m = _zeros(d)
        for b, t in enumerate(basis):
            s1 = t.position(k - 1)[0]
            s2 = t.position(k)[0]
            if s1 == s2:
                dist = _diag_content(t, k - 1) - _diag_content(t, k)
                a = Fraction(-1, dist)
            else:
                a = Fraction(0)
            m[b, b] = a
            s = t.swap(k - 1, k)
            if s.is_standard():
                m[index[s], b] = 1 + a
            elif a not in (1, -1):
                raise ArithmeticError("non-semisimple specialization")
        gens.append(m)
    m = _zeros(d)
    for b, t in enumerate(basis):
        m[b, b] = Fraction(1) if t.position(1)[0] == 0 else Fraction(-1)
    gens.append(m)
    return gens


@lru_cache(maxsize=None)
def cn_weyl_group(n: int):
    if n > MAX_WEYL_N:
        raise ValueError(f"brute-force W0(C_n) limited to n <= {MAX_WEYL_N}")
    return enumerate_group(cn_root_system(n), name=f"C{n}")


@dataclass(frozen=True)
class Restriction:
    character: ClassFunction
    compact_part: tuple
    dim: int


def restrict_to_weyl(bp: Bipartition) -> Restriction:
    n = bp.n
    W = cn_weyl_group(n)
    gens = weyl_generator_matrices(bp)
    d = len(standard_bitableaux(bp))
    for g in gens:
        if not _is_zero(g @ g - _eye(d)):
            raise ArithmeticError("limit generator is not an involution")
    # module matrices along the breadth-first words of W; generators are involutions
    mats = [None] * len(W)
    mats[0] = _eye(d)
    for g in range(1, len(W)):
        i = W.words[g][0]
        rest = W.find(W.generators[i] @ W.elements[g])
        mats[g] = gens[i] @ mats[rest]
    char = ClassFunction.from_element_values(W, lambda g: int(sum(mats[g][b, b] for b in range(d))))
    # every element of a class must give the same trace
    for c, members in enumerate(W.classes.members):
        vals = {sum(mats[g][b, b] for b in range(d)) for g in members}
        if len(vals) != 1:
            raise ArithmeticError("limit module is not a representation of W0")
    # compact part: theta eigenvalues at v0 = v1 = v2 = 1, -1 first
    t = standard_bitableaux(bp)[0]
    compact = tuple(sorted(int(_weight(t, j, n, (1, 1, 1))) for j in range(1, n + 1)))
    return Restriction(char, compact, d)
