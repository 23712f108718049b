"""Exact root systems, Weyl-group actions on coweights and pseudo-Levi subsystems.

Roots are stored twice: as exact ambient vectors (with a rational Gram
matrix) and as integer coefficient vectors in the simple-root basis.  All
combinatorics runs on the integer coefficients.  A coweight ``xi`` is
stored through its values on the simple roots (the ``[a_i]`` coordinates
of ``xi = sum a_i w_i``), so ``alpha(xi) = coeffs(alpha) . a``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import lcm

import numpy as np

from .linform import LinForm, frac, frac_str

MAX_RANK = 8


# Node numbering and parameter attachment for every supported type.  The
# G2/F4 entries follow the affine diagrams
#     G2: a0 - a1 <= a2          F4: a0 - a1 - a2 <= a3 - a4
# so the node next to the affine node is long and carries k1, the far end
# is short and carries k2.  The residual-point enumeration of the G2
# subregular orbit [k1, -k1 + k2] fails under the swapped labelling, which
# makes tests/test_residual.py::test_labelling_self_test a detector for it.
DIAGRAM_CONVENTIONS = {
    "G2": {"long": "k1", "short": "k2"},
    "F4": {"long": "k1", "short": "k2"},
    "Cn-datum": {"long": "v1", "short": "v2"},
}


def _simple_roots(type_tag: str, rank: int):
    """Return (ambient simple roots, Gram matrix) for a type."""
    F = Fraction
    I = lambda d: [[F(int(i == j)) for j in range(d)] for i in range(d)]
    e = lambda d, i: [F(int(j == i)) for j in range(d)]

    if type_tag == "G2":
        if rank != 2:
            raise ValueError("G2 has rank 2")
        # ambient basis = the simple roots themselves; |a1|^2 = 6, |a2|^2 = 2
        return [[F(1), F(0)], [F(0), F(1)]], [[F(6), F(-3)], [F(-3), F(2)]]
    if type_tag == "F4":
        if rank != 4:
            raise ValueError("F4 has rank 4")
        h = F(1, 2)
        simple = [[0, 1, -1, 0], [0, 0, 1, -1], [0, 0, 0, 1], [h, -h, -h, -h]]
        return [[F(x) for x in r] for r in simple], I(4)
    if type_tag == "An":
        simple = []
        for i in range(rank):
            v = e(rank + 1, i)
            v[i + 1] = F(-1)
            simple.append(v)
        return simple, I(rank + 1)
    if type_tag in ("Bn", "Cn-datum", "Cn"):
        simple = []
        for i in range(rank - 1):
            v = e(rank, i)
            v[i + 1] = F(-1)
            simple.append(v)
        last = e(rank, rank - 1)
        if type_tag == "Cn":
            last = [2 * x for x in last]
        simple.append(last)
        return simple, I(rank)
    if type_tag == "Dn":
        if rank < 2:
            raise ValueError("Dn needs rank >= 2")
        simple = []
        for i in range(rank - 1):
            v = e(rank, i)
            v[i + 1] = F(-1)
            simple.append(v)
        v = e(rank, rank - 2)
        v[rank - 1] = F(1)
        simple.append(v)
        return simple, I(rank)
    raise ValueError(f"unknown type_tag {type_tag!r}")


def _inner(u, v, gram):
    return sum(u[i] * gram[i][j] * v[j] for i in range(len(u)) for j in range(len(v)))


def _solve_exact(A, B):
    """Solve A X = B over the rationals (A square, invertible)."""
    n = len(A)
    M = [list(map(frac, A[i])) + list(map(frac, B[i])) for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            raise ArithmeticError("singular matrix")
        M[col], M[piv] = M[piv], M[col]
        p = M[col][col]
        M[col] = [x / p for x in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [a - f * b for a, b in zip(M[r], M[col])]
    return [row[n:] for row in M]


@dataclass(eq=False)
class RootSystem:
    """A reduced crystallographic root system with a fixed realisation.

    ``coeffs[i]`` is the integer simple-root expansion of ``roots[i]``.
    ``param_label`` maps a length class (``"long"``/``"short"``) to the
    parameter symbol carried by that Weyl orbit of roots.
    """

    type_tag: str
    rank: int
    ambient_dim: int
    simple_ambient: list
    gram: list
    coeffs: np.ndarray
    simple: list
    length_class: list
    param_label: dict = field(default_factory=dict)

    # -- derived data ------------------------------------------------------
    @cached_property
    def roots(self) -> list:
        return [
            tuple(sum((int(c[i]) * self.simple_ambient[i][d] for i in range(self.rank)), Fraction(0))
                  for d in range(self.ambient_dim))
            for c in self.coeffs
        ]

    @cached_property
    def simple_gram(self) -> np.ndarray:
        """Gram matrix of the simple roots, as an exact object array."""
        S = self.simple_ambient
        return np.array([[_inner(S[i], S[j], self.gram) for j in range(self.rank)]
                         for i in range(self.rank)], dtype=object)

    @cached_property
    def cartan(self) -> np.ndarray:
        """``cartan[i, j] = <alpha_i, alpha_j^vee>`` (integers)."""
        G = self.simple_gram
        return np.array([[int(2 * G[i, j] / G[j, j]) for j in range(self.rank)]
                         for i in range(self.rank)], dtype=np.int64)

    @cached_property
    def sq_lengths(self) -> list:
        G = self.simple_gram
        return [sum(int(c[i]) * int(c[j]) * G[i, j] for i in range(self.rank) for j in range(self.rank))
                for c in self.coeffs]

    @cached_property
    def index(self) -> dict:
        return {tuple(int(x) for x in c): i for i, c in enumerate(self.coeffs)}

    @cached_property
    def positive(self) -> list:
        return [i for i, c in enumerate(self.coeffs) if c.sum() > 0]

    @cached_property
    def negation(self) -> list:
        return [self.index[tuple(-int(x) for x in c)] for c in self.coeffs]

    def pairing(self, i: int, j: int) -> int:
        """``<root_i, root_j^vee>``."""
        G = self.simple_gram
        ci, cj = self.coeffs[i], self.coeffs[j]
        ip = sum(int(ci[a]) * int(cj[b]) * G[a, b] for a in range(self.rank) for b in range(self.rank))
        return int(2 * ip / self.sq_lengths[j])

    def reflection_matrix(self, j: int) -> np.ndarray:
        """Integer matrix of the reflection in root ``j`` on coefficient vectors."""
        G = self.simple_gram
        b = self.coeffs[j]
        r = self.rank
        gb = [sum(G[a, c] * int(b[c]) for c in range(r)) for a in range(r)]
        n2 = self.sq_lengths[j]
        M = np.eye(r, dtype=np.int64)
        for a in range(r):
            for c in range(r):
                M[a, c] -= int(b[a]) * int(2 * gb[c] / n2)
        return M

    def param_of(self, i: int) -> str:
        return self.param_label[self.length_class[i]]

    def k_form(self, i: int) -> LinForm:
        return LinForm.var(self.param_of(i))

    @cached_property
    def highest_root(self) -> int:
        return max(self.positive, key=lambda i: (int(self.coeffs[i].sum()), tuple(self.coeffs[i])))

    def value(self, i: int, a):
        """``alpha_i(xi)`` for coweight coordinates ``a`` (LinForms or rationals)."""
        c = self.coeffs[i]
        total = 0
        for j in range(self.rank):
            if c[j]:
                total = total + int(c[j]) * a[j]
        return total

    def to_json(self) -> dict:
        return {
            "schema": "hecke.rootsystem/1",
            "type": self.type_tag,
            "rank": self.rank,
            "simple_roots": [[frac_str(x) for x in r] for r in self.simple_ambient],
            "gram": [[frac_str(x) for x in r] for r in self.gram],
            "roots": [[frac_str(x) for x in r] for r in self.roots],
            "positive": [bool(i in set(self.positive)) for i in range(len(self.coeffs))],
            "length_class": list(self.length_class),
            "param_labels": dict(self.param_label),
        }

    def __repr__(self):
        return f"RootSystem({self.type_tag}, rank={self.rank}, |R|={len(self.coeffs)})"


def build_root_system(type_tag: str, rank: int | None = None) -> RootSystem:
    """Construct a root system by reflection closure of its simple roots.

    ``type_tag`` is one of ``G2, F4, Cn-datum, An, Bn, Cn, Dn``; for the
    exceptional types the rank may be omitted.
    """
    if rank is None:
        rank = {"G2": 2, "F4": 4}.get(type_tag)
        if rank is None:
            raise ValueError(f"rank required for {type_tag!r}")
    if not 1 <= rank <= MAX_RANK:
        raise ValueError(f"rank {rank} out of supported range 1..{MAX_RANK}")
    if type_tag == "Dn" and rank < 3:
        raise ValueError("Dn needs rank >= 3")
    simple, gram = _simple_roots(type_tag, rank)

    G = [[_inner(simple[i], simple[j], gram) for j in range(rank)] for i in range(rank)]
    A = [[int(2 * G[i][j] / G[j][j]) for j in range(rank)] for i in range(rank)]

    # closure on integer coefficient vectors
    start = [tuple(int(i == j) for j in range(rank)) for i in range(rank)]
    seen = set(start)
    order = list(start)
    frontier = list(start)
    while frontier:
        nxt = []
        for c in frontier:
            for i in range(rank):
                p = sum(c[j] * A[j][i] for j in range(rank))
                d = list(c)
                d[i] -= p
                d = tuple(d)
                if d not in seen:
                    seen.add(d)
                    order.append(d)
                    nxt.append(d)
        frontier = nxt
    order.sort(key=lambda c: (-(sum(c) > 0), abs(sum(c)), tuple(-x if sum(c) > 0 else x for x in c)))
    coeffs = np.array(order, dtype=np.int64)

    sq = [sum(c[i] * c[j] * G[i][j] for i in range(rank) for j in range(rank)) for c in order]
    maxsq = max(sq)
    length_class = ["long" if s == maxsq else "short" for s in sq]

    if type_tag in DIAGRAM_CONVENTIONS:
        labels = dict(DIAGRAM_CONVENTIONS[type_tag])
    elif len(set(sq)) == 1:
        labels = {"long": "k1", "short": "k1"}
    else:
        labels = {"long": "k1", "short": "k2"}

    rs = RootSystem(
        type_tag=type_tag,
        rank=rank,
        ambient_dim=len(gram),
        simple_ambient=simple,
        gram=gram,
        coeffs=coeffs,
        simple=[order.index(s) for s in start],
        length_class=length_class,
        param_label=labels,
    )
    return rs


def fundamental_coweights(rs: RootSystem) -> list:
    """Ambient vectors ``w_i`` with ``(alpha_j, w_i) = delta_ij``.

    The ambient space is identified with its dual through the Gram matrix.
    """
    r = rs.rank
    G = rs.simple_gram.tolist()
    Y = _solve_exact(G, [[Fraction(int(i == j)) for j in range(r)] for i in range(r)])
    # w_i = sum_k Y[k][i] * simple_k  (G symmetric, so columns of G^-1)
    out = []
    for i in range(r):
        out.append(tuple(sum((Y[k][i] * rs.simple_ambient[k][d] for k in range(r)), Fraction(0))
                         for d in range(rs.ambient_dim)))
    return out


def ambient_pairing(rs: RootSystem, root_index: int, x) -> Fraction:
    return _inner(rs.roots[root_index], x, rs.gram)


def coweight_to_ambient(rs: RootSystem, a) -> tuple:
    """Ambient LinForm vector of ``sum a_i w_i``."""
    W = fundamental_coweights(rs)
    return tuple(sum((LinForm.coerce(a[i]) * W[i][d] for i in range(rs.rank)), LinForm())
                 for d in range(rs.ambient_dim))


def act_on_coweight(M: np.ndarray, a):
    """Coordinates of ``w . xi`` given ``w`` as an integer root-coefficient matrix.

    ``(w xi)(alpha_i) = xi(w^-1 alpha_i)``, hence ``a' = (M^-1)^T a``.
    """
    Minv = np.rint(np.linalg.inv(M)).astype(np.int64)
    r = len(a)
    return tuple(sum((int(Minv[j, i]) * a[j] for j in range(r) if Minv[j, i]), LinForm.coerce(0))
                 for i in range(r))


# ----------------------------------------------------------------------------
# subsystems
# ----------------------------------------------------------------------------


def _components(rs: RootSystem, idx: list) -> list:
    """Split a closed root subset into irreducible components (by orthogonality)."""
    idx = list(idx)
    comps, left = [], set(idx)
    while left:
        seed = min(left)
        comp, stack = {seed}, [seed]
        while stack:
            i = stack.pop()
            for j in list(left - comp):
                if rs.pairing(i, j) != 0:
                    comp.add(j)
                    stack.append(j)
        comps.append(sorted(comp))
        left -= comp
    return comps


def _matrix_rank(rows) -> int:
    if not rows:
        return 0
    return int(np.linalg.matrix_rank(np.array(rows, dtype=float)))


def classify_subsystem(rs: RootSystem, idx) -> str:
    """Cartan type of a closed root subset, e.g. ``"C3+A1"``."""
    names = []
    for comp in _components(rs, idx):
        n = _matrix_rank([rs.coeffs[i] for i in comp])
        N = len(comp)
        lengths = sorted({rs.sq_lengths[i] for i in comp})
        if len(lengths) == 1:
            if N == n * (n + 1):
                name = f"A{n}"
            elif N == 2 * n * (n - 1):
                name = f"D{n}"
            elif n == 6 and N == 72:
                name = "E6"
            elif n == 7 and N == 126:
                name = "E7"
            elif n == 8 and N == 240:
                name = "E8"
            else:
                raise ValueError(f"unrecognised simply-laced component of rank {n} with {N} roots")
        else:
            nlong = sum(1 for i in comp if rs.sq_lengths[i] == lengths[-1])
            if N == 12 and n == 2 and lengths[-1] == 3 * lengths[0]:
                name = "G2"
            elif N == 48 and n == 4:
                name = "F4"
            elif n == 2:
                name = "B2"
            elif nlong == 2 * n * (n - 1):
                name = f"B{n}"
            elif nlong == 2 * n:
                name = f"C{n}"
            else:
                raise ValueError("unrecognised doubly-laced component")
        names.append((n, name))
    names.sort(key=lambda t: (-t[0], t[1]))
    return "+".join(nm for _, nm in names) if names else "0"


def subsystem_simple(rs: RootSystem, idx) -> list:
    """Simple roots of a closed subset, for the positive system induced by the parent."""
    pos = [i for i in idx if rs.coeffs[i].sum() > 0]
    pos_set = {tuple(int(x) for x in rs.coeffs[i]) for i in pos}
    simple = []
    for i in pos:
        ci = tuple(int(x) for x in rs.coeffs[i])
        decomposable = False
        for j in pos:
            cj = tuple(int(x) for x in rs.coeffs[j])
            d = tuple(a - b for a, b in zip(ci, cj))
            if d in pos_set:
                decomposable = True
                break
        if not decomposable:
            simple.append(i)
    return sorted(simple)


@dataclass(eq=False)
class Subsystem:
    """A full-rank (pseudo-Levi) root subsystem realised by a torsion point.

    ``kac_point`` holds coweight coordinates ``x``; the compact element is
    ``s = exp(2 pi i x)`` so that ``alpha(s) = exp(2 pi i alpha(x))``.
    """

    parent: RootSystem
    root_indices: tuple
    type_tag: str
    kac_point: tuple

    @cached_property
    def simple(self) -> list:
        return subsystem_simple(self.parent, self.root_indices)

    @cached_property
    def positive(self) -> list:
        return [i for i in self.root_indices if self.parent.coeffs[i].sum() > 0]

    @property
    def rank(self) -> int:
        return len(self.simple)

    @cached_property
    def induced_k(self) -> dict:
        """Parameter form ``k_s(alpha)`` for each subsystem root (parent label)."""
        return {i: self.parent.k_form(i) for i in self.root_indices}

    def unit(self, i: int) -> Fraction:
        """``alpha_i(s)`` as a fraction ``j/N`` in [0, 1): value ``exp(2 pi i j/N)``."""
        return self.parent.value(i, self.kac_point) % 1

    @cached_property
    def kac_denominator(self) -> int:
        return lcm(*(Fraction(x).denominator for x in self.kac_point))

    def generator_matrices(self) -> list:
        return [self.parent.reflection_matrix(j) for j in self.simple]

    def __repr__(self):
        return f"Subsystem({self.type_tag} in {self.parent.type_tag}, kac={[frac_str(x) for x in self.kac_point]})"


def whole_system(rs: RootSystem) -> Subsystem:
    return Subsystem(rs, tuple(range(len(rs.coeffs))), classify_subsystem(rs, range(len(rs.coeffs))),
                     tuple(Fraction(0) for _ in range(rs.rank)))


def _kac_candidates(rank: int, max_den: int):
    """Coweight points with coordinates in [0,1), ordered by exact denominator."""
    for d in range(1, max_den + 1):
        vals = sorted({Fraction(j, d) for j in range(d)})
        for pt in itertools.product(vals, repeat=rank):
            if lcm(*(x.denominator for x in pt)) == d:
                yield pt


def root_permutations(rs: RootSystem, elements) -> np.ndarray:
    """For each Weyl element matrix, the induced permutation of root indices."""
    C = rs.coeffs  # (N, r)
    imgs = np.einsum("gij,nj->gni", np.asarray(elements), C)
    lookup = rs.index
    perms = np.empty((len(elements), len(C)), dtype=np.int64)
    for g in range(len(elements)):
        for n in range(len(C)):
            perms[g, n] = lookup[tuple(int(x) for x in imgs[g, n])]
    return perms


def pseudo_levi_subsystems(rs: RootSystem, max_den: int = 6) -> list:
    """Full-rank integrality systems of torsion points, up to Weyl conjugacy.

    Exhaustive over coweight points with denominators ``<= max_den``; each
    class keeps the first point found (smallest denominator, then
    lexicographic), so the chosen Kac point has minimal order.
    """
    from .weylgrp import enumerate_group

    if rs.type_tag not in ("G2", "F4"):
        raise ValueError("pseudo-Levi enumeration is provided for G2 and F4")
    W = enumerate_group(rs)
    perms = root_permutations(rs, W.elements)
    C = rs.coeffs
    found = []  # (mask-orbit set, Subsystem)
    orbit_keys = set()
    for pt in _kac_candidates(rs.rank, max_den):
        vals = [sum(int(c[j]) * pt[j] for j in range(rs.rank)) for c in C]
        idx = tuple(i for i, v in enumerate(vals) if v.denominator == 1)
        if _matrix_rank([C[i] for i in idx]) < rs.rank:
            continue
        key = frozenset(idx)
        if key in orbit_keys:
            continue
        orbit = {frozenset(int(p[i]) for i in idx) for p in perms}
        orbit_keys |= orbit
        sub = Subsystem(rs, idx, classify_subsystem(rs, idx), pt)
        found.append(sub)
    found.sort(key=lambda s: (0 if s.type_tag == rs.type_tag else 1, s.type_tag,
                              sorted(tuple(int(x) for x in rs.coeffs[i]) for i in s.root_indices)))
    return found


def rootsystem_json(rs: RootSystem) -> str:
    return json.dumps(rs.to_json(), sort_keys=True)
