"""Generic residual points of graded parameter deformations.

For a pseudo-Levi ``R_s`` with parameters ``k_s``, a generic residual
point is a coweight ``xi`` (affine-linear in the parameters) with

    #{alpha in R_s : alpha(xi) == k_s(alpha)} - #{alpha in R_s : alpha(xi) == 0} == rank

as identities of LinForms.  Candidates come from solving
``alpha(xi) = k_s(alpha)`` on every independent ``rank``-subset of
positive subsystem roots.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping

import numpy as np

from .linform import LinForm, frac
from .rootdata import (
    RootSystem,
    Subsystem,
    act_on_coweight,
    build_root_system,
    coweight_to_ambient,
    pseudo_levi_subsystems,
    whole_system,
)

# Generic positive sample used to choose dominant representatives.
GENERIC_SAMPLE = {"k1": Fraction(1), "k2": Fraction(141421356, 100000000)}
MAX_RANK = 4


@dataclass(frozen=True)
class ResidualIndex:
    matches: int
    zeros: int
    at: object = "generic"

    @property
    def excess(self) -> int:
        return self.matches - self.zeros


@dataclass(eq=False)
class GenericResidualPoint:
    """A Weyl-orbit representative ``xi`` on a pseudo-Levi ``sub``.

    ``coweight_coords[i] = alpha_i(xi)`` for the parent simple roots.
    """

    subsystem: Subsystem
    coweight_coords: tuple
    defining_roots: tuple

    @property
    def parent(self) -> RootSystem:
        return self.subsystem.parent

    @property
    def xi(self) -> tuple:
        return coweight_to_ambient(self.parent, self.coweight_coords)

    def value(self, i: int) -> LinForm:
        return LinForm.coerce(self.parent.value(i, self.coweight_coords))

    def specialize(self, at: Mapping[str, object]) -> tuple:
        return tuple(a.evaluate(at) for a in self.coweight_coords)

    def coords_str(self) -> str:
        return "[" + ", ".join(str(a) for a in self.coweight_coords) + "]"

    def __repr__(self):
        return f"GenericResidualPoint({self.subsystem.type_tag}, {self.coords_str()})"


def _sample(form: LinForm, sample=GENERIC_SAMPLE) -> Fraction:
    at = {s: sample.get(s, Fraction(1)) for s in form.symbols}
    return form.evaluate(at)


def residual_index(p: GenericResidualPoint, at="generic") -> ResidualIndex:
    """Count ``alpha(xi) = k_s(alpha)`` and ``alpha(xi) = 0`` over all of ``R_s``."""
    sub = p.subsystem
    matches = zeros = 0
    for i in sub.root_indices:
        val = p.value(i)
        k = sub.induced_k[i]
        if at == "generic":
            if val == k:
                matches += 1
            if val.is_zero():
                zeros += 1
        else:
            missing = set(val.symbols + k.symbols) - set(at)
            if missing:
                raise KeyError(f"unassigned parameter symbol(s) {sorted(missing)}")
            x, kk = val.evaluate(at), k.evaluate(at)
            if x == kk:
                matches += 1
            if x == 0:
                zeros += 1
    return ResidualIndex(matches, zeros, at if at == "generic" else dict(at))


def is_generic_residual(p: GenericResidualPoint) -> bool:
    return residual_index(p).excess == p.subsystem.rank


def coweight_coordinates(p: GenericResidualPoint) -> tuple:
    return tuple(p.coweight_coords)


def _reflect(rs: RootSystem, j: int, a: tuple) -> tuple:
    """``s_beta(xi) = xi - beta(xi) beta^vee`` in coweight coordinates."""
    bval = LinForm.coerce(rs.value(j, a))
    simple_idx = rs.simple
    return tuple(a[i] - bval * rs.pairing(simple_idx[i], j) for i in range(rs.rank))


def dominant_representative(sub: Subsystem, a: tuple, sample=GENERIC_SAMPLE) -> tuple:
    """Conjugate ``a`` by ``W(R_s)`` until every subsystem simple root is >= 0 at ``sample``."""
    rs = sub.parent
    a = tuple(LinForm.coerce(x) for x in a)
    for _ in range(10000):
        for j in sub.simple:
            if _sample(LinForm.coerce(rs.value(j, a)), sample) < 0:
                a = _reflect(rs, j, a)
                break
        else:
            return a
    raise RuntimeError("dominance iteration did not terminate")


def _param_matrix(forms, symbols):
    return [[f.constant] + [f.coeff(s) for s in symbols] for f in forms]


def enumerate_generic_residual_points(sub: Subsystem, shuffle_seed: int | None = None) -> list:
    """One canonical representative per ``W(R_s)``-orbit of generic residual points.

    ``shuffle_seed`` permutes the subset iteration order; the output is
    identical for any seed (used by the stability tests).
    """
    rs = sub.parent
    n = sub.rank
    if n > MAX_RANK:
        raise ValueError(f"subsystem rank {n} exceeds enumeration bound {MAX_RANK}")
    if n != rs.rank:
        raise ValueError("subsystem is not of full rank")
    pos = list(sub.positive)
    allidx = list(sub.root_indices)
    symbols = sorted({s for i in allidx for s in sub.induced_k[i].symbols})
    K_all = np.array([_param_matrix([sub.induced_k[i]], symbols)[0] for i in allidx], dtype=object)
    C_all = rs.coeffs[allidx].astype(np.int64)
    Kint = np.array([[int(x) for x in row] for row in K_all], dtype=np.int64)

    subsets = list(itertools.combinations(range(len(pos)), n))
    if shuffle_seed is not None:
        rng = np.random.default_rng(shuffle_seed)
        rng.shuffle(subsets)
    if not subsets:
        return []
    idx = np.array(subsets, dtype=np.int64)
    Ms = rs.coeffs[np.array(pos)][idx].astype(float)  # (S, n, n)
    dets = np.rint(np.linalg.det(Ms)).astype(np.int64)
    good = dets != 0
    idx, Ms, dets = idx[good], Ms[good], dets[good]
    adj = np.rint(np.linalg.inv(Ms) * dets[:, None, None]).astype(np.int64)  # adj = det * M^-1
    pos_in_all = np.array([allidx.index(i) for i in pos])
    Ksub = Kint[pos_in_all][idx]  # (S, n, p+1)
    A = np.einsum("sij,sjk->sik", adj, Ksub)  # det * a
    V = np.einsum("rj,sjk->srk", C_all, A)  # det * alpha(xi) for every subsystem root
    target = Kint[None, :, :] * dets[:, None, None]
    matches = np.all(V == target, axis=2).sum(axis=1)
    zeros = np.all(V == 0, axis=2).sum(axis=1)
    keep = np.nonzero(matches - zeros == n)[0]

    seen = {}
    for s in keep:
        d = int(dets[s])
        a = tuple(
            LinForm(Fraction(int(A[s, i, 0]), d), {sym: Fraction(int(A[s, i, 1 + t]), d) for t, sym in enumerate(symbols)})
            for i in range(n)
        )
        dom = dominant_representative(sub, a)
        if dom in seen:
            continue
        defining = tuple(sorted(pos[int(t)] for t in idx[s]))
        seen[dom] = defining
    out = []
    for dom, _ in seen.items():
        p = GenericResidualPoint(sub, dom, ())
        defining = tuple(i for i in sub.positive if p.value(i) == sub.induced_k[i])
        p.defining_roots = defining
        assert is_generic_residual(p)
        out.append(p)
    out.sort(key=lambda p: tuple(str(x) for x in p.coweight_coords))
    return out


@lru_cache(maxsize=None)
def _cached_system(type_tag: str):
    rs = build_root_system(type_tag)
    return rs, tuple(pseudo_levi_subsystems(rs))


def system_and_subsystems(type_tag: str):
    """Cached parent root system and its pseudo-Levi list (G2/F4)."""
    return _cached_system(type_tag)


@lru_cache(maxsize=None)
def _cached_points(type_tag: str):
    rs, subs = _cached_system(type_tag)
    return tuple((sub, tuple(enumerate_generic_residual_points(sub))) for sub in subs)


def all_generic_residual_points(type_tag: str) -> list:
    """``[(subsystem, [points...]), ...]`` over all pseudo-Levis of G2 or F4."""
    return [(sub, list(pts)) for sub, pts in _cached_points(type_tag)]


def rank_one_point(k: str = "k") -> GenericResidualPoint:
    """The unique residual point of ``A1`` with parameter ``k``: ``alpha(xi) = k``."""
    rs = build_root_system("An", 1)
    rs.param_label = {"long": k, "short": k}
    sub = whole_system(rs)
    pts = enumerate_generic_residual_points(sub)
    assert len(pts) == 1
    return pts[0]


def conjugate(p: GenericResidualPoint, M) -> tuple:
    """Coweight coordinates of ``w . xi`` for an integer Weyl matrix ``M``."""
    return act_on_coweight(M, p.coweight_coords)


def same_orbit(rs: RootSystem, W, a: tuple, b: tuple, sample=GENERIC_SAMPLE) -> bool:
    """Exact test whether ``b = w . a`` for some ``w`` in the listed group ``W``."""
    a = tuple(LinForm.coerce(x) for x in a)
    b = tuple(LinForm.coerce(x) for x in b)
    sa = np.array([float(_sample(x, sample)) for x in a])
    sb = np.array([float(_sample(x, sample)) for x in b])
    Einv = W.elements[W.inverses].astype(float)
    # (w xi)(alpha_i) = xi(w^-1 alpha_i): a' = (M^-1)^T a
    imgs = np.einsum("gji,j->gi", Einv, sa)
    cands = np.nonzero(np.all(np.abs(imgs - sb) < 1e-9, axis=1))[0]
    for g in cands:
        if act_on_coweight(W.elements[g], a) == b:
            return True
    return False
