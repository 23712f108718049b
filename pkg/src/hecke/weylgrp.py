"""Brute-force finite Weyl groups: elements, classes, ellipticity, elliptic pairing.

Elements are integer matrices acting on simple-root coefficient vectors of
the parent root system, so a subsystem group ``W(R_s)`` lives in the same
matrix space as ``W_0``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Callable, Mapping

import numpy as np

from .rootdata import RootSystem, Subsystem

MAX_ORDER = 50000


def int_det(M) -> int:
    """Exact determinant of an integer matrix (Bareiss elimination)."""
    A = [[int(x) for x in row] for row in np.asarray(M)]
    n = len(A)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if A[r][k] != 0), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


@dataclass(eq=False)
class WeylGroup:
    """A finite reflection group given by generators, with all elements listed.

    ``elements[g]`` is an integer matrix; ``words[g]`` a reduced word in the
    generator indices (breadth-first, so words are of minimal length).
    """

    name: str
    generators: list
    elements: np.ndarray
    words: list
    rank: int

    def __len__(self):
        return len(self.elements)

    @cached_property
    def lookup(self) -> dict:
        return {m.tobytes(): g for g, m in enumerate(self.elements)}

    def find(self, M) -> int:
        return self.lookup[np.ascontiguousarray(M, dtype=np.int64).tobytes()]

    @cached_property
    def inverses(self) -> np.ndarray:
        inv = np.rint(np.linalg.inv(self.elements.astype(float))).astype(np.int64)
        return np.array([self.find(m) for m in inv])

    @cached_property
    def det_one_minus(self) -> np.ndarray:
        """``det(1 - w)`` on the reflection representation, exactly."""
        eye = np.eye(self.rank, dtype=np.int64)
        return np.array([int_det(eye - m) for m in self.elements], dtype=object)

    @cached_property
    def classes(self) -> "ConjugacyClasses":
        return conjugacy_classes(self)


def enumerate_group(source, name: str | None = None) -> WeylGroup:
    """All elements of ``W(R)`` or ``W(R_s)`` by breadth-first closure.

    ``source`` is a :class:`RootSystem`, a :class:`Subsystem`, or a list of
    integer generator matrices.
    """
    if isinstance(source, RootSystem):
        gens = [source.reflection_matrix(j) for j in source.simple]
        name = name or source.type_tag
    elif isinstance(source, Subsystem):
        gens = source.generator_matrices()
        name = name or f"{source.type_tag}<{source.parent.type_tag}"
    else:
        gens = [np.asarray(g, dtype=np.int64) for g in source]
        name = name or "W"
    r = gens[0].shape[0]
    eye = np.eye(r, dtype=np.int64)
    seen = {eye.tobytes(): 0}
    elements, words = [eye], [()]
    queue = deque([0])
    while queue:
        g = queue.popleft()
        for i, s in enumerate(gens):
            h = s @ elements[g]
            key = h.tobytes()
            if key not in seen:
                if len(elements) >= MAX_ORDER:
                    raise ValueError(f"group order exceeds {MAX_ORDER}")
                seen[key] = len(elements)
                elements.append(h)
                words.append((i,) + words[g])
                queue.append(len(elements) - 1)
    return WeylGroup(name, gens, np.array(elements), words, r)


@dataclass(eq=False)
class ConjugacyClasses:
    group: WeylGroup
    members: list  # list of sorted element-index lists
    class_of: np.ndarray

    @property
    def reps(self) -> list:
        return [m[0] for m in self.members]

    @property
    def sizes(self) -> list:
        return [len(m) for m in self.members]

    def __len__(self):
        return len(self.members)


def conjugacy_classes(W: WeylGroup) -> ConjugacyClasses:
    """Partition by brute-force conjugation; classes sorted by (size, trace, char poly)."""
    E = W.elements
    Einv = E[W.inverses]
    n = len(E)
    class_of = np.full(n, -1, dtype=np.int64)
    raw = []
    for g in range(n):
        if class_of[g] >= 0:
            continue
        conj = np.einsum("hij,jk,hkl->hil", E, E[g], Einv)
        idx = sorted({W.find(m) for m in conj})
        for h in idx:
            class_of[h] = len(raw)
        raw.append(idx)

    def key(members):
        rep = E[members[0]]
        charpoly = tuple(int(round(c)) for c in np.poly(rep.astype(float)))
        return (len(members), int(np.trace(rep)), charpoly, members[0])

    order = sorted(range(len(raw)), key=lambda c: key(raw[c]))
    members = [raw[c] for c in order]
    remap = np.empty(len(raw), dtype=np.int64)
    for new, old in enumerate(order):
        remap[old] = new
    return ConjugacyClasses(W, members, remap[class_of])


def is_elliptic(w) -> bool:
    """True iff 1 is not an eigenvalue of ``w`` on the reflection representation."""
    M = np.asarray(w, dtype=np.int64)
    return int_det(np.eye(M.shape[0], dtype=np.int64) - M) != 0


def elliptic_classes(W: WeylGroup) -> list:
    cls = W.classes
    return [c for c, rep in enumerate(cls.reps) if W.det_one_minus[rep] != 0]


def elliptic_class_count(W: WeylGroup) -> int:
    return len(elliptic_classes(W))


@dataclass(eq=False)
class ClassFunction:
    """Integer-valued class function attached to one group."""

    group: WeylGroup
    values: dict = field(default_factory=dict)  # class id -> int

    def __call__(self, g: int):
        return self.values[int(self.group.classes.class_of[g])]

    @classmethod
    def from_element_values(cls, W: WeylGroup, f: Callable[[int], int]) -> "ClassFunction":
        vals = {c: f(rep) for c, rep in enumerate(W.classes.reps)}
        return cls(W, vals)

    def __eq__(self, other):
        return isinstance(other, ClassFunction) and other.group is self.group and other.values == self.values

    def __hash__(self):
        return hash(tuple(sorted(self.values.items())))


def trivial_character(W: WeylGroup) -> ClassFunction:
    return ClassFunction.from_element_values(W, lambda g: 1)


def sign_character(W: WeylGroup) -> ClassFunction:
    return ClassFunction.from_element_values(W, lambda g: int_det(W.elements[g]))


def reflection_character(W: WeylGroup) -> ClassFunction:
    return ClassFunction.from_element_values(W, lambda g: int(np.trace(W.elements[g])))


def elliptic_pairing(f: ClassFunction, g: ClassFunction, W: WeylGroup | None = None) -> Fraction:
    """``|W|^-1 sum_w det(1 - w) f(w) g(w)`` (values are real integers)."""
    W = W or f.group
    if f.group is not W or g.group is not W:
        raise ValueError("class functions belong to different groups")
    cls = W.classes
    total = 0
    for c, members in enumerate(cls.members):
        d = W.det_one_minus[members[0]]
        total += len(members) * d * f.values[c] * g.values[c]
    return Fraction(total, len(W))


def ordinary_pairing(f: ClassFunction, g: ClassFunction) -> Fraction:
    W = f.group
    if g.group is not W:
        raise ValueError("class functions belong to different groups")
    total = sum(len(m) * f.values[c] * g.values[c] for c, m in enumerate(W.classes.members))
    return Fraction(total, len(W))


def elliptic_summary(rs: RootSystem, per_subsystem: bool = False) -> dict:
    """Group order, class counts and (optionally) the pseudo-Levi ledger."""
    from .rootdata import pseudo_levi_subsystems

    W = enumerate_group(rs)
    out = {
        "group_order": len(W),
        "class_count": len(W.classes),
        "elliptic_class_count": elliptic_class_count(W),
    }
    if per_subsystem:
        per = {}
        for sub in pseudo_levi_subsystems(rs):
            Ws = enumerate_group(sub)
            per[sub.type_tag] = elliptic_class_count(Ws)
        out["per_subsystem"] = per
        out["ledger_total"] = sum(per.values())
    return out
