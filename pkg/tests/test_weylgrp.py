import random

import numpy as np
import pytest

from hecke.cnfamily import cn_weyl_group
from hecke.rootdata import build_root_system
from hecke.weylgrp import (ClassFunction, elliptic_class_count, elliptic_pairing, elliptic_summary,
                           enumerate_group, int_det, is_elliptic, ordinary_pairing, reflection_character,
                           sign_character, trivial_character)


@pytest.fixture(scope="module")
def groups():
    return {tag: enumerate_group(build_root_system(tag)) for tag in ("G2", "F4")}


@pytest.mark.parametrize("key,order,classes,elliptic", [
    (("An", 1), 2, 2, 1), (("G2", 2), 12, 6, 3), (("F4", 4), 1152, 25, 9), (("An", 2), 6, 3, 1)])
def test_orders_and_counts(key, order, classes, elliptic):
    W = enumerate_group(build_root_system(*key))
    assert len(W) == order
    assert len(W.classes) == classes
    assert elliptic_class_count(W) == elliptic


def test_identity_and_longest_element(groups):
    W = groups["G2"]
    assert not is_elliptic(W.elements[0])
    assert is_elliptic(-np.eye(2, dtype=np.int64))


def test_coxeter_element_of_f4_is_elliptic():
    rs = build_root_system("F4")
    c = np.eye(4, dtype=np.int64)
    for j in rs.simple:
        c = c @ rs.reflection_matrix(j)
    assert is_elliptic(c)


def test_det_one_minus_nonnegative_integer(groups):
    for W in groups.values():
        d = W.det_one_minus
        assert all(int(x) == x and x >= 0 for x in d)


def test_elements_preserve_roots():
    rs = build_root_system("G2")
    W = enumerate_group(rs)
    roots = {tuple(int(x) for x in c) for c in rs.coeffs}
    for M in W.elements:
        assert {tuple(int(x) for x in M @ c) for c in rs.coeffs} == roots


def test_pairing_examples():
    A1 = enumerate_group(build_root_system("An", 1))
    assert elliptic_pairing(trivial_character(A1), trivial_character(A1)) == 1
    A2 = enumerate_group(build_root_system("An", 2))
    # the reflection model of A2 here is the 2-dim simple-root lattice
    assert elliptic_pairing(reflection_character(A2), reflection_character(A2)) == 1


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_trivial_pairing_on_hyperoctahedral(n):
    W = cn_weyl_group(n)
    assert elliptic_pairing(trivial_character(W), trivial_character(W)) == 1


def test_pairing_properties(groups):
    W = groups["G2"]
    rng = random.Random(7)
    for _ in range(20):
        f = ClassFunction(W, {c: rng.randint(-3, 3) for c in range(len(W.classes))})
        g = ClassFunction(W, {c: rng.randint(-3, 3) for c in range(len(W.classes))})
        assert elliptic_pairing(f, g) == elliptic_pairing(g, f)
        assert elliptic_pairing(f, f) >= 0
        assert f(5) == f(int(W.find(W.elements[3] @ W.elements[5] @ W.elements[W.inverses[3]])))


def test_characters_are_orthonormal(groups):
    W = groups["F4"]
    t, s = trivial_character(W), sign_character(W)
    assert ordinary_pairing(t, t) == 1 and ordinary_pairing(t, s) == 0
    assert ordinary_pairing(reflection_character(W), reflection_character(W)) == 1


def test_group_mismatch_rejected(groups):
    with pytest.raises(ValueError):
        elliptic_pairing(trivial_character(groups["G2"]), trivial_character(groups["F4"]))


@pytest.mark.parametrize("tag", ["G2", "F4"])
def test_counts_invariant_under_relabelling(tag):
    rs = build_root_system(tag)
    gens = [rs.reflection_matrix(j) for j in rs.simple]
    base = enumerate_group(gens)
    shuffled = enumerate_group(list(reversed(gens)))
    assert len(base.classes) == len(shuffled.classes)
    assert elliptic_class_count(base) == elliptic_class_count(shuffled)


def test_elliptic_ledgers():
    g2 = elliptic_summary(build_root_system("G2"), per_subsystem=True)
    assert g2["per_subsystem"] == {"G2": 3, "A2": 1, "A1+A1": 1} and g2["ledger_total"] == 5
    f4 = elliptic_summary(build_root_system("F4"), per_subsystem=True)
    assert sorted(f4["per_subsystem"].values()) == [1, 1, 3, 5, 9] and f4["ledger_total"] == 19


def test_int_det():
    assert int_det(np.array([[2, 1], [1, 1]])) == 1
    assert int_det(np.array([[0, 1], [1, 0]])) == -1
