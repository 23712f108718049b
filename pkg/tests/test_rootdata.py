import itertools
import json
from fractions import Fraction

import numpy as np
import pytest

from hecke.rootdata import (DIAGRAM_CONVENTIONS, act_on_coweight, build_root_system, classify_subsystem,
                            pseudo_levi_subsystems, rootsystem_json)

CASES = [("G2", 2, 12), ("F4", 4, 48), ("An", 3, 12), ("Bn", 3, 18), ("Cn", 3, 18), ("Dn", 4, 24),
         ("Cn-datum", 2, 8)]


@pytest.mark.parametrize("tag,rank,count", CASES)
def test_root_counts_and_closure(tag, rank, count):
    rs = build_root_system(tag, rank)
    assert len(rs.roots) == count
    assert len(rs.positive) == count // 2
    roots = set(rs.roots)
    for r in rs.roots:
        assert tuple(-x for x in r) in roots
    for j in rs.simple:
        M = rs.reflection_matrix(j)
        images = {tuple(int(x) for x in M @ c) for c in rs.coeffs}
        assert images == {tuple(int(x) for x in c) for c in rs.coeffs}


def test_cn_datum_positive_roots():
    rs = build_root_system("Cn-datum", 2)
    pos = {tuple(rs.roots[i]) for i in rs.positive}
    F = Fraction
    assert pos == {(F(1), F(-1)), (F(1), F(1)), (F(1), F(0)), (F(0), F(1))}


def test_g2_lengths_and_parameters():
    rs = build_root_system("G2")
    assert [[int(x) for x in r] for r in rs.gram] == [[6, -3], [-3, 2]]
    assert rs.param_of(rs.simple[0]) == "k1" and rs.param_of(rs.simple[1]) == "k2"
    assert DIAGRAM_CONVENTIONS["G2"] == {"long": "k1", "short": "k2"}


def test_pseudo_levis_g2():
    rs = build_root_system("G2")
    subs = pseudo_levi_subsystems(rs)
    assert sorted(s.type_tag for s in subs) == ["A1+A1", "A2", "G2"]
    a2 = next(s for s in subs if s.type_tag == "A2")
    assert all(rs.length_class[i] == "long" for i in a2.root_indices)
    assert len(a2.root_indices) == 6


def test_pseudo_levis_f4():
    subs = pseudo_levi_subsystems(build_root_system("F4"))
    assert {s.type_tag for s in subs} >= {"F4", "B4", "C3+A1", "A2+A2", "A3+A1"}


@pytest.mark.parametrize("tag", ["G2", "F4"])
def test_kac_points_realise_subsystems(tag):
    rs = build_root_system(tag)
    for sub in pseudo_levi_subsystems(rs):
        inside = set(sub.root_indices)
        for i in range(len(rs.coeffs)):
            integral = rs.value(i, sub.kac_point).denominator == 1
            assert integral == (i in inside)
        assert sub.rank == rs.rank
        assert classify_subsystem(rs, sub.root_indices) == sub.type_tag


def test_pseudo_levi_sort_is_canonical():
    rs = build_root_system("G2")
    a = [(s.type_tag, s.root_indices) for s in pseudo_levi_subsystems(rs)]
    b = [(s.type_tag, s.root_indices) for s in pseudo_levi_subsystems(rs)]
    assert a == b


def test_coweight_action_is_dual():
    rs = build_root_system("G2")
    a = (Fraction(1, 3), Fraction(2, 5))
    for j in rs.simple:
        M = rs.reflection_matrix(j)
        b = act_on_coweight(M, a)
        for i in range(len(rs.coeffs)):
            # (w xi)(w alpha) = xi(alpha)
            wi = next(k for k in range(len(rs.coeffs)) if np.array_equal(rs.coeffs[k], M @ rs.coeffs[i]))
            assert rs.value(wi, b) == rs.value(i, a)


def test_json_document():
    doc = json.loads(rootsystem_json(build_root_system("F4")))
    assert doc["type"] == "F4" and doc["rank"] == 4 and len(doc["roots"]) == 48
    assert doc["simple_roots"][3] == ["1/2", "-1/2", "-1/2", "-1/2"]
    assert doc["param_labels"] == {"long": "k1", "short": "k2"}


@pytest.mark.parametrize("bad", [("E9", 9), ("G2", 3), ("An", 9)])
def test_invalid_types_rejected(bad):
    with pytest.raises(ValueError):
        build_root_system(*bad)
