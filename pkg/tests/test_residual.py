from fractions import Fraction

import pytest

from hecke.linform import LinForm
from hecke.residual import (GENERIC_SAMPLE, GenericResidualPoint, all_generic_residual_points,
                            coweight_coordinates, dominant_representative, enumerate_generic_residual_points,
                            is_generic_residual, rank_one_point, residual_index, same_orbit,
                            system_and_subsystems)
from hecke.rootdata import act_on_coweight, build_root_system, whole_system
from hecke.weylgrp import enumerate_group


def coords(*texts):
    return tuple(LinForm.parse(t) for t in texts)


def strings(points):
    return sorted(p.coords_str() for p in points)


def test_g2_regular_subsystem_orbits():
    rs, subs = system_and_subsystems("G2")
    g2 = next(s for s in subs if s.type_tag == "G2")
    assert strings(enumerate_generic_residual_points(g2)) == \
        ["[k1, -k1 + k2]", "[k1, -k1/2 + k2/2]", "[k1, k2]"]


def test_g2_total_and_per_subsystem():
    per = {sub.type_tag: len(pts) for sub, pts in all_generic_residual_points("G2")}
    assert per == {"G2": 3, "A2": 1, "A1+A1": 1}


def test_f4_orbit_counts():
    per = {sub.type_tag: len(pts) for sub, pts in all_generic_residual_points("F4")}
    assert per == {"F4": 8, "B4": 5, "C3+A1": 3, "A2+A2": 1, "A3+A1": 1}


def test_f4_contains_shared_cell_point():
    rs, subs = system_and_subsystems("F4")
    W = enumerate_group(rs)
    f4 = [p for sub, pts in all_generic_residual_points("F4") if sub.type_tag == "F4" for p in pts]
    target = coords("0", "k1", "0", "k2 - k1")
    assert any(same_orbit(rs, W, p.coweight_coords, target) for p in f4)
    assert coords("k1", "k1", "k2", "k2") in [p.coweight_coords for p in f4]


def test_rank_one_point():
    p = rank_one_point()
    assert p.coweight_coords == coords("k")
    idx = residual_index(p)
    assert (idx.matches, idx.zeros) == (1, 0)


def test_residual_index_subregular():
    rs, subs = system_and_subsystems("G2")
    p = GenericResidualPoint(subs[0], coords("k1", "-k1 + k2"), ())
    assert residual_index(p).excess == 2
    at = residual_index(p, {"k1": 1, "k2": 1})
    assert (at.matches, at.zeros) == (4, 2)


def test_residual_index_needs_all_symbols():
    rs, subs = system_and_subsystems("G2")
    p = GenericResidualPoint(subs[0], coords("k1", "k2"), ())
    with pytest.raises(KeyError):
        residual_index(p, {"k1": 1})


def test_zero_point_coordinates():
    rs, subs = system_and_subsystems("G2")
    p = GenericResidualPoint(subs[0], coords("0", "0"), ())
    assert coweight_coordinates(p) == coords("0", "0")
    assert not is_generic_residual(p)


def test_labelling_self_test():
    """Swapping the long/short parameter attachment loses the subregular orbit."""
    target = coords("k1", "-k1 + k2")
    for labels, expected in (({"long": "k1", "short": "k2"}, True), ({"long": "k2", "short": "k1"}, False)):
        rs = build_root_system("G2")
        rs.param_label = labels
        W = enumerate_group(rs)
        pts = enumerate_generic_residual_points(whole_system(rs))
        assert any(same_orbit(rs, W, p.coweight_coords, target) for p in pts) is expected


@pytest.mark.parametrize("tag", ["G2", "F4"])
def test_every_point_is_residual_with_defining_roots(tag):
    for sub, pts in all_generic_residual_points(tag):
        for p in pts:
            assert is_generic_residual(p)
            assert p.defining_roots
            assert all(p.value(i) == sub.induced_k[i] for i in p.defining_roots)


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_shuffled_enumeration_is_identical(seed):
    _, subs = system_and_subsystems("G2")
    for sub in subs:
        base = [p.coweight_coords for p in enumerate_generic_residual_points(sub)]
        assert [p.coweight_coords for p in enumerate_generic_residual_points(sub, seed)] == base


def test_shuffled_enumeration_f4_regular():
    _, subs = system_and_subsystems("F4")
    sub = subs[0]
    base = [p.coweight_coords for p in enumerate_generic_residual_points(sub)]
    assert [p.coweight_coords for p in enumerate_generic_residual_points(sub, 11)] == base


def test_dominant_representative_is_orbit_invariant():
    rs, subs = system_and_subsystems("G2")
    sub = subs[0]
    a = coords("k1", "-k1/2 + k2/2")
    W = enumerate_group(sub)
    reps = {dominant_representative(sub, act_on_coweight(M, a)) for M in W.elements}
    assert len(reps) == 1


def test_sample_is_rational():
    assert GENERIC_SAMPLE["k2"] == Fraction(141421356, 100000000)
