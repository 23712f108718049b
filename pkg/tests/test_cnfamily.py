import random
from fractions import Fraction

import mpmath
import pytest

from hecke.cnfamily import (Bipartition, NonGenericParameters, bipartitions, build_module,
                            central_character_string, content, durfee, epsilon_sign_C, fdeg_C,
                            graded_central_character, is_discrete_series, limiting_sign, mass_sign_C,
                            mass_function_C, restrict_to_weyl, standard_bitableaux)
from hecke.linform import LinForm
from hecke.massfn import evaluate_regularized
from hecke.weylgrp import ordinary_pairing

F = Fraction


def bp(text):
    return Bipartition.parse(text)


@pytest.mark.parametrize("n,count", [(1, 2), (2, 5), (3, 10), (4, 20)])
def test_bipartition_counts(n, count):
    assert len(bipartitions(n)) == count


def test_bipartition_syntax():
    assert bp("2,1|1") == Bipartition((2, 1), (1,))
    assert str(bp("|3")) == "|3"
    with pytest.raises(ValueError):
        bp("1,2|")
    with pytest.raises(ValueError):
        bp("21")


@pytest.mark.parametrize("text,dim", [("1|", 1), ("1|1", 2), ("2,1|", 2), ("2|1", 3), ("1|1,1", 3),
                                      ("2,1|1", 8), ("2,2|", 2)])
def test_dimension_counts_standard_bitableaux(text, dim):
    assert len(standard_bitableaux(bp(text))) == dim


def test_contents():
    params = (5, 3, 7)
    t = standard_bitableaux(bp("2,1|"))[0]
    values = {t.position(k): content(t, k, params) for k in (1, 2, 3)}
    assert values[(0, 1, 1)] == 7
    assert values[(0, 2, 1)] == F(7, 9)
    u = standard_bitableaux(bp("|2"))[0]
    assert content(u, u.filling[1][0][1], params) == F(-9, 7)


def test_rank_one_theta():
    mod = build_module(bp("1|"), 3, 2, 5)
    assert mod.theta[0][0, 0] == F(-5, 3)


@pytest.mark.parametrize("params", [(3, 2, 5), (7, 3, 2), (1000, 2, 2)])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_relations_hold(n, params):
    for b in bipartitions(n):
        mod = build_module(b, *params)
        assert mod.relation_report and all(mod.relation_report.values()), (str(b), mod.relation_report)


def test_non_generic_parameters_reported():
    with pytest.raises(NonGenericParameters):
        build_module(bp("1|1"), 1, 1, 1)


def test_discrete_series_examples():
    assert is_discrete_series(build_module(bp("1|"), 4, 2, 2))
    assert not is_discrete_series(build_module(bp("1|"), F(1, 4), 2, 2))
    for n in (1, 2, 3):
        assert all(is_discrete_series(build_module(b, 1000, 2, 2)) for b in bipartitions(n))


def test_central_characters():
    assert central_character_string(bp("1|")) == [(-1, LinForm.parse("2m-"))]
    assert graded_central_character(bp("2|")) == [LinForm.parse("m-"), LinForm.parse("m- + 1")]
    assert graded_central_character(bp("|1")) == [LinForm.parse("-m+")]
    assert central_character_string(Bipartition((), ())) == []


def test_epsilon_examples():
    assert epsilon_sign_C(Bipartition((), ()), 3, 4) == 1
    # regression values at m+ = m- = 10
    assert [epsilon_sign_C(Bipartition((n,), ()), 10, 10) for n in (1, 2, 3)] == [1, 1, 1]


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_limiting_sign_stabilises(n):
    for b in bipartitions(n):
        assert limiting_sign(b) in (1, -1)


def test_durfee():
    assert [durfee(s) for s in [(), (1,), (3, 1), (2, 2), (3, 3, 3)]] == [0, 1, 1, 2, 3]


def test_fdeg_rank_one_hand_expansion():
    mp, mm, v = F(1, 3), F(2, 5), 2
    got = fdeg_C(bp("1|"), mp, mm, v).value
    with mpmath.workdps(60):
        V = mpmath.mpf(v)
        a, b = V ** (2 * mpmath.mpf(mm.numerator) / mm.denominator), V ** (2 * mpmath.mpf(mp.numerator) / mp.denominator)
        # |(1 + 1/a)(1 + a)| / |(1 + 1/(a b))(1 + a / b)(1/a^2 - 1)|
        want = (1 + 1 / a) * (1 + a) / ((1 + 1 / (a * b)) * (1 + a / b) * abs(1 / a**2 - 1))
        assert abs(got - want) < mpmath.mpf(10) ** -40 * want


@pytest.mark.parametrize("n", [1, 2, 3])
def test_fdeg_positive_at_regular_samples(n):
    rng = random.Random(n)
    for b in bipartitions(n):
        for _ in range(4):
            mp, mm = F(rng.randint(1, 60), rng.randint(1, 12)), F(rng.randint(1, 60), rng.randint(1, 12))
            val = fdeg_C(b, mp, mm)
            if val.vanishing_order == 0:
                assert val.value > 0, (str(b), mp, mm)


def test_mass_sign_prediction_block_reading():
    rng = random.Random(3)
    for n in (1, 2, 3):
        for b in bipartitions(n):
            m = mass_function_C(b)
            for _ in range(3):
                at = {"m+": F(rng.randint(1, 97), 13), "m-": F(rng.randint(1, 97), 11)}
                reg = evaluate_regularized(m, at)
                if reg.vanishing_order == 0:
                    assert reg.sign == mass_sign_C(b, at["m+"], at["m-"]), (str(b), at)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_restrictions_form_elliptic_basis(n):
    chars, parts = [], []
    for b in bipartitions(n):
        r = restrict_to_weyl(b)
        assert r.dim == len(standard_bitableaux(b))
        assert ordinary_pairing(r.character, r.character) == 1
        assert r.compact_part == (-1,) * sum(b.lam) + (1,) * sum(b.mu)
        chars.append(r.character)
    assert all(ordinary_pairing(x, y) == 0 for i, x in enumerate(chars) for y in chars[i + 1:])
