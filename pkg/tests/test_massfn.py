from fractions import Fraction

import mpmath
import pytest

from hecke.linform import LinForm
from hecke.massfn import (choose_directions, conjugate_mass_function, evaluate_along, evaluate_regularized,
                          graded_factors, is_residual_at_equal_parameters, mass_function, negative_factor_count,
                          reeder_m, sign_graded, singular_locus, vanishing_factors)
from hecke.residual import rank_one_point
from hecke.tables import match_rows
from hecke.weylgrp import enumerate_group

SPLIT = {"k1": 1, "k2": 1}


@pytest.fixture(scope="module")
def g2():
    return {row.label: p for row, p in match_rows("g2", apply_errata=True)}


@pytest.fixture(scope="module")
def f4():
    return {row.label: p for row, p in match_rows("f4", apply_errata=True)}


def test_rank_one_factors():
    m = mass_function(rank_one_point())
    assert sorted(str(f.expo) for f in m.numerator) == ["-k", "k"]
    assert [str(f.expo) for f in m.denominator] == ["-2k"]
    assert singular_locus(m) == [LinForm.parse("k")]
    at_zero = evaluate_regularized(m, {"k": 0})
    assert at_zero.vanishing_order == 1 and at_zero.sign == 0


def test_rank_one_value():
    # (v^-k - 1)(v^k - 1) / (v^-2k - 1) at v = 2, k = 1
    m = mass_function(rank_one_point())
    val = evaluate_regularized(m, {"k": 1}, 2).value
    with mpmath.workdps(60):
        assert abs(val - mpmath.mpf(2) / 3) < mpmath.mpf(10) ** -40


def test_g2_subregular_at_split_point(g2):
    p = g2["b2"]
    m = mass_function(p)
    vanishing = vanishing_factors(m, SPLIT)
    nums = [f for f in vanishing if f.side == "num"]
    dens = [f for f in vanishing if f.side == "den"]
    assert len(nums) == len(dens) > 0
    assert {f.expo.primitive().linear_part() for f in vanishing} <= {LinForm.parse("k1 - k2"),
                                                                      LinForm.parse("-k1 + k2")}
    reg = evaluate_regularized(m, SPLIT)
    assert reg.vanishing_order == 0 and reg.value != 0
    assert sign_graded(p, SPLIT) == -1 == reg.sign


def test_two_directions_agree(g2):
    m = mass_function(g2["b2"])
    forms = [f.expo for f in vanishing_factors(m, SPLIT)]
    d1, d2 = choose_directions(forms, m.symbols, 2)
    a, oa = evaluate_along(m, SPLIT, dict(d1))
    b, ob = evaluate_along(m, SPLIT, dict(d2))
    assert oa == ob == 0
    assert abs(a - b) <= mpmath.mpf(10) ** -30 * abs(a)


def test_f4_examples(f4):
    assert sign_graded(f4["b2"], SPLIT) == -1
    m = mass_function(f4["b11"])
    assert LinForm.parse("k1 - k2") in singular_locus(m)
    reg = evaluate_regularized(m, SPLIT)
    assert reg.value == 0 and reg.vanishing_order > 0 and reg.sign == 0
    assert sign_graded(f4["b11"], SPLIT) == 0


def test_regular_point_generic_sign(g2):
    # deep in the positive chamber every paired factor cancels in sign
    assert sign_graded(g2["b1"], {"k1": 3, "k2": 5}) == 1


def test_conjugate_representatives_agree(g2):
    p = g2["b3"]
    W = enumerate_group(p.subsystem)
    at = {"k1": Fraction(7, 5), "k2": Fraction(2, 3)}
    base = evaluate_regularized(mass_function(p), at).value
    for M in W.elements[:6]:
        other = evaluate_regularized(conjugate_mass_function(p, M), at).value
        assert abs(other - base) <= mpmath.mpf(10) ** -30 * abs(base)


def test_sign_is_parity_of_negative_factors(g2, f4):
    at = {"k1": Fraction(3, 7), "k2": Fraction(5, 3)}
    for p in list(g2.values()) + list(f4.values()):
        assert sign_graded(p, at) == (-1) ** negative_factor_count(p, at)


def bott_steinberg_g2(q):
    # d(St) = prod_i (q^e_i - 1)(q - 1) / (q^(e_i + 1) - 1), exponents 1 and 5
    q = Fraction(q)
    return (q - 1) ** 2 * (q**5 - 1) * (q - 1) / ((q**2 - 1) * (q**6 - 1))


@pytest.mark.parametrize("q", [2, 3, 5])
def test_reeder_steinberg_matches_poincare_series(g2, q):
    r = reeder_m(g2["b1"])
    assert r.qpow == 0 and r.den == 1
    assert r.exact(q) == bott_steinberg_g2(q)


def test_reeder_g2_all_positive(g2):
    for label, p in g2.items():
        r = reeder_m(p)
        assert r.const == 1 and r.R_at_zero() == 1
        assert all(r(q) > 0 for q in (2, 3, 5)), label


def test_reeder_rejects_non_residual(f4):
    assert not is_residual_at_equal_parameters(f4["b11"])
    with pytest.raises(ValueError):
        reeder_m(f4["b11"])


def test_reeder_json_round(g2):
    doc = reeder_m(g2["b2"]).to_json()
    assert doc["variable"] == "q" and doc["const"] == "1"
    assert doc["cyclotomic_exponents"] == {"1": 2, "2": -2, "3": -1}


def test_regular_point_factor_count(g2):
    m = mass_function(g2["b1"])
    assert len(m.numerator) == 12
    assert not any(f.identically_zero() for f in m.factors)


def test_a2_point_units_on_short_roots(g2):
    p = g2["b5"]
    rs = p.parent
    m = mass_function(p)
    assert len(m.numerator) == len(rs.roots)
    units = [f.unit for f in m.numerator]
    assert [u != 0 for u in units] == [c == "short" for c in rs.length_class]
    assert {u for u in units if u} == {Fraction(1, 3), Fraction(2, 3)}


@pytest.mark.parametrize("q", [2, 3, 5, 7])
def test_reeder_rank_one_steinberg(q):
    r = reeder_m(rank_one_point())
    assert abs(r.exact(q)) == Fraction(q - 1, q + 1)


def test_equal_parameter_parity(g2, f4):
    at = {"k1": 1, "k2": 1}
    checked = 0
    for p in list(g2.values()) + list(f4.values()):
        if not is_residual_at_equal_parameters(p):
            continue
        num, den = graded_factors(p)
        if all(f.evaluate(at) != 0 for f in num + den):
            assert negative_factor_count(p, at) % 2 == 0
            checked += 1
    assert checked >= 8
