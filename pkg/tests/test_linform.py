from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hecke.linform import LinForm, frac, frac_str

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@st.composite
def linforms(draw):
    coeffs = {s: draw(rationals) for s in draw(st.sets(st.sampled_from(["k1", "k2", "m+", "m-"])))}
    return LinForm(draw(rationals), coeffs)


@pytest.mark.parametrize("text", ["k1/2 - k2 + 3", "-3k1/2", "m+ - 1", "0", "k1 - k2/2", "2m- + 2"])
def test_canonical_strings_round_trip(text):
    assert str(LinForm.parse(text)) == text


@given(linforms())
def test_parse_inverts_str(f):
    assert LinForm.parse(str(f)) == f


@given(linforms(), linforms(), rationals, rationals)
def test_evaluation_is_affine(f, g, x, y):
    at = {"k1": x, "k2": y, "m+": x - y, "m-": x + y}
    assert (f + g).evaluate(at) == f.evaluate(at) + g.evaluate(at)
    assert (f * 3 - g).evaluate(at) == 3 * f.evaluate(at) - g.evaluate(at)


def test_zero_coefficients_dropped():
    f = LinForm.parse("k1 - k1 + k2")
    assert f.symbols == ("k2",)
    assert LinForm.parse("k1 - k1").is_zero()


def test_derivative_and_primitive():
    f = LinForm.parse("k1/2 - 3k2/4 + 5")
    assert f.derivative({"k1": 2, "k2": 0}) == 1
    assert str(f.primitive()) in ("2k1 - 3k2 + 20", "-2k1 + 3k2 - 20")


def test_frac_helpers():
    assert frac("3/6") == Fraction(1, 2)
    assert frac_str(Fraction(-4, 2)) == "-2"
    with pytest.raises(TypeError):
        frac(0.5)


def test_missing_symbol_is_reported():
    with pytest.raises(KeyError):
        LinForm.parse("k1 + k2").evaluate({"k1": 1})


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        LinForm.parse("k1 + *")
