from fractions import Fraction

import pytest

from bch_resum.exact_series import (DEFAULT_ORDER, convolve, float_coeffs, series, taylor_s,
                                    taylor_t, taylor_T, taylor_W, unit)
from oracles import taylor_by_derivatives

F = Fraction


def test_t_printed_values():
    t = taylor_t(10)
    assert list(t.coeffs) == [1, 0, F(-1, 3), 0, F(2, 15), 0, F(-17, 315), 0, F(62, 2835), 0,
                              F(-1382, 155925)]


def test_T_printed_values():
    T = taylor_T(10)
    assert list(T.coeffs) == [1, 0, F(1, 3), 0, F(-1, 45), 0, F(2, 945), 0, F(-1, 4725), 0,
                              F(2, 93555)]


def test_s_printed_values():
    s = taylor_s(8)
    assert list(s.coeffs) == [1, 0, F(2, 3), 0, F(2, 15), 0, F(4, 315), 0, F(2, 2835)]


def test_W_low_orders():
    W = taylor_W(4)
    assert (W[0], W[2], W[4]) == (1, F(1, 3), F(2, 45))


@pytest.mark.parametrize("name", ["t", "T"])
def test_against_bernoulli_oracle(name):
    assert list(series(name, 30).coeffs) == taylor_by_derivatives(name, 30)


@pytest.mark.parametrize("name", ["t", "T", "s", "W"])
def test_odd_coefficients_vanish_and_length(name):
    s = series(name, 21)
    assert len(s) == 22 and s.order == 21
    assert all(c == 0 for c in s.coeffs[1::2])


def test_inverse_pair_to_order_40():
    t, T = taylor_t(40), taylor_T(40)
    assert list(convolve(t, T).coeffs) == list(unit(40).coeffs)


def test_s_equals_T_times_W_to_order_40():
    s, T, W = taylor_s(40), taylor_T(40), taylor_W(40)
    assert list(convolve(T, W).coeffs) == list(s.coeffs)


def test_W_is_convolution_of_t_and_s():
    assert list(convolve(taylor_t(20), taylor_s(20)).coeffs) == list(taylor_W(20).coeffs)


def test_unit_is_identity():
    t = taylor_t(12)
    assert convolve(t, unit(12)).coeffs == t.coeffs


def test_order_beyond_default_extends_cache():
    big = taylor_t(DEFAULT_ORDER + 6)
    assert big.order == DEFAULT_ORDER + 6
    assert big.coeffs[:11] == taylor_t(10).coeffs


def test_as_strings_and_floats():
    t = taylor_t(2)
    assert t.as_strings() == ["1/1", "0/1", "-1/3"]
    assert float_coeffs("t", 2) == (1.0, 0.0, -1 / 3)


def test_bad_inputs():
    with pytest.raises(KeyError):
        series("q", 3)
    with pytest.raises(ValueError):
        taylor_t(-1)
