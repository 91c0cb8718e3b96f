from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from oracles import pascal_rows, vandermonde_constant, vandermonde_interference
from superbunch import coherence
from superbunch.coherence import (
    CoefficientSet,
    amplification_factor,
    binomial,
    constant_coefficient,
    exact_ratios,
    interference_coefficients,
    metrics,
    round_half_even,
    tpa_peak_counts,
)
from superbunch.errors import DomainError

ROWS = pascal_rows(800)


def test_binomial_small():
    assert binomial(4, 2) == 6
    assert binomial(0, 0) == 1


def test_binomial_rejects_k_above_n():
    with pytest.raises(DomainError):
        binomial(3, 4)


def test_binomial_row_200_matches_pascal():
    row = [binomial(200, k) for k in range(201)]
    assert row == ROWS[200]
    assert sum(row) == 2**200


@given(st.integers(0, 200), st.data())
def test_binomial_against_pascal(n, data):
    k = data.draw(st.integers(0, n))
    assert binomial(n, k) == ROWS[n][k]


@pytest.mark.parametrize("n, expected", [(1, 4), (2, 36), (3, 400)])
def test_constant_coefficient(n, expected):
    assert constant_coefficient(n) == expected


@pytest.mark.parametrize("n, expected", [(1, [2]), (2, [32, 2]), (3, [450, 72, 2])])
def test_interference_coefficients(n, expected):
    assert interference_coefficients(n) == expected


@pytest.mark.parametrize("n", [0, -3])
def test_pass_count_must_be_positive(n):
    with pytest.raises(DomainError):
        constant_coefficient(n)


@pytest.mark.parametrize("n", range(1, 65))
def test_closed_form_identities(n):
    cs = CoefficientSet.for_passes(n)
    assert cs.c_constant == vandermonde_constant(n, ROWS[n])
    assert list(cs.c_interference) == vandermonde_interference(n, ROWS[n])
    assert cs.c_constant == ROWS[2 * n][n] ** 2
    assert cs.c_constant + cs.c_interference_total == ROWS[4 * n][2 * n]
    assert all(c > 0 for c in cs.c_interference)
    assert cs.c_interference[-1] == 2


def test_exact_at_n200():
    cs = CoefficientSet.for_passes(200)
    assert cs.c_constant == ROWS[400][200] ** 2
    assert cs.c_constant + cs.c_interference_total == ROWS[800][400]


def test_metrics_n1():
    m = metrics(1)
    assert (m.r_pb, m.f_pb, m.g2_zero, m.tpa_peak) == (4.0, 1.5, 2.0, 8.0)


def test_metrics_n2_exact():
    r, f, g = exact_ratios(2)
    assert g == Fraction(26, 9)
    assert f == Fraction(35, 18)
    assert r == Fraction(64, 9)


def test_metrics_n50():
    m = metrics(50)
    assert m.r_pb == pytest.approx(157.87, abs=0.02)
    assert m.f_pb == pytest.approx(8.90, abs=0.01)
    assert m.g2_zero == pytest.approx(16.79, abs=0.01)


def test_float_conversion_is_accurate():
    n = 120
    r, _, _ = exact_ratios(n)
    m = metrics(n)
    assert abs(Fraction(m.r_pb) - r) / r <= Fraction(1, 10**12)


@pytest.mark.parametrize("n, expected", [(1, 8.0), (2, 14.22), (3, 20.48)])
def test_tpa_peak_counts(n, expected):
    assert tpa_peak_counts(n) == pytest.approx(expected, abs=0.005)


def test_tpa_peak_n100_and_amplification():
    assert tpa_peak_counts(100) == pytest.approx(629.89, abs=0.01)
    assert amplification_factor(100) == pytest.approx(78.7, abs=0.3)
    assert amplification_factor(1) == 1.0
    assert amplification_factor(2) == pytest.approx(1.778, abs=5e-4)


@pytest.mark.parametrize("n", [1, 2, 7, 31])
def test_g2_relation_exact(n):
    _, f, g = exact_ratios(n)
    assert g == 1 + 2 * (f - 1)
    m = metrics(n)
    assert m.tpa_peak == 2 * m.r_pb


def test_monotone_in_n():
    ms = [metrics(n) for n in range(1, 101)]
    for key in ("r_pb", "f_pb", "g2_zero"):
        vals = [getattr(m, key) for m in ms]
        assert all(b > a for a, b in zip(vals, vals[1:])), key


def test_r_pb_is_nearly_linear():
    ns = np.arange(10, 101)
    r = np.array([metrics(int(n)).r_pb for n in ns])
    slope, intercept = np.polyfit(ns, r, 1)
    resid = np.abs(r - (slope * ns + intercept)) / r
    assert resid.max() < 0.02


def test_round_half_even():
    assert round_half_even(Fraction(1, 8), 2) == 0.12
    assert round_half_even(Fraction(3, 8), 2) == 0.38
    assert round_half_even(Fraction(26, 9), 2) == 2.89
    assert metrics(100).rounded()["tpa_peak"] == 629.89


def test_coefficient_rows_are_cached_immutable():
    assert coherence._row(5) is coherence._row(5)
    assert isinstance(coherence._row(5), tuple)
