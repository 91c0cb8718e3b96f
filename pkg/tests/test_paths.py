import cmath
import itertools

import numpy as np
import pytest

from oracles import eq5_literal, pascal_rows, quadrature_trace
from superbunch.coherence import constant_coefficient, interference_coefficients
from superbunch.errors import DomainError, EnumerationBudgetError
from superbunch.paths import (
    AmplitudeProductTerm,
    brute_trace,
    census,
    closed_form_census,
    direct_census,
    enumerate_terms,
)
from superbunch.synth import FS, DelayGrid


@pytest.mark.parametrize("n", [1, 2])
def test_term_count(n):
    assert sum(1 for _ in enumerate_terms(n)) == 16**n


def test_single_term_classification():
    term = AmplitudeProductTerm(route_a=(2,), route_b=(1,), route_a_conjugate=(1,),
                                route_b_conjugate=(2,))
    assert (term.k_a, term.k_b) == (1, -1)


def test_budget_guard_names_alternative():
    with pytest.raises(EnumerationBudgetError, match="closed"):
        next(enumerate_terms(9))
    with pytest.raises(EnumerationBudgetError):
        next(enumerate_terms(3, cap=2))


def test_census_n1():
    c = direct_census(1)
    assert c[(0, 0)] == 4
    assert c[(1, -1)] == 1
    assert c[(1, 0)] == 2
    assert c.total == 16


@pytest.mark.parametrize("n", [1, 2, 3])
def test_census_matches_coefficients(n):
    c = direct_census(n)
    assert c.total == 16**n
    assert c.constant() == constant_coefficient(n)
    assert [c.interference(m) for m in range(1, n + 1)] == interference_coefficients(n)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_census_factorizes(n):
    direct = direct_census(n)
    closed = closed_form_census(n)
    assert direct.counts == closed.counts
    row = pascal_rows(2 * n)[2 * n]
    for (ka, kb), count in direct.counts.items():
        assert count == row[n - abs(ka)] * row[n - abs(kb)]
        assert direct[(-ka, -kb)] == count


def test_census_partitions_merge():
    parts = [direct_census(3, prefix=p) for p in [(1, 1), (1, 2), (2,)]]
    merged = parts[0].merge(parts[1]).merge(parts[2])
    other_order = parts[2].merge(parts[0]).merge(parts[1])
    assert merged.counts == direct_census(3).counts == other_order.counts


def test_census_modes_agree():
    assert census(2, mode="direct").counts == census(2, mode="closed").counts
    assert census(20).constant() == constant_coefficient(20)
    with pytest.raises(DomainError):
        census(2, mode="sampled")


def test_initial_phases_cancel():
    # every amplitude carries the same exp(i(phi_a + phi_b)); products A A* lose it
    phi_a, phi_b = 0.37, 2.1
    k = [0.3 + 0.1j, -0.7j]
    amps = [cmath.exp(1j * (phi_a + phi_b)) * ka * kb for ka, kb in itertools.product(k, k)]
    bare = [ka * kb for ka, kb in itertools.product(k, k)]
    assert abs(sum(amps)) ** 2 == pytest.approx(abs(sum(bare)) ** 2, rel=1e-14)


def test_brute_trace_n2_endpoints(spectrum):
    tr = brute_trace(2, spectrum, DelayGrid(0.0, 1e6, 2))
    assert tr.values[0] == pytest.approx(256.0, rel=1e-15)
    # far tail: average over a fringe approaches the background
    far = DelayGrid(2e5, 2e5 + 10.34, 2000)
    assert brute_trace(2, spectrum, far).values.mean() == pytest.approx(36.0, rel=1e-3)


def test_brute_trace_matches_eq5(spectrum):
    grid = DelayGrid(-400.0, 400.0, 6001)
    tr = brute_trace(2, spectrum, grid)
    ref = eq5_literal(grid.taus() * FS, spectrum.omega0, spectrum.delta_omega)
    assert np.max(np.abs(tr.values - ref)) / 256 <= 1e-9


@pytest.mark.parametrize("n", [1, 2, 3])
def test_brute_trace_matches_frequency_quadrature(n, spectrum):
    taus = np.array([0.0, 0.9, 2.6, 17.0, 130.0, 333.3])
    ref = quadrature_trace(n, taus * FS, spectrum.omega0, spectrum.delta_omega)
    for t, r in zip(taus, ref):
        got = brute_trace(n, spectrum, DelayGrid(t, t + 1.0, 2)).values[0]
        assert got == pytest.approx(r, rel=1e-9, abs=1e-9 * 16**n)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_brute_trace_nonnegative_and_even(n, spectrum):
    grid = DelayGrid(-300.0, 300.0, 8001)
    v = brute_trace(n, spectrum, grid).values
    assert v.min() >= -1e-9 * 16**n
    np.testing.assert_allclose(v, v[::-1], rtol=0, atol=1e-9 * 16**n)
