import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import j0

from nonlocal_embed.quadrature import (
    WeightKind,
    chebyshev_nodes,
    chebyshev_weight_rule,
    clenshaw_curtis_rule,
    history_sum,
    integrate_history,
)


def test_nodes_small_cases():
    assert chebyshev_nodes(1).tolist() == [1.0, -1.0]
    assert chebyshev_nodes(2).tolist() == [1.0, 0.0, -1.0]
    expected = [math.cos(n * math.pi / 4) for n in range(5)]
    np.testing.assert_allclose(chebyshev_nodes(4), expected, atol=1e-16)


@pytest.mark.parametrize("M", [0, -3, 2.5])
def test_nodes_reject_degenerate(M):
    with pytest.raises(ValueError):
        chebyshev_nodes(M)


@pytest.mark.parametrize("M", [1, 2, 3, 7, 30, 200, 2000])
def test_nodes_match_cosine_form_and_are_symmetric(M):
    k = chebyshev_nodes(M)
    np.testing.assert_allclose(k, np.cos(np.arange(M + 1) * np.pi / M), atol=5e-16)
    assert k[0] == 1.0 and k[-1] == -1.0
    assert np.all(np.diff(k) < 0)
    assert np.array_equal(k, -k[::-1])


def test_chebyshev_weight_rule_examples():
    g = chebyshev_weight_rule(4)
    assert g.weight_kind is WeightKind.CHEBYSHEV
    assert np.sum(g.weights) == pytest.approx(math.pi, abs=1e-15)
    assert abs(np.sum(g.weights * g.nodes)) < 1e-15
    # hand sum: pi/8 * (1 + 1) + pi/4 * (1/2 + 0 + 1/2) = pi/2
    assert np.sum(g.weights * g.nodes**2) == pytest.approx(math.pi / 2, abs=1e-15)


@pytest.mark.parametrize("M", [1, 2, 5, 16, 64])
def test_chebyshev_weight_normalisation(M):
    assert np.sum(chebyshev_weight_rule(M).weights) == pytest.approx(math.pi, rel=1e-14)


def test_chebyshev_weight_spectral_convergence():
    g = chebyshev_weight_rule(32)
    approx = np.sum(g.weights * np.cos(3 * g.nodes))
    # oracle 1: int cos(3k)/sqrt(1-k^2) = pi J0(3)
    assert abs(approx - math.pi * j0(3.0)) < 1e-10
    # oracle 2: fine midpoint rule in theta = arccos k
    n = 20000
    theta = (np.arange(n) + 0.5) * math.pi / n
    midpoint = math.pi / n * np.sum(np.cos(3 * np.cos(theta)))
    assert abs(approx - midpoint) < 1e-10


def test_clenshaw_curtis_examples():
    g = clenshaw_curtis_rule(2)
    assert g.weight_kind is WeightKind.UNIT
    # hand values for M = 2: weights (1/3, 4/3, 1/3)
    np.testing.assert_allclose(g.weights, [1 / 3, 4 / 3, 1 / 3], rtol=1e-15)
    assert np.sum(g.weights) == pytest.approx(2.0, abs=1e-15)
    assert np.sum(g.weights * g.nodes**2) == pytest.approx(2 / 3, abs=1e-15)
    h = clenshaw_curtis_rule(2, 0.0, 1.0)
    assert np.sum(h.weights * h.nodes) == pytest.approx(0.5, abs=1e-15)
    assert h.interval == (0.0, 1.0)


def test_clenshaw_curtis_rejects_bad_interval():
    with pytest.raises(ValueError):
        clenshaw_curtis_rule(4, 1.0, 1.0)
    with pytest.raises(ValueError):
        clenshaw_curtis_rule(4, 2.0, -1.0)


@pytest.mark.parametrize("M", [1, 2, 3, 4, 5, 8, 9, 200, 2001])
def test_clenshaw_curtis_normalisation_and_positivity(M):
    g = clenshaw_curtis_rule(M, -3.0, 5.0)
    assert np.sum(g.weights) == pytest.approx(8.0, rel=1e-13)
    assert np.all(g.weights > 0)
    assert np.array_equal(g.weights, g.weights[::-1])


@settings(max_examples=60, deadline=None)
@given(M=st.sampled_from([2, 4, 8]), seed=st.integers(0, 2**32 - 1))
def test_clenshaw_curtis_degree_exactness(M, seed):
    rng = np.random.default_rng(seed)
    coeffs = rng.uniform(-1, 1, M + 1)
    g = clenshaw_curtis_rule(M)
    approx = np.sum(g.weights * np.polyval(coeffs, g.nodes))
    antideriv = np.polyint(coeffs)
    exact = np.polyval(antideriv, 1.0) - np.polyval(antideriv, -1.0)
    assert abs(approx - exact) <= 1e-13


def test_clenshaw_curtis_matches_legendre_gauss_on_smooth_function():
    g = clenshaw_curtis_rule(64, 0.0, 3.0)
    x, w = np.polynomial.legendre.leggauss(60)
    ref = 1.5 * np.sum(w * np.exp(-1.5 * (x + 1)) * np.sin(1.5 * (x + 1)))
    assert np.sum(g.weights * np.exp(-g.nodes) * np.sin(g.nodes)) == pytest.approx(ref, abs=1e-14)


def test_integrate_history_examples():
    g = chebyshev_weight_rule(10)
    assert integrate_history(np.zeros(11), g) == 0.0
    assert integrate_history(1j * g.nodes, g) == 0.0
    u = clenshaw_curtis_rule(40, 0.0, 500.0)
    assert integrate_history(np.ones(41, dtype=complex), u) == pytest.approx(500.0, rel=1e-14)


def test_integrate_history_size_mismatch():
    with pytest.raises(ValueError):
        integrate_history(np.zeros(5), chebyshev_weight_rule(10))


def test_integrate_history_is_sequential_sum():
    g = clenshaw_curtis_rule(30, -2.0, 2.0)
    H = np.exp(1j * g.nodes) * (1 + g.nodes**2)
    acc = 0.0
    for w, h in zip(g.weights, H):
        acc += w * h.real
    assert integrate_history(H, g) == acc


@settings(max_examples=40, deadline=None)
@given(M=st.integers(2, 60), seed=st.integers(0, 2**32 - 1))
def test_reflection_consistency(M, seed):
    rng = np.random.default_rng(seed)
    g = clenshaw_curtis_rule(M, -7.0, 7.0)
    half = rng.normal(size=M + 1) + 1j * rng.normal(size=M + 1)
    # build H with H(-k) = conj(H(k)) using the reflected index
    H = half.copy()
    H[M // 2 + 1:] = np.conj(half[: (M + 1) // 2][::-1])
    if M % 2 == 0:
        H[M // 2] = half[M // 2].real
    pos = g.nodes > 0
    zero = g.nodes == 0
    expected = 2 * np.sum(g.weights[pos] * H[pos].real) + np.sum(g.weights[zero] * H[zero].real)
    got = integrate_history(H, g)
    assert got == pytest.approx(expected, rel=1e-12, abs=1e-14)
    assert abs(history_sum(H, g).imag) < 1e-12 * np.sum(np.abs(g.weights * H))
