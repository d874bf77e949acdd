import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nonlocal_embed.integrators import (
    PHI_SWITCH,
    SolverDivergence,
    etdrk2_step,
    heun_step,
    phi_arrays,
    phi_funcs,
)
from nonlocal_embed.verify import _etd_final, _heun_final, observed_order


def _phi_oracle(z):
    z = mpmath.mpc(z)
    if z == 0:
        return mpmath.mpf(1), mpmath.mpf(0.5)
    return (mpmath.exp(z) - 1) / z, (mpmath.exp(z) - 1 - z) / z**2


def test_phi_limits_and_examples():
    p = phi_funcs(0.0)
    assert p.phi1 == 1.0 and p.phi2 == 0.5
    assert phi_funcs(1.0).phi1 == pytest.approx(math.e - 1, rel=1e-15)
    assert phi_funcs(-1e-6).phi1 == pytest.approx(1 - 5e-7, rel=1e-12)


@pytest.mark.parametrize("z", [1e-9, -3e-3, 5e-3j, 0.0099 + 0.001j, 0.02, -0.5 + 2j, -250.0, 7.0, 1j])
def test_phi_against_high_precision(z):
    with mpmath.workdps(40):
        o1, o2 = _phi_oracle(z)
    p = phi_funcs(z)
    assert abs(p.phi1 - complex(o1)) <= 1e-13 * abs(complex(o1))
    assert abs(p.phi2 - complex(o2)) <= 1e-11 * abs(complex(o2))


@pytest.mark.parametrize("direction", [1.0, -1.0, 1j, -1j, (1 + 1j) / math.sqrt(2)])
def test_phi_continuity_across_switch(direction):
    inside = phi_funcs(direction * PHI_SWITCH * (1 - 1e-12))
    outside = phi_funcs(direction * PHI_SWITCH * (1 + 1e-12))
    assert abs(inside.phi1 - outside.phi1) / abs(outside.phi1) < 1e-10
    assert abs(inside.phi2 - outside.phi2) / abs(outside.phi2) < 1e-10


@settings(max_examples=100, deadline=None)
@given(st.floats(-700, -1e-12))
def test_phi_bounds_on_negative_axis(z):
    p = phi_funcs(z)
    assert 0 < p.phi1 < 1
    assert 0 < p.phi2 < 0.5


def test_phi_arrays_preserve_shape():
    z = np.array([[0.0, -1.0], [1e-3, -40.0]])
    p1, p2 = phi_arrays(z)
    assert p1.shape == z.shape and p2.dtype == np.float64


def test_heun_examples():
    assert heun_step(1.0, lambda t, y: -y, 0.0, 0.1) == pytest.approx(0.905, abs=1e-15)
    y = np.array([0.3, -2.0])
    assert np.array_equal(heun_step(y, lambda t, y: np.zeros_like(y), 0.0, 0.5), y)
    assert heun_step(0.0, lambda t, y: 1.0, 0.0, 0.125) == 0.125


def test_steppers_reject_bad_dt_and_nonfinite():
    with pytest.raises(ValueError):
        heun_step(1.0, lambda t, y: y, 0.0, 0.0)
    with pytest.raises(ValueError):
        etdrk2_step(1.0, -1.0, lambda t, y: y, 0.0, -0.1)
    with pytest.raises(SolverDivergence) as info:
        heun_step(1.0, lambda t, y: math.inf, 2.0, 0.1)
    assert info.value.t in (2.0, 2.1)
    with pytest.raises(SolverDivergence):
        etdrk2_step(1.0, -1.0, lambda t, y: math.nan, 0.0, 0.1)


def test_etd_pure_linear_part_is_exact():
    c = -3.0 + 2.0j
    out = etdrk2_step(0.7 - 0.2j, c, lambda t, h: 0.0, 0.0, 0.25)
    assert out == pytest.approx(np.exp(c * 0.25) * (0.7 - 0.2j), rel=1e-15)


def test_etd_exact_for_constant_forcing():
    out = etdrk2_step(0.0, -1.0, lambda t, h: 1.0, 0.0, 0.5)
    assert out == pytest.approx(1 - math.exp(-0.5), rel=1e-15)
    assert out == pytest.approx(0.393469, abs=1e-6)


@settings(max_examples=50, deadline=None)
@given(
    h=st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False),
    t=st.floats(-5, 5),
    dt=st.floats(1e-4, 0.5),
)
def test_etd_reduces_to_heun_bitwise(h, t, dt):
    F = lambda s, u: -u * u * 0.1 + 1j * math.cos(s)  # noqa: E731
    assert etdrk2_step(h, 0.0, F, t, dt) == heun_step(h, F, t, dt)


@settings(max_examples=50, deadline=None)
@given(
    h=st.complex_numbers(max_magnitude=1e3, allow_nan=False, allow_infinity=False),
    re=st.floats(-1e4, 0.0),
    im=st.floats(-1e3, 1e3),
    dt=st.floats(1e-5, 1.0),
)
def test_etd_linear_part_is_a_stable(h, re, im, dt):
    out = etdrk2_step(h, complex(re, im), lambda t, u: 0.0, 0.0, dt)
    assert abs(out) <= abs(h) * (1 + 1e-14) + 1e-300


def test_observed_orders():
    assert 1.8 <= observed_order(_heun_final) <= 2.2
    assert 1.8 <= observed_order(_etd_final) <= 2.2


def test_etd_handles_very_stiff_node():
    # k = 500 on the Stefan grid: z = -250 for dt = 1e-3
    out = etdrk2_step(0.0, -250000.0, lambda t, h: 1.0, 0.0, 1e-3)
    assert out == pytest.approx((1 - math.exp(-250)) / 250000.0, rel=1e-14)
