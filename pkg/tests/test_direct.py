import math

import numpy as np
import pytest
from scipy import integrate, special

from nonlocal_embed import direct
from nonlocal_embed.direct import PathHistory, memory_force_direct, simulate_walker_direct
from nonlocal_embed.kernels import _numpy
from nonlocal_embed.walker import WalkerParams, simulate_walker


def _path(ts, xs):
    p = PathHistory(capacity=2)
    for t, x in zip(ts, xs):
        p.append(t, x)
    return p


def test_path_history_grows_and_orders():
    p = _path(np.arange(10.0), np.arange(10.0) ** 2)
    assert len(p) == 10 and p.times[-1] == 9.0 and p.positions[3] == 9.0
    with pytest.raises(ValueError):
        p.append(9.0, 0.0)


def test_memory_trivial_paths():
    assert memory_force_direct(_path([0.0], [1.0]), 0.0, 1.0, 0.1) == 0.0
    ts = np.linspace(0, 5, 51)
    assert memory_force_direct(_path(ts, np.full_like(ts, 2.0)), 5.0, 1.0, 0.1) == 0.0


def test_memory_linear_path_against_adaptive_quadrature():
    V, C1, C2, t = 0.9, 0.7, 0.2, 4.0
    ts = np.linspace(0, t, 20001)
    got = memory_force_direct(_path(ts, V * ts), t, C1, C2)
    ref = C1 * integrate.quad(lambda s: special.j1(V * (t - s)) * math.exp(-C2 * (t - s)), 0, t, epsabs=1e-14)[0]
    assert got == pytest.approx(ref, abs=1e-8)


def test_memory_errors():
    with pytest.raises(ValueError):
        memory_force_direct(PathHistory(), 0.0, 1.0, 0.1)
    with pytest.raises(ValueError):
        memory_force_direct(_path([0.0, 1.0], [0.0, 1.0]), 0.5, 1.0, 0.1)


def test_drag_only_limit():
    tr = simulate_walker_direct(WalkerParams(C1=0.0, dt=0.01, ic=(0.0, 1.0)), 5.0)
    assert np.max(np.abs(tr["v_d"] - np.exp(-tr["t"]))) <= 1e-5
    assert np.all(tr["memory_force"] == 0.0)


def test_second_order_convergence():
    final = lambda dt: simulate_walker_direct(WalkerParams(C1=0.3, C2=0.1, dt=dt), 10.0).data[-1, 1]  # noqa: E731
    ref = final(0.1 / 8)
    ratio = abs(final(0.1) - ref) / abs(final(0.05) - ref)
    assert 3.0 < ratio < 5.0


def test_agrees_with_embedded_solver():
    p = WalkerParams(C1=0.3, C2=0.05)
    a = simulate_walker_direct(p, 20.0)
    b = simulate_walker(p, 20.0).trajectory
    np.testing.assert_array_equal(a["t"], b["t"])
    assert np.max(np.abs(a["x_d"] - b["x_d"])) < 1e-3
    assert np.max(np.abs(a["memory_force"] - b["memory_force"])) < 1e-3


def test_numpy_kernel_gives_same_trajectory(monkeypatch):
    p = WalkerParams(C1=0.2, C2=0.1, dt=0.05)
    ref = simulate_walker_direct(p, 10.0)
    monkeypatch.setattr(direct, "trapezoid_memory", _numpy.trapezoid_memory)
    alt = simulate_walker_direct(p, 10.0)
    np.testing.assert_allclose(alt.data, ref.data, rtol=1e-12, atol=1e-13)


def test_step_times_and_stride():
    times: list[float] = []
    tr = simulate_walker_direct(WalkerParams(dt=0.1), 2.05, stride=5, step_times=times)
    assert len(times) == 21
    assert tr["t"].tolist() == pytest.approx([0.0, 0.5, 1.0, 1.5, 2.0, 2.05])
    with pytest.raises(ValueError):
        simulate_walker_direct(WalkerParams(), 0.0)
