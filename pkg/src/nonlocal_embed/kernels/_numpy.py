"""Vectorised numpy implementations of the hot kernels (fallback path)."""
import numpy as np

from ._constants import (
    ASYMPTOTIC_MIN,
    ASYMPTOTIC_TERMS,
    RECURRENCE_START,
    SERIES_MAX,
    SERIES_TERMS,
)


def _j1_series(x):
    half = 0.5 * x
    q = half * half
    term = half.copy()
    total = term.copy()
    for m in range(SERIES_TERMS):
        term = -term * q / ((m + 1.0) * (m + 2.0))
        total += term
    return total


def _j1_recurrence(x):
    j_next = np.zeros_like(x)
    j_cur = np.full_like(x, 1e-30)
    norm = 2.0 * j_cur
    j1 = np.zeros_like(x)
    for n in range(RECURRENCE_START, 0, -1):
        j_prev = (2.0 * n / x) * j_cur - j_next
        j_next = j_cur
        j_cur = j_prev
        order = n - 1
        if order == 1:
            j1 = j_cur
        elif order == 0:
            norm = norm + j_cur
        elif order % 2 == 0:
            norm = norm + 2.0 * j_cur
    return j1 / norm


def _j1_asymptotic(x):
    mu = 4.0
    p = np.ones_like(x)
    q = np.zeros_like(x)
    a = np.ones_like(x)
    for k in range(1, ASYMPTOTIC_TERMS + 1):
        a = a * (mu - (2.0 * k - 1.0) ** 2) / (k * 8.0 * x)
        sign = 1.0 if ((k // 2) if k % 2 == 0 else (k - 1) // 2) % 2 == 0 else -1.0
        if k % 2 == 0:
            p += sign * a
        else:
            q += sign * a
    chi = x - 0.75 * np.pi
    return np.sqrt(2.0 / (np.pi * x)) * (p * np.cos(chi) - q * np.sin(chi))


def bessel_j1(z):
    z = np.asarray(z, dtype=np.float64)
    x = np.abs(z)
    out = np.empty_like(x)
    small = x < SERIES_MAX
    big = x >= ASYMPTOTIC_MIN
    mid = ~(small | big)
    if small.any():
        out[small] = _j1_series(x[small])
    if mid.any():
        out[mid] = _j1_recurrence(x[mid])
    if big.any():
        out[big] = _j1_asymptotic(x[big])
    return np.where(z < 0.0, -out, out)


def weighted_real_sum(w, h):
    """Sum ``w[i] * Re(h[i])`` in ascending index order."""
    if len(w) == 0:
        return 0.0
    # cumsum accumulates strictly left to right, unlike np.sum's pairwise scheme
    return float(np.cumsum(w * np.real(h))[-1])


def trapezoid_memory(times, xs, n, t_now, x_now, decay):
    n = int(n)
    if n == 0:
        return 0.0
    ts = np.append(times[:n], t_now)
    f = bessel_j1(x_now - xs[:n]) * np.exp(-decay * (t_now - times[:n]))
    f = np.append(f, 0.0)
    panels = 0.5 * np.diff(ts) * (f[:-1] + f[1:])
    return float(np.cumsum(panels)[-1])
