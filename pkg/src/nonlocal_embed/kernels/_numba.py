"""numba implementations of the hot kernels."""
import math

import numpy as np
from numba import njit

from ._constants import (
    ASYMPTOTIC_MIN,
    ASYMPTOTIC_TERMS,
    RECURRENCE_START,
    SERIES_MAX,
    SERIES_TERMS,
)


@njit(cache=True)
def _j1_series(x):
    half = 0.5 * x
    q = half * half
    term = half
    total = term
    for m in range(SERIES_TERMS):
        term = -term * q / ((m + 1.0) * (m + 2.0))
        total += term
        if abs(term) < 1e-17 * abs(total):
            break
    return total


@njit(cache=True)
def _j1_recurrence(x):
    # Miller: run J_{n-1} = (2n/x) J_n - J_{n+1} downwards, normalise with
    # J_0 + 2 sum J_{2k} = 1.
    n_start = RECURRENCE_START
    j_next = 0.0
    j_cur = 1e-30
    norm = 2.0 * j_cur
    j1 = 0.0
    for n in range(n_start, 0, -1):
        j_prev = (2.0 * n / x) * j_cur - j_next
        j_next = j_cur
        j_cur = j_prev
        order = n - 1
        if order == 1:
            j1 = j_cur
        elif order == 0:
            norm += j_cur
        elif order % 2 == 0:
            norm += 2.0 * j_cur
    return j1 / norm


@njit(cache=True)
def _j1_asymptotic(x):
    mu = 4.0
    p = 1.0
    q = 0.0
    a = 1.0
    for k in range(1, ASYMPTOTIC_TERMS + 1):
        a = a * (mu - (2.0 * k - 1.0) ** 2) / (k * 8.0 * x)
        if k % 2 == 0:
            p += a if (k // 2) % 2 == 0 else -a
        else:
            q += a if ((k - 1) // 2) % 2 == 0 else -a
    chi = x - 0.75 * math.pi
    return math.sqrt(2.0 / (math.pi * x)) * (p * math.cos(chi) - q * math.sin(chi))


@njit(cache=True)
def j1_scalar(z):
    x = abs(z)
    if x < SERIES_MAX:
        val = _j1_series(x)
    elif x < ASYMPTOTIC_MIN:
        val = _j1_recurrence(x)
    else:
        val = _j1_asymptotic(x)
    return -val if z < 0.0 else val


@njit(cache=True)
def _bessel_j1_array(z):
    out = np.empty(z.shape[0])
    for i in range(z.shape[0]):
        out[i] = j1_scalar(z[i])
    return out


def bessel_j1(z):
    z = np.asarray(z, dtype=np.float64)
    return _bessel_j1_array(z.ravel()).reshape(z.shape)


@njit(cache=True)
def _weighted_real_sum(w, h):
    acc = 0.0
    for i in range(w.shape[0]):
        acc += w[i] * h[i].real
    return acc


def weighted_real_sum(w, h):
    """Sum ``w[i] * Re(h[i])`` in ascending index order."""
    return float(_weighted_real_sum(w, h))


@njit(cache=True)
def _trapezoid_memory(times, xs, n, t_now, x_now, decay):
    if n == 0:
        return 0.0
    acc = 0.0
    f_prev = j1_scalar(x_now - xs[0]) * math.exp(-decay * (t_now - times[0]))
    for j in range(1, n):
        f = j1_scalar(x_now - xs[j]) * math.exp(-decay * (t_now - times[j]))
        acc += 0.5 * (times[j] - times[j - 1]) * (f_prev + f)
        f_prev = f
    # closing panel ends at (t_now, x_now) where J1(0) = 0
    acc += 0.5 * (t_now - times[n - 1]) * f_prev
    return acc


def trapezoid_memory(times, xs, n, t_now, x_now, decay):
    """Trapezoid rule for int J1(x_now - x(s)) exp(-decay (t_now - s)) ds.

    Uses the first ``n`` stored samples and closes the last panel at
    ``(t_now, x_now)``.
    """
    return float(_trapezoid_memory(times, xs, int(n), float(t_now), float(x_now), float(decay)))
