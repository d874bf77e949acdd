"""Second-order single-step integrators: Heun and Cox-Matthews ETD2RK."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

# below this |z| the phi functions come from their Taylor series
PHI_SWITCH = 1e-2
_TAYLOR_TERMS = 8


class SolverDivergence(RuntimeError):
    """Raised when a step produces non-finite values."""

    def __init__(self, t: float, message: str | None = None):
        self.t = float(t)
        super().__init__(message or f"solver diverged (non-finite state) at t = {self.t!r}")


@dataclass(frozen=True)
class PhiValues:
    phi1: complex
    phi2: complex


def phi_arrays(z):
    """phi1(z) = (e^z - 1)/z and phi2(z) = (e^z - 1 - z)/z^2, elementwise.

    Real input gives real output.
    """
    z = np.asarray(z)
    shape = z.shape
    z = np.atleast_1d(z)
    if not np.iscomplexobj(z):
        z = z.astype(np.float64)
    small = np.abs(z) < PHI_SWITCH
    safe = np.where(small, 1.0, z)
    em1 = np.expm1(safe)
    phi1 = em1 / safe
    phi2 = (em1 - safe) / (safe * safe)
    if small.any():
        zs = z[small]
        # Horner on sum_j z^j / (j + 1)!  and  sum_j z^j / (j + 2)!
        s1 = np.zeros_like(zs)
        s2 = np.zeros_like(zs)
        for j in range(_TAYLOR_TERMS - 1, -1, -1):
            s1 = s1 * zs + 1.0 / _factorial(j + 1)
            s2 = s2 * zs + 1.0 / _factorial(j + 2)
        phi1[small] = s1
        phi2[small] = s2
    return phi1.reshape(shape), phi2.reshape(shape)


def _factorial(n: int) -> float:
    out = 1.0
    for i in range(2, n + 1):
        out *= i
    return out


def phi_funcs(z) -> PhiValues:
    phi1, phi2 = phi_arrays(z)
    return PhiValues(phi1[()], phi2[()])


def etd_coefficients(c, dt: float):
    """Return ``(exp(c dt), phi1(c dt), phi2(c dt))`` for a stiff coefficient c."""
    z = np.asarray(c) * dt
    phi1, phi2 = phi_arrays(z)
    return np.exp(z), phi1, phi2


def _check_finite(value, t):
    if not np.all(np.isfinite(value)):
        raise SolverDivergence(t)


def heun_step(y, rhs: Callable, t: float, dt: float):
    """One explicit trapezoidal (Heun) step of y' = rhs(t, y)."""
    if not dt > 0:
        raise ValueError("dt must be positive")
    k1 = rhs(t, y)
    _check_finite(k1, t)
    k2 = rhs(t + dt, y + dt * k1)
    _check_finite(k2, t + dt)
    return y + dt * (0.5 * k1 + 0.5 * k2)


def etdrk2_step(h, c, F: Callable, t: float, dt: float):
    """One ETD2RK step of h' = c h + F(t, h) with the linear part exact.

    With c == 0 this performs the same floating-point operations as
    :func:`heun_step`, so the two agree bit for bit.
    """
    if not dt > 0:
        raise ValueError("dt must be positive")
    ez, phi1, phi2 = etd_coefficients(c, dt)
    f0 = F(t, h)
    _check_finite(f0, t)
    a = ez * h + dt * phi1 * f0
    f1 = F(t + dt, a)
    _check_finite(f1, t + dt)
    out = ez * h + dt * ((phi1 - phi2) * f0 + phi2 * f1)
    return out[()] if isinstance(out, np.ndarray) else out
