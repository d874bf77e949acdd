"""Numeric kernels, dispatched to numba or numpy according to the backend flag."""
from .._backend import BACKEND

if BACKEND == "numba":
    from ._numba import bessel_j1, trapezoid_memory, weighted_real_sum
else:
    from ._numpy import bessel_j1, trapezoid_memory, weighted_real_sum

__all__ = ["BACKEND", "bessel_j1", "trapezoid_memory", "weighted_real_sum"]
