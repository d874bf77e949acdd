"""Selection of the kernel backend.

The hot loops (Bessel evaluation, the direct memory sum, history reductions)
exist twice: a numba ``@njit`` version and a vectorised numpy version.  Which
one is used is decided once, at import time, from ``NONLOCAL_EMBED_BACKEND``
(``numba`` or ``numpy``).  When numba is requested but cannot be imported the
numpy path is used and a warning is logged.
"""
from __future__ import annotations

import logging
import os

ENV_VAR = "NONLOCAL_EMBED_BACKEND"
CHOICES = ("numba", "numpy")

log = logging.getLogger(__name__)


def _numba_available() -> bool:
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


def resolve_backend(requested: str | None = None) -> str:
    name = (requested if requested is not None else os.environ.get(ENV_VAR, "numba"))
    name = name.strip().lower()
    if name not in CHOICES:
        raise ValueError(f"{ENV_VAR} must be one of {CHOICES}, got {name!r}")
    if name == "numba" and not _numba_available():
        log.warning("numba not importable, falling back to the numpy kernels")
        return "numpy"
    return name


BACKEND = resolve_backend()
