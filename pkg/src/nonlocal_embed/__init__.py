"""Markovian embedding of nonlocal evolution equations.

The memory integral of a nonlocal equation is replaced by a history field
``H(k, t)`` on a spectral grid that evolves by local ODEs.  Two instances are
provided: the 1D walking droplet and the one-phase Stefan problem.
"""
from ._backend import BACKEND
from .embedding import EmbeddedState, EmbeddedSystem, evolve, init_state, step
from .integrators import SolverDivergence, etdrk2_step, heun_step, phi_funcs
from .quadrature import (
    SpectralGrid,
    chebyshev_nodes,
    chebyshev_weight_rule,
    clenshaw_curtis_rule,
    integrate_history,
)
from .records import TrajectoryRecord

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "EmbeddedState",
    "EmbeddedSystem",
    "SolverDivergence",
    "SpectralGrid",
    "TrajectoryRecord",
    "chebyshev_nodes",
    "chebyshev_weight_rule",
    "clenshaw_curtis_rule",
    "etdrk2_step",
    "evolve",
    "heun_step",
    "init_state",
    "integrate_history",
    "phi_funcs",
    "step",
]
