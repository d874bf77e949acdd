"""Chebyshev grids and quadrature rules for history integrals.

Two rules share the node set ``k_n = cos(n pi / M)``, ``n = 0..M``:

* :func:`chebyshev_weight_rule` integrates ``f(k) / sqrt(1 - k^2)`` on
  [-1, 1] (trapezoid rule in ``theta = arccos k``);
* :func:`clenshaw_curtis_rule` integrates ``f(k)`` with unit weight on an
  arbitrary interval.

Nodes are produced as ``sin(pi (M - 2n) / 2M)``, which equals the cosine form
but is exactly antisymmetric in floating point, so grids on symmetric
intervals are reflection-invariant bit for bit.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np

from .kernels import weighted_real_sum


class WeightKind(str, Enum):
    CHEBYSHEV = "chebyshev_weight"
    UNIT = "unit_weight"


@dataclass(frozen=True, eq=False)
class SpectralGrid:
    """Quadrature nodes and weights on a (mapped) spectral interval."""

    M: int
    nodes: np.ndarray
    weights: np.ndarray
    interval: tuple[float, float]
    weight_kind: WeightKind

    def __post_init__(self):
        nodes = np.array(self.nodes, dtype=np.float64)
        weights = np.array(self.weights, dtype=np.float64)
        if nodes.shape != (self.M + 1,) or weights.shape != nodes.shape:
            raise ValueError("grid needs M + 1 nodes and matching weights")
        nodes.flags.writeable = False
        weights.flags.writeable = False
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)

    def __len__(self) -> int:
        return self.M + 1

    @property
    def is_symmetric(self) -> bool:
        a, b = self.interval
        mid = 0.5 * (a + b)
        return bool(
            np.array_equal(self.nodes - mid, -(self.nodes[::-1] - mid))
            and np.array_equal(self.weights, self.weights[::-1])
        )

    def with_weights(self, weights) -> "SpectralGrid":
        return SpectralGrid(self.M, self.nodes, weights, self.interval, self.weight_kind)


def _check_m(M) -> int:
    if int(M) != M or M < 1:
        raise ValueError(f"node-count parameter M must be an integer >= 1, got {M!r}")
    return int(M)


def chebyshev_nodes(M: int) -> np.ndarray:
    """Return the M + 1 Chebyshev extreme points cos(n pi / M), n = 0..M."""
    M = _check_m(M)
    n = np.arange(M + 1, dtype=np.float64)
    return np.sin(np.pi * (M - 2.0 * n) / (2.0 * M))


def chebyshev_weight_rule(M: int) -> SpectralGrid:
    """Rule for the weight 1/sqrt(1 - k^2) on [-1, 1].

    Interior weights are pi/M, the two endpoints get pi/(2M).  Exact for
    polynomials of degree <= 2M - 1.
    """
    M = _check_m(M)
    w = np.full(M + 1, np.pi / M)
    w[0] = w[-1] = 0.5 * np.pi / M
    return SpectralGrid(M, chebyshev_nodes(M), w, (-1.0, 1.0), WeightKind.CHEBYSHEV)


@lru_cache(maxsize=256)
def _clenshaw_curtis_weights(M: int) -> np.ndarray:
    # closed form from the cosine expansion (Trefethen, Spectral Methods, clencurt)
    theta = np.pi * np.arange(M + 1) / M
    w = np.zeros(M + 1)
    inner = theta[1:M]
    v = np.ones(M - 1)
    if M % 2 == 0:
        w[0] = w[M] = 1.0 / (M * M - 1.0)
        j = np.arange(1, M // 2)
        if j.size:
            v -= (2.0 / (4.0 * j**2 - 1.0)) @ np.cos(2.0 * np.outer(j, inner))
        v -= np.cos(M * inner) / (M * M - 1.0)
    else:
        w[0] = w[M] = 1.0 / (M * M)
        j = np.arange(1, (M - 1) // 2 + 1)
        if j.size:
            v -= (2.0 / (4.0 * j**2 - 1.0)) @ np.cos(2.0 * np.outer(j, inner))
    w[1:M] = 2.0 * v / M
    w = 0.5 * (w + w[::-1])
    w.flags.writeable = False
    return w


def clenshaw_curtis_rule(M: int, a: float = -1.0, b: float = 1.0) -> SpectralGrid:
    """Clenshaw-Curtis rule with unit weight, mapped affinely onto [a, b]."""
    M = _check_m(M)
    a, b = float(a), float(b)
    if not a < b:
        raise ValueError(f"need a < b, got [{a}, {b}]")
    half, mid = 0.5 * (b - a), 0.5 * (a + b)
    nodes = mid + half * chebyshev_nodes(M)
    return SpectralGrid(M, nodes, half * _clenshaw_curtis_weights(M), (a, b), WeightKind.UNIT)


def integrate_history(H, grid: SpectralGrid) -> float:
    """Quadrature of the real part of a history field sampled on ``grid``.

    Summation runs in ascending node order, so the result is reproducible.
    """
    H = np.asarray(H)
    if H.shape != grid.nodes.shape:
        raise ValueError(f"history field has shape {H.shape}, grid has {len(grid)} nodes")
    return weighted_real_sum(grid.weights, H.astype(np.complex128, copy=False))


def history_sum(H, grid: SpectralGrid) -> complex:
    """Full complex quadrature sum; its imaginary part is a symmetry diagnostic."""
    H = np.asarray(H, dtype=np.complex128)
    if H.shape != grid.nodes.shape:
        raise ValueError(f"history field has shape {H.shape}, grid has {len(grid)} nodes")
    return complex(np.cumsum(grid.weights * H)[-1])
