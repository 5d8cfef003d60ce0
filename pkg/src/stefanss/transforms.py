"""Physical <-> similarity variables.

    eta = x / sqrt(t+1),  tau = ln(t+1),  b = s / sqrt(t+1),  W(eta, tau) = u(x, t).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import StateError
from .solver import SimilarityState


@dataclass(frozen=True)
class PhysicalState:
    """Temperature samples ``u`` at positions ``x`` covering [0, s] at time t."""

    t: float
    s: float
    x: np.ndarray
    u: np.ndarray

    def __post_init__(self):
        x = np.array(self.x, dtype=float)
        u = np.array(self.u, dtype=float)
        if not self.t >= 0.0:
            raise StateError("t must be non-negative")
        if not self.s > 0.0:
            raise StateError("front position s must be positive")
        if x.ndim != 1 or x.shape != u.shape or x.size < 2:
            raise StateError("x and u must be 1-D arrays of equal length >= 2")
        if x[0] != 0.0 or x[-1] != self.s or np.any(np.diff(x) <= 0.0):
            raise StateError("x must increase strictly from 0 to s")
        if u[-1] != 0.0 or np.any(u < 0.0):
            raise StateError("u must be non-negative and vanish at the front")
        for arr in (x, u):
            arr.flags.writeable = False
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "u", u)


def to_similarity(ps: PhysicalState, N: int | None = None) -> SimilarityState:
    """Resample onto the uniform xi grid (N intervals; default len(x) - 1)."""
    N = ps.x.size - 1 if N is None else N
    root = math.sqrt(ps.t + 1.0)
    b = ps.s / root
    eta_nodes = np.linspace(0.0, 1.0, N + 1) * b
    values = np.interp(eta_nodes, ps.x / root, ps.u)
    values[-1] = 0.0
    return SimilarityState(math.log1p(ps.t), b, values)


def to_physical(ss: SimilarityState) -> PhysicalState:
    """Inverse substitution; nodes map to x_i = eta_i sqrt(t+1)."""
    t = math.expm1(ss.tau)
    root = math.sqrt(t + 1.0)
    s = ss.b * root
    x = np.linspace(0.0, 1.0, ss.N + 1) * s
    x[-1] = s
    return PhysicalState(t, s, x, ss.values.copy())
