"""Front-fixed finite differences for the similarity-variable Stefan system.

In similarity variables the problem reads

    W_tau = W_etaeta + (eta/2) W_eta,         0 < eta < b(tau),
    -W_eta(0) = h,  W(b) = 0,  b' + b/2 = -W_eta(b).

Substituting eta = xi * b(tau) pins the front at xi = 1:

    V_tau = V_xixi / b^2 + xi (b'/b + 1/2) V_xi.

Diffusion and advection are implicit with coefficients frozen over a step; the
front is advanced explicitly from a second-order one-sided slope, optionally
corrected with a trapezoidal (Heun) pass.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from . import _kernels
from .bounds import InitialData
from .errors import ConfigError, FrontCollapseError, SolverBreakdownError, StateError

_STEP_TOL = 1e-9


@dataclass(frozen=True)
class SimilarityState:
    """(W on the uniform xi grid of [0, 1], b) at similarity time tau."""

    tau: float
    b: float
    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=float)
        if v.ndim != 1 or v.size < 4:
            raise StateError("values must be a 1-D array with at least 4 nodes")
        if not self.b > 0.0 or not math.isfinite(self.b):
            raise StateError(f"front position must be positive, got {self.b!r}")
        if not np.all(np.isfinite(v)):
            raise StateError("values must be finite")
        if v[-1] != 0.0:
            raise StateError("values[N] must be 0 (Dirichlet node at the front)")
        if np.any(v < 0.0):
            raise StateError(f"values must be non-negative (min {v.min():.3e})")
        v.flags.writeable = False
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "tau", float(self.tau))
        object.__setattr__(self, "b", float(self.b))

    @property
    def N(self) -> int:
        return self.values.size - 1

    @property
    def xi(self) -> np.ndarray:
        return np.linspace(0.0, 1.0, self.N + 1)

    @property
    def eta(self) -> np.ndarray:
        return self.xi * self.b

    @classmethod
    def from_function(cls, f: Callable, b: float, N: int, tau: float = 0.0) -> "SimilarityState":
        """Sample ``f`` at eta = xi_i * b; negatives are clamped, the front node forced to 0."""
        eta = np.linspace(0.0, 1.0, N + 1) * b
        eta[-1] = b
        v = np.maximum(np.asarray(f(eta), dtype=float), 0.0)
        v[-1] = 0.0
        return cls(tau, b, v)


@dataclass(frozen=True)
class SolverConfig:
    h: float
    N: int = 400
    dtau: float = 1e-4
    coupling_iters: int = 1

    def __post_init__(self):
        if not self.h > 0.0 or not math.isfinite(self.h):
            raise ConfigError("h must be positive")
        if int(self.N) != self.N or self.N < 8:
            raise ConfigError("N must be an integer >= 8")
        if not self.dtau > 0.0 or not math.isfinite(self.dtau):
            raise ConfigError("dtau must be positive")
        if int(self.coupling_iters) != self.coupling_iters or self.coupling_iters < 0:
            raise ConfigError("coupling_iters must be a non-negative integer")
        object.__setattr__(self, "N", int(self.N))
        object.__setattr__(self, "coupling_iters", int(self.coupling_iters))


class Coefficients(NamedTuple):
    diffusion: np.ndarray
    advection: np.ndarray


def front_fixed_coefficients(state: SimilarityState, bdot: float) -> Coefficients:
    """Nodal coefficients of V_xixi and V_xi in the front-fixed equation."""
    if not state.b > 0.0:
        raise StateError("front position must be positive")
    xi = state.xi
    diffusion = np.full_like(xi, 1.0 / (state.b * state.b))
    advection = xi * (bdot / state.b + 0.5)
    return Coefficients(diffusion, advection)


def transformed_rhs(state: SimilarityState, bdot: float) -> np.ndarray:
    """Centred-difference V_tau at interior nodes 1..N-1."""
    v = state.values
    n = state.N
    coef = front_fixed_coefficients(state, bdot)
    vxx = (v[2:] - 2.0 * v[1:-1] + v[:-2]) * n * n
    vx = (v[2:] - v[:-2]) * (0.5 * n)
    return coef.diffusion[1:-1] * vxx + coef.advection[1:-1] * vx


def stefan_velocity(state: SimilarityState) -> float:
    """b' = -W_eta(b) - b/2, with a three-point one-sided slope at the front."""
    return float(_kernels._front_velocity_np(state.values, state.b))


def boundary_slopes(values: np.ndarray, b) -> tuple[np.ndarray, np.ndarray]:
    """(-W_eta(0), -W_eta(b)) from one-sided second-order differences.

    Works on a single profile or row-wise on a stack of profiles.
    """
    v = np.asarray(values, dtype=float)
    n = v.shape[-1] - 1
    scale = n / (2.0 * np.asarray(b, dtype=float))
    flux0 = (3.0 * v[..., 0] - 4.0 * v[..., 1] + v[..., 2]) * scale
    fluxb = (4.0 * v[..., n - 1] - v[..., n - 2]) * scale
    return flux0, fluxb


def _raise_status(status: int, tau: float) -> None:
    if status == _kernels.BREAKDOWN:
        raise SolverBreakdownError(f"non-positive pivot in tridiagonal solve at tau={tau:.6g}; check N and dtau")
    if status == _kernels.COLLAPSE:
        raise FrontCollapseError(f"front collapsed at tau={tau:.6g}; the step is unstable")


def step(state: SimilarityState, cfg: SolverConfig, backend: str | None = None) -> SimilarityState:
    """Advance one time step of size ``cfg.dtau``."""
    if state.N < 3:
        raise StateError("need N >= 3")
    _, _, step_fn, _ = _kernels.get_backend(backend)
    v = np.ascontiguousarray(state.values, dtype=float)
    out = np.empty_like(v)
    cp = np.empty_like(v)
    dp = np.empty_like(v)
    status, b_new = step_fn(v, state.b, cfg.h, cfg.dtau, cfg.coupling_iters, out, cp, dp)
    _raise_status(int(status), state.tau + cfg.dtau)
    return SimilarityState(state.tau + cfg.dtau, float(b_new), out)


def resample(init: InitialData, N: int) -> SimilarityState:
    """Piecewise-linear u0 on the xi grid with front b0."""
    return SimilarityState.from_function(init, init.b0, N)


@dataclass(frozen=True)
class Trajectory:
    """Recorded states of one run; rows of ``values`` are profiles on the xi grid."""

    tau: np.ndarray
    b: np.ndarray
    values: np.ndarray
    h: float
    stride: int
    dtau: float

    def __post_init__(self):
        if self.tau.ndim != 1 or self.tau.size != self.b.size or self.values.shape[0] != self.tau.size:
            raise StateError("trajectory arrays have inconsistent lengths")
        if np.any(np.diff(self.tau) <= 0.0):
            raise StateError("trajectory times must be strictly increasing")
        for arr in (self.tau, self.b, self.values):
            arr.flags.writeable = False

    def __len__(self) -> int:
        return self.tau.size

    @property
    def N(self) -> int:
        return self.values.shape[1] - 1

    def state(self, i: int) -> SimilarityState:
        return SimilarityState(self.tau[i], self.b[i], self.values[i])

    def states(self):
        for i in range(len(self)):
            yield self.state(i)

    @property
    def final(self) -> SimilarityState:
        return self.state(len(self) - 1)

    @property
    def sup_norm(self) -> np.ndarray:
        return self.values.max(axis=1)

    @property
    def flux0(self) -> np.ndarray:
        return boundary_slopes(self.values, self.b)[0]

    @property
    def fluxb(self) -> np.ndarray:
        return boundary_slopes(self.values, self.b)[1]


def run(init: InitialData | SimilarityState, cfg: SolverConfig, tau_end: float,
        stride: int = 100, backend: str | None = None) -> Trajectory:
    """Integrate from ``init`` until tau >= tau_end, keeping every stride-th step.

    The initial and final states are always recorded.
    """
    if not tau_end > 0.0:
        raise ConfigError("tau_end must be positive")
    if int(stride) != stride or stride < 1:
        raise ConfigError("stride must be a positive integer")
    stride = int(stride)
    state = resample(init, cfg.N) if isinstance(init, InitialData) else init
    if state.N != cfg.N:
        raise ConfigError(f"state has N={state.N} but config has N={cfg.N}")

    nsteps = max(0, math.ceil((tau_end - state.tau) / cfg.dtau - _STEP_TOL))
    nrec_max = nsteps // stride + 2
    rec_v = np.empty((nrec_max, cfg.N + 1))
    rec_b = np.empty(nrec_max)
    rec_step = np.empty(nrec_max, dtype=np.int64)

    *_, run_fn = _kernels.get_backend(backend)
    status, n_done, nrec = run_fn(np.ascontiguousarray(state.values, dtype=float), state.b,
                                  cfg.h, cfg.dtau, cfg.coupling_iters, nsteps, stride,
                                  rec_v, rec_b, rec_step)
    _raise_status(int(status), state.tau + int(n_done) * cfg.dtau)
    nrec = int(nrec)
    return Trajectory(
        tau=state.tau + rec_step[:nrec] * cfg.dtau,
        b=rec_b[:nrec].copy(),
        values=rec_v[:nrec].copy(),
        h=cfg.h,
        stride=stride,
        dtau=cfg.dtau,
    )
