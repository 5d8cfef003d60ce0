"""Convergence measures and comparison-principle checks on trajectories.

Profiles with different fronts are compared after extension by zero on a
common uniform eta grid.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import UsageError
from .similarity import SelfSimilarProfile
from .solver import SimilarityState, Trajectory

COMMON_GRID_POINTS = 2001
_TAU_MATCH = 1e-12


@dataclass(frozen=True)
class Violation:
    tau: float
    kind: str          # "front" or "profile"
    amount: float      # size of the breach beyond tolerance
    eta: float = math.nan
    detail: str = ""


@dataclass(frozen=True)
class ConvergenceReport:
    tau: np.ndarray
    b_gap: np.ndarray
    profile_gap: np.ndarray


def _profile_on(values, b, eta):
    n = values.shape[-1] - 1
    nodes = np.linspace(0.0, 1.0, n + 1) * b
    return np.interp(eta, nodes, values, right=0.0)


def extend_by_zero(state: SimilarityState, eta):
    """Piecewise-linear W(eta) for eta <= b, 0 beyond."""
    out = _profile_on(state.values, state.b, eta)
    return out if np.ndim(out) else float(out)


def sup_distance(state: SimilarityState, p: SelfSimilarProfile,
                 grid_points: int = COMMON_GRID_POINTS) -> float:
    """max |W - U| on a uniform grid of [0, max(b, omega)], both zero-extended."""
    if grid_points < 2:
        raise UsageError("grid_points must be >= 2")
    eta = np.linspace(0.0, max(state.b, p.omega), grid_points)
    return float(np.max(np.abs(extend_by_zero(state, eta) - p.extended(eta))))


def convergence_report(traj: Trajectory, p: SelfSimilarProfile,
                       grid_points: int = COMMON_GRID_POINTS) -> ConvergenceReport:
    gaps = np.array([sup_distance(s, p, grid_points) for s in traj.states()])
    return ConvergenceReport(traj.tau.copy(), np.abs(traj.b - p.omega), gaps)


def _common_grid(b_max, grid_points):
    return np.linspace(0.0, b_max, grid_points)


def check_ordering(lower: Trajectory, upper: Trajectory, tol: float = 0.0,
                   grid_points: int = COMMON_GRID_POINTS) -> list[Violation]:
    """Times where lower exceeds upper (front or profile) by more than ``tol``."""
    if lower.tau.shape != upper.tau.shape or np.any(np.abs(lower.tau - upper.tau) > _TAU_MATCH):
        raise UsageError("trajectories must share sampling times")
    out = []
    for i, tau in enumerate(lower.tau):
        bl, bu = lower.b[i], upper.b[i]
        if bl > bu + tol:
            out.append(Violation(float(tau), "front", float(bl - bu - tol), detail=f"b_lower={bl!r} b_upper={bu!r}"))
        eta = _common_grid(max(bl, bu), grid_points)
        diff = _profile_on(lower.values[i], bl, eta) - _profile_on(upper.values[i], bu, eta)
        k = int(np.argmax(diff))
        if diff[k] > tol:
            out.append(Violation(float(tau), "profile", float(diff[k] - tol), eta=float(eta[k])))
    return out


def check_monotone_in_time(traj: Trajectory, direction: str, tol: float = 0.0,
                           grid_points: int = COMMON_GRID_POINTS) -> list[Violation]:
    """Consecutive samples where b or the zero-extended profile moves the wrong way."""
    if direction not in ("nondecreasing", "nonincreasing"):
        raise UsageError(f"direction must be 'nondecreasing' or 'nonincreasing', got {direction!r}")
    if len(traj) < 2:
        raise UsageError("need at least two samples")
    sign = 1.0 if direction == "nondecreasing" else -1.0
    out = []
    for i in range(1, len(traj)):
        b0, b1 = traj.b[i - 1], traj.b[i]
        drop = sign * (b0 - b1)
        if drop > tol:
            out.append(Violation(float(traj.tau[i]), "front", float(drop - tol)))
        eta = _common_grid(max(b0, b1), grid_points)
        change = sign * (_profile_on(traj.values[i - 1], b0, eta) - _profile_on(traj.values[i], b1, eta))
        k = int(np.argmax(change))
        if change[k] > tol:
            out.append(Violation(float(traj.tau[i]), "profile", float(change[k] - tol), eta=float(eta[k])))
    return out


def dirichlet_energy(values: np.ndarray, b) -> np.ndarray:
    """int_0^b W_eta^2 d eta per profile (trapezoid, centred differences)."""
    v = np.asarray(values, dtype=float)
    n = v.shape[-1] - 1
    b = np.asarray(b, dtype=float)
    v_xi = np.gradient(v, 1.0 / n, axis=-1, edge_order=2)
    # W_eta = V_xi / b and d eta = b d xi
    return np.trapezoid(v_xi * v_xi, dx=1.0 / n, axis=-1) / b


def energy_window(traj: Trajectory, T: float) -> float:
    """Trapezoidal int_T^{T+1} int_0^{b(tau)} W_eta^2 d eta d tau.

    The inner integral is linearly interpolated at the window ends when those
    fall between samples.
    """
    if T < 0.0:
        raise UsageError("T must be non-negative")
    lo, hi = T, T + 1.0
    slack = 1e-9 * max(1.0, hi)
    if traj.tau[0] > lo + slack or traj.tau[-1] < hi - slack:
        raise UsageError(f"trajectory covers [{traj.tau[0]:g}, {traj.tau[-1]:g}], not [{lo:g}, {hi:g}]")
    inside = (traj.tau > lo + slack) & (traj.tau < hi - slack)
    inner = dirichlet_energy(traj.values, traj.b)
    taus = np.concatenate(([lo], traj.tau[inside], [hi]))
    vals = np.concatenate(([np.interp(lo, traj.tau, inner)], inner[inside], [np.interp(hi, traj.tau, inner)]))
    return float(np.trapezoid(vals, taus))


def energy_bound(h: float, b_bar: float) -> float:
    """M1 = h b_bar^2 / 2 + b_bar^5 / 8."""
    return h * b_bar ** 2 / 2.0 + b_bar ** 5 / 8.0
