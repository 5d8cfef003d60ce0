"""Hot loops of the front-fixed scheme.

Unknowns are V_0..V_{N-1} on xi_i = i/N; V_N = 0 is the Dirichlet node at the
front. Each step solves

    (1 + 2r) V_i - (r + p_i) V_{i+1} - (r - p_i) V_{i-1} = V_i^n,
    r = dtau / (b dxi)^2,  p_i = dtau * i * (1/2 + bdot/b) / 2,

with the ghost node V_{-1} = V_1 + 2 dxi h b folded into row 0. A row with
|p_i| > r + 1/2 is not diagonally dominant and is reported as a breakdown.

Two backends share one calling convention: numba loops (default) and a
numpy/scipy path built on ``scipy.linalg.solve_banded``. Both return integer
status codes instead of raising so the numba version can run with ``nogil``.
"""
from __future__ import annotations

import numpy as np
from scipy.linalg import solve_banded

from ._accel import HAS_NUMBA, USE_NUMBA, njit

OK = 0
BREAKDOWN = 1
COLLAPSE = 2


# --------------------------------------------------------------------------
# numba backend
# --------------------------------------------------------------------------

@njit(cache=True, nogil=True)
def _front_velocity_nb(v, b):
    n = v.shape[0] - 1
    return (4.0 * v[n - 1] - v[n - 2]) * n / (2.0 * b) - 0.5 * b


@njit(cache=True, nogil=True)
def _implicit_solve_nb(v_old, b, bdot, h, dtau, out, cp, dp):
    n = v_old.shape[0] - 1
    dxi = 1.0 / n
    r = dtau / (b * b * dxi * dxi)
    half_c = 0.5 * (0.5 + bdot / b)
    diag = 1.0 + 2.0 * r

    beta = diag
    if not beta > 0.0:
        return BREAKDOWN
    cp[0] = -2.0 * r / beta
    dp[0] = (v_old[0] + 2.0 * r * dxi * h * b) / beta
    for i in range(1, n):
        p = dtau * i * half_c
        if abs(p) > r + 0.5:
            return BREAKDOWN
        lo = -(r - p)
        beta = diag - lo * cp[i - 1]
        if not beta > 0.0:
            return BREAKDOWN
        cp[i] = -(r + p) / beta
        dp[i] = (v_old[i] - lo * dp[i - 1]) / beta

    out[n] = 0.0
    out[n - 1] = dp[n - 1]
    for i in range(n - 2, -1, -1):
        out[i] = dp[i] - cp[i] * out[i + 1]
    return OK


@njit(cache=True, nogil=True)
def _step_nb(v, b, h, dtau, iters, out, cp, dp):
    bdot0 = _front_velocity_nb(v, b)
    status = _implicit_solve_nb(v, b, bdot0, h, dtau, out, cp, dp)
    if status != OK:
        return status, b
    b_new = b + dtau * bdot0
    for _ in range(iters):
        if not b_new > 0.0:
            return COLLAPSE, b_new
        bdot = 0.5 * (bdot0 + _front_velocity_nb(out, b_new))
        status = _implicit_solve_nb(v, 0.5 * (b + b_new), bdot, h, dtau, out, cp, dp)
        if status != OK:
            return status, b
        b_new = b + dtau * bdot
    if not b_new > 0.0:
        return COLLAPSE, b_new
    return OK, b_new


@njit(cache=True, nogil=True)
def _run_nb(v0, b0, h, dtau, iters, nsteps, stride, rec_v, rec_b, rec_step):
    v = v0.copy()
    out = np.empty_like(v)
    cp = np.empty(v.shape[0])
    dp = np.empty(v.shape[0])
    b = b0
    rec_v[0, :] = v
    rec_b[0] = b
    rec_step[0] = 0
    nrec = 1
    for n in range(1, nsteps + 1):
        status, b_new = _step_nb(v, b, h, dtau, iters, out, cp, dp)
        if status != OK:
            return status, n, nrec
        v, out = out, v
        b = b_new
        if n % stride == 0 or n == nsteps:
            rec_v[nrec, :] = v
            rec_b[nrec] = b
            rec_step[nrec] = n
            nrec += 1
    return OK, nsteps, nrec


# --------------------------------------------------------------------------
# numpy / scipy backend
# --------------------------------------------------------------------------

def _front_velocity_np(v, b):
    n = v.shape[0] - 1
    return (4.0 * v[n - 1] - v[n - 2]) * n / (2.0 * b) - 0.5 * b


def _implicit_solve_np(v_old, b, bdot, h, dtau, out, cp=None, dp=None):
    n = v_old.shape[0] - 1
    dxi = 1.0 / n
    r = dtau / (b * b * dxi * dxi)
    p = dtau * np.arange(n) * 0.5 * (0.5 + bdot / b)
    if not np.max(np.abs(p)) <= r + 0.5:
        return BREAKDOWN

    ab = np.empty((3, n))
    ab[1] = 1.0 + 2.0 * r
    ab[0, 0] = 0.0
    ab[0, 1] = -2.0 * r
    ab[0, 2:] = -(r + p[1:-1])
    ab[2, :-1] = -(r - p[1:])
    ab[2, -1] = 0.0
    rhs = v_old[:n].copy()
    rhs[0] += 2.0 * r * dxi * h * b
    try:
        sol = solve_banded((1, 1), ab, rhs, check_finite=False)
    except np.linalg.LinAlgError:
        return BREAKDOWN
    if not np.all(np.isfinite(sol)):
        return BREAKDOWN
    out[:n] = sol
    out[n] = 0.0
    return OK


def _step_np(v, b, h, dtau, iters, out, cp=None, dp=None):
    bdot0 = _front_velocity_np(v, b)
    status = _implicit_solve_np(v, b, bdot0, h, dtau, out)
    if status != OK:
        return status, b
    b_new = b + dtau * bdot0
    for _ in range(iters):
        if not b_new > 0.0:
            return COLLAPSE, b_new
        bdot = 0.5 * (bdot0 + _front_velocity_np(out, b_new))
        status = _implicit_solve_np(v, 0.5 * (b + b_new), bdot, h, dtau, out)
        if status != OK:
            return status, b
        b_new = b + dtau * bdot
    if not b_new > 0.0:
        return COLLAPSE, b_new
    return OK, b_new


def _run_np(v0, b0, h, dtau, iters, nsteps, stride, rec_v, rec_b, rec_step):
    v = v0.copy()
    out = np.empty_like(v)
    b = b0
    rec_v[0, :] = v
    rec_b[0] = b
    rec_step[0] = 0
    nrec = 1
    for n in range(1, nsteps + 1):
        status, b_new = _step_np(v, b, h, dtau, iters, out)
        if status != OK:
            return status, n, nrec
        v, out = out, v
        b = b_new
        if n % stride == 0 or n == nsteps:
            rec_v[nrec, :] = v
            rec_b[nrec] = b
            rec_step[nrec] = n
            nrec += 1
    return OK, nsteps, nrec


BACKENDS = {"numpy": (_front_velocity_np, _implicit_solve_np, _step_np, _run_np)}
if HAS_NUMBA:
    BACKENDS["numba"] = (_front_velocity_nb, _implicit_solve_nb, _step_nb, _run_nb)

DEFAULT_BACKEND = "numba" if USE_NUMBA else "numpy"


def get_backend(name: str | None = None):
    """(front_velocity, implicit_solve, step, run) for ``name`` or the default."""
    name = DEFAULT_BACKEND if name is None else name
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(f"unknown backend {name!r}; available: {sorted(BACKENDS)}") from None
