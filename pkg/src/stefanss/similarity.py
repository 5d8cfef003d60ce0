"""Self-similar profile of the one-phase Neumann Stefan problem.

The profile solves U'' + (eta/2) U' = 0 on (0, omega) with -U'(0) = h,
U(omega) = 0 and the front law omega/2 = -U'(omega), giving

    U(eta) = h * int_eta^omega exp(-s^2/4) ds,   h = (omega/2) exp(omega^2/4).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import erf, erfc

from .errors import ConvergenceError, DomainError

SQRT_PI = math.sqrt(math.pi)


def gaussian_front_residual(x: float, target: float, lam: float = 1.0) -> float:
    """(x/2) exp(lam x^2/4) - target, evaluated without overflow."""
    return target * math.expm1(math.log(0.5 * x / target) + 0.25 * lam * x * x)


def invert_gaussian_front(target: float, lam: float = 1.0, tol: float = 1e-12,
                          max_doublings: int = 2000) -> float:
    """Positive root x of (x/2) exp(lam x^2 / 4) = target.

    Bracketed bisection followed by a safeguarded Newton polish. The map is
    worked in log form, ln(x/2) + lam x^2/4 = ln(target), which is strictly
    increasing and cannot overflow.
    """
    if not target > 0.0 or not math.isfinite(target):
        raise DomainError(f"flux amplitude must be positive and finite, got {target!r}")
    if not tol > 0.0:
        raise DomainError(f"tol must be positive, got {tol!r}")
    if lam < 0.0 or not math.isfinite(lam):
        raise DomainError(f"lambda must be non-negative, got {lam!r}")
    if lam == 0.0:
        return 2.0 * target

    log_target = math.log(target)

    def g(x):
        return math.log(0.5 * x) + 0.25 * lam * x * x - log_target

    # (x/2) exp(...) >= x/2, so 2*target already brackets; doubling is a guard.
    lo, hi = 0.0, 2.0 * target
    for _ in range(max_doublings):
        if g(hi) > 0.0:
            break
        lo, hi = hi, 2.0 * hi
    else:
        raise ConvergenceError(f"could not bracket the front for target={target!r}, lambda={lam!r}")

    while g(0.5 * hi) > 0.0:
        hi *= 0.5
    lo = max(lo, 0.5 * hi)

    for _ in range(200):
        if hi - lo <= 1e-6 * hi:
            break
        mid = 0.5 * (lo + hi)
        if g(mid) > 0.0:
            hi = mid
        else:
            lo = mid

    x = hi
    for _ in range(100):
        step = g(x) / (1.0 / x + 0.5 * lam * x)
        x_new = x - step
        if not lo <= x_new <= hi:
            x_new = 0.5 * (lo + hi)
        if g(x_new) > 0.0:
            hi = x_new
        else:
            lo = x_new
        if abs(x_new - x) <= 4e-16 * x_new:
            x = x_new
            break
        x = x_new

    if abs(gaussian_front_residual(x, target, lam)) > tol * max(1.0, target):
        raise ConvergenceError(
            f"front equation not solved to tol={tol:g}: residual "
            f"{gaussian_front_residual(x, target, lam):.3e} at x={x!r}")
    return x


def solve_omega(h: float, tol: float = 1e-12) -> float:
    """Self-similar front omega for flux amplitude h."""
    return invert_gaussian_front(h, 1.0, tol)


def erf_difference(hi_arg, lo_arg):
    """erf(hi_arg) - erf(lo_arg), switching to erfc when both tails are small."""
    hi_arg = np.asarray(hi_arg, dtype=float)
    lo_arg = np.asarray(lo_arg, dtype=float)
    tail = lo_arg > 0.5
    out = np.where(tail, erfc(lo_arg) - erfc(hi_arg), erf(hi_arg) - erf(lo_arg))
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class SelfSimilarProfile:
    h: float
    omega: float

    def __post_init__(self):
        if not self.h > 0.0:
            raise DomainError(f"h must be positive, got {self.h!r}")
        if not self.omega > 0.0:
            raise DomainError(f"omega must be positive, got {self.omega!r}")

    @classmethod
    def from_h(cls, h: float, tol: float = 1e-12) -> "SelfSimilarProfile":
        return cls(float(h), solve_omega(h, tol))

    def __call__(self, eta):
        return profile_value(self, eta)

    def extended(self, eta):
        """U continued by zero beyond omega."""
        eta = np.asarray(eta, dtype=float)
        inside = np.clip(eta, 0.0, self.omega)
        return np.where(eta <= self.omega, profile_value(self, inside), 0.0)


def _check_eta(eta, upper):
    arr = np.asarray(eta, dtype=float)
    if np.any(~(arr >= 0.0)) or np.any(arr > upper):
        raise DomainError(f"eta must lie in [0, {upper!r}]")
    return arr


def profile_value(p: SelfSimilarProfile, eta):
    """U(eta) = h sqrt(pi) (erf(omega/2) - erf(eta/2)); scalar or array."""
    arr = _check_eta(eta, p.omega)
    out = p.h * SQRT_PI * erf_difference(0.5 * p.omega, 0.5 * arr)
    out = np.maximum(out, 0.0)
    return out if np.ndim(out) else float(out)


def profile_slope(p: SelfSimilarProfile, eta):
    """U'(eta) = -h exp(-eta^2/4)."""
    arr = _check_eta(eta, p.omega)
    out = -p.h * np.exp(-0.25 * arr * arr)
    return out if np.ndim(out) else float(out)


def physical_self_similar(p: SelfSimilarProfile, x: float, t: float) -> tuple[float, float]:
    """(u(x, t), sigma(t)) of the self-similar solution in physical variables."""
    if x < 0.0 or t < 0.0:
        raise DomainError("x and t must be non-negative")
    root = math.sqrt(t + 1.0)
    front = p.omega * root
    eta = x / root
    value = profile_value(p, eta) if eta <= p.omega else 0.0
    return value, front
