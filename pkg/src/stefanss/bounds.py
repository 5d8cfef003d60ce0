"""Time-independent lower and upper solutions.

Lower solutions come from the perturbed stationary problem
U'' + (lam eta / 2) U' = 0, -U'(0) = h_tilde, U(b_lam) = 0, b_lam/2 = -U'(b_lam),
which is a subsolution for every lam > 1. The upper solution is the straight
line (b_bar/2)(b_bar - eta) on [0, b_bar].
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import AdmissibilityError, ConvergenceError, DomainError
from .similarity import erf_difference, invert_gaussian_front

SQRT_PI = math.sqrt(math.pi)


def solve_b_lambda(h_tilde: float, lam: float, tol: float = 1e-12) -> float:
    """Front b_lam with (b_lam/2) exp(lam b_lam^2 / 4) = h_tilde."""
    return invert_gaussian_front(h_tilde, lam, tol)


@dataclass(frozen=True)
class StationaryPerturbed:
    lam: float
    h_tilde: float
    b_lambda: float

    @classmethod
    def build(cls, h_tilde: float, lam: float, tol: float = 1e-12) -> "StationaryPerturbed":
        return cls(float(lam), float(h_tilde), solve_b_lambda(h_tilde, lam, tol))

    def __call__(self, eta):
        return perturbed_value(self, eta)


def _check_eta(eta, upper):
    arr = np.asarray(eta, dtype=float)
    if np.any(~(arr >= 0.0)) or np.any(arr > upper):
        raise DomainError(f"eta must lie in [0, {upper!r}]")
    return arr


def perturbed_value(s: StationaryPerturbed, eta):
    """U_lam(eta) = h_tilde * int_eta^b_lam exp(-lam s^2/4) ds."""
    arr = _check_eta(eta, s.b_lambda)
    if s.lam == 0.0:
        out = s.h_tilde * (s.b_lambda - arr)
    else:
        root = math.sqrt(s.lam)
        out = s.h_tilde * SQRT_PI / root * erf_difference(0.5 * root * s.b_lambda, 0.5 * root * arr)
    out = np.maximum(out, 0.0)
    return out if np.ndim(out) else float(out)


def perturbed_slope(s: StationaryPerturbed, eta):
    """U_lam'(eta) = -h_tilde exp(-lam eta^2 / 4)."""
    arr = _check_eta(eta, s.b_lambda)
    out = -s.h_tilde * np.exp(-0.25 * s.lam * arr * arr)
    return out if np.ndim(out) else float(out)


@dataclass(frozen=True)
class UpperLinear:
    b_bar: float

    @property
    def slope(self) -> float:
        return -0.5 * self.b_bar

    def __call__(self, eta):
        """(b_bar/2)(b_bar - eta), zero beyond b_bar."""
        eta = np.asarray(eta, dtype=float)
        out = np.where(eta <= self.b_bar, 0.5 * self.b_bar * (self.b_bar - eta), 0.0)
        return out if out.ndim else float(out)


@dataclass(frozen=True)
class InitialData:
    """Piecewise-linear u0 through ``knots``; the last knot is the front (b0, 0)."""

    knots: tuple[tuple[float, float], ...]
    _x: np.ndarray = field(init=False, repr=False, compare=False)
    _u: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        pts = tuple((float(x), float(u)) for x, u in self.knots)
        object.__setattr__(self, "knots", pts)
        if len(pts) < 2:
            raise AdmissibilityError("need at least two knots")
        x = np.array([p[0] for p in pts])
        u = np.array([p[1] for p in pts])
        if not np.all(np.isfinite(x)) or not np.all(np.isfinite(u)):
            raise AdmissibilityError("knots must be finite")
        if x[0] != 0.0:
            raise AdmissibilityError(f"first knot must sit at x = 0, got {x[0]!r}")
        if np.any(np.diff(x) <= 0.0):
            raise AdmissibilityError("knot positions must be strictly increasing")
        if np.any(u < 0.0):
            raise AdmissibilityError("u0 must be non-negative")
        if u[-1] != 0.0:
            raise AdmissibilityError("u0 must vanish at the front b0 (last knot)")
        if not u[0] > 0.0:
            raise AdmissibilityError("u0(0) must be positive")
        x.flags.writeable = False
        u.flags.writeable = False
        object.__setattr__(self, "_x", x)
        object.__setattr__(self, "_u", u)

    @classmethod
    def ramp(cls, height: float, b0: float) -> "InitialData":
        """u0(x) = height * (1 - x/b0)^+."""
        return cls(((0.0, height), (b0, 0.0)))

    @property
    def b0(self) -> float:
        return float(self._x[-1])

    @property
    def u0_at_zero(self) -> float:
        return float(self._u[0])

    @property
    def lipschitz(self) -> float:
        """M: the largest chord slope magnitude."""
        return float(np.max(np.abs(np.diff(self._u) / np.diff(self._x))))

    @property
    def M(self) -> float:
        return self.lipschitz

    def __call__(self, x):
        """u0 with zero extension beyond b0."""
        out = np.interp(x, self._x, self._u, right=0.0)
        return out if np.ndim(out) else float(out)


def choose_lambda(init: InitialData, h: float, lam_start: float = 2.0,
                  max_doublings: int = 200, tol: float = 1e-12) -> StationaryPerturbed:
    """Smallest lam in {2, 4, 8, ...} whose U_lam lies below u0.

    Requires b_lam < b0, b_lam < u0(0)/M (dropped when M = 0) and
    U_lam(0) < u0(0). Convexity of U_lam then gives U_lam <= u0 on [0, b_lam].
    """
    if not h > 0.0:
        raise DomainError(f"h must be positive, got {h!r}")
    if not lam_start > 1.0:
        raise DomainError("lower solutions need lambda > 1")
    u00 = init.u0_at_zero
    if not u00 > 0.0:
        raise AdmissibilityError("u0(0) must be positive to build a lower solution")
    M = init.lipschitz
    front_cap = min(init.b0, u00 / M) if M > 0.0 else init.b0

    lam = lam_start
    for _ in range(max_doublings):
        s = StationaryPerturbed.build(h, lam, tol)
        if s.b_lambda < front_cap and perturbed_value(s, 0.0) < u00:
            return s
        lam *= 2.0
    raise ConvergenceError("no admissible lambda found")


def build_upper(init: InitialData, h: float) -> UpperLinear:
    """b_bar = max(b0, 2h, sqrt(2 M b0))."""
    return UpperLinear(max(init.b0, 2.0 * h, math.sqrt(2.0 * init.lipschitz * init.b0)))
