"""Command-line front end: ``stefanss profile|run|certify``.

Configs are plain text, one ``key=value`` per line, ``#`` starts a comment::

    scenario=custom
    h=0.6420127083438707
    knots=0:0.5, 1:0
    tau_end=10

All CSV output uses LF line endings and shortest round-trip float formatting,
so identical inputs give identical bytes.
"""
from __future__ import annotations

import argparse
import io
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .bounds import InitialData, build_upper, choose_lambda
from .diagnostics import (
    check_monotone_in_time,
    check_ordering,
    convergence_report,
    energy_bound,
    energy_window,
)
from .errors import ConfigError, StefanError
from .similarity import SelfSimilarProfile, profile_value
from .solver import SimilarityState, SolverConfig, Trajectory, run

SCENARIOS = ("self_similar", "lower", "upper", "custom")
DEFAULT_RAMP = ((0.0, 0.5), (1.0, 0.0))
CERTIFY_TOL = 1e-8


@dataclass(frozen=True)
class RunSpec:
    h: float
    scenario: str = "self_similar"
    knots: tuple[tuple[float, float], ...] | None = None
    N: int = 400
    dtau: float = 1e-4
    tau_end: float = 10.0
    stride: int = 100
    coupling_iters: int = 1
    out: str | None = None

    def solver_config(self) -> SolverConfig:
        return SolverConfig(self.h, self.N, self.dtau, self.coupling_iters)

    def initial_data(self) -> InitialData:
        return InitialData(self.knots if self.knots is not None else DEFAULT_RAMP)


def _parse_knots(text: str) -> tuple[tuple[float, float], ...]:
    pairs = []
    for item in text.replace(";", ",").split(","):
        item = item.strip()
        if not item:
            continue
        x, sep, u = item.partition(":")
        if not sep:
            raise ValueError(f"knot {item!r} is not of the form x:u")
        pairs.append((float(x), float(u)))
    return tuple(pairs)


_FIELDS = {
    "scenario": str,
    "h": float,
    "knots": _parse_knots,
    "N": int,
    "dtau": float,
    "tau_end": float,
    "stride": int,
    "coupling_iters": int,
    "out": str,
}


def parse_config(text: str) -> RunSpec:
    """Parse and validate a key=value document."""
    raw: dict[str, object] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or not key:
            raise ConfigError(f"line {lineno}: expected key=value, got {line!r}")
        if key not in _FIELDS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in raw:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        try:
            raw[key] = _FIELDS[key](value)
        except ValueError as exc:
            raise ConfigError(f"line {lineno}: bad value for {key}: {exc}") from None
    return validate_spec(raw)


def validate_spec(raw: dict) -> RunSpec:
    if "h" not in raw:
        raise ConfigError("missing required key 'h'")
    h = raw["h"]
    if not (h > 0.0 and math.isfinite(h)):
        raise ConfigError("h must be positive")
    spec = RunSpec(**raw)
    if spec.scenario not in SCENARIOS:
        raise ConfigError(f"scenario must be one of {', '.join(SCENARIOS)}; got {spec.scenario!r}")
    if spec.scenario == "custom" and spec.knots is None:
        raise ConfigError("scenario=custom requires knots")
    if not (spec.tau_end > 0.0 and math.isfinite(spec.tau_end)):
        raise ConfigError("tau_end must be positive")
    if spec.stride < 1:
        raise ConfigError("stride must be a positive integer")
    try:
        spec.solver_config()
        spec.initial_data()
    except StefanError as exc:
        raise ConfigError(str(exc)) from None
    return spec


def initial_state(spec: RunSpec) -> SimilarityState:
    """Starting state for the spec's scenario on the solver grid."""
    if spec.scenario == "self_similar":
        p = SelfSimilarProfile.from_h(spec.h)
        return SimilarityState.from_function(lambda e: profile_value(p, e), p.omega, spec.N)
    init = spec.initial_data()
    if spec.scenario == "lower":
        low = choose_lambda(init, spec.h)
        return SimilarityState.from_function(low, low.b_lambda, spec.N)
    if spec.scenario == "upper":
        up = build_upper(init, spec.h)
        return SimilarityState.from_function(up, up.b_bar, spec.N)
    return SimilarityState.from_function(init, init.b0, spec.N)


def simulate(spec: RunSpec) -> Trajectory:
    return run(initial_state(spec), spec.solver_config(), spec.tau_end, spec.stride)


def _fmt(x) -> str:
    return repr(float(x))


def _csv(header: list[str], rows) -> str:
    buf = io.StringIO(newline="")
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(_fmt(v) if not isinstance(v, str) else v for v in row) + "\n")
    return buf.getvalue()


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def profile_csv(h: float, points: int = 201) -> tuple[float, str]:
    p = SelfSimilarProfile.from_h(h)
    eta = np.linspace(0.0, p.omega, points)
    eta[-1] = p.omega
    return p.omega, _csv(["eta", "U"], zip(eta, profile_value(p, eta)))


def trajectory_csv(traj: Trajectory, h: float) -> str:
    p = SelfSimilarProfile.from_h(h)
    rep = convergence_report(traj, p)
    return _csv(["tau", "b", "b_gap", "profile_gap", "flux0", "fluxb"],
                zip(traj.tau, traj.b, rep.b_gap, rep.profile_gap, traj.flux0, traj.fluxb))


def cmd_profile(h: float, out: str | None = None, points: int = 201) -> int:
    omega, text = profile_csv(h, points)
    print(f"omega={omega:#.15g}")
    _emit(text, out)
    return 0


def cmd_run(spec: RunSpec, out: str | None = None) -> int:
    traj = simulate(spec)
    _emit(trajectory_csv(traj, spec.h), out if out is not None else spec.out)
    return 0


@dataclass
class CertifyResult:
    violations: list[tuple[str, str, float, float, float]] = field(default_factory=list)
    energies: dict[str, list[tuple[int, float]]] = field(default_factory=dict)
    M1: float = math.nan
    b_bar: float = math.nan
    lam: float = math.nan
    final_b: dict[str, float] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations


def certify(spec: RunSpec, tol: float = CERTIFY_TOL) -> CertifyResult:
    """Run the (lower, generic, upper) triple and collect every violation."""
    specs = {
        "lower": replace(spec, scenario="lower"),
        "generic": replace(spec, scenario="custom", knots=spec.initial_data().knots),
        "upper": replace(spec, scenario="upper"),
    }
    with ThreadPoolExecutor(max_workers=3) as pool:
        futures = {name: pool.submit(simulate, s) for name, s in specs.items()}
        trajs = {name: f.result() for name, f in futures.items()}

    init = spec.initial_data()
    res = CertifyResult()
    res.b_bar = build_upper(init, spec.h).b_bar
    res.lam = choose_lambda(init, spec.h).lam
    res.M1 = energy_bound(spec.h, res.b_bar)
    res.final_b = {name: float(t.b[-1]) for name, t in trajs.items()}

    def add(check, run_name, vs):
        res.violations.extend((check, run_name, v.tau, v.eta, v.amount) for v in vs)

    add("ordering", "lower<=generic", check_ordering(trajs["lower"], trajs["generic"], tol))
    add("ordering", "generic<=upper", check_ordering(trajs["generic"], trajs["upper"], tol))
    add("monotone", "lower", check_monotone_in_time(trajs["lower"], "nondecreasing", tol))
    add("monotone", "upper", check_monotone_in_time(trajs["upper"], "nonincreasing", tol))
    n_windows = int(math.floor(spec.tau_end + 1e-9)) - 1
    for name, traj in trajs.items():
        res.energies[name] = []
        for T in range(max(n_windows + 1, 0)):
            e = energy_window(traj, float(T))
            res.energies[name].append((T, e))
            if e > res.M1:
                res.violations.append(("energy", name, float(T), math.nan, e - res.M1))
    return res


def certify_report(spec: RunSpec, res: CertifyResult, tol: float) -> str:
    lines = [
        f"h={spec.h!r} N={spec.N} dtau={spec.dtau!r} tau_end={spec.tau_end!r} tol={tol!r}",
        f"lambda={res.lam!r} b_bar={res.b_bar!r}",
        "final fronts: " + " ".join(f"{k}={v!r}" for k, v in res.final_b.items()),
        f"M1={res.M1!r}",
    ]
    for name, rows in res.energies.items():
        worst = max((e for _, e in rows), default=math.nan)
        lines.append(f"energy {name}: max window={worst!r} <= M1={res.M1!r}")
    counts: dict[str, int] = {}
    for check, run_name, *_ in res.violations:
        counts[f"{check}:{run_name}"] = counts.get(f"{check}:{run_name}", 0) + 1
    for key in ("ordering:lower<=generic", "ordering:generic<=upper", "monotone:lower", "monotone:upper"):
        n = counts.get(key, 0)
        lines.append(f"{'PASS' if n == 0 else 'FAIL'} {key} violations={n}")
    n_energy = sum(v for k, v in counts.items() if k.startswith("energy:"))
    lines.append(f"{'PASS' if n_energy == 0 else 'FAIL'} energy violations={n_energy}")
    lines.append("CERTIFIED" if res.ok else "NOT CERTIFIED")
    return "\n".join(lines) + "\n"


def violations_csv(res: CertifyResult) -> str:
    return _csv(["check", "run", "tau", "eta", "amount"], res.violations)


def cmd_certify(spec: RunSpec, out: str | None = None, tol: float = CERTIFY_TOL) -> int:
    res = certify(spec, tol)
    sys.stdout.write(certify_report(spec, res, tol))
    path = out if out is not None else spec.out
    if path is not None:
        _emit(violations_csv(res), path)
    return 0 if res.ok else 1


def _load_spec(args) -> RunSpec:
    if args.config is None:
        raise ConfigError("--config is required")
    with open(args.config, encoding="utf-8") as fh:
        return parse_config(fh.read())


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="stefanss", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("profile", help="self-similar profile as CSV (eta,U)")
    p.add_argument("--h", type=float, help="flux amplitude (or give it in --config)")
    p.add_argument("--config")
    p.add_argument("--points", type=int, default=201)
    p.add_argument("--out")

    r = sub.add_parser("run", help="integrate one scenario, trajectory CSV")
    r.add_argument("--config", required=True)
    r.add_argument("--out")

    c = sub.add_parser("certify", help="sandwich / monotonicity / energy checks")
    c.add_argument("--config", required=True)
    c.add_argument("--out", help="violations CSV")
    c.add_argument("--tol", type=float, default=CERTIFY_TOL)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "profile":
            h = args.h if args.h is not None else _load_spec(args).h
            if args.points < 2:
                raise ConfigError("--points must be >= 2")
            return cmd_profile(h, args.out, args.points)
        spec = _load_spec(args)
        if args.command == "run":
            return cmd_run(spec, args.out)
        return cmd_certify(spec, args.out, args.tol)
    except (StefanError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
