"""Experiment orchestration: config files, check suites, parameter sweeps.

Configs are flat ``section.key = value`` text files with a versioned header,
so runs diff cleanly and hash deterministically.  A suite run classifies the
parameters, simulates, then analyzes the requested checks; a sweep repeats
that over one axis with per-run persistence keyed by the config hash.
"""

from __future__ import annotations

import hashlib
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from . import comparison, dynamics, regime, spreading
from .errors import (
    ConfigError,
    InsufficientDataError,
    OracleError,
    ParameterError,
)
from .params import Params
from .spectral import Field, Grid, constant_field, write_snapshot

CONFIG_MAGIC = "fracchemo-config v1"

_INITIAL_KINDS = ("constant", "perturbed_equilibrium", "bump", "x0")
_CHECK_NAMES = ("boundedness", "asymptotics", "speed", "sandwich")

# key -> (type, required); initial.* requirements depend on the kind
_FLOAT_KEYS = {
    "params.alpha", "params.chi1", "params.chi2", "params.lambda1",
    "params.lambda2", "params.mu1", "params.mu2", "params.a", "params.b",
    "params.gamma", "params.k", "grid.extent", "stepper.dt",
    "stepper.t_end", "stepper.positivity_floor", "stepper.level",
    "initial.value", "initial.amplitude", "initial.radius",
    "initial.height", "initial.floor", "initial.c_star",
    "speed.window_start", "speed.window_end",
}
_INT_KEYS = {"params.dim", "grid.points", "stepper.snapshot_stride", "seed"}
_BOOL_KEYS = {"stepper.adaptive"}
_STRING_KEYS = {"initial.kind", "checks"}
_ALL_KEYS = _FLOAT_KEYS | _INT_KEYS | _BOOL_KEYS | _STRING_KEYS

_REQUIRED = {
    "params.dim", "params.alpha", "params.chi1", "params.chi2",
    "params.lambda1", "params.lambda2", "params.mu1", "params.mu2",
    "params.a", "params.b", "params.gamma", "params.k",
    "grid.extent", "grid.points", "stepper.dt", "stepper.t_end",
    "initial.kind",
}

_KIND_FIELDS = {
    "constant": {"initial.value"},
    "perturbed_equilibrium": {"initial.amplitude"},
    "bump": {"initial.radius", "initial.height", "initial.floor"},
    "x0": {"initial.c_star", "initial.floor"},
}
_KIND_REQUIRED = {
    "constant": {"initial.value"},
    "perturbed_equilibrium": set(),
    "bump": {"initial.radius", "initial.height"},
    "x0": {"initial.c_star"},
}


@dataclass(frozen=True)
class InitialSpec:
    """Initial-datum choice and its shape parameters."""

    kind: str
    value: float | None = None
    amplitude: float = 0.3
    radius: float | None = None
    height: float | None = None
    floor: float = 0.0
    c_star: float | None = None


@dataclass(frozen=True)
class ExperimentConfig:
    """Fully validated description of one run."""

    params: Params
    grid: Grid
    stepper: dynamics.StepperConfig
    initial: InitialSpec
    checks: tuple[str, ...] = ()
    seed: int = 0
    speed_window: tuple[float | None, float | None] = (None, None)

    def canonical_text(self) -> str:
        """Deterministic serialization used for hashing and sweep workers."""
        lines = [CONFIG_MAGIC]
        p = self.params
        for name in Params.field_names():
            value = getattr(p, name)
            key = f"params.{name}"
            lines.append(_format_pair(key, value, key in _INT_KEYS))
        lines.append(_format_pair("grid.extent", self.grid.extent, False))
        lines.append(_format_pair("grid.points", self.grid.points_per_axis, True))
        s = self.stepper
        lines.append(_format_pair("stepper.dt", s.dt, False))
        lines.append(_format_pair("stepper.t_end", s.t_end, False))
        lines.append(_format_pair("stepper.snapshot_stride", s.snapshot_stride, True))
        lines.append(_format_pair("stepper.positivity_floor", s.positivity_floor, False))
        if s.level is not None:
            lines.append(_format_pair("stepper.level", s.level, False))
        lines.append(f"stepper.adaptive = {'true' if s.adaptive else 'false'}")
        ini = self.initial
        lines.append(f"initial.kind = {ini.kind}")
        for key in sorted(_KIND_FIELDS[ini.kind]):
            attr = key.split(".", 1)[1]
            value = getattr(ini, attr)
            if value is not None:
                lines.append(_format_pair(key, value, False))
        if self.checks:
            lines.append("checks = " + ",".join(self.checks))
        if self.speed_window[0] is not None:
            lines.append(_format_pair("speed.window_start", self.speed_window[0], False))
        if self.speed_window[1] is not None:
            lines.append(_format_pair("speed.window_end", self.speed_window[1], False))
        lines.append(f"seed = {self.seed}")
        return "\n".join(lines) + "\n"

    def config_hash(self) -> str:
        return hashlib.sha256(self.canonical_text().encode()).hexdigest()[:16]


def _format_pair(key: str, value, is_int: bool) -> str:
    if is_int:
        return f"{key} = {int(value)}"
    return f"{key} = " + "%.17g" % float(value)


def parse_config(text: str) -> ExperimentConfig:
    """Parse and fully validate a config from its text form."""
    lines = text.splitlines()
    if not lines or lines[0].strip() != CONFIG_MAGIC:
        raise ConfigError(
            f"first line must be the header {CONFIG_MAGIC!r}"
        )
    raw: dict[str, str] = {}
    for lineno, line in enumerate(lines[1:], start=2):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        if "=" not in body:
            raise ConfigError(f"line {lineno}: expected key = value, got {body!r}")
        key, value = (part.strip() for part in body.split("=", 1))
        if key not in _ALL_KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in raw:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        raw[key] = value

    missing = sorted(_REQUIRED - raw.keys())
    if missing:
        raise ConfigError(f"missing required keys: {', '.join(missing)}")

    def take_float(key: str, default: float | None = None) -> float | None:
        if key not in raw:
            return default
        try:
            return float(raw[key])
        except ValueError:
            raise ConfigError(f"key {key}: not a number: {raw[key]!r}")

    def take_int(key: str, default: int | None = None) -> int | None:
        if key not in raw:
            return default
        try:
            value = float(raw[key])
        except ValueError:
            raise ConfigError(f"key {key}: not a number: {raw[key]!r}")
        if value != int(value):
            raise ConfigError(f"key {key}: expected an integer, got {raw[key]!r}")
        return int(value)

    try:
        params = Params(
            dim=take_int("params.dim"),
            alpha=take_float("params.alpha"),
            chi1=take_float("params.chi1"),
            chi2=take_float("params.chi2"),
            lambda1=take_float("params.lambda1"),
            lambda2=take_float("params.lambda2"),
            mu1=take_float("params.mu1"),
            mu2=take_float("params.mu2"),
            a=take_float("params.a"),
            b=take_float("params.b"),
            gamma=take_float("params.gamma"),
            k=take_float("params.k"),
        )
        grid = Grid(
            dim=params.dim,
            extent=take_float("grid.extent"),
            points_per_axis=take_int("grid.points"),
        )
        adaptive = True
        if "stepper.adaptive" in raw:
            flag = raw["stepper.adaptive"].lower()
            if flag not in ("true", "false"):
                raise ConfigError(
                    f"key stepper.adaptive: expected true or false, got {flag!r}"
                )
            adaptive = flag == "true"
        stepper = dynamics.StepperConfig(
            dt=take_float("stepper.dt"),
            t_end=take_float("stepper.t_end"),
            snapshot_stride=take_int("stepper.snapshot_stride", 1),
            positivity_floor=take_float("stepper.positivity_floor", 1e-12),
            level=take_float("stepper.level", None),
            adaptive=adaptive,
        )
    except ParameterError as exc:
        raise ConfigError(str(exc))

    kind = raw["initial.kind"]
    if kind not in _INITIAL_KINDS:
        raise ConfigError(
            f"key initial.kind: expected one of {', '.join(_INITIAL_KINDS)}, "
            f"got {kind!r}"
        )
    given_initial = {k for k in raw if k.startswith("initial.")} - {"initial.kind"}
    stray = sorted(given_initial - _KIND_FIELDS[kind])
    if stray:
        raise ConfigError(
            f"keys {', '.join(stray)} are not used by initial kind {kind!r}"
        )
    missing_initial = sorted(_KIND_REQUIRED[kind] - raw.keys())
    if missing_initial:
        raise ConfigError(
            f"initial kind {kind!r} requires keys: {', '.join(missing_initial)}"
        )
    initial = InitialSpec(
        kind=kind,
        value=take_float("initial.value"),
        amplitude=take_float("initial.amplitude", 0.3),
        radius=take_float("initial.radius"),
        height=take_float("initial.height"),
        floor=take_float("initial.floor", 0.0),
        c_star=take_float("initial.c_star"),
    )

    checks: tuple[str, ...] = ()
    if "checks" in raw and raw["checks"].strip():
        checks = tuple(part.strip() for part in raw["checks"].split(","))
        unknown = sorted(set(checks) - set(_CHECK_NAMES))
        if unknown:
            raise ConfigError(
                f"key checks: unknown check names: {', '.join(unknown)}"
            )
    return ExperimentConfig(
        params=params,
        grid=grid,
        stepper=stepper,
        initial=initial,
        checks=checks,
        seed=take_int("seed", 0),
        speed_window=(
            take_float("speed.window_start"),
            take_float("speed.window_end"),
        ),
    )


def load_config(path) -> ExperimentConfig:
    """Read and validate a config file."""
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file not found: {path}")
    return parse_config(path.read_text(encoding="utf-8"))


def build_initial(config: ExperimentConfig) -> Field:
    """Construct the initial concentration described by the config."""
    p = config.params
    grid = config.grid
    ini = config.initial
    if ini.kind == "constant":
        if ini.value is None or ini.value < 0.0:
            raise ConfigError("initial.value must be a nonnegative number")
        return constant_field(grid, ini.value, tag="u0")
    if ini.kind == "perturbed_equilibrium":
        if not (p.a > 0.0 and p.b > 0.0):
            raise ConfigError(
                "perturbed_equilibrium initial data needs a > 0 and b > 0"
            )
        if not abs(ini.amplitude) < 1.0:
            raise ConfigError(
                f"initial.amplitude = {ini.amplitude} out of range: (-1, 1)"
            )
        u_star, _, _ = comparison.equilibrium(p)
        x = grid.coordinates[0]
        values = u_star * (
            1.0 + ini.amplitude * np.cos(2.0 * np.pi * x / grid.extent)
        )
        return Field(grid=grid, values=values, tag="u0")
    if ini.kind == "bump":
        return spreading.make_bump_initial(
            grid, radius=ini.radius, height=ini.height, floor=ini.floor
        )
    return spreading.make_x0_initial(
        grid, c_star=ini.c_star, alpha=p.alpha, floor=ini.floor
    )


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one requested check."""

    name: str
    status: str  # pass | fail | skip
    reason: str
    details: dict[str, float] = field(default_factory=dict)

    def describe(self) -> str:
        extras = ""
        if self.details:
            extras = " (" + ", ".join(
                f"{k}={v:.6g}" for k, v in sorted(self.details.items())
            ) + ")"
        return f"[{self.name}] {self.status.upper()}: {self.reason}{extras}"


@dataclass
class RunRecord:
    """Suite-level record: verdict, time series, outcome, and check results."""

    config_hash: str
    verdict: regime.RegimeVerdict
    record: dynamics.RunRecord | None
    outcome: str  # ok | blew_up | unstable
    wall_time: float
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.status != "fail" for c in self.checks)


def _effective_level(config: ExperimentConfig) -> float | None:
    if config.stepper.level is not None:
        return config.stepper.level
    p = config.params
    if p.a > 0.0 and p.b > 0.0:
        u_star, _, _ = comparison.equilibrium(p)
        return 0.5 * u_star
    return None


def _check_boundedness(
    verdict: regime.RegimeVerdict, record: dynamics.RunRecord
) -> CheckResult:
    sup = record.column("sup_u")
    if verdict.boundedness_case == "none":
        return CheckResult(
            name="boundedness",
            status="skip",
            reason=(
                "no boundedness regime matched; sup_u went from "
                f"{sup[0]:.6g} to {sup[-1]:.6g} (informational, no claim)"
            ),
            details={"sup_initial": sup[0], "sup_final": sup[-1]},
        )
    c0 = verdict.C0
    peak = float(np.max(sup))
    allowed = 1.05 * c0
    ok = peak <= allowed
    return CheckResult(
        name="boundedness",
        status="pass" if ok else "fail",
        reason=(
            f"max sup_u {peak:.6g} {'<=' if ok else '>'} 1.05*C0 = {allowed:.6g} "
            f"(case {verdict.boundedness_case})"
        ),
        details={"max_sup_u": peak, "C0": c0},
    )


def _check_asymptotics(
    verdict: regime.RegimeVerdict, record: dynamics.RunRecord, tol: float = 1e-3
) -> CheckResult:
    if verdict.asymptotic_case == "none":
        return CheckResult(
            name="asymptotics",
            status="skip",
            reason="no asymptotic regime matched",
        )
    dists = {
        "dist_u": record.column("dist_u")[-1],
        "dist_v": record.column("dist_v")[-1],
        "dist_w": record.column("dist_w")[-1],
    }
    worst = max(dists.values())
    ok = worst <= tol
    return CheckResult(
        name="asymptotics",
        status="pass" if ok else "fail",
        reason=(
            f"final distances to equilibrium {'<=' if ok else '>'} {tol:g} "
            f"(worst {worst:.6g}, case {verdict.asymptotic_case})"
        ),
        details=dists,
    )


def _check_speed(
    config: ExperimentConfig,
    verdict: regime.RegimeVerdict,
    record: dynamics.RunRecord,
) -> CheckResult:
    if config.initial.kind not in ("bump", "x0"):
        return CheckResult(
            name="speed",
            status="skip",
            reason=(
                "front tracking needs a localized initial datum "
                f"(bump or x0), got {config.initial.kind!r}"
            ),
        )
    radii = record.column("R_level")
    if not np.any(np.isfinite(radii) & (radii > 0.0)):
        return CheckResult(
            name="speed",
            status="skip",
            reason="no level radius was tracked (no level set or never reached)",
        )
    window = None
    if config.speed_window != (None, None):
        lo = config.speed_window[0]
        hi = config.speed_window[1]
        window = (
            lo if lo is not None else float(record.times[0]),
            hi if hi is not None else float(record.times[-1]),
        )
    try:
        fit = spreading.fit_front(
            record.times, radii, extent=config.grid.extent, window=window
        )
    except InsufficientDataError as exc:
        return CheckResult(name="speed", status="skip", reason=str(exc))
    lower, upper = verdict.speed_lower, verdict.speed_upper
    ok = fit.rate >= 0.8 * lower and (
        not np.isfinite(upper) or fit.rate <= 1.2 * upper
    )
    return CheckResult(
        name="speed",
        status="pass" if ok else "fail",
        reason=(
            f"fitted rate {fit.rate:.6g} against bracket "
            f"[{0.8 * lower:.6g}, "
            + (f"{1.2 * upper:.6g}]" if np.isfinite(upper) else "inf)")
        ),
        details={
            "rate": fit.rate,
            "r2": fit.r_squared,
            "lower": lower,
            "upper": upper,
        },
    )


def _check_sandwich(
    config: ExperimentConfig,
    record: dynamics.RunRecord,
    n_windows: int = 10,
    tol: float = 0.98,
) -> CheckResult:
    p = config.params
    inf_u = record.column("inf_u")
    times = record.times
    if inf_u[0] <= 0.0:
        return CheckResult(
            name="sandwich",
            status="skip",
            reason="comparison from below needs inf u0 > 0",
        )
    sup_v = np.asarray(record.sup_v, dtype=float)
    edges = np.linspace(0, times.size - 1, min(n_windows, times.size - 1) + 1)
    edges = np.unique(edges.astype(int))
    w_bar = float(inf_u[0])
    floor_vals = np.empty_like(inf_u)
    floor_vals[0] = w_bar
    try:
        for j in range(edges.size - 1):
            lo, hi = edges[j], edges[j + 1]
            z = p.chi1 * p.lambda1 * float(np.max(sup_v[lo : hi + 1]))
            span = times[lo : hi + 1] - times[lo]
            traj = comparison.lower_ode(
                p, z=z, w0=w_bar, t_end=float(span[-1]), t_eval=span
            )
            floor_vals[lo : hi + 1] = traj.y
            w_bar = float(traj.y[-1])
    except OracleError as exc:
        return CheckResult(name="sandwich", status="skip", reason=str(exc))
    margin = inf_u - tol * floor_vals
    ok = bool(np.all(margin >= -1e-12))
    worst = int(np.argmin(margin))
    return CheckResult(
        name="sandwich",
        status="pass" if ok else "fail",
        reason=(
            f"inf_u {'stays above' if ok else 'dips below'} {tol:g} x the "
            f"comparison floor (worst at t = {times[worst]:.6g})"
        ),
        details={
            "worst_inf_u": float(inf_u[worst]),
            "worst_floor": float(floor_vals[worst]),
        },
    )


def run_suite(
    config: ExperimentConfig, out_dir=None
) -> tuple[RunRecord, str]:
    """Classify, simulate, and analyze the requested checks.

    Returns the suite record and a plain-text report; CSV outputs land in
    ``out_dir`` when given.
    """
    started = time.perf_counter()
    u0 = build_initial(config)
    verdict = regime.classify(config.params, u0_sup=u0.sup())
    c0 = verdict.C0 if verdict.boundedness_case != "none" else None
    level = _effective_level(config)
    stepper = replace(config.stepper, level=level)
    keep = "speed" in config.checks or "sandwich" in config.checks
    record = dynamics.simulate(
        u0,
        config.params,
        stepper,
        c0_predicted=c0,
        keep_fields=keep,
    )
    if record.blew_up:
        outcome = "blew_up"
    elif np.any(record.column("tail_fraction") > 0.1):
        outcome = "unstable"
    else:
        outcome = "ok"
    results: list[CheckResult] = []
    for name in config.checks:
        if name == "boundedness":
            results.append(_check_boundedness(verdict, record))
        elif name == "asymptotics":
            results.append(_check_asymptotics(verdict, record))
        elif name == "speed":
            results.append(_check_speed(config, verdict, record))
        elif name == "sandwich":
            results.append(_check_sandwich(config, record))
    wall = time.perf_counter() - started
    suite = RunRecord(
        config_hash=config.config_hash(),
        verdict=verdict,
        record=record,
        outcome=outcome,
        wall_time=wall,
        checks=results,
    )
    report_lines = [
        "fracchemo suite report",
        f"config = {suite.config_hash}",
        f"outcome = {outcome}",
        "wall_time = %.3f s" % wall,
        f"boundedness_case = {verdict.boundedness_case}",
        f"asymptotic_case = {verdict.asymptotic_case}",
    ]
    if c0 is not None:
        report_lines.append("C0 = %.17g" % c0)
    if record.blew_up:
        report_lines.append("blow_up_time = %.17g" % record.blow_time)
    for result in results:
        report_lines.append(result.describe())
    report = "\n".join(report_lines) + "\n"
    if out_dir is not None:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        record.write_csv(out / "record.csv")
        (out / "report.txt").write_text(report, encoding="utf-8")
        (out / "verdict.txt").write_text(verdict.as_text(), encoding="utf-8")
        (out / "checks.csv").write_text(verdict.checks_csv(), encoding="utf-8")
        (out / "config.txt").write_text(config.canonical_text(), encoding="utf-8")
        if record.final_state is not None:
            write_snapshot(record.final_state.u, out / "u_final.snap")
    return suite, report


_SUMMARY_COLUMNS = (
    "axis", "value", "hash", "outcome", "boundedness_case", "C0",
    "asymptotic_case", "max_sup_u", "final_dist_u", "speed_lower",
    "speed_upper", "fitted_rate", "checks_failed",
)


def _summary_row(axis: str, value: float, suite: RunRecord) -> dict[str, str]:
    verdict = suite.verdict
    record = suite.record
    c0 = verdict.C0 if verdict.boundedness_case != "none" else float("nan")
    rate = float("nan")
    for check in suite.checks:
        if check.name == "speed" and "rate" in check.details:
            rate = check.details["rate"]
    failed = sum(1 for c in suite.checks if c.status == "fail")
    row = {
        "axis": axis,
        "value": "%.17g" % value,
        "hash": suite.config_hash,
        "outcome": suite.outcome,
        "boundedness_case": verdict.boundedness_case,
        "C0": "%.17g" % c0,
        "asymptotic_case": verdict.asymptotic_case,
        "max_sup_u": "%.17g"
        % (float(np.max(record.column("sup_u"))) if record else float("nan")),
        "final_dist_u": "%.17g"
        % (record.column("dist_u")[-1] if record else float("nan")),
        "speed_lower": "%.17g" % verdict.speed_lower,
        "speed_upper": "%.17g" % verdict.speed_upper,
        "fitted_rate": "%.17g" % rate,
        "checks_failed": str(failed),
    }
    return row


def derive_config(config: ExperimentConfig, axis: str, value) -> ExperimentConfig:
    """Copy of the config with one dotted key replaced, re-validated."""
    if axis not in _ALL_KEYS or axis in _STRING_KEYS or axis in _BOOL_KEYS:
        raise ConfigError(f"axis {axis!r} is not a sweepable numeric key")
    lines = [CONFIG_MAGIC]
    replaced = False
    formatted = _format_pair(axis, value, axis in _INT_KEYS)
    for line in config.canonical_text().splitlines()[1:]:
        key = line.split("=", 1)[0].strip()
        if key == axis:
            lines.append(formatted)
            replaced = True
        else:
            lines.append(line)
    if not replaced:
        lines.append(formatted)
    return parse_config("\n".join(lines) + "\n")


def _sweep_point(args: tuple[str, str, float, str | None]) -> tuple[RunRecord, dict]:
    text, axis, value, out_dir = args
    config = parse_config(text)
    suite, _ = run_suite(config, out_dir=out_dir)
    return suite, _summary_row(axis, value, suite)


def sweep(
    config: ExperimentConfig,
    axis: str,
    values,
    out_dir=None,
    workers: int | None = None,
) -> list[RunRecord]:
    """Run one suite per axis value; persist per-run, skip completed hashes.

    Results merge into ``summary.csv`` under ``out_dir`` (when given), in
    the order of ``values``.  Reruns reuse any run directory that already
    holds a ``DONE`` marker.
    """
    values = list(values)
    derived = [derive_config(config, axis, v) for v in values]
    out_root = Path(out_dir) if out_dir is not None else None
    tasks: list[tuple[int, tuple[str, str, float, str | None]]] = []
    rows: dict[int, dict] = {}
    suites: dict[int, RunRecord] = {}
    for i, (value, derived_config) in enumerate(zip(values, derived)):
        run_dir = None
        if out_root is not None:
            run_dir = out_root / f"run-{derived_config.config_hash()}"
            done = run_dir / "DONE"
            row_file = run_dir / "row.csv"
            if done.exists() and row_file.exists():
                header, line = row_file.read_text(encoding="utf-8").splitlines()
                rows[i] = dict(zip(header.split(","), line.split(",")))
                suites[i] = RunRecord(
                    config_hash=derived_config.config_hash(),
                    verdict=regime.classify(
                        derived_config.params,
                        u0_sup=build_initial(derived_config).sup(),
                    ),
                    record=None,
                    outcome=rows[i]["outcome"],
                    wall_time=0.0,
                    checks=[],
                )
                continue
        tasks.append(
            (
                i,
                (
                    derived_config.canonical_text(),
                    axis,
                    float(value),
                    str(run_dir) if run_dir is not None else None,
                ),
            )
        )
    if tasks:
        if workers is not None and workers > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                outcomes = list(pool.map(_sweep_point, [t[1] for t in tasks]))
        else:
            outcomes = [_sweep_point(t[1]) for t in tasks]
        for (i, task), (suite, row) in zip(tasks, outcomes):
            suites[i] = suite
            rows[i] = row
            if out_root is not None:
                run_dir = Path(task[3])
                header = ",".join(_SUMMARY_COLUMNS)
                line = ",".join(row[c] for c in _SUMMARY_COLUMNS)
                (run_dir / "row.csv").write_text(
                    header + "\n" + line + "\n", encoding="utf-8"
                )
                (run_dir / "DONE").write_text("done\n", encoding="utf-8")
    if out_root is not None:
        out_root.mkdir(parents=True, exist_ok=True)
        lines = [",".join(_SUMMARY_COLUMNS)]
        for i in range(len(values)):
            if i in rows:
                lines.append(",".join(rows[i][c] for c in _SUMMARY_COLUMNS))
        (out_root / "summary.csv").write_text(
            "\n".join(lines) + "\n", encoding="utf-8"
        )
    return [suites[i] for i in range(len(values)) if i in suites]
