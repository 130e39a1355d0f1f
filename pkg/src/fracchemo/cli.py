"""Command-line entry points.

Exit codes: 0 when everything requested passed, 1 when any executed check
failed, 2 for configuration or argument errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import comparison, dynamics, eigen, harness, kernels, regime, spreading
from .errors import (
    ConfigError,
    FracchemoError,
    InsufficientDataError,
    ParameterError,
)
from .params import Params


def _parse_floats(text: str) -> list[float]:
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise ConfigError(f"expected a comma-separated list of numbers: {text!r}")


def load_params(path) -> Params:
    """Read just the physics parameters from a config-format file."""
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"params file not found: {path}")
    text = path.read_text(encoding="utf-8")
    lines = text.splitlines()
    if not lines or lines[0].strip() != harness.CONFIG_MAGIC:
        raise ConfigError(f"first line must be the header {harness.CONFIG_MAGIC!r}")
    values: dict[str, float] = {}
    for lineno, line in enumerate(lines[1:], start=2):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        if "=" not in body:
            raise ConfigError(f"line {lineno}: expected key = value, got {body!r}")
        key, value = (part.strip() for part in body.split("=", 1))
        if key not in harness._ALL_KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key.startswith("params."):
            try:
                values[key.split(".", 1)[1]] = float(value)
            except ValueError:
                raise ConfigError(f"key {key}: not a number: {value!r}")
    missing = [
        name for name in Params.field_names() if name not in values
    ]
    if missing:
        raise ConfigError(
            "missing required keys: "
            + ", ".join(f"params.{name}" for name in missing)
        )
    try:
        return Params(
            dim=int(values["dim"]),
            **{k: v for k, v in values.items() if k != "dim"},
        )
    except ParameterError as exc:
        raise ConfigError(str(exc))


def _cmd_simulate(args) -> int:
    config = harness.load_config(args.config)
    suite, report = harness.run_suite(config, out_dir=args.out)
    print(report, end="")
    return 0 if suite.passed else 1


def _cmd_classify(args) -> int:
    p = load_params(args.params)
    verdict = regime.classify(p, u0_sup=args.u0_sup, strict=args.strict)
    print(verdict.as_text(), end="")
    csv = verdict.checks_csv()
    if args.out:
        Path(args.out).write_text(csv, encoding="utf-8")
    else:
        print(csv, end="")
    return 0


def _cmd_constants(args) -> int:
    p = load_params(args.params)
    constants = comparison.summarize_constants(p, u0_sup=args.u0_sup)
    print("M = %.17g" % constants.M)
    print("H = %.17g" % constants.H)
    if constants.u_star is not None:
        print("u_star = %.17g" % constants.u_star)
        print("v_star = %.17g" % constants.v_star)
        print("w_star = %.17g" % constants.w_star)
    if constants.M1 is not None:
        print("M1 = %.17g" % constants.M1)
    for case in sorted(constants.C0_by_case):
        print(f"C0[{case}] = %.17g" % constants.C0_by_case[case])
    return 0


def _speed_one(config, out_path: Path) -> tuple[bool, str]:
    u0 = harness.build_initial(config)
    verdict = regime.classify(config.params, u0_sup=u0.sup())
    level = harness._effective_level(config)
    if level is None:
        raise ConfigError(
            "speed runs need a tracked level: set stepper.level or use a > 0, b > 0"
        )
    from dataclasses import replace

    stepper = replace(config.stepper, level=level)
    record = dynamics.simulate(u0, config.params, stepper)
    radii = record.column("R_level")
    window = None
    if config.speed_window != (None, None):
        lo, hi = config.speed_window
        window = (
            lo if lo is not None else float(record.times[0]),
            hi if hi is not None else float(record.times[-1]),
        )
    trace = spreading.FrontTrace(
        times=record.times,
        radii=radii,
        level=level,
        fit_window=window,
        extent=config.grid.extent,
    )
    ok = True
    try:
        fitted = trace.with_fit()
        rate, r2 = fitted.fitted_rate, fitted.fit_r2
    except InsufficientDataError as exc:
        print(f"fit failed: {exc}", file=sys.stderr)
        rate, r2 = float("nan"), float("nan")
        ok = False
    lower, upper = verdict.speed_lower, verdict.speed_upper
    lines = trace.to_csv()
    lines += "rate,r2,lower,upper\n"
    lines += "%.17g,%.17g,%.17g,%.17g\n" % (rate, r2, lower, upper)
    out_path.write_text(lines, encoding="utf-8")
    summary = (
        f"alpha = {config.params.alpha}: rate = {rate:.6g}, r2 = {r2:.6g}, "
        f"bracket = [{lower:.6g}, {upper:.6g}] -> {out_path}"
    )
    if ok and np.isfinite(rate):
        ok = rate >= 0.8 * lower and (
            not np.isfinite(upper) or rate <= 1.2 * upper
        )
    return ok, summary


def _cmd_speed(args) -> int:
    config = harness.load_config(args.config)
    alphas = _parse_floats(args.alpha_grid) if args.alpha_grid else [
        config.params.alpha
    ]
    out = Path(args.out)
    all_ok = True
    for alpha in alphas:
        run_config = harness.derive_config(config, "params.alpha", alpha)
        if len(alphas) == 1:
            path = out
        else:
            path = out.with_name(
                f"{out.stem}-alpha{('%g' % alpha).replace('.', 'p')}{out.suffix}"
            )
        ok, summary = _speed_one(run_config, path)
        print(summary)
        all_ok = all_ok and ok
    return 0 if all_ok else 1


def _cmd_eigen(args) -> int:
    op = eigen.assemble_restricted(l=args.l, n=args.n, alpha=args.alpha)
    lam, _ = eigen.principal_eigenpair(op)
    gap = eigen.eigenvalue_gap(op)
    print("lambda1 = %.17g" % lam)
    print("gap = %.17g" % gap)
    if args.c is not None or args.abar is not None:
        if args.c is None or args.abar is None:
            raise ConfigError("--c and --abar must be given together")
        drifted = eigen.drifted_principal_eigen(
            op, c=args.c, xi=args.xi, a_bar=args.abar, t0_tilde=args.t0_tilde
        )
        print("lambda1_drifted = %.17g" % drifted)
    return 0


def _cmd_kernel(args) -> int:
    if args.kernel_command == "tabulate":
        xs, vals = kernels.tabulate_kernel(
            alpha=args.alpha, dim=args.dim, t=args.t, xmax=args.xmax, n=args.n
        )
        lines = ["x,K"]
        for x, k in zip(xs, vals):
            lines.append("%.17g,%.17g" % (x, k))
        text = "\n".join(lines) + "\n"
        if args.out:
            Path(args.out).write_text(text, encoding="utf-8")
        else:
            print(text, end="")
        return 0
    spec = kernels.KernelSpec(alpha=args.alpha, dim=args.dim, t=args.t)
    mass = kernels.kernel_mass(spec, truncation_radius=args.radius, tol=args.tol)
    print("mass = %.17g" % mass)
    return 0


def _cmd_sweep(args) -> int:
    config = harness.load_config(args.config)
    values = _parse_floats(args.values)
    suites = harness.sweep(
        config, axis=args.axis, values=values, out_dir=args.out,
        workers=args.workers,
    )
    failed = 0
    for value, suite in zip(values, suites):
        statuses = (
            ", ".join(f"{c.name}:{c.status}" for c in suite.checks)
            or "no checks"
        )
        print(
            f"{args.axis} = {value:g}: outcome = {suite.outcome}, {statuses}"
        )
        if not suite.passed:
            failed += 1
    if args.out:
        print(f"summary written to {Path(args.out) / 'summary.csv'}")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fracchemo",
        description=(
            "Simulation and verification harness for an attraction-repulsion "
            "chemotaxis system with fractional diffusion and logistic growth."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="run one configured simulation suite")
    sim.add_argument("--config", required=True)
    sim.add_argument("--out", default=None, help="directory for CSV outputs")
    sim.set_defaults(func=_cmd_simulate)

    cls = sub.add_parser("classify", help="regime classification for parameters")
    cls.add_argument("--params", required=True)
    cls.add_argument("--u0-sup", type=float, required=True, dest="u0_sup")
    cls.add_argument("--strict", action="store_true")
    cls.add_argument("--out", default=None, help="file for the inequality CSV")
    cls.set_defaults(func=_cmd_classify)

    con = sub.add_parser("constants", help="comparison constants for parameters")
    con.add_argument("--params", required=True)
    con.add_argument("--u0-sup", type=float, default=1.0, dest="u0_sup")
    con.set_defaults(func=_cmd_constants)

    spd = sub.add_parser("speed", help="front-speed measurement runs")
    spd.add_argument("--config", "--params", required=True, dest="config")
    spd.add_argument("--alpha-grid", default=None, dest="alpha_grid")
    spd.add_argument("--out", required=True)
    spd.set_defaults(func=_cmd_speed)

    eig = sub.add_parser("eigen", help="restricted Dirichlet eigenvalues")
    eig.add_argument("--l", type=float, required=True)
    eig.add_argument("--n", type=int, required=True)
    eig.add_argument("--alpha", type=float, required=True)
    eig.add_argument("--c", type=float, default=None)
    eig.add_argument("--abar", type=float, default=None)
    eig.add_argument("--xi", type=float, default=1.0)
    eig.add_argument("--t0-tilde", type=float, default=0.0, dest="t0_tilde")
    eig.set_defaults(func=_cmd_eigen)

    ker = sub.add_parser("kernel", help="fractional heat kernel utilities")
    ker_sub = ker.add_subparsers(dest="kernel_command", required=True)
    tab = ker_sub.add_parser("tabulate", help="tabulate the kernel profile")
    tab.add_argument("--alpha", type=float, required=True)
    tab.add_argument("--dim", type=int, default=1)
    tab.add_argument("--t", type=float, default=1.0)
    tab.add_argument("--xmax", type=float, required=True)
    tab.add_argument("--n", type=int, required=True)
    tab.add_argument("--out", default=None)
    tab.set_defaults(func=_cmd_kernel)
    mas = ker_sub.add_parser("mass", help="kernel mass with tail estimate")
    mas.add_argument("--alpha", type=float, required=True)
    mas.add_argument("--dim", type=int, default=1)
    mas.add_argument("--t", type=float, default=1.0)
    mas.add_argument("--radius", type=float, required=True)
    mas.add_argument("--tol", type=float, default=1e-6)
    mas.set_defaults(func=_cmd_kernel)

    swp = sub.add_parser("sweep", help="sweep one config key over values")
    swp.add_argument("--config", required=True)
    swp.add_argument("--axis", required=True)
    swp.add_argument("--values", required=True)
    swp.add_argument("--out", default=None)
    swp.add_argument("--workers", type=int, default=None)
    swp.set_defaults(func=_cmd_sweep)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, ParameterError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except FracchemoError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
